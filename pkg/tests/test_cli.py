import json

import pytest

from macaulay.cli import (
    build_grading,
    format_result,
    main,
    parse_group_file,
    parse_problem,
    render_problem,
)
from macaulay.errors import ParseError

CIRCLE = """\
# twin-circle system
ring q: x1 x2
grading order degrevlex
gen x1^2 + x2^2 - 1
gen x1^2*x2^2 - 1
"""

SWAP_GROUP = "perm (1 2)\n"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run_cli(tmp_path, capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_problem_fixture():
    problem = parse_problem(CIRCLE)
    assert problem.ring.names == ("x1", "x2")
    assert problem.grading_decl == "order degrevlex"
    assert len(problem.generators) == 2
    assert problem.rank == 1


def test_parse_problem_errors():
    with pytest.raises(ParseError) as err:
        parse_problem("ring q: x1 x2\ngen x3 + 1\n")
    assert "x3" in str(err.value) and "line 2" in str(err.value)
    with pytest.raises(ParseError):
        parse_problem("gen x1\n")  # missing ring
    with pytest.raises(ParseError):
        parse_problem("ring q: x1\nnonsense here\n")
    # empty generator list is a valid zero module
    problem = parse_problem("ring q: x1 x2\ngrading total\n")
    assert problem.generators == []


FIXTURE_TEXTS = (
    CIRCLE,
    "ring q: x1 x2\ngrading total\nmodule rank 2 shifts [0, 1] tie pot\ngen [x1, 1]\ngen [x2, 0]\n",
    "ring fp:7: x1 x2 x3\ngrading elim 1\ngen x1*x2 - x3\n",
)


@pytest.mark.parametrize("text", FIXTURE_TEXTS)
def test_problem_round_trip(text):
    problem = parse_problem(text)
    again = parse_problem(render_problem(problem))
    assert again.generators == problem.generators
    assert again.grading_decl == problem.grading_decl
    assert again.ring == problem.ring
    assert (again.rank, again.shifts, again.tie) == (problem.rank, problem.shifts, problem.tie)
    assert render_problem(again) == render_problem(problem)


def test_module_declaration_and_gradings():
    text = "ring q: x1 x2\ngrading total\nmodule rank 2 shifts [0, 1]\ngen [x1, 1]\n"
    problem = parse_problem(text)
    assert problem.rank == 2 and problem.shifts == [0, 1]
    spec = problem.grading()
    assert spec.rank == 2 and spec.shifts == (0, 1)
    spec2 = build_grading(problem.ring, "order lex", 1, None, None)
    assert spec2.ring.name == "lex"
    spec3 = build_grading(problem.ring, "order matrix [[1,1],[0,-1]]", 1, None, None)
    assert spec3.ring.rows == ((1, 1), (0, -1))
    spec4 = build_grading(problem.ring, "elim 1", 1, None, None)
    assert spec4.ring.kept == (0,)


def test_invalid_grading_rejected():
    problem = parse_problem("ring q: x1 x2\ngrading order matrix [[-1,0],[0,1]]\ngen x1\n")
    with pytest.raises(Exception) as err:
        problem.grading()
    assert "invalid grading" in str(err.value)


def test_malformed_declarations():
    with pytest.raises(ParseError):
        parse_problem("ring q: x1\nmodule rank\n")
    with pytest.raises(ParseError):
        parse_problem("ring q: x1\nmodule rank two\n")
    problem = parse_problem("ring q: x1 x2\ngrading elim nope\ngen x1\n")
    with pytest.raises(Exception):
        problem.grading()


def test_group_file_parsing(R2):
    action = parse_group_file(SWAP_GROUP, R2)
    assert len(action.elements) == 2
    action = parse_group_file("signed-perm (-2 1)\n", R2)
    assert len(action.elements) == 4
    action = parse_group_file("matrix [[0,1],[-1,0]]\n", R2)
    assert len(action.elements) == 4
    with pytest.raises(ParseError):
        parse_group_file("spin (1 2)\n", R2)
    with pytest.raises(ParseError):
        parse_group_file("# nothing\n", R2)


def test_cli_basis_reduced(tmp_path, capsys):
    path = write(tmp_path, "circle.mac", CIRCLE)
    code, out, err = run_cli(tmp_path, capsys, "basis", path, "--reduced")
    assert code == 0 and err == ""
    assert "x1^2 + x2^2 - 1" in out
    assert "x2^4 - x2^2 + 1" in out
    assert "criterion: pass" in out


def test_cli_verify_both_gradings(tmp_path, capsys):
    path = write(tmp_path, "circle.mac", CIRCLE)
    code, out, _ = run_cli(tmp_path, capsys, "verify", path, "--grading", "total")
    assert code == 0 and "criterion: pass" in out
    code, out, _ = run_cli(tmp_path, capsys, "verify", path)
    assert code == 0 and "criterion: fail" in out
    assert "witness remainder: x2^4 - x2^2 + 1" in out


def test_cli_reduce_with_trace(tmp_path, capsys):
    path = write(tmp_path, "circle.mac", CIRCLE)
    code, out, _ = run_cli(
        tmp_path, capsys, "reduce", path, "--grading", "total", "--element", "x1^4", "--trace"
    )
    assert code == 0
    assert "normal-form: 1/2*x1^2 - 1/2*x2^2 - 1/2" in out
    assert "step deg 4" in out and "step deg 2" in out


def test_cli_byte_identical_runs(tmp_path, capsys):
    path = write(tmp_path, "circle.mac", CIRCLE)
    _, out1, _ = run_cli(tmp_path, capsys, "basis", path, "--reduced", "--format", "json")
    _, out2, _ = run_cli(tmp_path, capsys, "basis", path, "--reduced", "--format", "json")
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["command"] == "basis"
    assert all(isinstance(e["element"], str) for e in doc["elements"])


def test_cli_exit_codes(tmp_path, capsys):
    bad_syntax = write(tmp_path, "bad.mac", "ring q: x1\ngen x9 + 1\n")
    code, _, err = run_cli(tmp_path, capsys, "basis", bad_syntax)
    assert code == 2 and "x9" in err

    math_err = write(tmp_path, "nonhom.mac", "ring q: x1 x2\ngrading total\ngen x1^2 - 1\n")
    code, _, err = run_cli(tmp_path, capsys, "hilbert", math_err, "--degrees", "0..3")
    assert code == 3 and "homogeneous" in err

    c4 = write(
        tmp_path,
        "c4.mac",
        "ring q: x1 x2\ngrading total\ngen x1^2 + x2^2 - 1\ngen x1^2*x2^2\ngen x1^3*x2 - x1*x2^3\n",
    )
    code, _, err = run_cli(tmp_path, capsys, "basis", c4, "--max-iterations", "1")
    assert code == 4 and "resource" in err.lower()

    code, _, _ = run_cli(tmp_path, capsys, "basis", str(tmp_path / "missing.mac"))
    assert code == 2


def test_cli_eliminate(tmp_path, capsys):
    path = write(tmp_path, "elim.mac", "ring q: x1 x2\ngrading total\ngen x1^2 + x2^2 - 1\ngen x1 - x2\n")
    code, out, _ = run_cli(tmp_path, capsys, "eliminate", path, "--keep", "x2")
    assert code == 0 and "x2^2 - 1/2" in out


def test_cli_hilbert(tmp_path, capsys):
    path = write(tmp_path, "mono.mac", "ring q: x1 x2\ngrading total\ngen x1^2\ngen x1*x2\n")
    code, out, _ = run_cli(tmp_path, capsys, "hilbert", path, "--degrees", "0..4")
    assert code == 0
    assert "H(3) = 3" in out and "H(0) = 0" in out


def test_cli_homogenize_dehomogenize(tmp_path, capsys):
    path = write(tmp_path, "h.mac", "ring q: x1 x2\ngrading total\ngen x2^2 - x1\n")
    code, out, _ = run_cli(tmp_path, capsys, "homogenize", path, "--var", "t")
    assert code == 0 and "x2^2 - x1*t" in out and "h-basis certificate: pass" in out

    back = write(tmp_path, "hd.mac", "ring q: x1 x2 t\ngrading total\ngen x2^2 - x1*t\n")
    code, out, _ = run_cli(tmp_path, capsys, "dehomogenize", back, "--var", "t")
    assert code == 0 and "x2^2 - x1" in out


def test_cli_check_invariant(tmp_path, capsys):
    circle = write(tmp_path, "circle.mac", CIRCLE)
    group = write(tmp_path, "swap.grp", SWAP_GROUP)
    code, out, _ = run_cli(
        tmp_path, capsys, "check-invariant", circle, "--group", group, "--grading", "total"
    )
    assert code == 0 and "invariant: yes" in out

    drl_basis = write(
        tmp_path,
        "broken.mac",
        "ring q: x1 x2\ngrading order degrevlex\ngen x1^2 + x2^2 - 1\ngen x2^4 - x2^2 + 1\n",
    )
    code, out, _ = run_cli(tmp_path, capsys, "check-invariant", drl_basis, "--group", group)
    assert code == 0 and "invariant: no" in out


def test_cli_syzygy(tmp_path, capsys):
    path = write(tmp_path, "circle.mac", CIRCLE)
    code, out, _ = run_cli(tmp_path, capsys, "syzygy", path, "--grading", "total")
    assert code == 0 and "[x1^2*x2^2 - 1, -x1^2 - x2^2 + 1]" in out


def test_cli_prime_field(tmp_path, capsys):
    path = write(tmp_path, "circle.mac", CIRCLE)
    code, out, _ = run_cli(tmp_path, capsys, "basis", path, "--reduced", "--coeff", "fp:32003")
    assert code == 0
    assert "x1^2 + x2^2 + 32002" in out
    assert "x2^4 + 32002*x2^2 + 1" in out


def test_cli_empty_generators(tmp_path, capsys):
    path = write(tmp_path, "empty.mac", "ring q: x1 x2\ngrading total\n")
    code, out, _ = run_cli(tmp_path, capsys, "basis", path)
    assert code == 0 and "elements: 0" in out


def test_cli_certify_and_module_rank(tmp_path, capsys):
    path = write(tmp_path, "circle.mac", CIRCLE)
    code, out, _ = run_cli(tmp_path, capsys, "basis", path, "--reduced", "--certify")
    assert code == 0 and "criterion: pass" in out

    mod = write(
        tmp_path,
        "mod.mac",
        "ring q: x1 x2\ngrading order degrevlex\nmodule rank 2 tie pot\ngen [x1, x2]\ngen [x2, x1]\n",
    )
    code, out, _ = run_cli(tmp_path, capsys, "basis", mod, "--certify")
    assert code == 0 and "criterion: pass" in out
    # x1 * (first generator) is a member; its normal form against the
    # generators vanishes even before completion
    code, out, _ = run_cli(tmp_path, capsys, "reduce", mod, "--element", "[x1^2, x1*x2]")
    assert code == 0 and "normal-form: [0, 0]" in out


def test_format_result_stability():
    doc = {"command": "basis", "input_hash": "ab", "elements": [{"degree": "2", "element": "x1"}]}
    assert format_result(doc, "text") == format_result(doc, "text")
    assert format_result(doc, "json") == format_result(doc, "json")
    assert json.loads(format_result(doc, "json"))["input_hash"] == "ab"

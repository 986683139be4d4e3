"""Batch command-line front end.

One problem per file: a ring declaration, a grading declaration, an optional
module declaration, then generators.  Commands dispatch to the library and
render a deterministic result document as text or JSON; exact values are
always printed as strings.

Exit codes: 0 ok, 2 syntax error, 3 mathematical precondition, 4 resource cap.
"""

import argparse
import hashlib
import json
import sys

from .apps import (
    EliminationSpec,
    HomogenizationContext,
    dehomogenize,
    eliminate,
    hilbert_function,
    homogenize,
    schreyer_syzygy_basis,
    verify_homogenization_equivalence,
)
from .coeff import field_from_spec
from .errors import ParseError, ResourceLimitError, UsageError
from .gradlin import ORTHOGONAL, PIVOT
from .grading import (
    BlockGrading,
    CoarseModuleGrading,
    TermModuleGrading,
    TermOrderGrading,
    TotalDegreeGrading,
    format_degree,
    verify_monoid_order,
)
from .macbasis import (
    BuchbergerConfig,
    buchberger_algorithm,
    buchberger_criterion,
    degree_profile,
    interreduce,
    canonical_order,
)
from .polymod import PolyRing, degree_of, parse_element, render_element
from .reduction import Reducer
from .symmetry import (
    GroupAction,
    check_equivariant_normal_form,
    permutation_matrix,
    signed_permutation_matrix,
    span_is_invariant,
)

COMMANDS = (
    "basis",
    "verify",
    "reduce",
    "syzygy",
    "eliminate",
    "hilbert",
    "homogenize",
    "dehomogenize",
    "check-invariant",
)


# ---------------------------------------------------------------------------
# problem files


class ProblemFile:
    def __init__(self, field, ring, grading_decl, rank, shifts, tie, generators, group_path, text):
        self.field = field
        self.ring = ring
        self.grading_decl = grading_decl
        self.rank = rank
        self.shifts = shifts
        self.tie = tie
        self.generators = generators
        self.group_path = group_path
        self.text = text

    def grading(self):
        return build_grading(self.ring, self.grading_decl, self.rank, self.shifts, self.tie)


def _parse_bracket_list(text, line_no):
    """Parse a nested [..] literal of integers; returns (value, rest)."""
    text = text.strip()
    if not text.startswith("["):
        raise ParseError("expected '['", line_no, 1)
    depth = 0
    for k, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                literal = text[: k + 1]
                rest = text[k + 1 :]
                try:
                    value = json.loads(literal)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"bad list literal: {exc}", line_no, 1) from None
                return value, rest
    raise ParseError("unterminated '['", line_no, 1)


def parse_problem(text, default_field=None) -> ProblemFile:
    field = default_field
    names = None
    ring = None
    grading_decl = None
    rank, shifts, tie = 1, None, None
    gen_lines = []
    group_path = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "ring":
            # the field spec may itself contain a colon (fp:<p>)
            spec, _, var_part = rest.rpartition(":")
            if not spec.strip() or not var_part.strip():
                raise ParseError("ring declaration needs 'ring <field>: <vars>'", line_no, 1)
            if field is None:
                try:
                    field = field_from_spec(spec.strip())
                except UsageError as exc:
                    raise ParseError(str(exc), line_no, 1) from None
            names = tuple(v for v in var_part.replace(",", " ").split() if v)
            if not names:
                raise ParseError("ring declaration lists no variables", line_no, 1)
            try:
                ring = PolyRing(field, names)
            except UsageError as exc:
                raise ParseError(str(exc), line_no, 1) from None
        elif head == "grading":
            grading_decl = rest
            if not rest:
                raise ParseError("empty grading declaration", line_no, 1)
        elif head == "module":
            tokens = rest.split()
            k = 0
            try:
                while k < len(tokens):
                    if tokens[k] == "rank":
                        rank = int(tokens[k + 1])
                        k += 2
                    elif tokens[k] == "shifts":
                        literal = " ".join(tokens[k + 1 :])
                        shifts, rest_text = _parse_bracket_list(literal, line_no)
                        tokens = tokens[: k + 1] + rest_text.split()
                        k += 1
                    elif tokens[k] == "tie":
                        tie = tokens[k + 1]
                        if tie not in ("pot", "top"):
                            raise ParseError("tie must be 'pot' or 'top'", line_no, 1)
                        k += 2
                    else:
                        raise ParseError(f"unknown module keyword {tokens[k]!r}", line_no, 1)
            except (IndexError, ValueError):
                raise ParseError("malformed module declaration", line_no, 1) from None
        elif head == "gen":
            gen_lines.append((line_no, rest))
        elif head == "group":
            group_path = rest
        else:
            raise ParseError(f"unknown declaration {head!r}", line_no, 1)
    if ring is None:
        raise ParseError("missing ring declaration", 1, 1)
    if grading_decl is None:
        grading_decl = "total"
    generators = [parse_element(ring, rank, expr, line) for line, expr in gen_lines]
    return ProblemFile(field, ring, grading_decl, rank, shifts, tie, generators, group_path, text)


def render_problem(problem: ProblemFile) -> str:
    """Canonical text for a parsed problem; reparsing gives an equal problem."""
    field = problem.field
    spec = "q" if field.characteristic == 0 else f"fp:{field.characteristic}"
    lines = [f"ring {spec}: {' '.join(problem.ring.names)}", f"grading {problem.grading_decl}"]
    mod = f"module rank {problem.rank}"
    if problem.shifts is not None:
        mod += f" shifts {json.dumps(problem.shifts)}"
    if problem.tie is not None:
        mod += f" tie {problem.tie}"
    lines.append(mod)
    lines.extend(f"gen {render_element(g)}" for g in problem.generators)
    if problem.group_path:
        lines.append(f"group {problem.group_path}")
    return "\n".join(lines) + "\n"


def build_grading(ring, decl, rank, shifts, tie):
    d = ring.nvars
    tokens = decl.split()
    kind = tokens[0]
    if kind == "total":
        int_shifts = tuple(int(s) for s in shifts) if shifts else None
        spec = CoarseModuleGrading(TotalDegreeGrading(d), rank, int_shifts)
    elif kind == "order":
        if len(tokens) < 2:
            raise UsageError("grading order needs a name")
        name = tokens[1]
        if name == "degrevlex":
            ring_grading = TermOrderGrading.degrevlex(d)
        elif name == "lex":
            ring_grading = TermOrderGrading.lex(d)
        elif name == "matrix":
            literal = decl.split("matrix", 1)[1]
            rows, _ = _parse_bracket_list(literal, 1)
            ring_grading = TermOrderGrading(rows)
        else:
            raise UsageError(f"unknown order {name!r}")
        tuple_shifts = None
        if shifts:
            tuple_shifts = tuple(
                tuple(s) if isinstance(s, list) else tuple(int(s) if k == 0 else 0 for k in range(d))
                for s in shifts
            )
        spec = TermModuleGrading(ring_grading, rank, tuple_shifts, tie or "pot")
    elif kind == "elim":
        if len(tokens) < 2:
            raise UsageError("grading elim needs a split index")
        try:
            k = int(tokens[1])
        except ValueError:
            raise UsageError("grading elim needs an integer split index") from None
        if k < 0 or k > d:
            raise UsageError("split index out of range")
        if shifts and any(s != 0 for s in shifts):
            raise UsageError("elimination gradings support zero shifts only")
        spec = CoarseModuleGrading(BlockGrading(d, tuple(range(k))), rank)
    else:
        raise UsageError(f"unknown grading {kind!r}")
    report = verify_monoid_order(spec.ring)
    if not report.passed:
        raise UsageError("invalid grading: " + "; ".join(report.failures))
    return spec


def parse_group_file(text, ring) -> GroupAction:
    matrices = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head in ("matrix", "generators:"):
                rows, _ = _parse_bracket_list(rest, line_no)
                matrices.append(rows)
            elif head == "perm":
                cycle = tuple(int(v) for v in rest.strip("()").split())
                matrices.append(permutation_matrix(ring.nvars, cycle))
            elif head == "signed-perm":
                images = [int(v) for v in rest.strip("()").split()]
                matrices.append(signed_permutation_matrix(ring.nvars, images))
            elif head == "group":
                continue
            else:
                raise ParseError(f"unknown group declaration {head!r}", line_no, 1)
        except ValueError:
            raise ParseError("malformed group generator", line_no, 1) from None
    if not matrices:
        raise ParseError("group file defines no generators", 1, 1)
    return GroupAction(ring, matrices)


# ---------------------------------------------------------------------------
# result documents


def _input_hash(text, args_summary):
    return hashlib.sha256((text + "\n" + args_summary).encode()).hexdigest()[:16]


def _element_entries(elements, spec):
    ordered = canonical_order(list(elements), spec)
    return [
        {"degree": format_degree(degree_of(m, spec)), "element": render_element(m)}
        for m in ordered
    ]


def run_command(command, problem: ProblemFile, args) -> dict:
    spec = problem.grading()
    policy = None
    if args.policy:
        policy = {"pivot": PIVOT, "orthogonal": ORTHOGONAL}[args.policy]
    config = BuchbergerConfig(
        max_iterations=args.max_iterations, degree_cap=args.degree_cap, policy=policy
    )
    gens = problem.generators
    doc = {
        "command": command,
        "input_hash": _input_hash(problem.text, f"{command}|{args_summary(args)}"),
    }

    if command == "basis":
        basis = buchberger_algorithm(gens, spec, config)
        if args.reduced:
            basis = interreduce(basis, spec, policy)
        if args.certify:
            cert = buchberger_criterion(list(basis.elements), spec, policy)
            if not cert.holds:
                raise UsageError("output failed recertification")
        doc["elements"] = _element_entries(basis.elements, spec)
        doc["reduced"] = bool(args.reduced)
        doc["criterion"] = "pass"
        profile = degree_profile(basis)
        doc["profile"] = {
            format_degree(d): profile[d] for d in spec.sort_degrees(profile.keys())
        }
    elif command == "verify":
        result = buchberger_criterion(gens, spec, policy, config)
        doc["criterion"] = "pass" if result.holds else "fail"
        if result.witness is not None:
            doc["witness"] = {
                "syzygy": render_element(result.witness.syzygy),
                "combination": render_element(result.witness.combination),
                "remainder": render_element(result.witness.remainder),
            }
    elif command == "reduce":
        if not args.element:
            raise UsageError("reduce needs --element")
        m = parse_element(problem.ring, problem.rank, args.element)
        reducer = Reducer(gens, spec, policy)
        nf, trace = reducer.normal_form(m)
        doc["normal_form"] = render_element(nf)
        if args.trace:
            doc["trace"] = [
                {
                    "degree": format_degree(step.degree),
                    "multipliers": [
                        {"index": idx + 1, "monomial": list(exps), "coefficient": problem.field.render(c)}
                        for idx, exps, c in step.multipliers
                    ],
                    "snapshot": step.snapshot,
                }
                for step in trace.steps
            ]
    elif command == "syzygy":
        basis = buchberger_algorithm(gens, spec, config)
        syz = schreyer_syzygy_basis(basis, config)
        doc["elements"] = [{"element": render_element(m)} for m in syz.elements]
        doc["criterion"] = "pass" if syz.certificate.holds else "fail"
    elif command == "eliminate":
        if not args.keep:
            raise UsageError("eliminate needs --keep")
        keep = [v for v in args.keep.replace(",", " ").split() if v]
        elim = EliminationSpec(problem.ring, keep)
        kept_spec = CoarseModuleGrading(elim.grading, problem.rank)
        out = eliminate(gens, elim, config)
        doc["elements"] = _element_entries(out, kept_spec)
    elif command == "hilbert":
        if not args.degrees:
            raise UsageError("hilbert needs --degrees a..b")
        lo, _, hi = args.degrees.partition("..")
        degrees = list(range(int(lo), int(hi) + 1)) if hi else [int(lo)]
        if not isinstance(spec.ring, TotalDegreeGrading):
            raise UsageError("hilbert requires the total-degree grading")
        table = hilbert_function(gens, spec, degrees, config=config)
        doc["hilbert"] = [
            {"degree": str(d), "dim": v} for d, v in zip(table.degrees, table.values)
        ]
    elif command in ("homogenize", "dehomogenize"):
        var = args.var or "t"
        if command == "homogenize":
            shifts = problem.shifts or None
            ctx = HomogenizationContext(problem.ring, var, shifts, problem.rank)
            out = homogenize(gens, ctx)
            out_spec = ctx.target_grading()
            result = verify_homogenization_equivalence(gens, ctx, policy, config)
            doc["h_basis_certificate"] = "pass" if result.holds else "fail"
        else:
            if var not in problem.ring.names:
                raise UsageError(f"variable {var!r} not present")
            keep = tuple(n for n in problem.ring.names if n != var)
            if problem.ring.names[-1] != var:
                raise UsageError("the homogenizing variable must be declared last")
            source = PolyRing(problem.field, keep)
            ctx = HomogenizationContext(source, var, problem.shifts or None, problem.rank)
            out = dehomogenize(gens, ctx)
            out_spec = ctx.coarse
        doc["elements"] = _element_entries([m for m in out if not m.is_zero()], out_spec)
    elif command == "check-invariant":
        group_text = None
        path = args.group or problem.group_path
        if not path:
            raise UsageError("check-invariant needs --group <file>")
        with open(path, "r", encoding="utf-8") as fh:
            group_text = fh.read()
        action = parse_group_file(group_text, problem.ring)
        report = span_is_invariant(gens, action)
        doc["invariant"] = report.invariant
        doc["witnesses"] = [
            {
                "generator": w.generator + 1,
                "element": w.element + 1,
                "solved": w.coordinates is not None,
                "residual": None if w.residual is None else render_element(w.residual),
            }
            for w in report.witnesses
        ]
        if args.equivariance_samples:
            eq = check_equivariant_normal_form(
                gens, spec, action, samples=args.equivariance_samples
            )
            doc["equivariant"] = eq.equivariant
    else:
        raise UsageError(f"unknown command {command!r}")
    return doc


def args_summary(args) -> str:
    fields = (
        "coeff grading reduced certify trace format max_iterations degree_cap "
        "keep var group degrees element policy equivariance_samples"
    ).split()
    return "|".join(f"{k}={getattr(args, k, None)}" for k in fields)


def format_result(doc, fmt="text") -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    lines = [f"# {doc['command']}", f"input-hash: {doc['input_hash']}"]
    if "criterion" in doc:
        lines.append(f"criterion: {doc['criterion']}")
    if "witness" in doc:
        w = doc["witness"]
        lines.append(f"witness syzygy: {w['syzygy']}")
        lines.append(f"witness combination: {w['combination']}")
        lines.append(f"witness remainder: {w['remainder']}")
    if "elements" in doc:
        lines.append(f"elements: {len(doc['elements'])}")
        for entry in doc["elements"]:
            if "degree" in entry:
                lines.append(f"  deg {entry['degree']}: {entry['element']}")
            else:
                lines.append(f"  {entry['element']}")
    if "profile" in doc:
        body = ", ".join(f"{k}: {v}" for k, v in doc["profile"].items())
        lines.append(f"profile: {{{body}}}")
    if "normal_form" in doc:
        lines.append(f"normal-form: {doc['normal_form']}")
    if "trace" in doc:
        for step in doc["trace"]:
            multipliers = ", ".join(
                f"{m['coefficient']}*x^{tuple(m['monomial'])}*g{m['index']}" for m in step["multipliers"]
            )
            lines.append(f"  step deg {step['degree']}: subtract {multipliers}")
    if "hilbert" in doc:
        for row in doc["hilbert"]:
            lines.append(f"H({row['degree']}) = {row['dim']}")
    if "invariant" in doc:
        lines.append(f"invariant: {'yes' if doc['invariant'] else 'no'}")
        for w in doc.get("witnesses", ()):
            status = "solved" if w["solved"] else f"residual {w['residual']}"
            lines.append(f"  generator {w['generator']} on element {w['element']}: {status}")
    if "equivariant" in doc:
        lines.append(f"equivariant: {'yes' if doc['equivariant'] else 'no'}")
    if "h_basis_certificate" in doc:
        lines.append(f"h-basis certificate: {doc['h_basis_certificate']}")
    if "reduced" in doc:
        lines.append(f"reduced: {'yes' if doc['reduced'] else 'no'}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macaulay",
        description="Macaulay bases of graded modules over polynomial rings, exactly.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("problem", help="problem file")
    parser.add_argument("--coeff", default=None, help="coefficient field: q or fp:<p>")
    parser.add_argument("--grading", default=None, help="override the grading declaration")
    parser.add_argument("--reduced", action="store_true")
    parser.add_argument("--certify", action="store_true")
    parser.add_argument("--trace", action="store_true")
    parser.add_argument("--format", default="text", choices=("text", "json"))
    parser.add_argument("--max-iterations", type=int, default=64, dest="max_iterations")
    parser.add_argument("--degree-cap", type=int, default=None, dest="degree_cap")
    parser.add_argument("--keep", default=None, help="variables to keep for eliminate")
    parser.add_argument("--var", default=None, help="homogenizing variable name")
    parser.add_argument("--group", default=None, help="group file for check-invariant")
    parser.add_argument("--degrees", default=None, help="degree range a..b for hilbert")
    parser.add_argument("--element", default=None, help="element to reduce")
    parser.add_argument("--policy", default=None, choices=("pivot", "orthogonal"))
    parser.add_argument(
        "--equivariance-samples", type=int, default=0, dest="equivariance_samples"
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.problem, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    default_field = field_from_spec(args.coeff) if args.coeff else None
    try:
        problem = parse_problem(text, default_field)
        if args.grading:
            problem.grading_decl = args.grading
        doc = run_command(args.command, problem, args)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 4
    sys.stdout.write(format_result(doc, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())

import random

import pytest

from macaulay.errors import ResourceLimitError, UsageError
from macaulay.gradlin import ORTHOGONAL, PIVOT
from macaulay.grading import TermOrderGrading, TotalDegreeGrading
from macaulay.macbasis import buchberger_algorithm
from macaulay.polymod import ModuleElement
from macaulay.reduction import Reducer
from macaulay.symmetry import (
    GroupAction,
    check_equivariant_normal_form,
    is_homogeneous_action,
    is_monomial_matrix,
    permutation_matrix,
    random_element,
    signed_permutation_matrix,
    span_is_invariant,
)


@pytest.fixture
def swap(R2):
    return GroupAction(R2, [permutation_matrix(2, (1, 2))])


@pytest.fixture
def c4(R2):
    return GroupAction(R2, [signed_permutation_matrix(2, [-2, 1])])


def test_act_examples(el, swap, c4):
    sym = el("x1^2*x2^2 - 1")
    assert swap.act(swap.generators[0], sym) == sym
    c = c4.generators[0]
    assert c4.act(c, el("x1*x2^2")) == el("-x1^2*x2")
    g3 = el("x1^3*x2 - x1*x2^3")
    assert c4.act(c, g3) == g3


def test_action_axioms(R2, c4):
    rng = random.Random(16)
    identity = c4.elements[0]
    for _ in range(30):
        m = random_element(R2, 1, rng, max_degree=4, terms=4)
        assert c4.act(identity, m) == m
        for g in c4.elements:
            for h in c4.elements:
                gh = tuple(
                    tuple(
                        sum(g[i][k] * h[k][j] for k in range(2)) for j in range(2)
                    )
                    for i in range(2)
                )
                assert c4.act(g, c4.act(h, m)) == c4.act(gh, m)
        break  # the inner double loop already covers all 16 pairs


def test_closure_sizes(R2, swap, c4):
    assert len(swap.elements) == 2
    assert len(c4.elements) == 4


def test_closure_cap(R2):
    shear = [[1, 1], [0, 1]]  # infinite order
    with pytest.raises(ResourceLimitError):
        GroupAction(R2, [shear], max_elements=16)


def test_singular_matrix_rejected(R2):
    with pytest.raises(UsageError):
        GroupAction(R2, [[[1, 1], [1, 1]]])
    with pytest.raises(UsageError):
        GroupAction(R2, [[[0.5, 0], [0, 1]]])


def test_is_homogeneous_action(R2, swap):
    assert is_homogeneous_action(swap, TotalDegreeGrading(2))
    assert not is_homogeneous_action(swap, TermOrderGrading.degrevlex(2))


def test_shear_homogeneity(R2):
    # a shear is linear, hence homogeneous for total degree, but it mixes
    # monomials; its closure is infinite, so build the action without one
    action = GroupAction.__new__(GroupAction)
    action.ring = R2
    field = R2.field
    action.generators = (tuple(tuple(field.from_int(v) for v in row) for row in ((1, 1), (0, 1))),)
    action._images = {}
    assert is_homogeneous_action(action, TotalDegreeGrading(2))
    assert not is_homogeneous_action(action, TermOrderGrading.degrevlex(2))


def test_monomial_matrix_detection(Q):
    assert is_monomial_matrix(((Q.zero, Q.one), (Q.from_int(-1), Q.zero)), Q)
    assert not is_monomial_matrix(((Q.one, Q.one), (Q.zero, Q.one)), Q)


def test_span_invariance_examples(el, swap, c4, circle_pair, total2, c4_triple):
    assert span_is_invariant(circle_pair, swap).invariant

    degrevlex_basis = [el("x1^2 + x2^2 - 1"), el("x2^4 - x2^2 + 1")]
    report = span_is_invariant(degrevlex_basis, swap)
    assert not report.invariant
    failing = [w for w in report.witnesses if w.residual is not None]
    assert failing  # x1^4 - x1^2 + 1 has no expression in the span

    six = c4_triple + [el("x1*x2^2"), el("x1^2*x2"), el("x1*x2")]
    assert span_is_invariant(six, c4).invariant
    assert span_is_invariant(c4_triple, c4).invariant


def test_invariance_witness_coordinates(el, swap, circle_pair):
    report = span_is_invariant(circle_pair, swap)
    for w in report.witnesses:
        assert w.coordinates is not None and w.residual is None
    # both elements are symmetric, so the coordinates are unit vectors
    assert report.witnesses[0].coordinates[0] == 1


def test_ideal_invariance_under_action(el, total2, c4, c4_triple):
    basis = buchberger_algorithm(c4_triple, total2)
    reducer = Reducer(list(basis.elements), total2)
    for g in c4.elements:
        for m in basis.elements:
            ok, _ = reducer.reduces_to_zero(c4.act(g, m))
            assert ok


def test_equivariant_normal_form_examples(el, total2, swap, circle_pair):
    report = check_equivariant_normal_form(circle_pair, total2, swap, samples=15, seed=17)
    assert report.equivariant

    reducer = Reducer(circle_pair, total2, ORTHOGONAL)
    sym = el("x1^2 + x2^2")  # fixed by the swap
    nf, _ = reducer.normal_form(sym)
    assert swap.act(swap.generators[0], nf) == nf

    member = el("x2^4 - x2^2 + 1")
    nf_m, _ = reducer.normal_form(member)
    nf_s, _ = reducer.normal_form(swap.act(swap.generators[0], member))
    assert nf_m.is_zero() and nf_s.is_zero()

    swapped_nf, _ = reducer.normal_form(el("x2^4"))
    base_nf, _ = reducer.normal_form(el("x1^4"))
    assert swapped_nf == swap.act(swap.generators[0], base_nf)
    assert base_nf == el("1/2*x1^2 - 1/2*x2^2 - 1/2")


def test_equivariance_preconditions(el, total2, swap, circle_pair, R2):
    with pytest.raises(UsageError) as err:
        check_equivariant_normal_form(circle_pair, total2, swap, policy=PIVOT)
    assert "monomial-orthogonal" in str(err.value)

    rotationish = GroupAction(R2, [[[0, 1], [-1, 1]]])  # invertible, not monomial
    with pytest.raises(UsageError) as err:
        check_equivariant_normal_form(circle_pair, total2, rotationish, samples=2)
    assert "monomial" in str(err.value)


def test_group_acts_componentwise(R2, swap):
    m = ModuleElement(R2, (R2.parse("x1"), R2.parse("x2^2")))
    out = swap.act(swap.generators[0], m)
    assert out == ModuleElement(R2, (R2.parse("x2"), R2.parse("x1^2")))


def test_reduced_bases_have_invariant_spans(total2, swap, c4, circle_pair, c4_triple):
    # the span of a computed reduced basis is invariant whenever the action
    # fixes the ideal and respects the grading and inner product
    from macaulay.macbasis import interreduce

    red_swap = interreduce(buchberger_algorithm(circle_pair, total2), total2)
    assert span_is_invariant(list(red_swap.elements), swap).invariant

    red_c4 = interreduce(buchberger_algorithm(c4_triple, total2), total2)
    assert span_is_invariant(list(red_c4.elements), c4).invariant

"""Exact linear algebra inside graded components of a free module.

A graded component N_b has the module monomials of degree b as a canonical
ordered basis.  The workspace W_b(X), spanned by all monomial multiples of the
leading forms of X that land in degree b, is kept as a reduced row-echelon
matrix over that basis, with bookkeeping that expresses every echelon row as a
combination of the original generator multiples: membership tests, canonical
complements and explicit decompositions all come from the same elimination.

Two complement policies are supported.  The pivot-canonical complement (the
span of the non-pivot monomials) exists in every characteristic.  The
monomial-orthogonal complement, taken with respect to the inner product that
makes the module monomials orthonormal, needs characteristic zero; it is the
choice that is invariant under signed permutations of the variables.
"""

from typing import NamedTuple

from .errors import MembershipError, UsageError
from .grading import degrevlex_key
from .polymod import ModuleElement, leading_form

PIVOT = "pivot-canonical"
ORTHOGONAL = "monomial-orthogonal"


def default_policy(field) -> str:
    return ORTHOGONAL if field.characteristic == 0 else PIVOT


def check_policy(policy, field):
    if policy not in (PIVOT, ORTHOGONAL):
        raise UsageError(f"unknown complement policy {policy!r}")
    if policy == ORTHOGONAL and field.characteristic != 0:
        raise UsageError("monomial-orthogonal complements need characteristic zero")


class ComponentBasis(NamedTuple):
    """Ordered monomial basis of one graded component N_b."""

    degree: object
    monomials: tuple
    index: dict

    @property
    def dim(self):
        return len(self.monomials)


def component_monomials(spec, degree) -> ComponentBasis:
    # canonical order: component ascending, degrevlex descending inside
    mons = sorted(set(spec.component_monomials(degree)), key=lambda t: degrevlex_key(t[1]), reverse=True)
    mons = tuple(sorted(mons, key=lambda t: t[0]))
    return ComponentBasis(degree, mons, {m: k for k, m in enumerate(mons)})


def vector_of(element: ModuleElement, basis: ComponentBasis, field):
    """Coordinates of a homogeneous element over the component basis."""
    vec = [field.zero] * basis.dim
    for key, c in element.term_map().items():
        pos = basis.index.get(key)
        if pos is None:
            raise UsageError("element has a term outside the graded component")
        vec[pos] = c
    return vec


def element_of(vec, basis: ComponentBasis, ring, rank: int) -> ModuleElement:
    terms = {m: c for m, c in zip(basis.monomials, vec) if not ring.field.is_zero(c)}
    return ModuleElement.from_terms(ring, rank, terms)


def rref(rows, field, track=True):
    """Reduced row echelon form with combination tracking.

    Returns (echelon rows, pivot columns, combos) where ``combos[k]`` expresses
    echelon row k in the original rows.  Zero rows are dropped.  The pivot
    search takes the first nonzero candidate in row order, so the result is
    deterministic in the input order.
    """
    n = len(rows)
    work = [list(r) for r in rows]
    combos = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)] if track else None
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, n) if not field.is_zero(work[i][c])), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        if track:
            combos[r], combos[piv] = combos[piv], combos[r]
        inv = field.inv(work[r][c])
        work[r] = [field.mul(inv, v) for v in work[r]]
        if track:
            combos[r] = [field.mul(inv, v) for v in combos[r]]
        for i in range(n):
            if i != r and not field.is_zero(work[i][c]):
                f = work[i][c]
                work[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(work[i], work[r])]
                if track:
                    combos[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(combos[i], combos[r])]
        pivots.append(c)
        r += 1
    return work[:r], pivots, (combos[:r] if track else None)


class GradedSubspace:
    """Echelonized subspace of one graded component, with generator bookkeeping.

    ``gens`` records the generator multiples (element index, multiplier
    exponents) whose span this is; ``combos`` expresses each echelon row in
    those generators.
    """

    def __init__(self, degree, ambient: ComponentBasis, field, gens, raw_rows):
        self.degree = degree
        self.ambient = ambient
        self.field = field
        self.gens = tuple(gens)
        self.rows, self.pivots, self.combos = rref(raw_rows, field)

    @property
    def dim(self):
        return len(self.rows)

    def reduce_vector(self, vec):
        """Eliminate pivot coordinates; returns (residue, combo over gens)."""
        field = self.field
        residue = list(vec)
        combo = [field.zero] * len(self.gens)
        for row, piv, rcombo in zip(self.rows, self.pivots, self.combos):
            c = residue[piv]
            if field.is_zero(c):
                continue
            residue = [field.sub(v, field.mul(c, w)) for v, w in zip(residue, row)]
            combo = [field.add(v, field.mul(c, w)) for v, w in zip(combo, rcombo)]
        return residue, combo

    def contains(self, vec) -> bool:
        residue, _ = self.reduce_vector(vec)
        return all(self.field.is_zero(v) for v in residue)


def w_space(X, degree, spec, lf_parts=None) -> GradedSubspace:
    """The span of degree-matching monomial multiples of the leading forms of X."""
    if not X:
        raise UsageError("w_space needs at least one element")
    ring = X[0].ring
    field = ring.field
    if lf_parts is None:
        lf_parts = [leading_form(m, spec) for m in X]
    ambient = component_monomials(spec, degree)
    gens = []
    raw_rows = []
    for idx, part in enumerate(lf_parts):
        for mult in spec.multipliers(part.degree, degree):
            shifted = part.element.mul_term(mult)
            gens.append((idx, mult))
            raw_rows.append(vector_of(shifted, ambient, field))
    return GradedSubspace(degree, ambient, field, gens, raw_rows)


def project_complement(element: ModuleElement, sub: GradedSubspace, policy: str) -> ModuleElement:
    """The component of a homogeneous element in the fixed complement of W.

    Pivot-canonical: eliminate the pivot coordinates, leaving the span of the
    non-pivot monomials.  Monomial-orthogonal: subtract the orthogonal
    projection onto W.  Either way ``element - result`` lies in W.
    """
    field = sub.field
    check_policy(policy, field)
    vec = vector_of(element, sub.ambient, field)
    if policy == PIVOT:
        residue, _ = sub.reduce_vector(vec)
        out = residue
    else:
        out = [v for v in vec]
        if sub.rows:
            coeffs = _gram_solve(sub.rows, vec, field)
            for cf, row in zip(coeffs, sub.rows):
                out = [field.sub(v, field.mul(cf, w)) for v, w in zip(out, row)]
    return element_of(out, sub.ambient, element.ring, element.rank)


def _dot(u, v, field):
    acc = field.zero
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(a, b))
    return acc


def _gram_solve(rows, vec, field):
    """Coefficients of the orthogonal projection of vec onto span(rows)."""
    k = len(rows)
    gram = [[_dot(rows[i], rows[j], field) for j in range(k)] for i in range(k)]
    rhs = [_dot(rows[i], vec, field) for i in range(k)]
    aug = [gram[i] + [rhs[i]] for i in range(k)]
    ech, pivots, _ = rref(aug, field, track=False)
    # rows independent and char 0: the Gram matrix is invertible
    coeffs = [field.zero] * k
    for row, piv in zip(ech, pivots):
        coeffs[piv] = row[k]
    return coeffs


def decompose_in_w(element: ModuleElement, sub: GradedSubspace):
    """Write a member of W as sum of c * x^a * (leading form of X[i]).

    Returns [(element index, multiplier exponents, coefficient)] in generator
    enumeration order; raises MembershipError if the element is outside W.
    """
    field = sub.field
    vec = vector_of(element, sub.ambient, field)
    residue, combo = sub.reduce_vector(vec)
    if not all(field.is_zero(v) for v in residue):
        raise MembershipError("element does not lie in the workspace W_b(X)")
    out = []
    for (idx, mult), c in zip(sub.gens, combo):
        if not field.is_zero(c):
            out.append((idx, mult, c))
    return out

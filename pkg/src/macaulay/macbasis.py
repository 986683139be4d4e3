"""Macaulay bases: the Buchberger criterion, completion, and syzygy lifting.

A finite generating set X is a Macaulay basis when the leading forms of X
generate the full leading-form submodule.  The working characterization is
Buchberger's: fix a homogeneous generating set of the syzygies of the leading
forms; X is a basis iff every such syzygy, applied to X itself, reduces to
zero.  Completion repeatedly adjoins normal forms of the failing combinations
until the criterion holds.

Syzygies of leading forms are produced two ways.  When every leading form is
a single term, the pairwise lcm combinations generate (the classical S-pairs).
Otherwise the generators are found by elimination: inside N + R^n, compute a
basis of the module generated by (lf m_i, e_i) under a block term order that
ranks every N-monomial above every coordinate monomial and refines the induced
syzygy grading on the coordinate block; basis elements with vanishing N-part
are exactly the syzygy generators.  Since that block order is a term order,
the inner computation only ever needs the S-pair path and terminates.
"""

import hashlib
from functools import cmp_to_key
from typing import NamedTuple

from .errors import ResourceLimitError, UsageError
from .grading import (
    EQUAL,
    GREATER,
    LESS,
    ModuleGrading,
    SyzygyGrading,
    TermOrderGrading,
)
from .gradlin import default_policy, vector_of
from .polymod import (
    ModuleElement,
    degree_of,
    homogeneous_components,
    is_homogeneous,
    leading_form,
)
from .reduction import Reducer, dot


class BuchbergerConfig(NamedTuple):
    max_iterations: int = 64
    degree_cap: int | None = None
    policy: str | None = None


class CriterionWitness(NamedTuple):
    syzygy: ModuleElement
    combination: ModuleElement
    remainder: ModuleElement


class CriterionResult(NamedTuple):
    holds: bool
    witness: CriterionWitness | None


class MacaulayBasis:
    """A certified Macaulay basis of the submodule its elements generate."""

    def __init__(self, elements, spec, policy, reduced, certificate, provenance=None):
        self.elements = tuple(elements)
        self.spec = spec
        self.policy = policy
        self.reduced = reduced
        self.certificate = certificate
        self.provenance = provenance or {}

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        tag = "reduced " if self.reduced else ""
        return f"<{tag}MacaulayBasis of {len(self.elements)} elements>"


def normalize_element(m: ModuleElement, spec) -> ModuleElement:
    """Scale so the canonical first term of the leading form has coefficient 1."""
    if m.is_zero():
        return m
    lf = leading_form(m, spec).element
    (_, _), coeff = next(iter(lf.terms()))
    field = m.ring.field
    if coeff == field.one:
        return m
    return m.scale(field.inv(coeff))


def _syntactic_degree(m: ModuleElement) -> int:
    return max((sum(exps) for (_, exps), _ in m.terms()), default=0)


def canonical_order(elements, spec):
    elements = sorted(elements, key=str)
    return sorted(
        elements,
        key=cmp_to_key(lambda a, b: spec.compare(degree_of(a, spec), degree_of(b, spec))),
    )


def _provenance(generators, spec, config):
    text = "|".join(sorted(str(g) for g in generators)) + f"|{spec!r}|{config!r}"
    return {
        "generator_count": len(generators),
        "config": repr(config),
        "hash": hashlib.sha256(text.encode()).hexdigest()[:16],
    }


# ---------------------------------------------------------------------------
# syzygies of leading forms


def monomial_syzygy_generators(terms):
    """Pairwise lcm syzygies of single-term module elements.

    Pairs in different free-module components cancel nothing and contribute
    no generator.  Coefficients are corrected so the combination vanishes.
    """
    infos = []
    ring = None
    for t in terms:
        items = list(t.term_map().items())
        if len(items) != 1:
            raise UsageError("monomial syzygies need single-term elements")
        (comp, exps), coeff = items[0]
        infos.append((comp, exps, coeff))
        ring = t.ring
    field = ring.field
    n = len(infos)
    out = []
    for i in range(n):
        ci, ei, coef_i = infos[i]
        for j in range(i + 1, n):
            cj, ej, coef_j = infos[j]
            if ci != cj:
                continue
            lcm = tuple(max(a, b) for a, b in zip(ei, ej))
            syz = ModuleElement.from_terms(
                ring,
                n,
                {
                    (i, tuple(a - b for a, b in zip(lcm, ei))): field.inv(coef_i),
                    (j, tuple(a - b for a, b in zip(lcm, ej))): field.neg(field.inv(coef_j)),
                },
            )
            out.append(syz)
    return out


class _ExtendedOrder(ModuleGrading):
    """Block term order on N + R^n eliminating the N-part.

    Every monomial of the first ``base_rank`` components outranks every
    coordinate monomial, so basis elements led by a coordinate monomial have
    no N-part at all.  Inside the coordinate block the order refines the
    syzygy grading (degree first, degrevlex and position to break ties),
    which makes the extracted generators a basis with respect to it.
    """

    def __init__(self, syz: SyzygyGrading, base_rank: int):
        self.syz = syz
        self.base_rank = base_rank
        self.rank = base_rank + syz.rank
        self.ring = syz.ring
        self._drl = TermOrderGrading.degrevlex(syz.ring.nvars)

    def degree_of_term(self, comp, exps):
        return (comp, tuple(exps))

    def compare(self, a, b):
        (i, u), (j, v) = a, b
        bi = 0 if i < self.base_rank else 1
        bj = 0 if j < self.base_rank else 1
        if bi != bj:
            return GREATER if bi < bj else LESS
        if bi == 1:
            si = self.syz.degree_of_term(i - self.base_rank, u)
            sj = self.syz.degree_of_term(j - self.base_rank, v)
            c = self.syz.compare(si, sj)
            if c != EQUAL:
                return c
        c = self._drl.compare(u, v)
        if c != EQUAL:
            return c
        return (j > i) - (j < i)

    def translate(self, deg, exps):
        comp, u = deg
        return (comp, tuple(a + b for a, b in zip(u, exps)))

    def multipliers(self, source, target):
        if source[0] != target[0]:
            return []
        diff = tuple(a - b for a, b in zip(target[1], source[1]))
        return [diff] if all(v >= 0 for v in diff) else []

    def component_monomials(self, deg):
        comp, u = deg
        return [(comp, u)] if all(v >= 0 for v in u) else []


def syzygy_grading(spec, lf_elements) -> SyzygyGrading:
    """The grading of coordinate space over the degrees of the given forms."""
    return SyzygyGrading(spec, tuple(degree_of(m, spec) for m in lf_elements))


def _split_homogeneous(elements, spec):
    out = []
    for m in elements:
        for part in homogeneous_components(m, spec):
            cand = normalize_element(part.element, spec)
            if cand not in out:
                out.append(cand)
    return out


def leading_syzygy_generators(lf_elements, spec, config=None):
    """A homogeneous generating set of Syz(lf m_1, ..., lf m_n).

    Inputs must be homogeneous.  Single-term inputs take the lcm fast path;
    otherwise the elimination method runs.  Every returned generator is
    homogeneous for the syzygy grading over the input degrees, because the
    graded pieces of a syzygy of homogeneous elements are again syzygies.
    """
    lf_elements = list(lf_elements)
    for m in lf_elements:
        if m.is_zero() or not is_homogeneous(m, spec):
            raise UsageError("leading-form syzygies need nonzero homogeneous inputs")
    if len(lf_elements) <= 1:
        return []
    syzspec = syzygy_grading(spec, lf_elements)
    if all(len(m.term_map()) == 1 for m in lf_elements):
        gens = monomial_syzygy_generators(lf_elements)
        return canonical_order([normalize_element(s, syzspec) for s in gens], syzspec)

    ring = lf_elements[0].ring
    field = ring.field
    r = lf_elements[0].rank
    n = len(lf_elements)
    ext = _ExtendedOrder(syzspec, r)
    zero_exps = (0,) * ring.nvars
    extended = []
    for i, m in enumerate(lf_elements):
        terms = dict(m.term_map().items())
        terms[(r + i, zero_exps)] = field.one
        extended.append(ModuleElement.from_terms(ring, r + n, terms))
    inner = BuchbergerConfig(max_iterations=(config.max_iterations if config else 64))
    basis = buchberger_algorithm(extended, ext, inner)
    raw = []
    for g in basis.elements:
        if all(g.polys[k].is_zero() for k in range(r)):
            raw.append(ModuleElement(ring, g.polys[r:]))
    return canonical_order(_split_homogeneous(raw, syzspec), syzspec)


# ---------------------------------------------------------------------------
# criterion and completion


def buchberger_criterion(X, spec, policy=None, config=None) -> CriterionResult:
    """Does every leading-form syzygy of X, applied to X, reduce to zero?"""
    X = list(X)
    if not X:
        return CriterionResult(True, None)
    if any(m.is_zero() for m in X):
        raise UsageError("criterion inputs must be nonzero")
    lf_parts = [leading_form(m, spec) for m in X]
    if all(p.element == m for p, m in zip(lf_parts, X)):
        # homogeneous generators span a graded submodule, whose leading forms
        # are the generators themselves: the criterion holds outright
        return CriterionResult(True, None)
    sygens = leading_syzygy_generators([p.element for p in lf_parts], spec, config)
    reducer = Reducer(X, spec, policy)
    for s in sygens:
        v = dot(s, X)
        if v.is_zero():
            continue
        ok, trace = reducer.reduces_to_zero(v)
        if not ok:
            return CriterionResult(False, CriterionWitness(s, v, trace.final))
    return CriterionResult(True, None)


def buchberger_algorithm(generators, spec, config=None) -> MacaulayBasis:
    """Complete a generating set to a Macaulay basis.

    Each round recomputes the full homogeneous syzygy generating set of the
    current leading forms, reduces every combination to a normal form against
    the frozen set, and adjoins the nonzero results.  Every adjoined element
    has its leading form outside the old workspace, so the leading-form
    submodule grows strictly and the loop halts; the iteration cap only guards
    against runaway inputs.
    """
    config = config or BuchbergerConfig()
    gens = [g for g in generators if not g.is_zero()]
    policy = config.policy
    if gens:
        field = gens[0].ring.field
        policy = policy if policy is not None else default_policy(field)
    X = []
    for g in gens:
        ng = normalize_element(g, spec)
        if ng not in X:
            X.append(ng)
    provenance = _provenance(generators, spec, config)
    if not X:
        return MacaulayBasis((), spec, policy, True, CriterionResult(True, None), provenance)

    for _ in range(config.max_iterations):
        lf_parts = [leading_form(m, spec) for m in X]
        sygens = leading_syzygy_generators([p.element for p in lf_parts], spec, config)
        reducer = Reducer(X, spec, policy)
        added = []
        for s in sygens:
            v = dot(s, X)
            if v.is_zero():
                continue
            nf, _ = reducer.normal_form(v)
            if nf.is_zero():
                continue
            nf = normalize_element(nf, spec)
            if nf in added:
                continue
            if config.degree_cap is not None and _syntactic_degree(nf) > config.degree_cap:
                raise ResourceLimitError("degree cap exceeded", partial=tuple(X + added))
            added.append(nf)
        if not added:
            return MacaulayBasis(
                tuple(X), spec, policy, False, CriterionResult(True, None), provenance
            )
        for y in added:
            part = leading_form(y, spec)
            sub = reducer.w_space(part.degree)
            if sub.contains(vector_of(part.element, sub.ambient, y.ring.field)):
                raise AssertionError("normal form left its leading form inside the workspace")
        X.extend(added)
    raise ResourceLimitError("iteration cap exceeded", partial=tuple(X))


def interreduce(basis_or_elements, spec, policy=None, max_passes=100) -> MacaulayBasis:
    """Reduce every element against the others until a fixed point.

    Elements that reduce to zero are dropped; survivors are normalized.  The
    result generates the same submodule with the same leading-form submodule
    and is certified against the criterion before being returned.
    """
    if isinstance(basis_or_elements, MacaulayBasis):
        elements = list(basis_or_elements.elements)
        policy = policy if policy is not None else basis_or_elements.policy
    else:
        elements = list(basis_or_elements)
    elements = [normalize_element(m, spec) for m in elements if not m.is_zero()]
    deduped = []
    for m in elements:
        if m not in deduped:
            deduped.append(m)
    elements = deduped

    for _ in range(max_passes):
        elements = canonical_order(elements, spec)
        changed = False
        for idx in range(len(elements)):
            rest = elements[:idx] + elements[idx + 1 :]
            if not rest:
                continue
            nf, _ = Reducer(rest, spec, policy).normal_form(elements[idx])
            if nf.is_zero():
                elements.pop(idx)
                changed = True
                break
            nf = normalize_element(nf, spec)
            if nf != elements[idx]:
                elements[idx] = nf
                changed = True
        if not changed:
            break
    else:
        raise ResourceLimitError("interreduction did not stabilize", partial=tuple(elements))

    certificate = buchberger_criterion(elements, spec, policy)
    if not certificate.holds:
        raise UsageError("interreduce requires a Macaulay basis")
    return MacaulayBasis(tuple(elements), spec, policy, True, certificate)


def lift_syzygy(s: ModuleElement, X, spec, policy=None) -> ModuleElement:
    """Lift a homogeneous syzygy of the leading forms to a syzygy of X.

    Reduces the combination sum s_i m_i to zero and subtracts the recorded
    representation; the result t satisfies sum t_i m_i = 0 with leading form s.
    """
    X = list(X)
    v = dot(s, X)
    if v.is_zero():
        return s
    ok, trace = Reducer(X, spec, policy).reduces_to_zero(v)
    if not ok:
        raise UsageError("cannot lift: the set does not satisfy the criterion")
    ring = s.ring
    coords = [trace.representation.get(i, ring.zero()) for i in range(len(X))]
    return s - ModuleElement(ring, coords)


def degree_profile(basis_or_elements, spec=None):
    """Multiset of element degrees as a mapping degree -> count."""
    if isinstance(basis_or_elements, MacaulayBasis):
        elements = basis_or_elements.elements
        spec = basis_or_elements.spec
    else:
        elements = list(basis_or_elements)
        if spec is None:
            raise UsageError("degree_profile needs a grading for a raw element list")
    profile = {}
    for m in elements:
        d = degree_of(m, spec)
        profile[d] = profile.get(d, 0) + 1
    return profile

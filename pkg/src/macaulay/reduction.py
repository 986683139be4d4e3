"""The generalized reduction algorithm over graded modules.

Reduction against a finite set X works degree by degree.  In span mode a step
finds the largest degree b carrying a nonzero homogeneous component of m that
lies inside the workspace W_b(X) and subtracts the witnessing combination of
elements of X, killing that component.  In complement mode the step instead
projects the component onto the fixed complement of W_b(X), subtracting only
the W-part; the result is a normal form once every component sits inside its
complement.  Both relations terminate because the offending degree strictly
decreases and the degree monoid is well ordered.

Only degrees actually appearing in m are inspected (a zero component is never
offending), which realizes the maximal-degree selection without enumerating
the degree monoid.  Steps are fully deterministic: the multipliers come from
echelon back-substitution in a fixed generator order, so identical inputs
produce identical traces.
"""

import hashlib
from typing import NamedTuple

from .errors import UsageError
from .gradlin import (
    decompose_in_w,
    default_policy,
    check_policy,
    project_complement,
    vector_of,
    w_space,
)
from .polymod import ModuleElement, homogeneous_components, leading_form

SPAN = "span"
COMPLEMENT = "complement"


def _snapshot(m: ModuleElement) -> str:
    return hashlib.sha256(str(m).encode()).hexdigest()[:16]


class ReductionStep(NamedTuple):
    degree: object
    multipliers: tuple  # ((element index, exponents, coefficient), ...)
    snapshot: str


class ReductionTrace:
    """Step log of one reduction run.

    ``representation`` maps element indices to the accumulated ring multiplier
    r_i, so that input = final + sum r_i * X[i] holds bit-exactly.
    """

    def __init__(self, ring):
        self.ring = ring
        self.steps = []
        self.final = None
        self.representation = {}

    def record(self, degree, multipliers, after):
        self.steps.append(ReductionStep(degree, tuple(multipliers), _snapshot(after)))
        for idx, exps, coeff in multipliers:
            prev = self.representation.get(idx, self.ring.zero())
            self.representation[idx] = prev + self.ring.monomial(exps, coeff)

    def representation_sum(self, X) -> ModuleElement:
        if not X:
            raise UsageError("empty basis has no representation")
        acc = None
        for idx, r in self.representation.items():
            part = X[idx].action(r)
            acc = part if acc is None else acc + part
        if acc is None:
            rank = X[0].rank
            acc = ModuleElement.from_terms(X[0].ring, rank, {})
        return acc

    def offending_degrees(self):
        return [step.degree for step in self.steps]


class Reducer:
    """Reduction engine bound to one frozen set X, one grading, one policy.

    Workspaces W_b(X) are cached per degree; the cache belongs to this object,
    so growing X means building a fresh Reducer.
    """

    def __init__(self, X, spec, policy=None):
        X = list(X)
        if not X:
            raise UsageError("reduction needs a nonempty set")
        if any(m.is_zero() for m in X):
            raise UsageError("reduction set must not contain zero")
        if any(m.ring != X[0].ring or m.rank != X[0].rank for m in X):
            raise UsageError("reduction set mixes rings or ranks")
        self.X = X
        self.spec = spec
        self.ring = X[0].ring
        self.rank = X[0].rank
        self.field = self.ring.field
        self.policy = policy if policy is not None else default_policy(self.field)
        check_policy(self.policy, self.field)
        self.lf_parts = [leading_form(m, spec) for m in X]
        self._cache = {}

    def w_space(self, degree):
        sub = self._cache.get(degree)
        if sub is None:
            sub = w_space(self.X, degree, self.spec, self.lf_parts)
            self._cache[degree] = sub
        return sub

    def _subtract(self, m, decomposition):
        for idx, exps, coeff in decomposition:
            m = m - self.X[idx].mul_term(exps, coeff)
        return m

    def span_step(self, m):
        """One -> step: kill the largest nonzero component lying in its W_b.

        Returns (m', (degree, decomposition)) or None when m is span-reduced.
        """
        for part in homogeneous_components(m, self.spec):
            sub = self.w_space(part.degree)
            vec = vector_of(part.element, sub.ambient, self.field)
            if sub.contains(vec):
                decomposition = decompose_in_w(part.element, sub)
                return self._subtract(m, decomposition), (part.degree, decomposition)
        return None

    def complement_step(self, m):
        """One => step: project the largest offending component onto W_b(X)^c."""
        for part in homogeneous_components(m, self.spec):
            sub = self.w_space(part.degree)
            kept = project_complement(part.element, sub, self.policy)
            w_part = part.element - kept
            if w_part.is_zero():
                continue
            decomposition = decompose_in_w(w_part, sub)
            return self._subtract(m, decomposition), (part.degree, decomposition)
        return None

    def normal_form(self, m):
        """Iterate => steps to the fixed point; returns (normal form, trace)."""
        trace = ReductionTrace(self.ring)
        current = m
        while True:
            step = self.complement_step(current)
            if step is None:
                break
            current, (degree, decomposition) = step
            trace.record(degree, decomposition, current)
        trace.final = current
        return current, trace

    def reduces_to_zero(self, m):
        """Iterate -> steps; True iff the closure reaches zero."""
        trace = ReductionTrace(self.ring)
        current = m
        while True:
            step = self.span_step(current)
            if step is None:
                break
            current, (degree, decomposition) = step
            trace.record(degree, decomposition, current)
        trace.final = current
        return current.is_zero(), trace


def reduce_step(m, X, spec, mode=SPAN, policy=None):
    """A single reduction step; returns (m', step info) or None when reduced."""
    reducer = Reducer(X, spec, policy)
    if mode == SPAN:
        return reducer.span_step(m)
    if mode == COMPLEMENT:
        return reducer.complement_step(m)
    raise UsageError(f"unknown reduction mode {mode!r}")


def normal_form(m, X, spec, policy=None):
    return Reducer(X, spec, policy).normal_form(m)


def reduces_to_zero(m, X, spec, policy=None):
    return Reducer(X, spec, policy).reduces_to_zero(m)


def dot(coordinates: ModuleElement, X) -> ModuleElement:
    """Evaluate a coordinate vector against a tuple of module elements."""
    if coordinates.rank != len(X):
        raise UsageError("coordinate rank must match the number of elements")
    acc = None
    for i, r in enumerate(coordinates.polys):
        if r.is_zero():
            continue
        part = X[i].action(r)
        acc = part if acc is None else acc + part
    if acc is None:
        rank = X[0].rank if X else 1
        ring = X[0].ring if X else coordinates.ring
        acc = ModuleElement.from_terms(ring, rank, {})
    return acc

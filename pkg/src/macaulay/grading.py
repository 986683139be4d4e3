"""Totally ordered monoid gradings of polynomial rings and graded free modules.

A ring grading assigns every monomial ``x^a`` a degree in a totally ordered
commutative monoid and knows how to compare, add and subtract degrees and how
to enumerate the monomials of a given degree.  Three concrete monoids cover
everything this library computes with:

* ``TotalDegreeGrading``   -- degrees are naturals, ``deg x^a = sum(a)``;
* ``TermOrderGrading``     -- degrees are the exponent vectors themselves,
  compared through an integer weight matrix (lex, degrevlex, weighted and
  elimination term orders are all weight matrices);
* ``BlockGrading``         -- degrees are pairs (kept weight, dropped weight)
  compared dropped-first, the two-block elimination grading.

Module gradings extend a ring grading to a free module of finite rank with
per-component shifts.  ``CoarseModuleGrading`` merges components that share a
degree value (graded components may then have dimension above one), while
``TermModuleGrading`` tags degrees with the component index and breaks ties
position-over-term or term-over-position, so every graded component is a
single module monomial.  ``SyzygyGrading`` grades coordinate space R^n over a
list of base degrees b_1..b_n, giving the term ``x^a e_i`` degree ``a . b_i``;
it is the grading under which syzygies of homogeneous elements split into
homogeneous parts.
"""

import random
from fractions import Fraction
from functools import cmp_to_key
from typing import NamedTuple

from .errors import UsageError

LESS, EQUAL, GREATER = -1, 0, 1


def _cmp(a, b):
    return (a > b) - (a < b)


# ---------------------------------------------------------------------------
# ring gradings


def _compositions(total, parts):
    """All exponent tuples of the given length summing to ``total``."""
    if parts == 0:
        return [()] if total == 0 else []
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


class TotalDegreeGrading:
    """Grading of k[x_1..x_d] by N via total degree."""

    kind = "total"

    def __init__(self, nvars: int):
        self.nvars = nvars

    def zero(self):
        return 0

    def degree(self, exps):
        return sum(exps)

    def compare(self, a, b):
        if not (isinstance(a, int) and isinstance(b, int)):
            raise UsageError("total-degree grading compares integer degrees")
        return _cmp(a, b)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        diff = a - b
        return diff if diff >= 0 else None

    def monomials(self, value):
        if value < 0:
            return []
        mons = _compositions(value, self.nvars)
        mons.sort(key=degrevlex_key, reverse=True)
        return mons

    def __eq__(self, other):
        return isinstance(other, TotalDegreeGrading) and other.nvars == self.nvars

    def __hash__(self):
        return hash(("total", self.nvars))

    def __repr__(self):
        return f"total({self.nvars})"


def degrevlex_key(exps):
    """Sort key realizing degrevlex ascending on exponent tuples."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _degrevlex_rows(d):
    rows = [tuple([1] * d)]
    for j in range(d - 1, 0, -1):
        rows.append(tuple(-1 if i == j else 0 for i in range(d)))
    return tuple(rows)


def _lex_rows(d):
    return tuple(tuple(1 if i == j else 0 for i in range(d)) for j in range(d))


def _rational_rank(rows):
    m = [[Fraction(v) for v in row] for row in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][c]
        m[rank] = [v / inv for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [v - f * w for v, w in zip(m[r], m[rank])]
        rank += 1
    return rank


class TermOrderGrading:
    """Grading of k[x_1..x_d] by N^d, ordered through an integer weight matrix.

    Exponent vectors are compared by the first nonzero entry of M.(a - b).
    The structural validity condition (square matrix, invertible over Q,
    every column's weight sequence has positive first nonzero entry) is
    recorded at construction and reported by ``verify_monoid_order``.
    """

    kind = "term-order"

    def __init__(self, rows, name="matrix"):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        d = len(rows[0]) if rows else 0
        if any(len(row) != d for row in rows):
            raise UsageError("weight matrix rows must have equal length")
        self.rows = rows
        self.nvars = d
        self.name = name
        self.structural_failures = self._structural_check()

    @classmethod
    def lex(cls, nvars):
        return cls(_lex_rows(nvars), name="lex")

    @classmethod
    def degrevlex(cls, nvars):
        return cls(_degrevlex_rows(nvars), name="degrevlex")

    def _structural_check(self):
        fails = []
        if len(self.rows) != self.nvars:
            fails.append("weight matrix is not square")
            return tuple(fails)
        if _rational_rank(self.rows) != self.nvars:
            fails.append("weight matrix is singular over Q")
        for j in range(self.nvars):
            col = [row[j] for row in self.rows]
            lead = next((v for v in col if v != 0), 0)
            if lead <= 0:
                fails.append(f"column {j + 1} weight sequence is not positive")
        return tuple(fails)

    def zero(self):
        return (0,) * self.nvars

    def degree(self, exps):
        return tuple(exps)

    def compare(self, a, b):
        if not (isinstance(a, tuple) and isinstance(b, tuple) and len(a) == len(b) == self.nvars):
            raise UsageError("term-order grading compares exponent tuples")
        for row in self.rows:
            w = sum(r * (x - y) for r, x, y in zip(row, a, b))
            if w != 0:
                return GREATER if w > 0 else LESS
        return EQUAL

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        diff = tuple(x - y for x, y in zip(a, b))
        return diff if all(v >= 0 for v in diff) else None

    def monomials(self, value):
        return [tuple(value)] if all(v >= 0 for v in value) else []

    def __eq__(self, other):
        return isinstance(other, TermOrderGrading) and other.rows == self.rows

    def __hash__(self):
        return hash(("term-order", self.rows))

    def __repr__(self):
        return f"{self.name}({self.nvars})"


class BlockGrading:
    """Two-block N^2 elimination grading: deg x_i = (1,0) if kept, (0,1) if dropped.

    Degrees compare dropped weight first, so an element of maximal degree
    (a, 0) has every term free of the dropped variables.
    """

    kind = "elimination-block"

    def __init__(self, nvars: int, kept):
        kept = tuple(sorted(set(kept)))
        if any(j < 0 or j >= nvars for j in kept):
            raise UsageError("kept variable index out of range")
        self.nvars = nvars
        self.kept = kept
        self.dropped = tuple(j for j in range(nvars) if j not in kept)

    def zero(self):
        return (0, 0)

    def degree(self, exps):
        k = sum(exps[j] for j in self.kept)
        return (k, sum(exps) - k)

    def compare(self, a, b):
        if not (isinstance(a, tuple) and isinstance(b, tuple) and len(a) == len(b) == 2):
            raise UsageError("block grading compares (kept, dropped) pairs")
        if a[1] != b[1]:
            return GREATER if a[1] > b[1] else LESS
        return _cmp(a[0], b[0])

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        diff = (a[0] - b[0], a[1] - b[1])
        return diff if diff[0] >= 0 and diff[1] >= 0 else None

    def monomials(self, value):
        kw, dw = value
        if kw < 0 or dw < 0:
            return []
        out = []
        for kpart in _compositions(kw, len(self.kept)):
            for dpart in _compositions(dw, len(self.dropped)):
                exps = [0] * self.nvars
                for j, e in zip(self.kept, kpart):
                    exps[j] = e
                for j, e in zip(self.dropped, dpart):
                    exps[j] = e
                out.append(tuple(exps))
        out.sort(key=degrevlex_key, reverse=True)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, BlockGrading)
            and other.nvars == self.nvars
            and other.kept == self.kept
        )

    def __hash__(self):
        return hash(("block", self.nvars, self.kept))

    def __repr__(self):
        return f"elim(keep={self.kept})"


class OrderReport(NamedTuple):
    passed: bool
    failures: tuple


def verify_monoid_order(ring_grading, samples: int = 200, seed: int = 0) -> OrderReport:
    """Check the total monoid order axioms on a ring grading.

    Verifies that zero is strictly minimal on the variable degrees, that the
    order is translation invariant on randomly sampled degree triples, and
    (for weight matrices) the structural positivity and invertibility
    condition.  Failures are collected, not raised.
    """
    fails = []
    d = ring_grading.nvars
    zero = ring_grading.zero()
    for j in range(d):
        unit = tuple(1 if i == j else 0 for i in range(d))
        if ring_grading.compare(ring_grading.degree(unit), zero) != GREATER:
            fails.append(f"degree of variable {j + 1} is not strictly above zero")
    fails.extend(getattr(ring_grading, "structural_failures", ()))
    rng = random.Random(seed)

    def sample_degree():
        return ring_grading.degree(tuple(rng.randrange(0, 5) for _ in range(d)))

    for _ in range(samples):
        a, b, c = sample_degree(), sample_degree(), sample_degree()
        plain = ring_grading.compare(a, b)
        shifted = ring_grading.compare(ring_grading.add(a, c), ring_grading.add(b, c))
        if plain != shifted:
            fails.append(f"translation invariance fails at {a}, {b}, {c}")
            break
    return OrderReport(passed=not fails, failures=tuple(fails))


# ---------------------------------------------------------------------------
# module gradings

POT = "pot"
TOP = "top"


class ModuleGrading:
    """Common behavior for gradings of a free module of finite rank."""

    ring = None
    rank = 0

    def degree_of_term(self, comp, exps):
        raise NotImplementedError

    def compare(self, a, b):
        raise NotImplementedError

    def translate(self, deg, exps):
        """Degree of ``x^exps * v`` for homogeneous v of the given degree."""
        raise NotImplementedError

    def multipliers(self, source, target):
        """All ring monomials r with deg(r*v) = target for v of degree source."""
        raise NotImplementedError

    def component_monomials(self, deg):
        """All module monomials (component, exponents) of the given degree."""
        raise NotImplementedError

    def sort_degrees(self, degrees, reverse=False):
        return sorted(degrees, key=cmp_to_key(self.compare), reverse=reverse)


class CoarseModuleGrading(ModuleGrading):
    """Module grading whose degree values live in the ring-degree monoid.

    The term ``x^a e_i`` has degree ``deg(x^a) + shift_i``; components with
    equal values are merged, so graded components can mix positions.
    """

    def __init__(self, ring_grading, rank: int, shifts=None):
        self.ring = ring_grading
        self.rank = rank
        if shifts is None:
            shifts = tuple(ring_grading.zero() for _ in range(rank))
        shifts = tuple(shifts)
        if len(shifts) != rank:
            raise UsageError("one shift per component required")
        self.shifts = shifts

    def degree_of_term(self, comp, exps):
        return self.ring.add(self.ring.degree(exps), self.shifts[comp])

    def compare(self, a, b):
        return self.ring.compare(a, b)

    def translate(self, deg, exps):
        return self.ring.add(self.ring.degree(exps), deg)

    def multipliers(self, source, target):
        diff = self.ring.sub(target, source)
        if diff is None:
            return []
        return self.ring.monomials(diff)

    def component_monomials(self, deg):
        out = []
        for i in range(self.rank):
            residual = self.ring.sub(deg, self.shifts[i])
            if residual is None:
                continue
            out.extend((i, exps) for exps in self.ring.monomials(residual))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, CoarseModuleGrading)
            and other.ring == self.ring
            and other.rank == self.rank
            and other.shifts == self.shifts
        )

    def __hash__(self):
        return hash(("coarse", self.ring, self.rank, self.shifts))

    def __repr__(self):
        return f"CoarseModuleGrading({self.ring!r}, rank={self.rank})"


class TermModuleGrading(ModuleGrading):
    """Term order on module monomials: degrees are (component, ring value) pairs.

    Ties across components break position-over-term (lower index wins) or
    term-over-position.  Every graded component is one module monomial, which
    is the classical Groebner setting.
    """

    def __init__(self, ring_grading, rank: int, shifts=None, tie=POT):
        if tie not in (POT, TOP):
            raise UsageError("tie order must be 'pot' or 'top'")
        self.ring = ring_grading
        self.rank = rank
        if shifts is None:
            shifts = tuple(ring_grading.zero() for _ in range(rank))
        shifts = tuple(shifts)
        if len(shifts) != rank:
            raise UsageError("one shift per component required")
        self.shifts = shifts
        self.tie = tie

    def degree_of_term(self, comp, exps):
        return (comp, self.ring.add(self.ring.degree(exps), self.shifts[comp]))

    def _check(self, deg):
        if not (isinstance(deg, tuple) and len(deg) == 2 and isinstance(deg[0], int)):
            raise UsageError("term module degrees are (component, value) pairs")

    def compare(self, a, b):
        self._check(a)
        self._check(b)
        if self.tie == POT:
            if a[0] != b[0]:
                return GREATER if a[0] < b[0] else LESS
            return self.ring.compare(a[1], b[1])
        c = self.ring.compare(a[1], b[1])
        if c != EQUAL:
            return c
        return _cmp(b[0], a[0])

    def translate(self, deg, exps):
        return (deg[0], self.ring.add(self.ring.degree(exps), deg[1]))

    def multipliers(self, source, target):
        if source[0] != target[0]:
            return []
        diff = self.ring.sub(target[1], source[1])
        if diff is None:
            return []
        return self.ring.monomials(diff)

    def component_monomials(self, deg):
        self._check(deg)
        comp, value = deg
        residual = self.ring.sub(value, self.shifts[comp])
        if residual is None:
            return []
        return [(comp, exps) for exps in self.ring.monomials(residual)]

    def __eq__(self, other):
        return (
            isinstance(other, TermModuleGrading)
            and other.ring == self.ring
            and other.rank == self.rank
            and other.shifts == self.shifts
            and other.tie == self.tie
        )

    def __hash__(self):
        return hash(("term", self.ring, self.rank, self.shifts, self.tie))

    def __repr__(self):
        return f"TermModuleGrading({self.ring!r}, rank={self.rank}, tie={self.tie})"


class SyzygyGrading(ModuleGrading):
    """Grading of coordinate space R^n over base degrees b_1..b_n.

    ``x^a e_i`` has the degree of ``x^a . v_i`` for a homogeneous probe v_i of
    degree b_i in the base module grading.  Graded components may have
    dimension above one and are never tie-broken.
    """

    def __init__(self, base: ModuleGrading, base_degrees):
        self.base = base
        self.ring = base.ring
        self.base_degrees = tuple(base_degrees)
        self.rank = len(self.base_degrees)

    def degree_of_term(self, comp, exps):
        return self.base.translate(self.base_degrees[comp], exps)

    def compare(self, a, b):
        return self.base.compare(a, b)

    def translate(self, deg, exps):
        return self.base.translate(deg, exps)

    def multipliers(self, source, target):
        return self.base.multipliers(source, target)

    def component_monomials(self, deg):
        out = []
        for i, bdeg in enumerate(self.base_degrees):
            out.extend((i, exps) for exps in self.base.multipliers(bdeg, deg))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SyzygyGrading)
            and other.base == self.base
            and other.base_degrees == self.base_degrees
        )

    def __hash__(self):
        return hash(("syzygy", self.base, self.base_degrees))

    def __repr__(self):
        return f"SyzygyGrading(rank={self.rank})"


# ---------------------------------------------------------------------------
# refinements


class RefinementMap:
    """Order-preserving collapse of a fine grading onto a coarse one.

    Carries the ring-degree map f and the module-degree map g as callables;
    ``verify`` samples monotonicity and the compatibility law
    g(a . b) = f(a) . g(b).
    """

    def __init__(self, source: ModuleGrading, target: ModuleGrading, ring_map, module_map):
        self.source = source
        self.target = target
        self.ring_map = ring_map
        self.module_map = module_map

    def apply(self, deg):
        return self.module_map(deg)

    def apply_ring(self, value):
        return self.ring_map(value)

    def verify(self, samples: int = 100, seed: int = 0):
        rng = random.Random(seed)
        d = self.source.ring.nvars
        fails = []
        for _ in range(samples):
            e1 = tuple(rng.randrange(0, 4) for _ in range(d))
            e2 = tuple(rng.randrange(0, 4) for _ in range(d))
            comp = rng.randrange(self.source.rank)
            b = self.source.degree_of_term(comp, e2)
            # compatibility: g(a.b) = f(a).g(b)
            lhs = self.module_map(self.source.translate(b, e1))
            rhs = self.target.translate(self.module_map(b), e1)
            if lhs != rhs:
                fails.append(f"compatibility fails at {e1} acting on {b}")
                break
            # monotonicity of g on a sampled comparable pair
            b2 = self.source.degree_of_term(comp, tuple(rng.randrange(0, 4) for _ in range(d)))
            if self.source.compare(b, b2) != GREATER:
                continue
            if self.target.compare(self.module_map(b), self.module_map(b2)) == LESS:
                fails.append(f"monotonicity fails at {b} > {b2}")
                break
        return OrderReport(passed=not fails, failures=tuple(fails))


def total_refinement(fine: ModuleGrading, coarse: CoarseModuleGrading) -> RefinementMap:
    """The collapse of a term-order module grading onto total degree.

    Requires the fine shifts to sit over the coarse ones (equal exponent sums),
    so the module map is simply (component, exponents) -> sum of exponents.
    """
    for i in range(fine.rank):
        if sum(fine.shifts[i]) != coarse.shifts[i]:
            raise UsageError("fine shifts must refine the coarse shifts")
    return RefinementMap(
        fine,
        coarse,
        ring_map=lambda v: sum(v),
        module_map=lambda deg: sum(deg[1]),
    )


def syzygy_refinement(syz: SyzygyGrading, tie=TOP) -> RefinementMap:
    """The defining collapse of componentwise monomial degrees onto a syzygy grading."""
    fine = TermModuleGrading(
        TermOrderGrading.degrevlex(syz.ring.nvars), syz.rank, tie=tie
    )
    return RefinementMap(
        fine,
        syz,
        ring_map=lambda v: syz.ring.degree(v),
        module_map=lambda deg: syz.degree_of_term(deg[0], deg[1]),
    )


def compare_degrees(spec: ModuleGrading, a, b) -> int:
    """Strict total-order comparison; -1, 0, or 1."""
    return spec.compare(a, b)


def enumerate_multipliers(spec: ModuleGrading, source, target):
    """All ring monomials carrying degree ``source`` to ``target`` (may be empty)."""
    return spec.multipliers(source, target)


def apply_refinement(refmap: RefinementMap, deg):
    return refmap.apply(deg)


def format_degree(deg) -> str:
    """Stable text rendering of a degree value of any supported shape."""
    if isinstance(deg, tuple) and len(deg) == 2 and isinstance(deg[0], int) and isinstance(deg[1], tuple):
        return f"e{deg[0] + 1}:{format_degree(deg[1])}"
    if isinstance(deg, tuple):
        return "(" + ",".join(str(v) for v in deg) + ")"
    return str(deg)

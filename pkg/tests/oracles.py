"""Independent reference computations used to pin expected test values.

Everything here works on raw data (exponent tuples, Fraction coefficients,
plain dicts) with its own Gaussian elimination and a classical textbook
Buchberger loop over monomial divisions.  Nothing imports the package's
reduction or basis machinery, so these act as oracles for it.
"""

import itertools
from fractions import Fraction


# ---------------------------------------------------------------------------
# dense exact linear algebra


def rref_fractions(rows):
    """Reduced row echelon over Q; returns (rows, pivot columns)."""
    m = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_of(rows):
    return len(rref_fractions(rows)[0])


def in_span(rows, vec):
    """Is vec in the row span, over Q?"""
    vec = [Fraction(v) for v in vec]
    ech, pivots = rref_fractions(rows)
    for row, piv in zip(ech, pivots):
        c = vec[piv]
        if c != 0:
            vec = [a - c * b for a, b in zip(vec, row)]
    return all(v == 0 for v in vec)


# ---------------------------------------------------------------------------
# raw polynomials: dict {exponent tuple: Fraction}


def monomials_of_degree(nvars, total):
    """All exponent tuples with the given coordinate sum."""
    if nvars == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in monomials_of_degree(nvars - 1, total - first):
            out.append((first,) + rest)
    return out


def poly_mul_mono(p, mono, coeff=Fraction(1)):
    return {tuple(a + b for a, b in zip(m, mono)): c * coeff for m, c in p.items()}


def poly_sub(p, q):
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, Fraction(0)) - c
        if out[m] == 0:
            del out[m]
    return out


def poly_scale(p, c):
    return {m: v * c for m, v in p.items()} if c != 0 else {}


def drl_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m):
    return m


def leading_monomial(p, key):
    return max(p, key=key)


def divides(m, n):
    return all(a <= b for a, b in zip(m, n))


def classic_reduce(p, basis, key):
    """Full remainder of p modulo a list of raw polynomials under a term order."""
    rem = {}
    work = dict(p)
    while work:
        lm = leading_monomial(work, key)
        lc = work[lm]
        for g in basis:
            g_lm = leading_monomial(g, key)
            if divides(g_lm, lm):
                mult = tuple(a - b for a, b in zip(lm, g_lm))
                work = poly_sub(work, poly_mul_mono(g, mult, lc / g[g_lm]))
                break
        else:
            rem[lm] = lc
            del work[lm]
    return rem


def classic_buchberger(gens, key):
    """Textbook Buchberger over Q with full interreduction at the end."""
    basis = [dict(g) for g in gens if g]
    changed = True
    while changed:
        changed = False
        for f, g in itertools.combinations(list(basis), 2):
            lf, lg = leading_monomial(f, key), leading_monomial(g, key)
            lcm = tuple(max(a, b) for a, b in zip(lf, lg))
            s = poly_sub(
                poly_mul_mono(f, tuple(a - b for a, b in zip(lcm, lf)), Fraction(1) / f[lf]),
                poly_mul_mono(g, tuple(a - b for a, b in zip(lcm, lg)), Fraction(1) / g[lg]),
            )
            rem = classic_reduce(s, basis, key)
            if rem:
                basis.append(rem)
                changed = True
    # minimalize and reduce
    minimal = []
    for f in sorted(basis, key=lambda p: key(leading_monomial(p, key))):
        lf = leading_monomial(f, key)
        if not any(divides(leading_monomial(g, key), lf) for g in minimal):
            minimal.append(f)
    reduced = []
    for i, f in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        rem = classic_reduce(f, others, key) if others else f
        lc = rem[leading_monomial(rem, key)]
        reduced.append(poly_scale(rem, Fraction(1) / lc))
    reduced.sort(key=lambda p: key(leading_monomial(p, key)))
    return reduced


def ideal_member(p, gens, key=drl_key):
    basis = classic_buchberger(gens, key)
    return classic_reduce(p, basis, key) == {} if basis else p == {}


def ideals_equal(gens_a, gens_b, key=drl_key):
    return all(ideal_member(p, gens_b, key) for p in gens_a) and all(
        ideal_member(p, gens_a, key) for p in gens_b
    )


# ---------------------------------------------------------------------------
# brute-force graded slice dimensions


def slice_dimension(gens, nvars, degree):
    """dim of the degree slice of the ideal spanned by homogeneous raw gens.

    Enumerates multiplier monomials directly and row-reduces, no basis theory.
    """
    ambient = monomials_of_degree(nvars, degree)
    index = {m: k for k, m in enumerate(ambient)}
    rows = []
    for g in gens:
        gdeg = max(sum(m) for m in g)
        if any(sum(m) != gdeg for m in g):
            raise ValueError("oracle needs homogeneous generators")
        if gdeg > degree:
            continue
        for mult in monomials_of_degree(nvars, degree - gdeg):
            prod = poly_mul_mono(g, mult)
            vec = [Fraction(0)] * len(ambient)
            for m, c in prod.items():
                vec[index[m]] = c
            rows.append(vec)
    return rank_of(rows) if rows else 0


# ---------------------------------------------------------------------------
# conversions from package objects (thin, representation-level only)


def raw_poly(p):
    """Package Polynomial -> raw dict with Fraction coefficients."""
    return {m: Fraction(c) for m, c in p.terms.items()}


def raw_element_vectors(elements, support=None):
    """Module elements -> dense coordinate rows over their combined support."""
    if support is None:
        support = sorted({key for m in elements for key in m.term_map()})
    index = {key: k for k, key in enumerate(support)}
    rows = []
    for m in elements:
        vec = [Fraction(0)] * len(support)
        for key, c in m.term_map().items():
            vec[index[key]] = Fraction(c)
        rows.append(vec)
    return rows, support

"""Strict copositivity testing and copositive minima, all in exact arithmetic.

The test partitions the standard simplex.  A cell with vertex set {v_i} is
certified once min_{i<=j} v_i^T B v_j is positive: that minimum bounds B from
below on the whole cell.  A cell whose vertex has negative form value refutes
copositivity.  Otherwise the longest edge is bisected.  Vertices stay dyadic,
stored as an integer tuple plus a binary exponent, so every comparison along
the way is an integer comparison.

Minimal-vector enumeration turns a simplex lower bound mu into the search
radius |v|_1 <= sqrt(c/mu) via B[v] = |v|_1^2 * B[v/|v|_1] and walks the
coordinates depth first.  Lower bounds for the trailing principal submatrices
prune subtrees; the innermost coordinate is resolved by an exact integer
interval instead of a scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm
from typing import Union

from .core import Rat, SymMat, inertia, quad_form
from .errors import NotCopositiveError, PreconditionError, UndecidedError

DEFAULT_DEPTH_LIMIT = 64
DEFAULT_CELL_BUDGET = 2_000_000


@dataclass(frozen=True)
class StrictlyCopositive:
    """B[x] >= mu_lb > 0 on the standard simplex."""

    mu_lb: Rat


@dataclass(frozen=True)
class Copositive:
    """B[x] >= mu_lb >= 0 on the standard simplex (non-strict test)."""

    mu_lb: Rat


@dataclass(frozen=True)
class NotCopositive:
    """witness >= 0 with B[witness] < 0."""

    witness: tuple[Rat, ...]


@dataclass(frozen=True)
class Undecided:
    depth: int


CopVerdict = Union[StrictlyCopositive, NotCopositive, Undecided]


@dataclass(frozen=True)
class MinResult:
    min_value: Rat
    vectors: tuple[tuple[int, ...], ...]


def minresult_to_json(result: MinResult) -> dict:
    value = result.min_value
    text = str(value.numerator) if value.denominator == 1 else "%d/%d" % (
        value.numerator, value.denominator)
    return {"min": text, "vectors": [list(v) for v in result.vectors]}


# ---------------------------------------------------------------------------
# simplex partition branch and bound

def _int_form(b: SymMat) -> tuple[list[list[int]], int]:
    """Integer matrix den*B together with the denominator den > 0."""
    den = 1
    for c in b.coords:
        den = lcm(den, c.denominator)
    rows = [[int(b.entry(i, j) * den) for j in range(b.n)] for i in range(b.n)]
    return rows, den


def _dy_cmp(a, b):
    """Compare dyadic rationals given as (numerator, exponent)."""
    an, ae = a
    bn, be = b
    if ae < be:
        an <<= be - ae
    elif be < ae:
        bn <<= ae - be
    return (an > bn) - (an < bn)


def _mid(u, v):
    uv, ue = u
    vv, ve = v
    e = max(ue, ve) + 1
    w = [(a << (e - 1 - ue)) + (b << (e - 1 - ve)) for a, b in zip(uv, vv)]
    while e > 0 and all(x & 1 == 0 for x in w):
        w = [x >> 1 for x in w]
        e -= 1
    return (tuple(w), e)


def _bnb(bi, depth_limit, strict, cell_budget):
    """Partition loop on an integer matrix.

    Returns ('strict'|'cop', (num, exp)) with the bound num/2^exp, or
    ('not', dyadic vertex), or ('undec', depth).
    """
    n = len(bi)
    if n == 1:
        v = bi[0][0]
        if v < 0:
            return ('not', ((1,), 0))
        if v > 0 or not strict:
            return ('strict' if strict else 'cop', (v, 0))
        return ('undec', 0)
    pair_keys = [(i, j) for i in range(n) for j in range(i, n)]
    edge_keys = [(i, j) for i in range(n) for j in range(i + 1, n)]
    root_verts = tuple(
        (tuple(int(k == i) for k in range(n)), 0) for i in range(n))
    root_pairs = {(i, j): (bi[i][j], 0) for i, j in pair_keys}
    root_d2 = {k: (2, 0) for k in edge_keys}
    stack = [(root_verts, root_pairs, root_d2, 0)]
    mu = None
    undecided = None
    cells = 0
    while stack:
        verts, pairs, d2, depth = stack.pop()
        cells += 1
        if cells > cell_budget:
            return ('undec', depth)
        refute = None
        for i in range(n):
            if pairs[(i, i)][0] < 0:
                refute = verts[i]
                break
        if refute is not None:
            return ('not', refute)
        cell_min = None
        certified = True
        for key in pair_keys:
            val = pairs[key]
            if val[0] < 0 or (strict and val[0] == 0):
                certified = False
                break
            if cell_min is None or _dy_cmp(val, cell_min) < 0:
                cell_min = val
        if certified:
            if mu is None or _dy_cmp(cell_min, mu) < 0:
                mu = cell_min
            continue
        if depth >= depth_limit:
            undecided = depth_limit
            continue
        best = None
        for i, j in edge_keys:
            length = d2[(i, j)]
            if best is None:
                best = (length, verts[i], verts[j], i, j)
                continue
            c = _dy_cmp(length, best[0])
            if c > 0 or (c == 0 and (verts[i], verts[j]) < (best[1], best[2])):
                best = (length, verts[i], verts[j], i, j)
        _, _, _, si, sj = best
        mid = _mid(verts[si], verts[sj])
        mvec, me = mid
        bmid = [sum(bi[r][c] * mvec[c] for c in range(n)) for r in range(n)]
        mid_self = (sum(a * b for a, b in zip(mvec, bmid)), 2 * me)
        for repl in (si, sj):
            nverts = list(verts)
            nverts[repl] = mid
            npairs = dict(pairs)
            nd2 = dict(d2)
            npairs[(repl, repl)] = mid_self
            for k in range(n):
                if k == repl:
                    continue
                uv, ue = nverts[k]
                key = (k, repl) if k < repl else (repl, k)
                npairs[key] = (sum(a * b for a, b in zip(uv, bmid)), ue + me)
                e = max(ue, me)
                s = 0
                for a, b in zip(uv, mvec):
                    d = (a << (e - ue)) - (b << (e - me))
                    s += d * d
                nd2[key] = (s, 2 * e)
            stack.append((tuple(nverts), npairs, nd2, depth + 1))
    if undecided is not None:
        return ('undec', undecided)
    return ('strict' if strict else 'cop', mu)


def _witness_vector(vert) -> tuple[Rat, ...]:
    vec, e = vert
    return tuple(Fraction(x, 1 << e) for x in vec)


def _witness_integral(vert) -> tuple[int, ...]:
    vec, _ = vert
    g = 0
    for x in vec:
        g = gcd(g, x)
    return tuple(x // g for x in vec)


def test_copositivity(b: SymMat,
                      depth_limit: int = DEFAULT_DEPTH_LIMIT,
                      cell_budget: int = DEFAULT_CELL_BUDGET) -> CopVerdict:
    """Decide strict copositivity where possible.

    Matrices in the interior or exterior of the copositive cone are decided;
    boundary matrices come back Undecided once the depth limit (or the cell
    budget) is reached.  Undecided is a legal outcome, not an error.
    """
    if depth_limit < 0:
        raise PreconditionError("bad-depth-limit", "depth_limit must be >= 0")
    bi, den = _int_form(b)
    tag, data = _bnb(bi, depth_limit, True, cell_budget)
    if tag == 'not':
        return NotCopositive(_witness_vector(data))
    if tag == 'undec':
        return Undecided(data)
    num, e = data
    return StrictlyCopositive(Fraction(num, den << e))


def certify_copositive(b: SymMat,
                       depth_limit: int = DEFAULT_DEPTH_LIMIT,
                       cell_budget: int = DEFAULT_CELL_BUDGET):
    """Non-strict variant: cells certify at bound >= 0.

    Decides membership in the closed copositive cone for matrices that are
    not on its boundary, and for boundary matrices whose zero set is spanned
    by cell vertices (the E_ij directions certify at the root, for example).
    """
    if depth_limit < 0:
        raise PreconditionError("bad-depth-limit", "depth_limit must be >= 0")
    bi, den = _int_form(b)
    tag, data = _bnb(bi, depth_limit, False, cell_budget)
    if tag == 'not':
        return NotCopositive(_witness_vector(data))
    if tag == 'undec':
        return Undecided(data)
    num, e = data
    return Copositive(Fraction(num, den << e))


# ---------------------------------------------------------------------------
# enumeration

def _suffix_bounds(bi, mu0: Fraction, depth_limit, cell_budget):
    """Simplex lower bounds for the trailing principal submatrices of bi.

    Entry k bounds the form on coordinates k..n-1.  The full-simplex bound
    mu0 is valid on every face, so it is both the k=0 entry and the fallback
    whenever a submatrix run is inconclusive.
    """
    n = len(bi)
    mus = [mu0]
    for k in range(1, n):
        sub = [row[k:] for row in bi[k:]]
        tag, data = _bnb(sub, depth_limit, True, cell_budget)
        if tag == 'strict':
            num, e = data
            mus.append(max(Fraction(num, 1 << e), mu0))
        else:
            mus.append(mu0)
    return mus


def _enumerate_scaled(bi, cnum, cden, radius, mus):
    """All nonzero v >= 0 with v^T bi v <= cnum/cden and |v|_1 <= radius."""
    n = len(bi)
    last = n - 1
    ann = bi[last][last]
    out = []
    v = [0] * n

    def descend(k, budget, val, lin, nonzero):
        # val = bi[prefix]; lin[j-k] = (bi . prefix)_j for j >= k
        if k == last:
            lead = lin[0]
            # cden*(ann*t^2 + 2*lead*t + val) <= cnum, completed square:
            # cden*(ann*t + lead)^2 <= cden*lead^2 - ann*(cden*val - cnum)
            dq = cden * lead * lead - ann * (cden * val - cnum)
            if dq < 0:
                return
            s = isqrt(dq // cden) + 1
            lo = max(0 if nonzero else 1, (-lead - s) // ann - 1)
            hi = min(budget, (-lead + s) // ann + 1)
            for t in range(lo, hi + 1):
                u = ann * t + lead
                if cden * u * u <= dq:
                    v[last] = t
                    out.append(tuple(v))
            v[last] = 0
            return
        a, b = mus[k].numerator, mus[k].denominator
        lmin = min(lin)

        def feasible(s):
            # value of the convex underestimate val + 2*lmin*s + (a/b)*s^2
            return cden * (b * val + 2 * b * lmin * s + a * s * s) <= b * cnum

        if a > 0:
            cands = {0, budget}
            if lmin < 0:
                vertex = (-b * lmin) // a
                for s in (vertex, vertex + 1):
                    if 0 < s < budget:
                        cands.add(s)
            if not any(feasible(s) for s in cands):
                return
        row = bi[k]
        diag = row[k]
        for t in range(budget + 1):
            v[k] = t
            descend(k + 1, budget - t,
                    val + 2 * t * lin[0] + diag * t * t,
                    [lin[j - k] + t * row[j] for j in range(k + 1, n)],
                    nonzero or t > 0)
        v[k] = 0

    descend(0, radius, 0, [0] * n, False)
    return out


def _radius(c_scaled: Fraction, mu_scaled: Fraction) -> int:
    ratio = c_scaled / mu_scaled
    return isqrt(ratio.numerator // ratio.denominator)


def enumerate_below(b: SymMat, c, mu_lb,
                    depth_limit: int = DEFAULT_DEPTH_LIMIT,
                    cell_budget: int = DEFAULT_CELL_BUDGET) -> tuple:
    """Exactly { v in Z^n_{>=0} nonzero : B[v] <= c }, sorted.

    mu_lb must be a valid positive lower bound for B on the standard simplex
    (take it from a StrictlyCopositive verdict).  Submatrix bounds are
    computed internally as a pruning aid; completeness rests only on the
    1-norm bound |v|_1 <= sqrt(c/mu_lb).
    """
    c = Fraction(c)
    mu_lb = Fraction(mu_lb)
    if mu_lb <= 0:
        raise PreconditionError("mu-not-positive",
                                "mu_lb must be positive, got %s" % mu_lb)
    if c <= 0:
        raise PreconditionError("c-not-positive",
                                "threshold c must be positive, got %s" % c)
    bi, den = _int_form(b)
    mu_scaled = mu_lb * den
    c_scaled = c * den
    mus = _suffix_bounds(bi, mu_scaled, depth_limit, cell_budget)
    found = _enumerate_scaled(bi, c_scaled.numerator, c_scaled.denominator,
                              _radius(c_scaled, mu_scaled), mus)
    return tuple(sorted(found))


def _survey_below(b: SymMat, c,
                  depth_limit: int = DEFAULT_DEPTH_LIMIT,
                  cell_budget: int = DEFAULT_CELL_BUDGET,
                  radius_cap: int | None = None):
    """Test-then-enumerate in one call, shared by the minimum and the walk.

    Returns ('ok', vectors), ('not', integral violator) or ('undec', None).
    With a radius cap the caller opts into 'undec' for searches whose 1-norm
    bound explodes (near-boundary matrices during a walk).
    """
    bi, den = _int_form(b)
    tag, data = _bnb(bi, depth_limit, True, cell_budget)
    if tag == 'not':
        return ('not', _witness_integral(data))
    if tag == 'undec':
        return ('undec', None)
    num, e = data
    mu_scaled = Fraction(num, 1 << e)
    c_scaled = Fraction(c) * den
    radius = _radius(c_scaled, mu_scaled)
    if radius_cap is not None and radius > radius_cap:
        return ('undec', None)
    mus = _suffix_bounds(bi, mu_scaled, depth_limit, cell_budget)
    found = _enumerate_scaled(bi, c_scaled.numerator, c_scaled.denominator,
                              radius, mus)
    return ('ok', tuple(sorted(found)))


@lru_cache(maxsize=4096)
def copositive_min(b: SymMat,
                   depth_limit: int = DEFAULT_DEPTH_LIMIT) -> MinResult:
    """minC B and MinC B for strictly copositive B.

    c0 = min_i B[e_i] is always attained by a unit vector, so enumerating
    below it captures the minimum.  Results are cached; SymMat is immutable.
    """
    verdict = test_copositivity(b, depth_limit)
    if isinstance(verdict, NotCopositive):
        raise NotCopositiveError(verdict.witness)
    if isinstance(verdict, Undecided):
        raise UndecidedError(verdict.depth)
    c0 = min(b.entry(i, i) for i in range(b.n))
    found = enumerate_below(b, c0, verdict.mu_lb, depth_limit)
    best = min(quad_form(b, v) for v in found)
    vectors = tuple(sorted(v for v in found if quad_form(b, v) == best))
    return MinResult(best, vectors)


def classical_below(q: SymMat, c,
                    depth_limit: int = DEFAULT_DEPTH_LIMIT) -> tuple:
    """{ v in Z^n nonzero : Q[v] <= c } up to sign, for positive definite Q.

    One representative per +-pair, first nonzero entry positive; runs the
    nonnegative enumeration on each of the 2^(n-1) sign conjugations.
    """
    if not inertia(q).is_positive_definite():
        raise PreconditionError(
            "not-positive-definite",
            "classical enumeration needs a positive definite matrix")
    c = Fraction(c)
    if c <= 0:
        return ()
    n = q.n
    reps = set()
    for bits in range(1 << (n - 1)):
        signs = (1,) + tuple(-1 if (bits >> i) & 1 else 1
                             for i in range(n - 1))
        conj = SymMat.from_rows(
            [[signs[i] * signs[j] * q.entry(i, j) for j in range(n)]
             for i in range(n)])
        verdict = test_copositivity(conj, depth_limit)
        if isinstance(verdict, Undecided):
            raise UndecidedError(verdict.depth)
        for v in enumerate_below(conj, c, verdict.mu_lb, depth_limit):
            w = tuple(s * x for s, x in zip(signs, v))
            for x in w:
                if x != 0:
                    if x < 0:
                        w = tuple(-y for y in w)
                    break
            reps.add(w)
    return tuple(sorted(reps))


def classical_min(q: SymMat,
                  depth_limit: int = DEFAULT_DEPTH_LIMIT):
    """Arithmetical minimum of a positive definite Q over Z^n minus 0.

    Computed as the union over the 2^(n-1) sign patterns D = diag(+-1), first
    sign fixed +, of D*MinC(DQD); representatives are deduplicated up to
    global sign, keeping the one whose first nonzero entry is positive.
    """
    if not inertia(q).is_positive_definite():
        raise PreconditionError("not-positive-definite",
                                "classical minimum needs a positive definite matrix")
    n = q.n
    results = []
    for bits in range(1 << (n - 1)):
        signs = (1,) + tuple(-1 if (bits >> i) & 1 else 1
                             for i in range(n - 1))
        conj = SymMat.from_rows(
            [[signs[i] * signs[j] * q.entry(i, j) for j in range(n)]
             for i in range(n)])
        results.append((signs, copositive_min(conj, depth_limit)))
    best = min(r.min_value for _, r in results)
    reps = set()
    for signs, r in results:
        if r.min_value != best:
            continue
        for v in r.vectors:
            w = tuple(s * x for s, x in zip(signs, v))
            for x in w:
                if x != 0:
                    if x < 0:
                        w = tuple(-y for y in w)
                    break
            reps.add(w)
    return best, tuple(sorted(reps))

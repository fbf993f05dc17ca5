"""Exact rational arithmetic on symmetric matrices and integer vectors.

Symmetric matrices are stored by their upper triangle in a fixed coordinate
order: diagonal entries first, then off-diagonal entries row by row.  All
entries are ``fractions.Fraction``; nothing in this package ever rounds.
Integer vectors are plain tuples of ints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction


def coord_index(n: int, i: int, j: int) -> int:
    """Position of entry (i, j), i <= j, in the coordinate vector."""
    if i == j:
        return i
    # off-diagonal block starts at n; row i contributes (n-1-i) slots
    return n + i * (2 * n - i - 1) // 2 + (j - i - 1)


def dim_sym(n: int) -> int:
    """Dimension n(n+1)/2 of the space of symmetric n x n matrices."""
    return n * (n + 1) // 2


@dataclass(frozen=True)
class SymMat:
    """Immutable symmetric matrix with Fraction entries.

    ``coords`` lists the diagonal first, then the strict upper triangle in
    row-major order, so ``len(coords) == n*(n+1)//2``.
    """

    n: int
    coords: tuple[Rat, ...]

    def __post_init__(self):
        if len(self.coords) != dim_sym(self.n):
            raise ValueError(
                "expected %d coordinates for n=%d, got %d"
                % (dim_sym(self.n), self.n, len(self.coords))
            )
        if not all(isinstance(c, Fraction) for c in self.coords):
            object.__setattr__(
                self, "coords", tuple(Fraction(c) for c in self.coords)
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SymMat":
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValueError("matrix is not square")
        grid = [[Fraction(x) for x in r] for r in rows]
        for i in range(n):
            for j in range(i + 1, n):
                if grid[i][j] != grid[j][i]:
                    raise ValueError(
                        "matrix is not symmetric at (%d, %d)" % (i, j)
                    )
        coords = [grid[i][i] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                coords.append(grid[i][j])
        return cls(n, tuple(coords))

    def entry(self, i: int, j: int) -> Rat:
        if i > j:
            i, j = j, i
        return self.coords[coord_index(self.n, i, j)]

    def rows(self) -> list[list[Rat]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def scale(self, t) -> "SymMat":
        t = Fraction(t)
        return SymMat(self.n, tuple(t * c for c in self.coords))

    def __add__(self, other: "SymMat") -> "SymMat":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return SymMat(
            self.n, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "SymMat") -> "SymMat":
        return self + other.scale(-1)

    def is_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def has_nonneg_entries(self) -> bool:
        return all(c >= 0 for c in self.coords)


def sym_from_coords(n: int, coords: Iterable) -> SymMat:
    return SymMat(n, tuple(Fraction(c) for c in coords))


def identity(n: int) -> SymMat:
    coords = [Fraction(1)] * n + [Fraction(0)] * (dim_sym(n) - n)
    return SymMat(n, tuple(coords))


def basis_e(n: int, i: int, j: int) -> SymMat:
    """E_ij with ones at (i, j) and (j, i), zero elsewhere."""
    coords = [Fraction(0)] * dim_sym(n)
    coords[coord_index(n, min(i, j), max(i, j))] = Fraction(1)
    return SymMat(n, tuple(coords))


def quad_form(q: SymMat, v: Sequence) -> Rat:
    """Evaluate v^T Q v exactly; v may have rational entries."""
    n = q.n
    if len(v) != n:
        raise ValueError("vector length %d does not match n=%d" % (len(v), n))
    w = [Fraction(x) for x in v]
    total = Fraction(0)
    for i in range(n):
        total += q.coords[i] * w[i] * w[i]
    k = n
    for i in range(n):
        for j in range(i + 1, n):
            total += 2 * q.coords[k] * w[i] * w[j]
            k += 1
    return total


def inner(a: SymMat, b: SymMat) -> Rat:
    """Trace inner product sum_ij a_ij b_ij (off-diagonals count twice)."""
    if a.n != b.n:
        raise ValueError("size mismatch")
    n = a.n
    total = Fraction(0)
    for i in range(n):
        total += a.coords[i] * b.coords[i]
    for k in range(n, dim_sym(n)):
        total += 2 * a.coords[k] * b.coords[k]
    return total


def rank_one(v: Sequence[int]) -> SymMat:
    """The matrix v v^T."""
    n = len(v)
    w = [Fraction(x) for x in v]
    coords = [w[i] * w[i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            coords.append(w[i] * w[j])
    return SymMat(n, tuple(coords))


@dataclass(frozen=True)
class Inertia:
    n_pos: int
    n_zero: int
    n_neg: int

    @property
    def rank(self) -> int:
        return self.n_pos + self.n_neg

    def is_positive_definite(self) -> bool:
        return self.n_zero == 0 and self.n_neg == 0

    def is_positive_semidefinite(self) -> bool:
        return self.n_neg == 0


def inertia(q: SymMat) -> Inertia:
    """Signs of the eigenvalues, computed by exact symmetric congruence.

    Congruence transformations preserve the inertia, so Gaussian steps
    applied simultaneously to rows and columns read off the signature
    without ever leaving the rationals.
    """
    n = q.n
    m = [row[:] for row in q.rows()]
    active = list(range(n))
    n_pos = n_neg = n_zero = 0
    while active:
        piv = None
        for i in active:
            if m[i][i] != 0:
                piv = i
                break
        if piv is None:
            # no usable diagonal; bring a nonzero off-diagonal entry onto it
            found = None
            for ai in range(len(active)):
                for aj in range(ai + 1, len(active)):
                    i, j = active[ai], active[aj]
                    if m[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                n_zero += len(active)
                break
            i, j = found
            # x_i += x_j turns the (i, i) entry into 2*m[i][j] != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            continue
        d = m[piv][piv]
        if d > 0:
            n_pos += 1
        else:
            n_neg += 1
        active.remove(piv)
        mult = {j: m[j][piv] / d for j in active}
        for j in active:
            f = mult[j]
            if f == 0:
                continue
            for k in range(n):
                m[j][k] -= f * m[piv][k]
        for j in active:
            f = mult[j]
            if f == 0:
                continue
            for k in range(n):
                m[k][j] -= f * m[k][piv]
    return Inertia(n_pos, n_zero, n_neg)


def row_rank(rows: list[list[Rat]]) -> int:
    """Rank of a rational matrix by plain Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    cols = len(m[0])
    rank = 0
    row = 0
    for col in range(cols):
        piv = None
        for r in range(row, len(m)):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def span_rank(mats: Iterable[SymMat]) -> int:
    """Dimension of the linear span of the given symmetric matrices."""
    rows = [list(mat.coords) for mat in mats]
    return row_rank(rows)


def span_rank_of_vectors(vectors: Iterable[Sequence[int]]) -> int:
    """Dimension of span{v v^T} for the given vectors."""
    return span_rank(rank_one(v) for v in vectors)


# ---------------------------------------------------------------------------
# serialization

def _fraction_to_str(x: Rat) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _parse_fraction(s) -> Rat:
    if isinstance(s, bool):
        raise ValueError("boolean is not a matrix entry")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise ValueError("matrix entries must be integers or 'p/q' strings, got %r" % (s,))


def mat_to_json(q: SymMat) -> dict:
    rows = q.rows()
    return {
        "n": q.n,
        "entries": [[_fraction_to_str(x) for x in row] for row in rows],
    }


def mat_from_json(obj) -> SymMat:
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON must be an object")
    if "n" not in obj or "entries" not in obj:
        raise ValueError("matrix JSON needs 'n' and 'entries' fields")
    n = obj["n"]
    entries = obj["entries"]
    if not isinstance(n, int) or n <= 0:
        raise ValueError("'n' must be a positive integer")
    if not isinstance(entries, list) or len(entries) != n:
        raise ValueError("'entries' must be a list of %d rows" % n)
    rows = []
    for r in entries:
        if not isinstance(r, list) or len(r) != n:
            raise ValueError("each row must be a list of %d entries" % n)
        rows.append([_parse_fraction(x) for x in r])
    return SymMat.from_rows(rows)


def mat_dumps(q: SymMat) -> str:
    return json.dumps(mat_to_json(q), indent=2, sort_keys=True)


def mat_loads(text: str) -> SymMat:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError("invalid JSON: %s" % e) from e
    return mat_from_json(obj)

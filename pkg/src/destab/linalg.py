"""Exact rational linear algebra over ``fractions.Fraction``.

All matrices are tuples of tuples of Fractions (immutable, hashable); all
algorithms are plain fraction-free-enough Gaussian elimination.  Sizes here
are tiny (at most a few dozen rows), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, strings like ``"-3/2"``, and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def vec(entries: Iterable) -> Vec:
    return tuple(frac(x) for x in entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(n: int, m: int) -> Mat:
    return tuple((ZERO,) * m for _ in range(n))


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: Fraction, a: Mat) -> Mat:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != k:
        raise DimensionMismatch(len(a[0]), k)
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Mat, v: Sequence[Fraction]) -> Vec:
    if a and len(a[0]) != len(v):
        raise DimensionMismatch(len(a[0]), len(v))
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(len(u), len(v))
    return sum(x * y for x, y in zip(u, v))


class DimensionMismatch(ValueError):
    def __init__(self, expected, got):
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")


def _rref_inplace(rows: list[list[Fraction]]) -> list[int]:
    """Reduce ``rows`` to reduced row echelon form; return pivot columns."""
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rref(a: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    rows = [list(r) for r in a]
    pivots = _rref_inplace(rows)
    kept = tuple(tuple(r) for r in rows[: len(pivots)])
    return kept, tuple(pivots)


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def row_space(a: Mat) -> Mat:
    """Canonical (RREF) basis of the row space; equal iff spaces are equal."""
    return rref(a)[0]


def in_row_space(v: Sequence[Fraction], basis_rref: Mat) -> bool:
    """Membership test against an RREF basis."""
    w = list(v)
    for row in basis_rref:
        c = next(i for i, x in enumerate(row) if x != 0)
        if w[c] != 0:
            f = w[c]
            w = [x - f * y for x, y in zip(w, row)]
    return all(x == 0 for x in w)


def solve_affine(a: Mat, b: Sequence[Fraction]) -> Vec | None:
    """One exact solution of ``a x = b`` or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    n = len(a)
    m = len(a[0]) if a else 0
    rows = [list(a[i]) + [frac(b[i])] for i in range(n)]
    pivots = _rref_inplace(rows)
    for i in range(len(pivots), n):
        if rows[i] and rows[i][m] != 0:
            return None
    # pivot columns that landed on the RHS mean inconsistency
    if pivots and pivots[-1] == m:
        return None
    x = [ZERO] * m
    for r, c in enumerate(pivots):
        x[c] = rows[r][m]
    return tuple(x)


def nullspace(a: Mat, ncols: int | None = None) -> Mat:
    """Basis (rows) of the right nullspace of ``a``."""
    m = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return identity(m)
    rows = [list(r) for r in a]
    pivots = _rref_inplace(rows)
    pivset = set(pivots)
    basis = []
    for free in range(m):
        if free in pivset:
            continue
        v = [ZERO] * m
        v[free] = ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][free]
        basis.append(tuple(v))
    return tuple(basis)


def det(a: Mat) -> Fraction:
    n = len(a)
    rows = [list(r) for r in a]
    sign = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[c][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    prod = sign
    for i in range(n):
        prod *= rows[i][i]
    return prod


def inverse(a: Mat) -> Mat:
    n = len(a)
    rows = [list(a[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    pivots = _rref_inplace(rows)
    if tuple(pivots[:n]) != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def trace(a: Mat) -> Fraction:
    return sum(a[i][i] for i in range(len(a)))


def is_symmetric(a: Mat) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(len(a)))


def is_positive_definite(a: Mat) -> bool:
    """Sylvester criterion with exact leading principal minors."""
    n = len(a)
    return all(det(tuple(row[: k + 1] for row in a[: k + 1])) > 0 for k in range(n))


def primitive_direction(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector.

    The positive scaling factor is unique, so the direction is preserved.
    """
    fr = [frac(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive direction")
    denom = 1
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)

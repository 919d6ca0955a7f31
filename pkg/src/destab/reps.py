"""Weight-diagonalized rational representations and their limits.

Every supported representation carries an ordered basis on which the
standard diagonal torus acts by an explicit integer weight, and the full
group acts through an exact rational matrix.  A cocharacter with a base
point is handled by transporting the point into the standard frame,
grading there, and transporting back.

The closed enumeration of kinds (conjugation tuples, symmetric powers of
the standard 2-dimensional module, adjoint, direct sums) is the documented
extension point: a new kind must supply basis weights and an exact action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import DimensionError, DomainError
from .groups import Character, Cocharacter, GroupSpec, pairing_vec
from .linalg import Mat, Vec, frac

Monomial = tuple[tuple[int, int], ...]  # sorted ((coordinate index, exponent), ...)


class Representation:
    """Common interface: ``group``, ``dim``, ``weights``, ``act_matrix``."""

    group: GroupSpec
    dim: int
    weights: tuple[Character, ...]

    def act_matrix(self, g: Mat) -> Mat:
        raise NotImplementedError

    def act(self, g: Mat, point: "Point") -> "Point":
        if point.rep != self:
            raise DimensionError("point belongs to a different representation")
        g = linalg.mat(g)
        if g == linalg.identity(self.group.dimension):
            return point
        return Point(self, linalg.mat_vec(self._act_matrix_cached(g), point.coords))

    def _act_matrix_cached(self, g: Mat) -> Mat:
        cache = self.__dict__.setdefault("_act_cache", {})
        hit = cache.get(g)
        if hit is None:
            self.group.require_member(g, "acting element")
            hit = cache[g] = self.act_matrix(g)
        return hit

    def zero(self) -> "Point":
        return Point(self, (Fraction(0),) * self.dim)

    def basis_labels(self) -> tuple[str, ...]:
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class ConjugationTuples(Representation):
    """Tuples of m x m matrices under simultaneous conjugation."""

    group: GroupSpec
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise DomainError("tuple length must be >= 1")

    @property
    def m(self) -> int:
        return self.group.dimension

    @property
    def dim(self) -> int:
        return self.count * self.m * self.m

    @property
    def weights(self) -> tuple[Character, ...]:
        return _conjugation_weights(self.m, self.count)

    def basis_labels(self) -> tuple[str, ...]:
        return tuple(
            f"h{t}[{i},{j}]"
            for t in range(self.count)
            for i in range(self.m)
            for j in range(self.m)
        )

    def act_matrix(self, g: Mat) -> Mat:
        ginv = linalg.inverse(g)
        m = self.m
        # (g h g^{-1})_{ij} = sum_{kl} g_{ik} (g^{-1})_{lj} h_{kl}
        block = tuple(
            tuple(g[i][k] * ginv[l][j] for k in range(m) for l in range(m))
            for i in range(m)
            for j in range(m)
        )
        n = m * m
        dim = self.dim
        rows = []
        for t in range(self.count):
            for r in range(n):
                row = [Fraction(0)] * dim
                row[t * n : (t + 1) * n] = block[r]
                rows.append(tuple(row))
        return tuple(rows)

    def point(self, matrices) -> "Point":
        mats = [linalg.mat(h) for h in matrices]
        if len(mats) != self.count:
            raise DimensionError(f"expected {self.count} matrices, got {len(mats)}")
        coords = []
        for h in mats:
            if len(h) != self.m or any(len(r) != self.m for r in h):
                raise DimensionError("matrix size mismatch")
            coords.extend(x for row in h for x in row)
        return Point(self, tuple(coords))

    def matrices(self, point: "Point") -> tuple[Mat, ...]:
        n = self.m * self.m
        out = []
        for t in range(self.count):
            flat = point.coords[t * n : (t + 1) * n]
            out.append(tuple(tuple(flat[i * self.m + j] for j in range(self.m)) for i in range(self.m)))
        return tuple(out)


@lru_cache(maxsize=None)
def _conjugation_weights(m: int, count: int) -> tuple[Character, ...]:
    out = []
    for _t in range(count):
        for i in range(m):
            for j in range(m):
                w = [0] * m
                w[i] += 1
                w[j] -= 1
                out.append(Character(tuple(w)))
    return tuple(out)


def adjoint(group: GroupSpec) -> ConjugationTuples:
    """The adjoint module: single matrices under conjugation."""
    return ConjugationTuples(group, 1)


@dataclass(frozen=True, eq=True)
class SymPower(Representation):
    """Sym^d of the standard module of a rank-2 single factor (GL_2/SL_2).

    Basis is x^{d-j} y^j for j = 0..d where (x, y) is the standard basis;
    the torus diag(a1, a2) scales the j-th vector by a1^{d-j} a2^j.
    """

    group: GroupSpec
    degree: int

    def __post_init__(self):
        if self.group.dimension != 2 or len(self.group.factors) != 1:
            raise DomainError("symmetric powers are supported for a single rank-2 factor")
        if self.degree < 1:
            raise DomainError("degree must be >= 1")

    @property
    def dim(self) -> int:
        return self.degree + 1

    @property
    def weights(self) -> tuple[Character, ...]:
        d = self.degree
        return tuple(Character((d - j, j)) for j in range(d + 1))

    def basis_labels(self) -> tuple[str, ...]:
        d = self.degree
        return tuple(f"x^{d - j}y^{j}" for j in range(d + 1))

    def act_matrix(self, g: Mat) -> Mat:
        # g.x = g00 x + g10 y, g.y = g01 x + g11 y; expand (g.x)^{d-j} (g.y)^j.
        d = self.degree
        cols = []
        for j in range(d + 1):
            poly1 = _binom_expand(g[0][0], g[1][0], d - j)
            poly2 = _binom_expand(g[0][1], g[1][1], j)
            col = [Fraction(0)] * (d + 1)
            for k1, c1 in enumerate(poly1):
                for k2, c2 in enumerate(poly2):
                    col[k1 + k2] += c1 * c2
            cols.append(col)
        return tuple(tuple(cols[j][i] for j in range(d + 1)) for i in range(d + 1))

    def monomial(self, j: int, coeff=1) -> "Point":
        coords = [Fraction(0)] * self.dim
        coords[j] = frac(coeff)
        return Point(self, tuple(coords))


def _binom_expand(a: Fraction, b: Fraction, n: int) -> list[Fraction]:
    """Coefficients of (a x + b y)^n in y-degree order."""
    from math import comb

    return [comb(n, k) * a ** (n - k) * b**k for k in range(n + 1)]


@dataclass(frozen=True, eq=True)
class DirectSum(Representation):
    parts: tuple[Representation, ...]

    def __post_init__(self):
        if not self.parts:
            raise DomainError("direct sum needs at least one part")
        g = self.parts[0].group
        if any(p.group != g for p in self.parts):
            raise DomainError("direct sum parts must share the group")

    @property
    def group(self) -> GroupSpec:
        return self.parts[0].group

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.parts)

    @property
    def weights(self) -> tuple[Character, ...]:
        return tuple(w for p in self.parts for w in p.weights)

    def basis_labels(self) -> tuple[str, ...]:
        return tuple(
            f"[{k}]{lab}" for k, p in enumerate(self.parts) for lab in p.basis_labels()
        )

    def act_matrix(self, g: Mat) -> Mat:
        dim = self.dim
        rows = []
        offset = 0
        for p in self.parts:
            block = p.act_matrix(g)
            for r in block:
                row = [Fraction(0)] * dim
                row[offset : offset + p.dim] = r
                rows.append(tuple(row))
            offset += p.dim
        return tuple(rows)

    def inject(self, k: int, point: "Point") -> "Point":
        coords = [Fraction(0)] * self.dim
        offset = sum(p.dim for p in self.parts[:k])
        coords[offset : offset + self.parts[k].dim] = point.coords
        return Point(self, tuple(coords))


@dataclass(frozen=True)
class Point:
    rep: Representation
    coords: Vec

    def __post_init__(self):
        object.__setattr__(self, "coords", linalg.vec(self.coords))
        if len(self.coords) != self.rep.dim:
            raise DimensionError("coordinate length must equal the basis size")

    def __add__(self, other: "Point") -> "Point":
        if self.rep != other.rep:
            raise DimensionError("points live in different representations")
        return Point(self.rep, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Point") -> "Point":
        if self.rep != other.rep:
            raise DimensionError("points live in different representations")
        return Point(self.rep, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


@dataclass(frozen=True)
class Grading:
    """Exact decomposition of a point into weight levels along a cocharacter."""

    point: Point
    cocharacter: Cocharacter
    components: dict[int, Point]

    def reconstruct(self) -> Point:
        total = self.point.rep.zero()
        for part in self.components.values():
            total = total + part
        return total

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(sorted(self.components))

    def min_level(self) -> int | None:
        return min(self.components) if self.components else None


def support(v: Point, frame: Mat | None = None) -> frozenset[Character]:
    """Torus weights with nonzero component after moving v into the frame.

    ``frame`` is the base of a cocharacter; None means the standard frame.
    """
    rep = v.rep
    w = v if frame is None else rep.act(linalg.inverse(linalg.mat(frame)), v)
    return frozenset(
        chi for chi, c in zip(rep.weights, w.coords) if c != 0
    )


def grade(v: Point, lam: Cocharacter) -> Grading:
    """Split v into components on which lambda acts by a fixed power."""
    rep = v.rep
    if lam.group != rep.group:
        raise DimensionError("cocharacter and representation have different groups")
    transported = rep.act(lam.base_inverse, v)
    buckets: dict[int, list[Fraction]] = {}
    for idx, (chi, c) in enumerate(zip(rep.weights, transported.coords)):
        if c == 0:
            continue
        n = pairing_vec(lam.torus.exponents, chi)
        bucket = buckets.setdefault(n, [Fraction(0)] * rep.dim)
        bucket[idx] = c
    components = {
        n: rep.act(lam.base, Point(rep, tuple(flat))) for n, flat in buckets.items()
    }
    return Grading(v, lam, components)


def limit(v: Point, lam: Cocharacter) -> Point | None:
    """lim_{a->0} lambda(a).v, or None when a negative level is present."""
    g = grade(v, lam)
    if any(n < 0 for n in g.components):
        return None
    return g.components.get(0, v.rep.zero())


def torus_weight_pairings(rep: Representation, exponents) -> tuple[int, ...]:
    return tuple(pairing_vec(exponents, chi) for chi in rep.weights)


# ---------------------------------------------------------------------------
# Exact polynomial functions on a representation


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in the coordinates of a representation, exact coefficients.

    Terms map a sorted monomial (tuple of (index, exponent) pairs) to a
    nonzero Fraction; the empty monomial is the constant term.
    """

    rep: Representation
    terms: tuple[tuple[Monomial, Fraction], ...]

    @staticmethod
    def from_dict(rep: Representation, d: dict) -> "Polynomial":
        cleaned = {}
        for mono, coeff in d.items():
            coeff = frac(coeff)
            if coeff == 0:
                continue
            mono = tuple(sorted((int(i), int(e)) for i, e in mono))
            for i, e in mono:
                if not (0 <= i < rep.dim) or e < 1:
                    raise DimensionError("bad monomial index or exponent")
            cleaned[mono] = cleaned.get(mono, Fraction(0)) + coeff
        return Polynomial(rep, tuple(sorted((m, c) for m, c in cleaned.items() if c != 0)))

    @staticmethod
    def coordinate(rep: Representation, index: int) -> "Polynomial":
        return Polynomial.from_dict(rep, {((index, 1),): 1})

    @staticmethod
    def constant(rep: Representation, c) -> "Polynomial":
        c = frac(c)
        return Polynomial(rep, (((), c),) if c != 0 else ())

    def __add__(self, other: "Polynomial") -> "Polynomial":
        d = dict(self.terms)
        for mono, coeff in other.terms:
            d[mono] = d.get(mono, Fraction(0)) + coeff
        return Polynomial(self.rep, tuple(sorted((m, c) for m, c in d.items() if c != 0)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scaled(-1)

    def scaled(self, c) -> "Polynomial":
        c = frac(c)
        if c == 0:
            return Polynomial(self.rep, ())
        return Polynomial(self.rep, tuple((m, c * k) for m, k in self.terms))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        d: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                merged: dict[int, int] = {}
                for i, e in itertools.chain(m1, m2):
                    merged[i] = merged.get(i, 0) + e
                mono = tuple(sorted(merged.items()))
                d[mono] = d.get(mono, Fraction(0)) + c1 * c2
        return Polynomial(self.rep, tuple(sorted((m, c) for m, c in d.items() if c != 0)))

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, v: Point) -> Fraction:
        if v.rep != self.rep:
            raise DimensionError("point belongs to a different representation")
        total = Fraction(0)
        for mono, coeff in self.terms:
            val = coeff
            for i, e in mono:
                val *= v.coords[i] ** e
                if val == 0:
                    break
            total += val
        return total

    def weight_of_monomial(self, mono: Monomial) -> Character:
        total = Character(tuple([0] * self.rep.group.dimension))
        for i, e in mono:
            total = total + self.rep.weights[i].scaled(e)
        return total

    def isotypic(self) -> dict[Character, "Polynomial"]:
        """Group terms by total monomial weight; the parts sum back exactly."""
        buckets: dict[Character, dict] = {}
        for mono, coeff in self.terms:
            chi = self.weight_of_monomial(mono)
            buckets.setdefault(chi, {})[mono] = coeff
        return {chi: Polynomial.from_dict(self.rep, d) for chi, d in buckets.items()}

    def substitute_linear(self, a: Mat) -> "Polynomial":
        """The polynomial v -> self(a v), expanded exactly."""
        rows = {}

        def row_poly(i: int) -> "Polynomial":
            if i not in rows:
                rows[i] = Polynomial.from_dict(
                    self.rep,
                    {((j, 1),): a[i][j] for j in range(self.rep.dim) if a[i][j] != 0},
                )
            return rows[i]

        out = Polynomial(self.rep, ())
        for mono, coeff in self.terms:
            term = Polynomial.constant(self.rep, coeff)
            for i, e in mono:
                for _ in range(e):
                    term = term * row_poly(i)
            out = out + term
        return out

    def composed_with_action(self, g: Mat) -> "Polynomial":
        """The polynomial v -> self(g . v)."""
        return self.substitute_linear(self.rep._act_matrix_cached(linalg.mat(g)))


def isotypic_decompose(
    f: Polynomial, frame: Mat | None = None
) -> list[tuple[Character, Polynomial]]:
    """Decompose f (transported by ``frame`` if given) by torus weight.

    With the identity frame the components sum back to f exactly; with a
    base point g they sum to the composed polynomial v -> f(g.v).
    """
    poly = f if frame is None else f.composed_with_action(frame)
    parts = poly.isotypic()
    return sorted(parts.items(), key=lambda kv: kv[0].weights)

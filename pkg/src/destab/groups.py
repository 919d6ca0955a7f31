"""Split classical groups: torus data, roots, Weyl elements, cocharacters.

A group is a finite product of GL/SL factors embedded block-diagonally in
``GL_m`` with the diagonal maximal torus.  Everything is exact: group
elements are rational matrices, cocharacters are integer exponent vectors,
optionally conjugated by a rational base point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import DimensionError, DomainError
from .linalg import Mat, frac

GL = "GL"
SL = "SL"


@dataclass(frozen=True)
class Factor:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in (GL, SL):
            raise DomainError(f"unknown family {self.family!r}")
        if self.rank < 1:
            raise DomainError("factor rank must be >= 1")


@dataclass(frozen=True)
class Character:
    """A weight of the standard torus: an integer vector of length m."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def __add__(self, other: "Character") -> "Character":
        if len(self.weights) != len(other.weights):
            raise DimensionError("character lengths differ")
        return Character(tuple(a + b for a, b in zip(self.weights, other.weights)))

    def __neg__(self) -> "Character":
        return Character(tuple(-a for a in self.weights))

    def scaled(self, k: int) -> "Character":
        return Character(tuple(k * a for a in self.weights))

    def is_zero(self) -> bool:
        return all(w == 0 for w in self.weights)


@dataclass(frozen=True)
class GroupSpec:
    """A product of GL/SL factors with its standard torus and norm."""

    factors: tuple[Factor, ...]
    norm: "Norm | None" = None

    def __post_init__(self):
        if not self.factors:
            raise DomainError("a group needs at least one factor")
        if self.norm is None:
            object.__setattr__(self, "norm", Norm.standard(self.dimension))
        self.norm.check_invariance(self)

    @staticmethod
    def make(*factors: tuple[str, int], gram=None) -> "GroupSpec":
        fs = tuple(Factor(fam, rk) for fam, rk in factors)
        m = sum(f.rank for f in fs)
        norm = Norm.standard(m) if gram is None else Norm(linalg.mat(gram))
        return GroupSpec(fs, norm)

    @property
    def dimension(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def block_slices(self) -> tuple[range, ...]:
        out = []
        start = 0
        for f in self.factors:
            out.append(range(start, start + f.rank))
            start += f.rank
        return tuple(out)

    def block_of(self, index: int) -> int:
        for b, r in enumerate(self.block_slices):
            if index in r:
                return b
        raise DimensionError(f"index {index} out of range")

    def roots(self) -> tuple[Character, ...]:
        """All roots e_i - e_j (i != j) within factor blocks."""
        m = self.dimension
        out = []
        for block in self.block_slices:
            for i in block:
                for j in block:
                    if i != j:
                        w = [0] * m
                        w[i], w[j] = 1, -1
                        out.append(Character(tuple(w)))
        return tuple(out)

    def identity(self) -> Mat:
        return linalg.identity(self.dimension)

    def contains(self, g: Mat) -> bool:
        m = self.dimension
        if len(g) != m or any(len(row) != m for row in g):
            return False
        for bi, block_i in enumerate(self.block_slices):
            for bj, block_j in enumerate(self.block_slices):
                if bi == bj:
                    continue
                if any(g[i][j] != 0 for i in block_i for j in block_j):
                    return False
        for f, block in zip(self.factors, self.block_slices):
            sub = tuple(tuple(g[i][j] for j in block) for i in block)
            d = linalg.det(sub)
            if d == 0:
                return False
            if f.family == SL and d != 1:
                return False
        return True

    def require_member(self, g: Mat, what: str = "element") -> None:
        if not self.contains(linalg.mat(g)):
            raise DomainError(f"{what} is not in the group")

    def weyl_representatives(self) -> tuple[Mat, ...]:
        """One rational representative per Weyl group element.

        Permutation matrices blockwise; inside SL factors a column is negated
        when needed to keep determinant one.
        """
        per_block = []
        for f, block in zip(self.factors, self.block_slices):
            reps = []
            for perm in itertools.permutations(range(f.rank)):
                reps.append((block, perm, f.family))
            per_block.append(reps)
        m = self.dimension
        out = []
        for combo in itertools.product(*per_block):
            g = [[Fraction(0)] * m for _ in range(m)]
            for block, perm, family in combo:
                sign = _perm_sign(perm)
                negate_col = None
                if family == SL and sign < 0:
                    negate_col = next(i for i, p in enumerate(perm) if p != i)
                for i, p in enumerate(perm):
                    val = Fraction(-1 if i == negate_col else 1)
                    g[block[p]][block[i]] = val
            out.append(tuple(tuple(row) for row in g))
        return tuple(out)

    def shears(self, values=(-2, -1, 1, 2)) -> tuple[Mat, ...]:
        """Elementary shears I + c*E_ij inside factor blocks."""
        m = self.dimension
        out = []
        for block in self.block_slices:
            for i in block:
                for j in block:
                    if i == j:
                        continue
                    for c in values:
                        if c == 0:
                            continue
                        g = [list(row) for row in linalg.identity(m)]
                        g[i][j] = frac(c)
                        out.append(tuple(tuple(row) for row in g))
        return tuple(out)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class TorusCocharacter:
    """An integer exponent vector d: a -> diag(a^{d_1}, ..., a^{d_m})."""

    group: GroupSpec
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(d) for d in self.exponents))
        if len(self.exponents) != self.group.dimension:
            raise DimensionError("exponent vector length must equal the matrix dimension")
        for f, block in zip(self.group.factors, self.group.block_slices):
            if f.family == SL and sum(self.exponents[i] for i in block) != 0:
                raise DomainError("SL factor exponents must sum to zero")

    @property
    def is_zero(self) -> bool:
        return all(d == 0 for d in self.exponents)

    @property
    def is_primitive(self) -> bool:
        g = 0
        for d in self.exponents:
            g = gcd(g, abs(d))
        return g == 1

    def primitive(self) -> "TorusCocharacter":
        if self.is_zero:
            return self
        g = 0
        for d in self.exponents:
            g = gcd(g, abs(d))
        return TorusCocharacter(self.group, tuple(d // g for d in self.exponents))

    def scaled(self, k: int) -> "TorusCocharacter":
        return TorusCocharacter(self.group, tuple(k * d for d in self.exponents))

    def __add__(self, other: "TorusCocharacter") -> "TorusCocharacter":
        return TorusCocharacter(
            self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def evaluate(self, a: Fraction) -> Mat:
        """The diagonal matrix of the torus point at parameter ``a``."""
        a = frac(a)
        if a == 0:
            raise DomainError("parameter must be invertible")
        return tuple(
            tuple(a ** self.exponents[i] if i == j else Fraction(0) for j in range(len(self.exponents)))
            for i in range(len(self.exponents))
        )


@dataclass(frozen=True)
class Cocharacter:
    """A conjugated torus cocharacter g . lambda_d . g^{-1}."""

    base: Mat
    torus: TorusCocharacter
    _base_inv: Mat = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        base = linalg.mat(self.base)
        object.__setattr__(self, "base", base)
        self.group.require_member(base, "cocharacter base")
        object.__setattr__(self, "_base_inv", linalg.inverse(base))

    @property
    def group(self) -> GroupSpec:
        return self.torus.group

    @property
    def base_inverse(self) -> Mat:
        return self._base_inv

    @property
    def is_zero(self) -> bool:
        return self.torus.is_zero

    @staticmethod
    def standard(group: GroupSpec, exponents) -> "Cocharacter":
        return Cocharacter(group.identity(), TorusCocharacter(group, tuple(exponents)))

    @staticmethod
    def based(group: GroupSpec, base, exponents) -> "Cocharacter":
        return Cocharacter(linalg.mat(base), TorusCocharacter(group, tuple(exponents)))

    def conjugated_by(self, g: Mat) -> "Cocharacter":
        """The cocharacter g . self (left action on one-parameter subgroups)."""
        g = linalg.mat(g)
        self.group.require_member(g, "conjugator")
        return Cocharacter(linalg.mat_mul(g, self.base), self.torus)

    def evaluate(self, a) -> Mat:
        inner = self.torus.evaluate(a)
        return linalg.mat_mul(linalg.mat_mul(self.base, inner), self._base_inv)


@dataclass(frozen=True)
class Norm:
    """An invariant norm: an integer Gram matrix on the exponent lattice.

    The Gram matrix must be symmetric positive definite and invariant under
    all coordinate permutations inside factor blocks, so the induced norm is
    Weyl-invariant and extends to a conjugation-invariant norm on all
    cocharacters (the norm of a based cocharacter reads off its torus part).
    """

    gram: Mat

    def __post_init__(self):
        g = linalg.mat(self.gram)
        object.__setattr__(self, "gram", g)
        if any(x.denominator != 1 for row in g for x in row):
            raise DomainError("Gram matrix must be integer-valued")
        if not linalg.is_symmetric(g):
            raise DomainError("Gram matrix must be symmetric")
        if not linalg.is_positive_definite(g):
            raise DomainError("Gram matrix must be positive definite")

    @staticmethod
    def standard(m: int) -> "Norm":
        return Norm(linalg.identity(m))

    def check_invariance(self, group: GroupSpec) -> None:
        """Reject Gram matrices moved by an in-block transposition."""
        m = group.dimension
        if len(self.gram) != m:
            raise DimensionError("Gram matrix size must equal the matrix dimension")
        for block in group.block_slices:
            for i, j in zip(block, list(block)[1:]):
                perm = list(range(m))
                perm[i], perm[j] = perm[j], perm[i]
                moved = tuple(
                    tuple(self.gram[perm[a]][perm[b]] for b in range(m)) for a in range(m)
                )
                if moved != self.gram:
                    raise DomainError("Gram matrix is not invariant under block permutations")

    def value_sq(self, d: tuple[int, ...]) -> Fraction:
        v = linalg.vec(d)
        return linalg.dot(v, linalg.mat_vec(self.gram, v))


def pairing(lam: TorusCocharacter, chi: Character) -> int:
    """Integer pairing <lambda, chi> = sum_i d_i chi_i."""
    if len(lam.exponents) != len(chi.weights):
        raise DimensionError("cocharacter and character lengths differ")
    return sum(d * w for d, w in zip(lam.exponents, chi.weights))


def pairing_vec(exponents, chi: Character) -> int:
    if len(exponents) != len(chi.weights):
        raise DimensionError("cocharacter and character lengths differ")
    return sum(d * w for d, w in zip(exponents, chi.weights))


def norm_sq(lam: TorusCocharacter | Cocharacter) -> Fraction:
    """Squared norm; depends only on the torus part by construction."""
    torus = lam.torus if isinstance(lam, Cocharacter) else lam
    return torus.group.norm.value_sq(torus.exponents)


def fold_permutation_base(lam: Cocharacter) -> Cocharacter:
    """Rewrite a cocharacter with a signed-permutation base in standard form.

    Conjugating a diagonal cocharacter by a signed permutation matrix just
    permutes the exponents, so the standard-torus representative is the
    canonical way to report it.  Other bases are returned unchanged.
    """
    base = lam.base
    m = len(base)
    perm = [0] * m
    for j in range(m):
        nonzero = [i for i in range(m) if base[i][j] != 0]
        if len(nonzero) != 1 or abs(base[nonzero[0]][j]) != 1:
            return lam
        perm[j] = nonzero[0]
    exps = [0] * m
    for j in range(m):
        exps[perm[j]] = lam.torus.exponents[j]
    return Cocharacter.standard(lam.group, tuple(exps))


def weyl_conjugate(w, lam: TorusCocharacter) -> TorusCocharacter:
    """Apply a block permutation: new exponents satisfy d'[w(i)] = d[i]."""
    perm = tuple(int(i) for i in w)
    m = len(lam.exponents)
    if sorted(perm) != list(range(m)):
        raise DomainError("w must be a permutation of 0..m-1")
    for i, p in enumerate(perm):
        if lam.group.block_of(i) != lam.group.block_of(p):
            raise DomainError("permutation crosses factor blocks")
    out = [0] * m
    for i, p in enumerate(perm):
        out[p] = lam.exponents[i]
    return TorusCocharacter(lam.group, tuple(out))

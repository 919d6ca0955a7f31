"""R-parabolic subgroups attached to cocharacters.

For a diagonal exponent vector d, conjugation by lambda(a) scales the
matrix entry (i, j) by a^(d_i - d_j), so membership in P_lambda, the Levi
L_lambda, and the unipotent radical R_u(P_lambda) are pure zero-pattern
conditions.  A based cocharacter is handled by transporting the element
into the standard frame first.

The conjugator solver exploits that u h u^{-1} = h' is equivalent to the
linear equation u h = h' u once u is constrained to the affine subspace
defining R_u(P_lambda) (identity on diagonal blocks, zero below them), so
existence over the rationals reduces to exact affine feasibility.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    DimensionError,
    DomainError,
    InvariantViolation,
    PreconditionError,
    UnsupportedRepresentationError,
)
from .groups import Cocharacter, GroupSpec, pairing_vec
from .linalg import Mat
from .reps import ConjugationTuples, Point


class MembershipClass(enum.Enum):
    IN_RU = "InRu"
    IN_LEVI = "InL"
    IN_P_NOT_LEVI_NOT_RU = "InPnotLnotRu"
    NOT_IN_P = "NotInP"

    @property
    def in_parabolic(self) -> bool:
        return self is not MembershipClass.NOT_IN_P


def _transport(g: Mat, lam: Cocharacter) -> Mat:
    return linalg.mat_mul(linalg.mat_mul(lam.base_inverse, g), lam.base)


def _classify_pattern(gt: Mat, d: tuple[int, ...], unit_diag: Mat) -> MembershipClass:
    m = len(d)
    below = any(
        gt[i][j] != 0 for i in range(m) for j in range(m) if d[i] < d[j]
    )
    if below:
        return MembershipClass.NOT_IN_P
    diag_part_is_unit = all(
        gt[i][j] == unit_diag[i][j] for i in range(m) for j in range(m) if d[i] == d[j]
    )
    if diag_part_is_unit:
        return MembershipClass.IN_RU
    strictly_above = any(
        gt[i][j] != 0 for i in range(m) for j in range(m) if d[i] > d[j]
    )
    if not strictly_above:
        return MembershipClass.IN_LEVI
    return MembershipClass.IN_P_NOT_LEVI_NOT_RU


def classify(g: Mat, lam: Cocharacter) -> MembershipClass:
    """Where the group element sits relative to P_lambda.

    The identity is the single overlap of the radical and the Levi; it is
    reported as IN_RU so that conjugators returned by the solver always
    classify into the radical.
    """
    g = linalg.mat(g)
    lam.group.require_member(g)
    gt = _transport(g, lam)
    return _classify_pattern(gt, lam.torus.exponents, linalg.identity(len(gt)))


def lie_classify(x: Mat, lam: Cocharacter) -> MembershipClass:
    """Lie algebra version: the limit must be 0 for the radical's algebra."""
    x = linalg.mat(x)
    _require_lie_element(lam.group, x)
    xt = _transport(x, lam)
    m = len(xt)
    zero = tuple((Fraction(0),) * m for _ in range(m))
    return _classify_pattern(xt, lam.torus.exponents, zero)


def _require_lie_element(group: GroupSpec, x: Mat) -> None:
    m = group.dimension
    if len(x) != m or any(len(r) != m for r in x):
        raise DimensionError("matrix size must equal the group dimension")
    for bi, block_i in enumerate(group.block_slices):
        for bj, block_j in enumerate(group.block_slices):
            if bi != bj and any(x[i][j] != 0 for i in block_i for j in block_j):
                raise DomainError("Lie algebra elements are block-diagonal")
    for f, block in zip(group.factors, group.block_slices):
        if f.family == "SL" and sum(x[i][i] for i in block) != 0:
            raise DomainError("SL factor requires trace zero")


def _limit_pattern(gt: Mat, d: tuple[int, ...]) -> Mat:
    m = len(gt)
    return tuple(
        tuple(gt[i][j] if d[i] == d[j] else Fraction(0) for j in range(m))
        for i in range(m)
    )


def c_lambda(g, lam: Cocharacter):
    """Limit projection onto the Levi; accepts one matrix or a sequence.

    Raises PreconditionError naming the offending component when some
    component lies outside P_lambda.
    """
    single = _looks_like_matrix(g)
    items = [linalg.mat(g)] if single else [linalg.mat(h) for h in g]
    d = lam.torus.exponents
    out = []
    for k, h in enumerate(items):
        ht = _transport(h, lam)
        if _classify_pattern(ht, d, linalg.identity(len(ht))) is MembershipClass.NOT_IN_P:
            where = "element" if single else f"component {k}"
            raise PreconditionError(f"{where} is not in the parabolic subgroup")
        out.append(
            linalg.mat_mul(linalg.mat_mul(lam.base, _limit_pattern(ht, d)), lam.base_inverse)
        )
    return out[0] if single else tuple(out)


def lie_c_lambda(x, lam: Cocharacter):
    """Limit projection for Lie algebra elements (single matrix or tuple)."""
    single = _looks_like_matrix(x)
    items = [linalg.mat(x)] if single else [linalg.mat(h) for h in x]
    d = lam.torus.exponents
    out = []
    for k, h in enumerate(items):
        ht = _transport(h, lam)
        if any(
            ht[i][j] != 0 for i in range(len(ht)) for j in range(len(ht)) if d[i] < d[j]
        ):
            where = "element" if single else f"component {k}"
            raise PreconditionError(f"{where} is not in the parabolic's Lie algebra")
        out.append(
            linalg.mat_mul(linalg.mat_mul(lam.base, _limit_pattern(ht, d)), lam.base_inverse)
        )
    return out[0] if single else tuple(out)


def _looks_like_matrix(g) -> bool:
    try:
        first = g[0]
    except (TypeError, KeyError, IndexError):
        return False
    try:
        first[0][0]
    except (TypeError, IndexError, KeyError):
        return True
    return False


# ---------------------------------------------------------------------------
# Canonical descriptors


@dataclass(frozen=True)
class ParabolicDescriptor:
    """Canonical form of P_lambda: one flag of subspaces per factor.

    Each flag entry is the reduced-row-echelon basis of the span of the
    base-transported coordinate vectors with exponent >= a cut value, so
    two cocharacters defining the same subgroup produce equal descriptors.
    The empty flag denotes the whole group.
    """

    group: GroupSpec
    flags: tuple[tuple[Mat, ...], ...]

    @staticmethod
    def from_cocharacter(lam: Cocharacter) -> "ParabolicDescriptor":
        group = lam.group
        d = lam.torus.exponents
        base_cols = linalg.transpose(lam.base)
        flags = []
        for block in group.block_slices:
            values = sorted({d[i] for i in block}, reverse=True)
            chain = []
            for cut in values[:-1]:  # the last cut spans the whole block
                rows = tuple(base_cols[i] for i in block if d[i] >= cut)
                chain.append(linalg.row_space(rows))
            flags.append(tuple(chain))
        return ParabolicDescriptor(group, tuple(flags))

    @property
    def is_whole_group(self) -> bool:
        return all(not chain for chain in self.flags)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Block sizes per factor: dims of successive flag quotients."""
        out = []
        for chain, block in zip(self.flags, self.group.block_slices):
            dims = [len(space) for space in chain] + [len(block)]
            sizes = [dims[0]] + [dims[k] - dims[k - 1] for k in range(1, len(dims))]
            out.append(tuple(sizes))
        return tuple(out)

    def contains(self, g: Mat) -> bool:
        """Membership via flag stabilization (g must be a group element)."""
        g = linalg.mat(g)
        self.group.require_member(g)
        for chain in self.flags:
            for space in chain:
                for row in space:
                    image = linalg.mat_vec(g, row)
                    if not linalg.in_row_space(image, space):
                        return False
        return True

    def conjugated_by(self, g: Mat) -> "ParabolicDescriptor":
        g = linalg.mat(g)
        self.group.require_member(g)
        flags = tuple(
            tuple(
                linalg.row_space(tuple(linalg.mat_vec(g, row) for row in space))
                for space in chain
            )
            for chain in self.flags
        )
        return ParabolicDescriptor(self.group, flags)


# ---------------------------------------------------------------------------
# Conjugators inside the unipotent radical


def find_ru_conjugator(
    v: Point, v_prime: Point, lam: Cocharacter, rep: ConjugationTuples | None = None
) -> Mat | None:
    """Exact u in R_u(P_lambda)(Q) with u . v = v', or None.

    Only conjugation-tuple representations are supported: there the
    relations u h_i = h_i' u are linear in the entries of u, and membership
    in the radical is an affine condition, so existence is an exact
    affine-linear feasibility question over the rationals.
    """
    rep = rep if rep is not None else v.rep
    if not isinstance(rep, ConjugationTuples):
        raise UnsupportedRepresentationError(
            "conjugator solving needs a conjugation-tuple representation"
        )
    if v.rep != rep or v_prime.rep != rep:
        raise DimensionError("points must belong to the given representation")
    hs = [_transport(h, lam) for h in rep.matrices(v)]
    hs_prime = [_transport(h, lam) for h in rep.matrices(v_prime)]
    d = lam.torus.exponents
    m = len(d)
    group = lam.group

    free = [
        (i, j)
        for i in range(m)
        for j in range(m)
        if d[i] > d[j] and group.block_of(i) == group.block_of(j)
    ]
    index = {pos: k for k, pos in enumerate(free)}

    def u_entry(i: int, j: int):
        """Entry of u as (constant, coefficient row over free variables)."""
        if (i, j) in index:
            row = [Fraction(0)] * len(free)
            row[index[(i, j)]] = Fraction(1)
            return Fraction(0), row
        return (Fraction(1) if i == j else Fraction(0)), [Fraction(0)] * len(free)

    rows = []
    rhs = []
    for h, hp in zip(hs, hs_prime):
        for i in range(m):
            for j in range(m):
                # (u h - h' u)_{ij} = 0
                const = Fraction(0)
                coeffs = [Fraction(0)] * len(free)
                for k in range(m):
                    c0, cv = u_entry(i, k)
                    if h[k][j] != 0:
                        const += c0 * h[k][j]
                        if any(cv):
                            for t, x in enumerate(cv):
                                coeffs[t] += x * h[k][j]
                    c0, cv = u_entry(k, j)
                    if hp[i][k] != 0:
                        const -= hp[i][k] * c0
                        if any(cv):
                            for t, x in enumerate(cv):
                                coeffs[t] -= hp[i][k] * x
                if any(coeffs) or const != 0:
                    rows.append(tuple(coeffs))
                    rhs.append(-const)
    if rows:
        solution = linalg.solve_affine(tuple(rows), tuple(rhs))
        if solution is None:
            return None
    else:
        solution = (Fraction(0),) * len(free)

    ut = [list(row) for row in linalg.identity(m)]
    for (i, j), k in index.items():
        ut[i][j] = solution[k]
    u = linalg.mat_mul(linalg.mat_mul(lam.base, tuple(tuple(r) for r in ut)), lam.base_inverse)

    # re-check both postconditions exactly before handing the witness out
    if classify(u, lam) is not MembershipClass.IN_RU:
        raise InvariantViolation("solved conjugator is not in the unipotent radical")
    if rep.act(u, v) != v_prime:
        raise InvariantViolation("solved conjugator does not map v to v'")
    return u


# ---------------------------------------------------------------------------
# Commuting pairs of cocharacters


def composition_threshold(rep, lam: Cocharacter, mu: Cocharacter) -> int:
    """Explicit t0 making t*lam + mu refine lam on the module's weights.

    For t >= t0 every weight with a nonzero lam-pairing keeps its sign
    under t*lam + mu, which is what the grading-inclusion statements need.
    """
    if lam.base != mu.base:
        raise PreconditionError("cocharacters must share a frame")
    dl = lam.torus.exponents
    dm = mu.torus.exponents
    pos = [abs(pairing_vec(dl, chi)) for chi in rep.weights if pairing_vec(dl, chi) != 0]
    if not pos:
        return 1
    min_pos = min(pos)
    max_mu = max(abs(pairing_vec(dm, chi)) for chi in rep.weights)
    return 1 + (max_mu + min_pos - 1) // min_pos


def combine(lam: Cocharacter, mu: Cocharacter, t: int) -> Cocharacter:
    """The cocharacter t*lam + mu for commuting (same-frame) inputs."""
    if lam.base != mu.base:
        raise PreconditionError("cocharacters must share a frame")
    return Cocharacter(lam.base, lam.torus.scaled(t) + mu.torus)

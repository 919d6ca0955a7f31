"""Uniform instability into a stable subvariety, and its exact optimizer.

The vanishing order of the orbit curve a -> lambda(a).x against S is read
off cancellation-free from the isotypic components of the generators of S:
each component transforms by a single character, so its curve value is a
single monomial in the parameter and orders are exact.  Consequently, for
a fixed torus frame the objective  min over components of <lambda, chi>
is a minimum of finitely many linear forms on the admissibility cone, and
maximizing it against the norm is an exact convex program over the
rationals: minimize the squared norm over the polyhedron where every
objective form is at least one.  That program is solved by enumerating
active subsets and solving each equality-constrained system exactly,
which is exponential in the number of distinct weights but exact; at desk
scale (up to roughly fifteen distinct weights) this is the documented
scalability boundary.

Searching beyond one maximal torus uses a finite conjugation family of
frames and is never claimed complete; ``oracle_mode`` re-derives the
optimum by brute force over an exponent box as an independent check.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import (
    DimensionError,
    DomainError,
    InvariantViolation,
    LimitMembershipError,
    PreconditionError,
    UnsupportedRepresentationError,
)
from .groups import (
    Character,
    Cocharacter,
    GroupSpec,
    fold_permutation_base,
    norm_sq,
    pairing_vec,
)
from .linalg import Mat, Vec
from .parabolic import MembershipClass, ParabolicDescriptor, classify, find_ru_conjugator
from .reps import ConjugationTuples, Point, Polynomial, Representation

# ---------------------------------------------------------------------------
# Subvarieties


class SubvarietyKind(enum.Enum):
    ZERO_LOCUS = "zero_locus"
    IDENTITY_TUPLE = "identity_tuple"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SubvarietySpec:
    """A G-stable closed subvariety given by explicit polynomial generators."""

    kind: SubvarietyKind
    custom_generators: tuple[Polynomial, ...] = ()
    g_stable_asserted: bool = True

    @staticmethod
    def zero_locus() -> "SubvarietySpec":
        return SubvarietySpec(SubvarietyKind.ZERO_LOCUS)

    @staticmethod
    def identity_tuple() -> "SubvarietySpec":
        return SubvarietySpec(SubvarietyKind.IDENTITY_TUPLE)

    @staticmethod
    def custom(generators, g_stable_asserted: bool = False) -> "SubvarietySpec":
        gens = tuple(generators)
        if not gens:
            raise DomainError("a custom subvariety needs at least one generator")
        return SubvarietySpec(SubvarietyKind.CUSTOM, gens, g_stable_asserted)

    def generators(self, rep: Representation) -> tuple[Polynomial, ...]:
        cache = self.__dict__.setdefault("_gen_cache", {})
        if rep not in cache:
            cache[rep] = self._materialize(rep)
        return cache[rep]

    def _materialize(self, rep: Representation) -> tuple[Polynomial, ...]:
        if self.kind is SubvarietyKind.ZERO_LOCUS:
            return tuple(Polynomial.coordinate(rep, i) for i in range(rep.dim))
        if self.kind is SubvarietyKind.IDENTITY_TUPLE:
            if not isinstance(rep, ConjugationTuples):
                raise UnsupportedRepresentationError(
                    "the identity-tuple subvariety needs a conjugation-tuple representation"
                )
            m = rep.m
            gens = []
            for t in range(rep.count):
                for i in range(m):
                    for j in range(m):
                        coord = Polynomial.coordinate(rep, t * m * m + i * m + j)
                        if i == j:
                            coord = coord - Polynomial.constant(rep, 1)
                        gens.append(coord)
            return tuple(gens)
        for g in self.custom_generators:
            if g.rep != rep:
                raise DimensionError("custom generators are bound to a different representation")
        return self.custom_generators

    def isotypic_data(
        self, rep: Representation, frame: Mat | None = None
    ) -> tuple[tuple[tuple[Character, Polynomial], ...], ...]:
        """Per generator, the weight components of the frame-composed generator.

        Cached; on first computation the components are checked to sum back
        to the composed generator exactly.
        """
        key_frame = frame if frame is not None else rep.group.identity()
        cache = self.__dict__.setdefault("_iso_cache", {})
        key = (rep, key_frame)
        if key not in cache:
            trivial_frame = key_frame == rep.group.identity()
            data = []
            for gen in self.generators(rep):
                composed = gen if trivial_frame else gen.composed_with_action(key_frame)
                parts = sorted(composed.isotypic().items(), key=lambda kv: kv[0].weights)
                total = Polynomial(rep, ())
                for _chi, part in parts:
                    total = total + part
                if total != composed:
                    raise InvariantViolation("isotypic components do not reconstruct the generator")
                data.append(tuple(parts))
            cache[key] = tuple(data)
        return cache[key]

    def contains_point(self, x: Point) -> bool:
        return all(g.evaluate(x) == 0 for g in self.generators(x.rep))

    def stable_under(self, g: Mat, rep: Representation) -> bool:
        """Spot check: composed generators stay in the linear span of the set."""
        gens = self.generators(rep)
        monomials = sorted({mono for f in gens for mono, _ in f.terms})
        extra = sorted(
            {
                mono
                for f in gens
                for mono, _ in f.composed_with_action(g).terms
                if mono not in set(monomials)
            }
        )
        cols = {mono: k for k, mono in enumerate(monomials + extra)}

        def as_vector(f: Polynomial) -> Vec:
            v = [Fraction(0)] * len(cols)
            for mono, c in f.terms:
                v[cols[mono]] = c
            return tuple(v)

        basis = linalg.row_space(tuple(as_vector(f) for f in gens))
        return all(
            linalg.in_row_space(as_vector(f.composed_with_action(g)), basis) for f in gens
        )


# ---------------------------------------------------------------------------
# Vanishing orders


@dataclass(frozen=True)
class VanishingOrder:
    """Order of tangency of the orbit curve with S; None encodes infinity."""

    finite: int | None

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    @property
    def is_positive(self) -> bool:
        return self.finite is None or self.finite > 0

    @staticmethod
    def infinite() -> "VanishingOrder":
        return VanishingOrder(None)

    def scaled(self, m: int) -> "VanishingOrder":
        return self if self.finite is None else VanishingOrder(m * self.finite)


def admits_limit(x: Point, lam: Cocharacter) -> bool:
    rep = x.rep
    transported = rep.act(lam.base_inverse, x)
    d = lam.torus.exponents
    return all(
        c == 0 or pairing_vec(d, chi) >= 0
        for chi, c in zip(rep.weights, transported.coords)
    )


def admits_limit_set(points, lam: Cocharacter) -> bool:
    """True iff the limit exists for every point of the set."""
    return all(admits_limit(x, lam) for x in points)


def vanishing_order(x: Point, lam: Cocharacter, s: SubvarietySpec) -> VanishingOrder:
    """Exact order of the orbit curve of x against S along lambda."""
    if not admits_limit(x, lam):
        raise LimitMembershipError("the limit of x along lambda does not exist")
    rep = x.rep
    if s.contains_point(x):
        return VanishingOrder.infinite()
    transported = rep.act(lam.base_inverse, x)
    d = lam.torus.exponents
    best: int | None = None
    for parts in s.isotypic_data(rep, lam.base):
        for chi, component in parts:
            if component.evaluate(transported) != 0:
                n = pairing_vec(d, chi)
                if best is None or n < best:
                    best = n
    if best is None:
        raise InvariantViolation("point outside S with identically vanishing generators")
    return VanishingOrder(best)


# ---------------------------------------------------------------------------
# Exact convex kernels


def _min_qnorm_affine(q: Mat, rows: list[Vec], rhs: list[Fraction]) -> Vec | None:
    """Minimize d^T q d subject to rows . d = rhs, exactly, or None."""
    n = len(q)
    k = len(rows)
    size = n + k
    system = []
    target = []
    for i in range(n):
        line = [2 * q[i][j] for j in range(n)] + [-rows[r][i] for r in range(k)]
        system.append(tuple(line))
        target.append(Fraction(0))
    for r in range(k):
        line = list(rows[r]) + [Fraction(0)] * k
        system.append(tuple(line))
        target.append(rhs[r])
    solution = linalg.solve_affine(tuple(system), tuple(target))
    if solution is None:
        return None
    return solution[:n]


def min_qnorm_over_polyhedron(
    q: Mat, ineqs: list[tuple[Vec, Fraction]], eqs: list[Vec]
) -> Vec | None:
    """Unique minimizer of d^T q d over {g.d >= c, e.d = 0}, or None if empty.

    Enumerates active subsets of the inequalities: the minimizer sits in the
    relative interior of a face, where it is the minimum-norm point of the
    face's affine hull, so some linearly independent active subset recovers
    it exactly.
    """
    n = len(q)
    eq_rank = linalg.rank(tuple(eqs)) if eqs else 0
    cap = n - eq_rank
    seen: dict[tuple, None] = {}
    unique_ineqs = []
    for g, c in ineqs:
        key = (g, c)
        if key not in seen:
            seen[key] = None
            unique_ineqs.append((g, c))

    best: tuple[Fraction, Vec] | None = None
    indices = range(len(unique_ineqs))
    for size in range(0, cap + 1):
        for subset in itertools.combinations(indices, size):
            rows = list(eqs) + [unique_ineqs[i][0] for i in subset]
            rhs = [Fraction(0)] * len(eqs) + [unique_ineqs[i][1] for i in subset]
            d = _min_qnorm_affine(q, rows, rhs)
            if d is None:
                continue
            if any(linalg.dot(g, d) < c for g, c in unique_ineqs):
                continue
            value = linalg.dot(d, linalg.mat_vec(q, d))
            if best is None or value < best[0]:
                best = (value, d)
    return best[1] if best else None


def nearest_point_interior(points, gram: Mat | None = None) -> Vec:
    """The unique gram-nearest point of the convex hull to the origin.

    Enumerates affinely independent subsets (Caratheodory), solves each
    equality-constrained projection exactly, and keeps the feasible best.
    """
    pts = [linalg.vec(p) for p in points]
    if not pts:
        raise PreconditionError("need at least one point")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionError("points must share a dimension")
    q = gram if gram is not None else linalg.identity(n)

    best: tuple[Fraction, Vec] | None = None
    for size in range(1, n + 2):
        for subset in itertools.combinations(range(len(pts)), size):
            chosen = [pts[i] for i in subset]
            base = chosen[0]
            diffs = tuple(
                tuple(a - b for a, b in zip(p, base)) for p in chosen[1:]
            )
            if diffs and linalg.rank(diffs) < len(diffs):
                continue  # affinely dependent; a smaller subset covers it
            # variables t_i; y = sum t_i p_i; minimize y^T q y s.t. sum t = 1
            p_mat = linalg.transpose(tuple(chosen))
            gram_t = linalg.mat_mul(
                linalg.mat_mul(tuple(chosen), q), p_mat
            )
            ones = tuple(Fraction(1) for _ in chosen)
            t = _min_qnorm_affine(gram_t, [ones], [Fraction(1)])
            if t is None or any(x < 0 for x in t):
                continue
            y = tuple(
                sum(t[k] * chosen[k][i] for k in range(len(chosen))) for i in range(n)
            )
            value = linalg.dot(y, linalg.mat_vec(q, y))
            if best is None or value < best[0]:
                best = (value, y)
    assert best is not None  # size-1 subsets always feasible
    return best[1]


# ---------------------------------------------------------------------------
# Torus optimization


@dataclass(frozen=True)
class TorusOptimum:
    """A torus-frame optimum; zero exponents with value None is the trivial class."""

    exponents: tuple[int, ...]
    value_sq: Fraction | None
    active_objective: tuple[Character, ...]
    active_cone: tuple[Character, ...]

    @property
    def trivial(self) -> bool:
        return self.value_sq is None


def _frame_data(points, s: SubvarietySpec, frame: Mat | None):
    """Transported points plus cone forms and objective forms for a frame."""
    rep = points[0].rep
    inv = linalg.inverse(frame) if frame is not None else None
    transported = [rep.act(inv, x) if inv is not None else x for x in points]
    cone: set[Character] = set()
    for x in transported:
        for chi, c in zip(rep.weights, x.coords):
            if c != 0 and not chi.is_zero():
                cone.add(chi)
    iso = s.isotypic_data(rep, frame)
    objective: set[Character] = set()
    all_in_s = True
    for x in transported:
        forms_x = {
            chi
            for parts in iso
            for chi, component in parts
            if component.evaluate(x) != 0
        }
        if forms_x:
            all_in_s = False
            objective |= forms_x
    return transported, cone, objective, all_in_s


def optimize_torus(
    points, s: SubvarietySpec, frame: Mat | None = None, group: GroupSpec | None = None
) -> TorusOptimum | None:
    """Exact maximizer of (min objective pairing) / norm within one torus.

    Returns None when no cocharacter of this torus frame moves every point
    into S, i.e. the maximum is not strictly positive.  When the whole set
    already lies in S the trivial optimum (zero cocharacter) is returned
    with value None by ``optimize``; this function reports it as None too
    since no direction is strictly positive.
    """
    points = list(points)
    if not points:
        raise PreconditionError("the point set must be nonempty")
    rep = points[0].rep
    group = group if group is not None else rep.group
    _transported, cone, objective, all_in_s = _frame_data(points, s, frame)
    if all_in_s:
        return TorusOptimum((0,) * group.dimension, None, (), ())
    if any(chi.is_zero() for chi in objective):
        return None
    m = group.dimension
    eqs = []
    for f, block in zip(group.factors, group.block_slices):
        if f.family == "SL":
            row = [Fraction(0)] * m
            for i in block:
                row[i] = Fraction(1)
            eqs.append(tuple(row))
    obj_rows = {chi: linalg.vec(chi.weights) for chi in objective}
    ineqs = [(row, Fraction(1)) for row in obj_rows.values()]
    for chi in cone - objective:
        ineqs.append((linalg.vec(chi.weights), Fraction(0)))
    d = min_qnorm_over_polyhedron(group.norm.gram, ineqs, eqs)
    if d is None:
        return None
    exps = linalg.primitive_direction(d)
    pairings = {chi: pairing_vec(exps, chi) for chi in objective}
    a = min(pairings.values())
    if a <= 0:
        raise InvariantViolation("optimizer produced a non-destabilizing direction")
    value_sq = Fraction(a * a) / group.norm.value_sq(exps)
    active_obj = tuple(sorted((c for c, p in pairings.items() if p == a), key=lambda c: c.weights))
    active_cone = tuple(
        sorted(
            (c for c in cone - objective if pairing_vec(exps, c) == 0),
            key=lambda c: c.weights,
        )
    )
    return TorusOptimum(exps, value_sq, active_obj, active_cone)


# ---------------------------------------------------------------------------
# Search configuration and global optimization


@dataclass(frozen=True)
class SearchConfig:
    """Bounded search parameters: exponent box and conjugation family."""

    group: GroupSpec
    exponent_box: int = 4
    conjugation_family: tuple[Mat, ...] = ()
    oracle_mode: bool = False
    normalizer_samples: tuple[Mat, ...] = ()

    def __post_init__(self):
        if self.exponent_box < 1:
            raise DomainError("exponent box must be >= 1")
        family = [linalg.mat(g) for g in self.conjugation_family]
        ident = self.group.identity()
        if ident not in family:
            family.insert(0, ident)
        deduped = []
        for g in family:
            self.group.require_member(g, "conjugation family element")
            if g not in deduped:
                deduped.append(g)
        object.__setattr__(self, "conjugation_family", tuple(deduped))
        object.__setattr__(
            self, "normalizer_samples", tuple(linalg.mat(g) for g in self.normalizer_samples)
        )

    @staticmethod
    def default(
        group: GroupSpec,
        exponent_box: int = 4,
        shear_values=(),
        include_weyl: bool = True,
        oracle_mode: bool = False,
        normalizer_samples=(),
        extra_frames=(),
    ) -> "SearchConfig":
        """Weyl representatives composed with elementary shears."""
        frames: list[Mat] = [group.identity()]
        weyl = group.weyl_representatives() if include_weyl else (group.identity(),)
        shears = group.shears(shear_values) if shear_values else ()
        for w in weyl:
            frames.append(w)
            for sh in shears:
                frames.append(linalg.mat_mul(w, sh))
        frames.extend(linalg.mat(g) for g in extra_frames)
        return SearchConfig(
            group,
            exponent_box,
            tuple(frames),
            oracle_mode,
            tuple(normalizer_samples),
        )


@dataclass(frozen=True)
class FrameOutcome:
    frame_index: int
    exponents: tuple[int, ...] | None
    value_sq: Fraction | None


@dataclass(frozen=True)
class SearchCertificate:
    """Search trace: what was examined and what was active at the optimum.

    The norm's Gram matrix is recorded because the optimum is only known
    to be well-defined relative to the configured norm.
    """

    frames: tuple[FrameOutcome, ...]
    active_objective: tuple[Character, ...]
    active_cone: tuple[Character, ...]
    oracle_value_sq: Fraction | None = None
    oracle_box: int | None = None
    norm_gram: Mat | None = None


OPTIMAL = "optimal"
TRIVIAL = "trivial"
NOT_WITNESSED = "uniformly-S-unstable-not-witnessed"


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of the bounded Kempf optimization.

    ``status`` is ``optimal`` (a strictly positive optimum was found),
    ``trivial`` (the whole set already lies in S: zero cocharacter, whole
    group), or ``uniformly-S-unstable-not-witnessed`` (the bounded search
    produced no destabilizing direction; this is a result, not an error).
    """

    status: str
    cocharacter: Cocharacter | None
    value_sq: Fraction | None
    parabolic: ParabolicDescriptor | None
    certificate: SearchCertificate
    global_verified: bool = False

    @property
    def witnessed(self) -> bool:
        return self.status == OPTIMAL


def _whole_group_descriptor(group: GroupSpec) -> ParabolicDescriptor:
    return ParabolicDescriptor.from_cocharacter(
        Cocharacter.standard(group, (0,) * group.dimension)
    )


def _check_custom_stability(s: SubvarietySpec, rep: Representation, cfg: SearchConfig) -> None:
    if s.kind is not SubvarietyKind.CUSTOM:
        return
    for g in cfg.conjugation_family:
        if not s.stable_under(g, rep):
            raise InvariantViolation(
                "custom subvariety generators are not span-stable under the "
                "conjugation family; the stability assertion looks wrong"
            )


def optimize(points, s: SubvarietySpec, cfg: SearchConfig) -> OptimizationResult:
    """Best torus optimum over the conjugation family, with runtime checks.

    The returned parabolic is asserted independent of which tied maximizer
    is canonicalized; every supplied normalizer sample that fixes the input
    is asserted to lie in it; and the reported value is recomputed from
    vanishing orders.  In oracle mode an exhaustive exponent-box sweep
    cross-checks the optimum and sets ``global_verified``.
    """
    points = tuple(points)
    if not points:
        raise PreconditionError("the point set must be nonempty")
    rep = points[0].rep
    if any(x.rep != rep for x in points):
        raise DimensionError("points must share one representation")
    if not s.g_stable_asserted:
        raise PreconditionError("the subvariety must be asserted G-stable")
    group = cfg.group
    if rep.group != group:
        raise DimensionError("configuration group differs from the representation group")
    _check_custom_stability(s, rep, cfg)

    if all(s.contains_point(x) for x in points):
        zero = Cocharacter.standard(group, (0,) * group.dimension)
        cert = SearchCertificate((), (), (), norm_gram=group.norm.gram)
        return OptimizationResult(
            TRIVIAL, zero, None, _whole_group_descriptor(group), cert, cfg.oracle_mode
        )

    outcomes = []
    candidates = []
    for idx, frame in enumerate(cfg.conjugation_family):
        opt = optimize_torus(points, s, frame, group)
        if opt is None or opt.trivial:
            outcomes.append(FrameOutcome(idx, None, None))
        else:
            outcomes.append(FrameOutcome(idx, opt.exponents, opt.value_sq))
            candidates.append((opt, idx, frame))

    oracle_value, oracle_box = (None, None)
    if cfg.oracle_mode:
        oracle_value = _oracle_best_value(points, s, cfg)
        oracle_box = cfg.exponent_box

    if not candidates:
        cert = SearchCertificate(
            tuple(outcomes), (), (), oracle_value, oracle_box, group.norm.gram
        )
        if oracle_value is not None:
            raise InvariantViolation("oracle found a destabilizing direction the optimizer missed")
        return OptimizationResult(NOT_WITNESSED, None, None, None, cert)

    best_value = max(opt.value_sq for opt, _, _ in candidates)
    ident = group.identity()
    tied = []
    seen_folded = set()
    winner_opt = None
    for opt_c, idx_c, frame_c in candidates:
        if opt_c.value_sq != best_value:
            continue
        folded = fold_permutation_base(Cocharacter.based(group, frame_c, opt_c.exponents))
        key = (folded.base, folded.torus.exponents)
        if key in seen_folded:
            continue
        seen_folded.add(key)
        tied.append((folded, opt_c, idx_c))
    # standard-torus representatives first, then lexicographically smallest
    # exponents; cross-frame ties carry base points, which lex order alone
    # cannot rank
    tied.sort(key=lambda t: (t[0].base != ident, t[0].torus.exponents, t[0].base, t[2]))
    lam, opt, idx = tied[0]
    parabolic = ParabolicDescriptor.from_cocharacter(lam)
    for other_lam, _other_opt, _oidx in tied[1:]:
        if ParabolicDescriptor.from_cocharacter(other_lam) != parabolic:
            raise InvariantViolation(
                "tied maximizers define different parabolic subgroups; "
                "the bounded search did not reach the true optimum"
            )

    orders = [vanishing_order(x, lam, s) for x in points]
    if not all(o.is_positive for o in orders):
        raise InvariantViolation("an optimal limit does not land in S")
    finite = [o.finite for o in orders if o.finite is not None]
    if finite:
        a = min(finite)
        recomputed = Fraction(a * a) / norm_sq(lam)
        if recomputed != best_value:
            raise InvariantViolation("value recomputation from vanishing orders disagrees")

    for g in cfg.normalizer_samples:
        if not _fixes_input(g, points, s):
            continue
        if classify(g, lam) is MembershipClass.NOT_IN_P:
            raise InvariantViolation(
                "a normalizer sample falls outside the optimal parabolic; "
                "the bounded search did not reach the true optimum"
            )

    global_verified = False
    if cfg.oracle_mode:
        if oracle_value is not None and oracle_value > best_value:
            raise InvariantViolation("oracle exceeded the exact torus optimum")
        global_verified = oracle_value == best_value

    cert = SearchCertificate(
        tuple(outcomes),
        opt.active_objective,
        opt.active_cone,
        oracle_value,
        oracle_box,
        group.norm.gram,
    )
    return OptimizationResult(OPTIMAL, lam, best_value, parabolic, cert, global_verified)


def _fixes_input(g: Mat, points, s: SubvarietySpec) -> bool:
    rep = points[0].rep
    if set(rep.act(g, x) for x in points) != set(points):
        return False
    if s.kind is SubvarietyKind.CUSTOM and not s.stable_under(g, rep):
        return False
    return True


def _oracle_best_value(points, s: SubvarietySpec, cfg: SearchConfig) -> Fraction | None:
    """Exhaustive maximum of a^2/|d|^2 over the box and frames."""
    group = cfg.group
    rep = points[0].rep
    best: Fraction | None = None
    for frame in cfg.conjugation_family:
        inv = linalg.inverse(frame)
        transported = [rep.act(inv, x) for x in points]
        iso = s.isotypic_data(rep, frame)
        supports = [
            tuple(
                chi.weights
                for chi, c in zip(rep.weights, x.coords)
                if c != 0
            )
            for x in transported
        ]
        forms = []
        for x in transported:
            fx = {
                chi.weights
                for parts in iso
                for chi, component in parts
                if component.evaluate(x) != 0
            }
            forms.append(fx)
        for d in _box_vectors(group, cfg.exponent_box):
            ok = all(
                all(sum(a * b for a, b in zip(d, w)) >= 0 for w in supp)
                for supp in supports
            )
            if not ok:
                continue
            a: int | None = None
            for fx in forms:
                if not fx:
                    continue  # that point is in S; infinite order
                mn = min(sum(p * q for p, q in zip(d, w)) for w in fx)
                a = mn if a is None else min(a, mn)
            if a is None or a <= 0:
                continue
            val = Fraction(a * a) / group.norm.value_sq(d)
            if best is None or val > best:
                best = val
    return best


def _box_vectors(group: GroupSpec, box: int):
    """Primitive integer exponent vectors in the box, SL sums zero."""
    m = group.dimension
    sl_blocks = [
        block for f, block in zip(group.factors, group.block_slices) if f.family == "SL"
    ]
    for d in itertools.product(range(-box, box + 1), repeat=m):
        if all(x == 0 for x in d):
            continue
        g = 0
        for x in d:
            g = gcd(g, abs(x))
        if g != 1:
            continue
        if any(sum(d[i] for i in block) != 0 for block in sl_blocks):
            continue
        yield d


# ---------------------------------------------------------------------------
# Cocharacter-closedness (bounded semi-decision)


@dataclass(frozen=True)
class CocharClosedVerdict:
    """Outcome of the bounded closedness search.

    ``closed`` means closed-within-bound: every admissible cocharacter in
    the searched family admitted an exact radical conjugator.  A negative
    verdict carries a checkable witness.
    """

    closed: bool
    witness: Cocharacter | None
    witness_limit: tuple[Mat, ...] | None
    examined: tuple[Cocharacter, ...]
    box: int

    @property
    def examined_nonzero(self) -> int:
        return len(self.examined)


def is_cochar_closed(v: Point, cfg: SearchConfig) -> CocharClosedVerdict:
    """Semi-decide closedness of the rational orbit of a matrix tuple.

    Enumerates cocharacters frame by frame; within a frame only the weak
    ordering of the exponents matters for limits and radical membership, so
    one primitive representative per admissible ordering in the box is
    examined.  A failed conjugator search is a sound witness: rational
    conjugacy of the limit would force a radical conjugator.
    """
    rep = v.rep
    if not isinstance(rep, ConjugationTuples):
        raise UnsupportedRepresentationError(
            "cocharacter-closedness needs a conjugation-tuple representation"
        )
    group = cfg.group
    if rep.group != group:
        raise DimensionError("configuration group differs from the representation group")
    mats = rep.matrices(v)
    m = group.dimension
    examined: list[Cocharacter] = []
    for frame in cfg.conjugation_family:
        inv = linalg.inverse(frame)
        tmats = [linalg.mat_mul(linalg.mat_mul(inv, h), frame) for h in mats]
        pattern = {
            (i, j)
            for h in tmats
            for i in range(m)
            for j in range(m)
            if i != j and h[i][j] != 0
        }
        for exps in admissible_exponents(group, cfg.exponent_box, pattern):
            lam = Cocharacter.based(group, frame, exps)
            examined.append(lam)
            d = exps
            limit_t = [
                tuple(
                    tuple(h[i][j] if d[i] == d[j] else Fraction(0) for j in range(m))
                    for i in range(m)
                )
                for h in tmats
            ]
            if limit_t == tmats:
                continue  # the identity conjugator works
            limit_mats = tuple(
                linalg.mat_mul(linalg.mat_mul(frame, h), inv) for h in limit_t
            )
            v_prime = rep.point(limit_mats)
            u = find_ru_conjugator(v, v_prime, lam, rep)
            if u is None:
                return CocharClosedVerdict(
                    False,
                    fold_permutation_base(lam),
                    limit_mats,
                    tuple(examined),
                    cfg.exponent_box,
                )
    return CocharClosedVerdict(True, None, None, tuple(examined), cfg.exponent_box)


def admissible_exponents(group: GroupSpec, box: int, pattern) -> list[tuple[int, ...]]:
    """Primitive exponent vectors in the box admissible for a zero pattern,
    one canonical representative per weak ordering of the coordinates.

    ``pattern`` holds pairs (i, j) that force d_i >= d_j.  Limits, radical
    membership, and conjugator existence depend only on the ordering, so
    this collapse loses nothing.
    """
    m = group.dimension
    if len(group.factors) == 1:
        out = []
        for ranks in _rank_vectors(m):
            k = max(ranks) + 1
            if k == 1:
                continue  # central directions never move anything
            if any(ranks[i] > ranks[j] for i, j in pattern):
                continue
            d = _canonical_exponents(group, ranks, k)
            if d is None or any(abs(x) > box for x in d):
                continue
            out.append(d)
        return out
    seen = set()
    out = []
    for d in _box_vectors(group, box):
        if any(d[i] < d[j] for i, j in pattern):
            continue
        order = {x: r for r, x in enumerate(sorted(set(d), reverse=True))}
        sig = tuple(order[x] for x in d)
        if max(sig) == 0:
            continue
        if sig in seen:
            continue
        seen.add(sig)
        out.append(d)
    return out


def _rank_vectors(m: int):
    """All weak orderings of m coordinates as contiguous rank vectors."""
    for ranks in itertools.product(range(m), repeat=m):
        k = max(ranks) + 1
        if set(ranks) == set(range(k)):
            yield ranks


def _canonical_exponents(group: GroupSpec, ranks, k: int) -> tuple[int, ...] | None:
    m = group.dimension
    f = group.factors[0]
    levels = [k - 1 - r for r in ranks]
    if f.family == "GL":
        shift = (k - 1) // 2  # center the levels to fit a small box
        d = tuple(lv - shift for lv in levels)
    else:
        total = sum(levels)
        d = tuple(m * lv - total for lv in levels)
        if all(x == 0 for x in d):
            return None
    g = 0
    for x in d:
        g = gcd(g, abs(x))
    if g > 1:
        d = tuple(x // g for x in d)
    return d

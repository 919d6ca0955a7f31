"""Seeded corpora and property suites.

Everything here is deterministic in the seed (``random.Random``), so a
failure reported by the CLI or the acceptance tests is replayable from
(profile, seed, case index) alone.  The suites return one record per case
with an ``ok`` flag and enough of the inputs to reproduce the check.

The subgroup corpus draws generators whose invariant flags stay within
reach of the configured Weyl-times-shear search family (structured
patterns conjugated by family elements, plus unstructured small matrices);
the bound every bounded verdict is relative to is recorded per corpus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import InvariantViolation
from .gcr import (
    SubgroupPresentation,
    centralizer_dim,
    is_gcr_algebra,
    is_gcr_search,
)
from .groups import Cocharacter, GroupSpec
from .instability import (
    OPTIMAL,
    SearchConfig,
    SubvarietySpec,
    admissible_exponents,
    optimize,
)
from .linalg import Mat
from .parabolic import (
    c_lambda,
    combine,
    composition_threshold,
    find_ru_conjugator,
)
from .reps import ConjugationTuples, Point, Representation, SymPower, grade, limit


# ---------------------------------------------------------------------------
# Random builders


def _rand_fraction(rng: random.Random, span: int = 3) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.choice((1, 1, 2, 3))
    return Fraction(num, den)


def _rand_nonzero_fraction(rng: random.Random, span: int = 3) -> Fraction:
    while True:
        x = _rand_fraction(rng, span)
        if x != 0:
            return x


def random_exponents(rng: random.Random, group: GroupSpec, box: int = 3) -> tuple[int, ...]:
    """A nonzero exponent vector respecting SL sum constraints."""
    while True:
        d = []
        for f, block in zip(group.factors, group.block_slices):
            vals = [rng.randint(-box, box) for _ in block]
            if f.family == "SL":
                vals[-1] -= sum(vals)
                if any(abs(v) > 2 * box for v in vals):
                    continue
            d.extend(vals)
        if len(d) == group.dimension and any(v != 0 for v in d):
            return tuple(d)


def random_frame(rng: random.Random, group: GroupSpec) -> Mat:
    """A unimodular frame: a Weyl representative times a couple of shears."""
    weyl = group.weyl_representatives()
    g = rng.choice(weyl)
    shears = group.shears((-2, -1, 1, 2))
    for _ in range(rng.randint(0, 2)):
        g = linalg.mat_mul(g, rng.choice(shears))
    return g


def family_frame(rng: random.Random, group: GroupSpec, shear_values=(-2, -1, 1, 2)) -> Mat:
    """A frame drawn from the default Weyl-times-one-shear search family."""
    g = rng.choice(group.weyl_representatives())
    if rng.random() < 0.8:
        g = linalg.mat_mul(g, rng.choice(group.shears(shear_values)))
    return g


def random_cocharacter(rng: random.Random, group: GroupSpec, box: int = 3) -> Cocharacter:
    return Cocharacter.based(group, random_frame(rng, group), random_exponents(rng, group, box))


def random_parabolic_element(rng: random.Random, lam: Cocharacter) -> Mat:
    """A random rational element of P_lambda (Levi part times radical part)."""
    group = lam.group
    d = lam.torus.exponents
    m = group.dimension
    levi = [[Fraction(0)] * m for _ in range(m)]
    for f, block in zip(group.factors, group.block_slices):
        levels = sorted({d[i] for i in block}, reverse=True)
        for level in levels:
            idx = [i for i in block if d[i] == level]
            while True:
                sub = [[_rand_fraction(rng) for _ in idx] for _ in idx]
                if linalg.det(linalg.mat(sub)) != 0:
                    break
            for a, i in enumerate(idx):
                for b, j in enumerate(idx):
                    levi[i][j] = sub[a][b]
        if f.family == "SL":
            sub = linalg.mat(tuple(tuple(levi[i][j] for j in block) for i in block))
            det = linalg.det(sub)
            first = block[0]
            for j in block:
                levi[first][j] /= det
    radical = [list(row) for row in linalg.identity(m)]
    for i in range(m):
        for j in range(m):
            if d[i] > d[j] and group.block_of(i) == group.block_of(j):
                radical[i][j] = _rand_fraction(rng)
    x = linalg.mat_mul(linalg.mat(levi), linalg.mat(radical))
    return linalg.mat_mul(linalg.mat_mul(lam.base, x), lam.base_inverse)


def random_radical_element(rng: random.Random, lam: Cocharacter) -> Mat:
    group = lam.group
    d = lam.torus.exponents
    m = group.dimension
    u = [list(row) for row in linalg.identity(m)]
    for i in range(m):
        for j in range(m):
            if d[i] > d[j] and group.block_of(i) == group.block_of(j):
                u[i][j] = _rand_fraction(rng)
    return linalg.mat_mul(linalg.mat_mul(lam.base, linalg.mat(u)), lam.base_inverse)


def random_point_with_limit(
    rng: random.Random, rep: Representation, lam: Cocharacter, strict_ok: bool = True
) -> Point:
    """A point supported on nonnegative levels in the frame of lambda."""
    from .groups import pairing_vec

    d = lam.torus.exponents
    coords = []
    for chi in rep.weights:
        n = pairing_vec(d, chi)
        if n < 0 or (n > 0 and not strict_ok):
            coords.append(Fraction(0))
        else:
            coords.append(_rand_fraction(rng) if rng.random() < 0.7 else Fraction(0))
    return rep.act(lam.base, Point(rep, tuple(coords)))


def random_point(rng: random.Random, rep: Representation) -> Point:
    return Point(
        rep,
        tuple(
            _rand_fraction(rng) if rng.random() < 0.6 else Fraction(0)
            for _ in range(rep.dim)
        ),
    )


def _suite_reps(group2: GroupSpec, group3: GroupSpec) -> list[Representation]:
    return [
        ConjugationTuples(group2, 1),
        ConjugationTuples(group2, 2),
        ConjugationTuples(group3, 1),
        SymPower(group2, 3),
        SymPower(group2, 4),
    ]


# ---------------------------------------------------------------------------
# Suites


def ruconj_suite(seed: int, size: int = 100) -> list[dict]:
    """Both directions of the radical-conjugacy criterion for limits.

    For u in the radical of P_lambda: the limit of v exists and equals u.v
    exactly when the u-conjugated cocharacter fixes v.  Half the cases are
    constructed so the criterion holds, the rest are random.
    """
    rng = random.Random(seed)
    group2 = GroupSpec.make(("GL", 2))
    group3 = GroupSpec.make(("GL", 3))
    reps = _suite_reps(group2, group3)
    records = []
    for case in range(size):
        rep = reps[case % len(reps)]
        lam = random_cocharacter(rng, rep.group)
        u = random_radical_element(rng, lam)
        if case % 2 == 0:
            fixed = random_point_with_limit(rng, rep, lam, strict_ok=False)
            v = rep.act(linalg.inverse(u), fixed)
        else:
            v = random_point(rng, rep)
        lim = limit(v, lam)
        lhs = lim is not None and lim == rep.act(u, v)
        conjugated = lam.conjugated_by(linalg.inverse(u))
        graded = grade(v, conjugated)
        rhs = set(graded.components) <= {0}
        ok = lhs == rhs
        records.append(
            {
                "case": case,
                "ok": ok,
                "holds": lhs,
                "detail": {"exponents": list(lam.torus.exponents)},
            }
        )
    return records


def equivariance_suite(seed: int, size: int = 100) -> list[dict]:
    """Limits commute with the parabolic action through the Levi projection."""
    rng = random.Random(seed)
    group2 = GroupSpec.make(("GL", 2))
    group3 = GroupSpec.make(("GL", 3))
    reps = _suite_reps(group2, group3)
    records = []
    for case in range(size):
        rep = reps[case % len(reps)]
        lam = random_cocharacter(rng, rep.group)
        x = random_parabolic_element(rng, lam)
        v = random_point_with_limit(rng, rep, lam)
        lim_v = limit(v, lam)
        moved = rep.act(x, v)
        lim_moved = limit(moved, lam)
        expected = rep.act(c_lambda(x, lam), lim_v)
        ok = lim_moved is not None and lim_moved == expected
        records.append(
            {"case": case, "ok": ok, "detail": {"exponents": list(lam.torus.exponents)}}
        )
    return records


def dblecochar_suite(seed: int, size: int = 50) -> list[dict]:
    """Grading inclusions and limit composition for commuting pairs."""
    from .groups import pairing_vec

    rng = random.Random(seed)
    group2 = GroupSpec.make(("GL", 2))
    group3 = GroupSpec.make(("GL", 3))
    reps = _suite_reps(group2, group3)
    records = []
    for case in range(size):
        rep = reps[case % len(reps)]
        group = rep.group
        lam = Cocharacter.standard(group, random_exponents(rng, group))
        mu = Cocharacter.standard(group, random_exponents(rng, group))
        t0 = composition_threshold(rep, lam, mu)
        ok = True
        for t in (t0, t0 + 3):
            combined = combine(lam, mu, t)
            for chi in rep.weights:
                pl = pairing_vec(lam.torus.exponents, chi)
                pm = pairing_vec(mu.torus.exponents, chi)
                pc = pairing_vec(combined.torus.exponents, chi)
                if pc >= 0 and not pl >= 0:
                    ok = False
                if pl > 0 and not pc > 0:
                    ok = False
                if (pc == 0) != (pl == 0 and pm == 0):
                    ok = False
            dl = lam.torus.exponents
            dm = mu.torus.exponents
            coords = []
            for chi in rep.weights:
                pl = pairing_vec(dl, chi)
                pm = pairing_vec(dm, chi)
                good = pl > 0 or (pl == 0 and pm >= 0)
                coords.append(_rand_fraction(rng) if good and rng.random() < 0.8 else Fraction(0))
            v = Point(rep, tuple(coords))
            v1 = limit(v, lam)
            assert v1 is not None
            v2 = limit(v1, mu)
            assert v2 is not None
            direct = limit(v, combined)
            if direct is None or direct != v2:
                ok = False
        records.append(
            {
                "case": case,
                "ok": ok,
                "detail": {
                    "lam": list(lam.torus.exponents),
                    "mu": list(mu.torus.exponents),
                    "t0": t0,
                },
            }
        )
    return records


# ---------------------------------------------------------------------------
# Subgroup corpus (GL_2 / GL_3, small integer generators)


def _rand_int_matrix(rng: random.Random, m: int, lo: int = -2, hi: int = 2) -> list[list[int]]:
    return [[rng.randint(lo, hi) for _ in range(m)] for _ in range(m)]


def _structured_generator(rng: random.Random, m: int) -> list[list[int]]:
    kind = rng.choice(("diagonal", "unipotent", "triangular", "generic", "permutation"))
    if kind == "diagonal":
        return [
            [rng.choice((-2, -1, 1, 2)) if i == j else 0 for j in range(m)] for i in range(m)
        ]
    if kind == "unipotent":
        g = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                g[i][j] = rng.randint(-2, 2)
        return g
    if kind == "triangular":
        g = [[0] * m for _ in range(m)]
        for i in range(m):
            g[i][i] = rng.choice((-2, -1, 1, 2))
            for j in range(i + 1, m):
                g[i][j] = rng.randint(-2, 2)
        return g
    if kind == "permutation":
        perm = list(range(m))
        rng.shuffle(perm)
        return [[1 if perm[i] == j else 0 for j in range(m)] for i in range(m)]
    while True:
        g = _rand_int_matrix(rng, m)
        if linalg.det(linalg.mat(g)) != 0:
            return g


def subgroup_corpus(seed: int, size: int = 50) -> list[SubgroupPresentation]:
    """Seeded subgroups of GL_2 and GL_3 with 1-3 small-integer generators.

    Structured generator sets are conjugated by one element of the Weyl-
    times-shear family, which keeps their invariant flags inside the
    search family's reach; unstructured draws are included as well.
    """
    rng = random.Random(seed)
    groups = {2: GroupSpec.make(("GL", 2)), 3: GroupSpec.make(("GL", 3))}
    out = []
    while len(out) < size:
        m = rng.choice((2, 2, 3))
        group = groups[m]
        count = rng.randint(1, 3)
        gens = [_structured_generator(rng, m) for _ in range(count)]
        if rng.random() < 0.8:
            frame = family_frame(rng, group)
            inv = linalg.inverse(frame)
            gens = [linalg.mat_mul(linalg.mat_mul(frame, linalg.mat(g)), inv) for g in gens]
        try:
            out.append(SubgroupPresentation(group, tuple(linalg.mat(g) for g in gens)))
        except Exception:
            continue
    return out


def corpus_config(group: GroupSpec, box: int = 4) -> SearchConfig:
    """The search bound every corpus verdict is relative to."""
    return SearchConfig.default(group, exponent_box=box, shear_values=(-2, -1, 1, 2))


def oracle_agreement_suite(seed: int, size: int = 50) -> list[dict]:
    """Algebra semisimplicity vs bounded geometric search, per corpus input."""
    records = []
    configs: dict[GroupSpec, SearchConfig] = {}
    for case, h in enumerate(subgroup_corpus(seed, size)):
        cfg = configs.setdefault(h.group, corpus_config(h.group))
        algebraic = is_gcr_algebra(h)
        searched = is_gcr_search(h, cfg)
        ok = algebraic.status == searched.status
        if ok and not searched.is_completely_reducible:
            lam = searched.witness_cocharacter
            v = h.tuple_point()
            v_prime = limit(v, lam)
            ok = v_prime is not None and find_ru_conjugator(v, v_prime, lam) is None
        records.append(
            {
                "case": case,
                "ok": ok,
                "algebra": algebraic.status,
                "search": searched.status,
                "detail": {
                    "generators": [[[str(x) for x in row] for row in g] for g in h.generators],
                    "box": cfg.exponent_box,
                },
            }
        )
    return records


def centralizer_suite(seed: int, size: int = 50) -> list[dict]:
    """Centralizer dimension never drops under Levi projection; equality
    happens exactly when a radical conjugator exists."""
    records = []
    for case, h in enumerate(subgroup_corpus(seed, size)):
        group = h.group
        rep = h.tuple_rep()
        v = h.tuple_point()
        base_dim = centralizer_dim(group, h.generators)
        m = group.dimension
        pattern = {
            (i, j)
            for g in h.generators
            for i in range(m)
            for j in range(m)
            if i != j and g[i][j] != 0
        }
        ok = True
        checked = 0
        for exps in admissible_exponents(group, 4, pattern):
            lam = Cocharacter.standard(group, exps)
            projected = c_lambda(h.generators, lam)
            proj_dim = centralizer_dim(group, projected)
            if proj_dim < base_dim:
                ok = False
                break
            v_prime = rep.point(projected)
            u = find_ru_conjugator(v, v_prime, lam, rep)
            if (proj_dim == base_dim) != (u is not None):
                ok = False
                break
            checked += 1
        records.append({"case": case, "ok": ok, "admissible_checked": checked})
    return records


# ---------------------------------------------------------------------------
# Kempf equivariance instances


@dataclass(frozen=True)
class KempfInstance:
    group: GroupSpec
    points: tuple[Point, ...]
    normalizer_samples: tuple[Mat, ...]


def _kempf_instance(rng: random.Random, case: int) -> KempfInstance:
    """An unstable instance whose identity-torus optimum is provably global.

    Each point is supported on a single off-diagonal weight chi, so the
    optimal value is the squared length of chi (Cauchy-Schwarz) and the
    identity frame attains it; tied maximizers across frames then all sit
    in the true optimal class.  Each sample g satisfies g.X = X on the
    nose, exercising the optimizer's normalizer containment check.
    """
    flavor = case % 3
    if flavor == 0:
        group = GroupSpec.make(("GL", 2))
        rep = ConjugationTuples(group, 1)
        c = _rand_nonzero_fraction(rng)
        pt = rep.point([[[0, c], [0, 0]]])
        shear = linalg.mat([[1, rng.randint(1, 2)], [0, 1]])  # commutes with e_12
        return KempfInstance(group, (pt,), (shear,))
    if flavor == 1:
        group = GroupSpec.make(("GL", 3))
        rep = ConjugationTuples(group, 1)
        c = _rand_nonzero_fraction(rng)
        pt = rep.point([[[0, 0, c], [0, 0, 0], [0, 0, 0]]])
        torus = linalg.mat([[2, 0, 0], [0, 3, 0], [0, 0, 2]])  # equal corner entries fix e_13
        shear = linalg.mat([[1, rng.randint(1, 2), 0], [0, 1, 0], [0, 0, 1]])
        return KempfInstance(group, (pt,), (torus, shear))
    group = GroupSpec.make(("SL", 2))
    rep = SymPower(group, 4)
    c = _rand_nonzero_fraction(rng)
    pt = rep.monomial(1, c)  # x^3 y: triple root aligned with the torus
    minus_one = linalg.mat([[-1, 0], [0, -1]])  # acts trivially on Sym^4
    return KempfInstance(group, (pt,), (minus_one,))


def kempf_equivariance_suite(seed: int, size: int = 20, conjugators: int = 5) -> list[dict]:
    """Conjugating the input conjugates the optimum, exactly.

    For each instance and conjugator g the two searches run over families
    F and g.F with F chosen to contain both the identity and g^{-1}, so
    the torus subproblems correspond one to one; the optimal values must
    then tie exactly and the optimal parabolics must be conjugate.
    Normalizer samples are checked by the optimizer itself (it raises if
    one escapes the parabolic).
    """
    rng = random.Random(seed)
    records = []
    s = SubvarietySpec.zero_locus()
    for case in range(size):
        inst = _kempf_instance(rng, case)
        group = inst.group
        rep = inst.points[0].rep
        extra = random_frame(rng, group)
        ok = True
        detail = None
        for _ in range(conjugators):
            g = random_frame(rng, group)
            ginv = linalg.inverse(g)
            base_family = [group.identity(), extra, ginv, linalg.mat_mul(ginv, extra)]
            cfg = SearchConfig(
                group,
                exponent_box=4,
                conjugation_family=tuple(base_family),
                normalizer_samples=inst.normalizer_samples,
            )
            moved_cfg = SearchConfig(
                group,
                exponent_box=4,
                conjugation_family=tuple(linalg.mat_mul(g, f) for f in base_family),
            )
            try:
                result = optimize(inst.points, s, cfg)
            except InvariantViolation as exc:
                ok, detail = False, str(exc)
                break
            moved = tuple(rep.act(g, x) for x in inst.points)
            moved_result = optimize(moved, s, moved_cfg)
            if result.status != OPTIMAL or moved_result.status != OPTIMAL:
                ok, detail = False, "optimum not witnessed"
                break
            if moved_result.value_sq != result.value_sq:
                ok, detail = False, "values differ"
                break
            if moved_result.parabolic != result.parabolic.conjugated_by(g):
                ok, detail = False, "parabolic is not conjugate"
                break
        records.append({"case": case, "ok": ok, "detail": detail})
    return records


def _nilpotent_log(group: GroupSpec, u: Mat) -> Mat:
    """Exact logarithm of a unipotent matrix (the series terminates)."""
    m = group.dimension
    n = linalg.mat_sub(u, linalg.identity(m))
    total = linalg.zeros(m, m)
    power = linalg.identity(m)
    for k in range(1, m):
        power = linalg.mat_mul(power, n)
        total = linalg.mat_add(total, linalg.mat_scale(Fraction((-1) ** (k + 1), k), power))
    return total


def _char_poly(g: Mat) -> list[Fraction]:
    """Monic characteristic polynomial coefficients, constant term first."""
    import itertools as it

    m = len(g)
    coeffs = [Fraction(0)] * (m + 1)
    coeffs[m] = Fraction(1)
    for k in range(1, m + 1):
        minors = Fraction(0)
        for subset in it.combinations(range(m), k):
            sub = tuple(tuple(g[i][j] for j in subset) for i in subset)
            minors += linalg.det(sub)
        coeffs[m - k] = Fraction((-1) ** k) * minors
    return coeffs


def _rational_spectral_projections(g: Mat) -> list[Mat] | None:
    """Eigenprojections of a matrix that is diagonalizable over the rationals.

    Finds the rational roots of the characteristic polynomial; if they do
    not account for the full degree, or the matrix does not satisfy the
    squarefree product of the root factors, returns None.
    """
    m = len(g)
    coeffs = _char_poly(g)
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]
    constant, leading = ints[0], ints[-1]
    candidates = set()
    for p in range(1, abs(constant) + 1) if constant != 0 else []:
        if constant % p == 0:
            for q in range(1, abs(leading) + 1):
                if leading % q == 0:
                    candidates |= {Fraction(p, q), Fraction(-p, q)}
    if constant == 0:
        candidates.add(Fraction(0))

    def poly_at(x: Fraction) -> Fraction:
        total = Fraction(0)
        for c in reversed(coeffs):
            total = total * x + c
        return total

    roots = sorted(x for x in candidates if poly_at(x) == 0)
    if not roots:
        return None
    # require the squarefree root product to annihilate g (semisimple over Q)
    ident = linalg.identity(m)
    product = ident
    for r in roots:
        product = linalg.mat_mul(product, linalg.mat_sub(g, linalg.mat_scale(r, ident)))
    if any(x != 0 for row in product for x in row):
        return None
    projections = []
    for r in roots:
        proj = ident
        for s in roots:
            if s == r:
                continue
            factor = linalg.mat_scale(
                Fraction(1) / (r - s), linalg.mat_sub(g, linalg.mat_scale(s, ident))
            )
            proj = linalg.mat_mul(proj, factor)
        projections.append(proj)
    return projections


def _tangent_span(h: SubgroupPresentation):
    """Tangent directions of a generator set, when exactly computable.

    Unipotent generators contribute their logarithms; generators that are
    diagonalizable over the rationals contribute their eigenprojections.
    Returns None when some generator is neither, or when the span fails to
    close under the commutator.
    """
    from .gcr import LieSubalgebra, _is_unipotent

    group = h.group
    m = group.dimension
    mats: list[Mat] = []
    for g in h.generators:
        if _is_unipotent(group, g):
            mats.append(_nilpotent_log(group, g))
            continue
        projections = _rational_spectral_projections(g)
        if projections is None:
            return None
        mats.extend(projections)
    rows = [_flat(x) for x in mats if any(c != 0 for c in _flat(x))]
    basis_rows = linalg.row_space(tuple(rows)) if rows else ()
    basis = [_unflat(v, m) for v in basis_rows]
    if not basis:
        return None
    try:
        return LieSubalgebra(group, tuple(basis))
    except Exception:
        return None


def _flat(x: Mat):
    return tuple(c for row in x for c in row)


def _unflat(v, m: int) -> Mat:
    return tuple(tuple(v[i * m + j] for j in range(m)) for i in range(m))


def group_lie_consistency_suite(seed: int, size: int = 50) -> list[dict]:
    """Reducible subgroups have reducible tangent algebras.

    On corpus inputs whose generators are all unipotent or all diagonal,
    a completely reducible verdict for the subgroup must be matched by the
    Lie-side search on the tangent span; other inputs are skipped (the
    span is only meaningful when it is commutator-closed).
    """
    from .gcr import lie_is_gcr

    records = []
    configs: dict[GroupSpec, SearchConfig] = {}
    for case, h in enumerate(subgroup_corpus(seed, size)):
        lie = _tangent_span(h)
        if lie is None:
            records.append({"case": case, "ok": True, "skipped": True})
            continue
        cfg = configs.setdefault(h.group, corpus_config(h.group))
        group_verdict = is_gcr_search(h, cfg)
        lie_verdict = lie_is_gcr(lie, cfg)
        ok = True
        if group_verdict.is_completely_reducible and not lie_verdict.is_completely_reducible:
            ok = False
        records.append(
            {
                "case": case,
                "ok": ok,
                "skipped": False,
                "group": group_verdict.status,
                "lie": lie_verdict.status,
            }
        )
    return records


PROFILES = {
    "ruconj": ruconj_suite,
    "equivariance": equivariance_suite,
    "dblecochar": dblecochar_suite,
    "oracle-agreement": oracle_agreement_suite,
    "centralizer": centralizer_suite,
    "kempf-equivariance": kempf_equivariance_suite,
    "group-lie-consistency": group_lie_consistency_suite,
}

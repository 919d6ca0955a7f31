from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from destab import (
    Character,
    Cocharacter,
    ConjugationTuples,
    DirectSum,
    GroupSpec,
    Point,
    Polynomial,
    SymPower,
    grade,
    isotypic_decompose,
    limit,
    support,
)
from destab import linalg
from destab.corpus import random_cocharacter, random_point_with_limit, random_radical_element
import random

GL2 = GroupSpec.make(("GL", 2))
GL3 = GroupSpec.make(("GL", 3))
SL2 = GroupSpec.make(("SL", 2))
MAT2 = ConjugationTuples(GL2, 1)
SYM4 = SymPower(SL2, 4)


def test_support_examples():
    e12 = MAT2.point([[[0, 1], [0, 0]]])
    assert support(e12) == frozenset({Character((1, -1))})
    x3y = SYM4.monomial(1)
    (chi,) = support(x3y)
    assert sum(d * w for d, w in zip((1, -1), chi.weights)) == 2
    assert support(MAT2.zero()) == frozenset()


def test_support_respects_frame():
    v = MAT2.point([[[1, 1], [0, 1]]])
    frame = linalg.mat([[1, 1], [0, 1]])
    # in its own frame the unipotent element is diagonal-plus-upper as before,
    # but transporting v = frame . I . frame^{-1} recovers a single weight
    w = MAT2.point([[[1, 0], [0, 1]]])
    moved = MAT2.act(frame, w)
    assert support(moved, frame) == support(w)


def test_grade_examples():
    lam = Cocharacter.standard(GL2, (1, -1))
    v = MAT2.point([[[1, 1], [0, 1]]])
    g = grade(v, lam)
    assert g.levels == (0, 2)
    assert MAT2.matrices(g.components[0]) == (linalg.identity(2),)
    assert MAT2.matrices(g.components[2]) == (linalg.mat([[0, 1], [0, 0]]),)

    zero = Cocharacter.standard(GL2, (0, 0))
    g0 = grade(v, zero)
    assert g0.levels == (0,) and g0.components[0] == v

    e21 = MAT2.point([[[0, 0], [1, 0]]])
    g1 = grade(e21, lam)
    assert g1.levels == (-2,)


def test_limit_examples():
    lam = Cocharacter.standard(SL2, (1, -1))
    rep = ConjugationTuples(SL2, 1)
    v = rep.point([[[2, F(-3, 2)], [0, F(1, 2)]]])
    assert rep.matrices(limit(v, lam)) == (linalg.mat([[2, 0], [0, F(1, 2)]]),)
    assert limit(rep.point([[[0, 0], [1, 0]]]), lam) is None
    assert limit(rep.point([[[0, 1], [0, 0]]]), lam) == rep.zero()


def test_isotypic_examples():
    x12 = Polynomial.coordinate(MAT2, 1)
    parts = isotypic_decompose(x12)
    assert parts == [(Character((1, -1)), x12)]

    trace = Polynomial.coordinate(MAT2, 0) + Polynomial.coordinate(MAT2, 3)
    parts = isotypic_decompose(trace)
    assert parts == [(Character((0, 0)), trace)]

    prod = Polynomial.coordinate(MAT2, 0) * Polynomial.coordinate(MAT2, 1)
    parts = isotypic_decompose(prod)
    assert [chi for chi, _ in parts] == [Character((1, -1))]


def test_isotypic_decompose_with_frame_sums_to_composed():
    frame = linalg.mat([[1, 2], [0, 1]])
    f = Polynomial.coordinate(MAT2, 1) * Polynomial.coordinate(MAT2, 2)
    parts = isotypic_decompose(f, frame)
    total = Polynomial(MAT2, ())
    for _chi, part in parts:
        total = total + part
    assert total == f.composed_with_action(frame)


def test_action_is_multiplicative():
    rng = random.Random(7)
    g = linalg.mat([[1, 2], [1, 3]])
    h = linalg.mat([[0, 1], [-1, 2]])
    for rep in (MAT2, SymPower(GL2, 3), DirectSum((MAT2, SymPower(GL2, 2)))):
        v = Point(rep, tuple(F(rng.randint(-3, 3)) for _ in range(rep.dim)))
        assert rep.act(linalg.mat_mul(g, h), v) == rep.act(g, rep.act(h, v))


def test_torus_acts_with_declared_weights():
    for rep in (MAT2, SYM4):
        group = rep.group
        lam = Cocharacter.standard(group, (1, -1))
        for a in (F(2), F(3), F(5)):
            t = lam.evaluate(a)
            for idx, chi in enumerate(rep.weights):
                coords = [F(0)] * rep.dim
                coords[idx] = F(1)
                v = Point(rep, tuple(coords))
                n = sum(d * w for d, w in zip((1, -1), chi.weights))
                scaled = Point(rep, tuple(a**n * c for c in v.coords))
                assert rep.act(t, v) == scaled


def test_sym_power_action_matches_substitution():
    # g.(x^2 y) for g = [[1,1],[0,1]]: x -> x, y -> x + y
    sym3 = SymPower(GL2, 3)
    v = sym3.monomial(1)  # x^2 y
    g = linalg.mat([[1, 1], [0, 1]])
    image = sym3.act(g, v)
    # (x)(x)(x + y) = x^3 + x^2 y
    expected = sym3.monomial(0) + sym3.monomial(1)
    assert image == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_grading_reconstructs(seed):
    rng = random.Random(seed)
    rep = MAT2 if seed % 2 else SYM4
    lam = random_cocharacter(rng, rep.group)
    v = Point(rep, tuple(F(rng.randint(-4, 4), rng.choice((1, 2, 3))) for _ in range(rep.dim)))
    g = grade(v, lam)
    assert g.reconstruct() == v
    for n, comp in g.components.items():
        regraded = grade(comp, lam)
        assert set(regraded.components) <= {n}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_group_element_of_cocharacter_scales_grading(seed):
    # evaluating the one-parameter subgroup at a sample point and acting
    # must scale each grading component by the matching power
    rng = random.Random(seed)
    rep = MAT2 if seed % 2 else SYM4
    lam = random_cocharacter(rng, rep.group)
    v = Point(rep, tuple(F(rng.randint(-3, 3)) for _ in range(rep.dim)))
    g = grade(v, lam)
    for a in (F(2), F(3), F(5)):
        moved = rep.act(lam.evaluate(a), v)
        expected = rep.zero()
        for n, comp in g.components.items():
            expected = expected + Point(rep, tuple(a**n * c for c in comp.coords))
        assert moved == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_limit_is_level_zero_projection(seed):
    rng = random.Random(seed)
    rep = MAT2 if seed % 2 else SYM4
    lam = random_cocharacter(rng, rep.group)
    v = random_point_with_limit(rng, rep, lam)
    lim = limit(v, lam)
    g = grade(v, lam)
    assert lim == g.components.get(0, rep.zero())
    regraded = grade(lim, lam)
    assert set(regraded.components) <= {0}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_radical_perturbation_lands_strictly_positive(seed):
    rng = random.Random(seed)
    rep = MAT2 if seed % 2 else SYM4
    lam = random_cocharacter(rng, rep.group)
    u = random_radical_element(rng, lam)
    v = random_point_with_limit(rng, rep, lam)
    diff = rep.act(u, v) - v
    g = grade(diff, lam)
    assert all(n > 0 for n in g.components)


def test_point_validation():
    with pytest.raises(Exception):
        Point(MAT2, (F(1),))
    with pytest.raises(Exception):
        MAT2.point([[[1, 0], [0, 1]], [[1, 0], [0, 1]]])

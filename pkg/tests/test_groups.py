from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from destab import (
    Character,
    Cocharacter,
    DomainError,
    GroupSpec,
    Norm,
    TorusCocharacter,
    norm_sq,
    pairing,
    weyl_conjugate,
)
from destab import linalg
from destab.groups import fold_permutation_base

GL2 = GroupSpec.make(("GL", 2))
GL3 = GroupSpec.make(("GL", 3))
SL2 = GroupSpec.make(("SL", 2))
PROD = GroupSpec.make(("GL", 2), ("SL", 2))


def test_pairing_examples():
    assert pairing(TorusCocharacter(GL2, (1, -1)), Character((1, -1))) == 2
    assert pairing(TorusCocharacter(GL3, (0, 0, 0)), Character((5, -2, 7))) == 0
    assert pairing(TorusCocharacter(GL3, (2, 0, -2)), Character((1, 1, 1))) == 0


def test_norm_sq_examples():
    assert norm_sq(TorusCocharacter(GL2, (1, -1))) == 2
    assert norm_sq(TorusCocharacter(GL2, (3, -3))) == 18
    base = linalg.mat([[1, 5], [0, 1]])
    assert norm_sq(Cocharacter.based(GL2, base, (1, -1))) == 2


def test_weyl_conjugate_examples():
    lam = TorusCocharacter(GL2, (1, -1))
    assert weyl_conjugate((1, 0), lam).exponents == (-1, 1)
    assert weyl_conjugate((0, 1), lam).exponents == (1, -1)
    lam3 = TorusCocharacter(GL3, (2, 1, 0))
    assert weyl_conjugate((1, 2, 0), lam3).exponents == (0, 2, 1)


def test_weyl_conjugate_rejects_cross_block():
    lam = TorusCocharacter(PROD, (1, 0, 1, -1))
    with pytest.raises(DomainError):
        weyl_conjugate((2, 1, 0, 3), lam)


def test_sl_sum_zero_enforced():
    with pytest.raises(DomainError):
        TorusCocharacter(SL2, (1, 0))
    TorusCocharacter(PROD, (5, 7, 2, -2))


def test_primitive():
    lam = TorusCocharacter(GL2, (4, -6))
    assert not lam.is_primitive
    assert lam.primitive().exponents == (2, -3)
    assert TorusCocharacter(GL2, (0, 0)).primitive().exponents == (0, 0)


def test_membership():
    assert GL2.contains(linalg.mat([[1, 2], [3, 7]]))
    assert not GL2.contains(linalg.mat([[1, 2], [2, 4]]))
    assert not SL2.contains(linalg.mat([[2, 0], [0, 1]]))
    assert SL2.contains(linalg.mat([[2, 0], [0, F(1, 2)]]))
    assert not PROD.contains(linalg.mat([[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


def test_weyl_representatives_land_in_group():
    for g in SL2.weyl_representatives():
        assert SL2.contains(g)
    assert len(GL3.weyl_representatives()) == 6
    assert len(PROD.weyl_representatives()) == 4
    for g in PROD.weyl_representatives():
        assert PROD.contains(g)
    sl3 = GroupSpec.make(("SL", 3))
    reps = sl3.weyl_representatives()
    assert len(reps) == 6
    for g in reps:
        assert sl3.contains(g)
        assert linalg.det(g) == 1


def test_norm_must_be_invariant():
    with pytest.raises(DomainError):
        GroupSpec.make(("GL", 2), gram=[[1, 0], [0, 2]])
    GroupSpec.make(("GL", 2), gram=[[2, 1], [1, 2]])
    # distinct factors may carry distinct scales
    GroupSpec.make(("GL", 1), ("GL", 1), gram=[[1, 0], [0, 2]])


def test_norm_rejects_bad_gram():
    with pytest.raises(DomainError):
        Norm(linalg.mat([[1, 2], [0, 1]]))
    with pytest.raises(DomainError):
        Norm(linalg.mat([[-1, 0], [0, 1]]))


def test_cocharacter_evaluate():
    lam = Cocharacter.standard(GL2, (1, -1))
    assert lam.evaluate(F(2)) == linalg.mat([[2, 0], [0, F(1, 2)]])
    based = Cocharacter.based(GL2, [[1, 1], [0, 1]], (1, -1))
    g = based.evaluate(F(3))
    assert linalg.det(g) == 1
    assert g != lam.evaluate(F(3))


def test_fold_permutation_base():
    w = linalg.mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    lam = Cocharacter.based(GL3, w, (2, 1, 0))
    folded = fold_permutation_base(lam)
    assert folded.base == GL3.identity()
    for a in (F(2), F(3)):
        assert folded.evaluate(a) == lam.evaluate(a)
    sheared = Cocharacter.based(GL3, [[1, 1, 0], [0, 1, 0], [0, 0, 1]], (2, 1, 0))
    assert fold_permutation_base(sheared) == sheared


exps2 = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@settings(max_examples=60, deadline=None)
@given(exps2, st.permutations([0, 1]))
def test_norm_weyl_invariance(exps, perm):
    lam = TorusCocharacter(GL2, exps)
    assert norm_sq(weyl_conjugate(tuple(perm), lam)) == norm_sq(lam)


@settings(max_examples=60, deadline=None)
@given(exps2, exps2, st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_pairing_bilinearity(d1, d2, chi):
    l1, l2 = TorusCocharacter(GL2, d1), TorusCocharacter(GL2, d2)
    c = Character(chi)
    assert pairing(l1 + l2, c) == pairing(l1, c) + pairing(l2, c)
    assert pairing(l1, c + c) == 2 * pairing(l1, c)

import pytest

from destab import (
    COMPLETELY_REDUCIBLE,
    Cocharacter,
    DomainError,
    GroupSpec,
    LieSubalgebra,
    MembershipClass,
    ModeError,
    NOT_COMPLETELY_REDUCIBLE,
    OPTIMAL,
    PreconditionError,
    SearchConfig,
    SubgroupPresentation,
    TRIVIAL,
    UnsupportedGroupError,
    building_centre,
    c_lambda,
    centralizer_dim,
    classify,
    enveloping_algebra,
    is_gcr_algebra,
    is_gcr_search,
    is_generic_tuple,
    lie_is_gcr,
    optimal_parabolic_subgroup,
    radical_dim,
    reduce_to_gcr,
)
from destab import linalg
from destab.gcr import algebra_of_tuple, radical_basis

GL2 = GroupSpec.make(("GL", 2))
GL3 = GroupSpec.make(("GL", 3))
SL2 = GroupSpec.make(("SL", 2))

UNIP = SubgroupPresentation(GL2, (((1, 1), (0, 1)),))
DIAG = SubgroupPresentation(GL2, (((2, 0), (0, 3)),))
SWAP = SubgroupPresentation(GL2, (((0, 1), (1, 0)),))
TRIVIAL_H = SubgroupPresentation(GL2, (((1, 0), (0, 1)),))


def cfg_for(group, box=4):
    return SearchConfig.default(group, exponent_box=box, shear_values=(-2, -1, 1, 2))


def test_enveloping_algebra_examples():
    assert enveloping_algebra(UNIP).dimension == 2
    assert enveloping_algebra(DIAG).dimension == 2
    assert enveloping_algebra(TRIVIAL_H).dimension == 1
    alg = enveloping_algebra(UNIP)
    assert alg.contains(linalg.mat([[0, 5], [0, 0]]))
    assert not alg.contains(linalg.mat([[0, 0], [1, 0]]))


def test_enveloping_algebra_contains_inverses():
    h = SubgroupPresentation(GL2, (((2, 1), (1, 1)),))
    alg = enveloping_algebra(h)
    assert alg.contains(linalg.inverse(linalg.mat([[2, 1], [1, 1]])))


def test_is_generic_tuple():
    g1 = ((2, 0), (0, 3))
    g2 = ((0, 1), (1, 0))
    h = SubgroupPresentation(GL2, (g1, g2))
    assert enveloping_algebra(h).dimension == 4
    assert is_generic_tuple((g1, g2), h)
    assert not is_generic_tuple((g1,), h)
    assert not is_generic_tuple((((1, 0), (0, 1)),), h)
    with pytest.raises(PreconditionError):
        is_generic_tuple((((0, 0), (1, 0)),), UNIP)


def test_radical_dim_examples():
    alg = enveloping_algebra(UNIP)
    assert radical_dim(alg) == 1
    (rad,) = radical_basis(alg)
    assert rad[0][0] == 0 and rad[1][1] == 0 and rad[1][0] == 0 and rad[0][1] != 0
    assert radical_dim(enveloping_algebra(DIAG)) == 0
    assert radical_dim(enveloping_algebra(TRIVIAL_H)) == 0


def test_is_gcr_algebra_examples():
    assert is_gcr_algebra(UNIP).status == NOT_COMPLETELY_REDUCIBLE
    assert is_gcr_algebra(SWAP).status == COMPLETELY_REDUCIBLE
    assert is_gcr_algebra(TRIVIAL_H).status == COMPLETELY_REDUCIBLE


def test_is_gcr_algebra_rejects_sl():
    h = SubgroupPresentation(SL2, (((1, 1), (0, 1)),))
    with pytest.raises(UnsupportedGroupError):
        is_gcr_algebra(h)


def test_is_gcr_search_examples():
    cfg = cfg_for(GL2)
    v = is_gcr_search(UNIP, cfg)
    assert v.status == NOT_COMPLETELY_REDUCIBLE
    assert v.witness_cocharacter is not None
    assert is_gcr_search(DIAG, cfg).status == COMPLETELY_REDUCIBLE
    rot = SubgroupPresentation(SL2, (((0, -1), (1, 0)),))
    verdict = is_gcr_search(rot, cfg_for(SL2))
    assert verdict.status == COMPLETELY_REDUCIBLE
    assert verdict.examined == ()


def test_centralizer_dim_examples():
    assert centralizer_dim(GL2, [((1, 0), (0, 1))]) == 4
    assert centralizer_dim(GL2, [((1, 1), (0, 1))]) == 2
    assert centralizer_dim(GL2, [((2, 0), (0, 3))]) == 2
    # SL factor drops the central direction
    assert centralizer_dim(SL2, [((1, 0), (0, 1))]) == 3


def test_centralizer_transfer_to_generic_tuple():
    g1 = ((2, 0), (0, 3))
    g2 = ((0, 1), (1, 0))
    h = SubgroupPresentation(GL2, (g1, g2))
    # the generator tuple is generic, so its centralizer is the subgroup's
    assert centralizer_dim(GL2, (g1, g2)) == centralizer_dim(GL2, (g1, g2, g1))


def test_generic_tuple_projection():
    lam = Cocharacter.standard(GL2, (1, -1))
    gens = (((2, 1), (0, 3)), ((1, 5), (0, 1)))
    h = SubgroupPresentation(GL2, gens)
    image = c_lambda(gens, lam)
    before = algebra_of_tuple(GL2, image).dimension
    closure = algebra_of_tuple(
        GL2, image + tuple(linalg.mat_mul(a, b) for a in image for b in image)
    ).dimension
    assert before == closure  # the projected tuple generates its own algebra


def test_reduce_to_gcr_examples():
    cfg = cfg_for(GL2)
    chain, quotient = reduce_to_gcr(UNIP, cfg)
    assert len(chain) == 1
    assert quotient.generators == (linalg.identity(2),)

    rot = SubgroupPresentation(SL2, (((0, -1), (1, 0)),))
    chain, quotient = reduce_to_gcr(rot, cfg_for(SL2))
    assert chain == ()
    assert quotient.generators == rot.generators

    chain, quotient = reduce_to_gcr(DIAG, cfg)
    assert chain == ()
    assert quotient.generators == DIAG.generators


def test_reduce_to_gcr_idempotent():
    cfg = cfg_for(GL2)
    for h in (UNIP, DIAG, SubgroupPresentation(GL2, (((1, 2), (0, 3)),))):
        _, quotient = reduce_to_gcr(h, cfg)
        chain, again = reduce_to_gcr(quotient, cfg)
        assert chain == ()
        assert again.generators == quotient.generators


def test_optimal_parabolic_borel_tits():
    cfg = SearchConfig.default(GL2, exponent_box=3, oracle_mode=True)
    res = optimal_parabolic_subgroup(UNIP, cfg)
    assert res.status == OPTIMAL
    assert not res.parabolic.is_whole_group
    assert classify(UNIP.generators[0], res.cocharacter) is MembershipClass.IN_RU
    assert res.global_verified


def test_optimal_parabolic_trivial_for_identity():
    cfg = SearchConfig.default(GL2, exponent_box=3)
    res = optimal_parabolic_subgroup(TRIVIAL_H, cfg)
    assert res.status == TRIVIAL
    assert res.parabolic.is_whole_group


def test_optimal_parabolic_e13_oracle():
    h = SubgroupPresentation(
        GL3, (((1, 0, 1), (0, 1, 0), (0, 0, 1)),)
    )
    cfg = SearchConfig.default(GL3, exponent_box=3, oracle_mode=True)
    res = optimal_parabolic_subgroup(h, cfg)
    assert res.status == OPTIMAL
    assert not res.parabolic.is_whole_group
    assert classify(h.generators[0], res.cocharacter) is MembershipClass.IN_RU
    assert res.global_verified


def test_optimal_parabolic_mode_error():
    with pytest.raises(ModeError):
        optimal_parabolic_subgroup(DIAG, cfg_for(GL2))
    with pytest.raises(ModeError):
        optimal_parabolic_subgroup(DIAG, cfg_for(GL2), mode="custom")


def test_optimal_parabolic_custom_mode():
    from destab import SubvarietySpec

    cfg = SearchConfig.default(GL2, exponent_box=3, oracle_mode=True)
    res = optimal_parabolic_subgroup(
        UNIP, cfg, mode="custom", subvariety=SubvarietySpec.identity_tuple()
    )
    assert res.status == OPTIMAL
    assert classify(UNIP.generators[0], res.cocharacter) is not MembershipClass.NOT_IN_P


def test_building_centre_examples():
    h = SubgroupPresentation(SL2, (((1, 1), (0, 1)),))
    cfg = SearchConfig.default(SL2, exponent_box=3)
    centre = building_centre(h, cfg)
    assert centre.has_centre
    assert centre.blocks == ((1, 1),)

    no_centre = building_centre(TRIVIAL_H, SearchConfig.default(GL2, exponent_box=3))
    assert not no_centre.has_centre


def test_building_centre_two_generators_with_normalizer():
    h = SubgroupPresentation(
        GL3,
        (
            ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
            ((1, 0, 1), (0, 1, 0), (0, 0, 1)),
        ),
    )
    sample = linalg.mat([[1, 0, 0], [0, 2, 0], [0, 0, 2]])
    cfg = SearchConfig.default(
        GL3, exponent_box=3, oracle_mode=True, normalizer_samples=(sample,)
    )
    centre = building_centre(h, cfg)
    assert centre.has_centre
    for g in h.generators:
        assert classify(g, centre.cocharacter) is MembershipClass.IN_RU
    assert sample in centre.stabilizing_samples


def test_lie_is_gcr_examples():
    cfg = cfg_for(SL2)
    e = LieSubalgebra(SL2, (((0, 1), (0, 0)),))
    v = lie_is_gcr(e, cfg)
    assert v.status == NOT_COMPLETELY_REDUCIBLE
    assert v.witness_cocharacter.torus.exponents == (1, -1)

    torus = LieSubalgebra(SL2, (((1, 0), (0, -1)),))
    assert lie_is_gcr(torus, cfg).status == COMPLETELY_REDUCIBLE

    full = LieSubalgebra(
        SL2, (((0, 1), (0, 0)), ((1, 0), (0, -1)), ((0, 0), (1, 0)))
    )
    verdict = lie_is_gcr(full, cfg)
    assert verdict.status == COMPLETELY_REDUCIBLE
    assert verdict.examined == ()


def test_lie_subalgebra_validation():
    with pytest.raises(DomainError):
        LieSubalgebra(SL2, (((1, 0), (0, 1)),))  # trace nonzero
    with pytest.raises(DomainError):
        LieSubalgebra(GL2, (((0, 1), (0, 0)), ((0, 0), (1, 0))))  # bracket escapes


def test_group_to_lie_consistency_corpus():
    from destab.corpus import group_lie_consistency_suite

    records = group_lie_consistency_suite(seed=1, size=50)
    checked = [r for r in records if not r.get("skipped")]
    assert len(checked) >= 10  # the corpus must actually exercise the property
    assert all(r["ok"] for r in records)


def test_group_to_lie_consistency():
    # a reducible-but-decomposable subgroup is reducible on both sides
    cfg = cfg_for(GL2)
    h = SubgroupPresentation(GL2, (((2, 0), (0, 3)),))
    assert is_gcr_search(h, cfg).status == COMPLETELY_REDUCIBLE
    lie = LieSubalgebra(GL2, (((1, 0), (0, 0)),))
    assert lie_is_gcr(lie, cfg).status == COMPLETELY_REDUCIBLE
    # and the unipotent pair fails on both sides
    assert is_gcr_search(UNIP, cfg).status == NOT_COMPLETELY_REDUCIBLE
    nil = LieSubalgebra(GL2, (((0, 1), (0, 0)),))
    assert lie_is_gcr(nil, cfg).status == NOT_COMPLETELY_REDUCIBLE

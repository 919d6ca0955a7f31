"""The canonical parabolic attached to a unipotent subgroup.

For a group generated by unipotent matrices, driving the generator tuple
to the identity tuple as fast as possible produces a proper parabolic
whose unipotent radical swallows every generator.  The fixed simplex of
that parabolic is the natural centre of the subgroup's fixed-point
complex in the building.
"""

from destab import (
    GroupSpec,
    SearchConfig,
    SubgroupPresentation,
    building_centre,
    classify,
    optimal_parabolic_subgroup,
)
from destab import linalg

gl3 = GroupSpec.make(("GL", 3))
cfg = SearchConfig.default(gl3, exponent_box=3, shear_values=(1,), oracle_mode=True)

print("== regular unipotent (single Jordan block) ==")
u_reg = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
res = optimal_parabolic_subgroup(SubgroupPresentation(gl3, (u_reg,)), cfg)
print("  lambda* =", res.cocharacter.torus.exponents)
print("  value^2 =", res.value_sq, " oracle confirmed =", res.global_verified)
print("  parabolic blocks:", res.parabolic.blocks, " (the full flag)")
print("  generator class:", classify(u_reg, res.cocharacter).value)

print()
print("== subregular unipotent (Jordan type 2+1) ==")
u_sub = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
res = optimal_parabolic_subgroup(SubgroupPresentation(gl3, (u_sub,)), cfg)
print("  lambda* =", res.cocharacter.torus.exponents)
print("  parabolic blocks:", res.parabolic.blocks)
print("  generator class:", classify(u_sub, res.cocharacter).value)

print()
print("== a conjugated copy lands in the conjugated parabolic ==")
frame = linalg.mat([[1, 0, 0], [1, 1, 0], [0, 0, 1]])
conj = linalg.mat_mul(linalg.mat_mul(frame, linalg.mat(u_sub)), linalg.inverse(frame))
res_c = optimal_parabolic_subgroup(SubgroupPresentation(gl3, (conj,)), cfg)
print("  generator class:", classify(conj, res_c.cocharacter).value)
print("  conjugate of the standard parabolic?",
      res_c.parabolic == res.parabolic.conjugated_by(frame))

print()
print("== the centre simplex, with a stabilizing sample ==")
pair = SubgroupPresentation(
    gl3,
    (
        ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((1, 0, 1), (0, 1, 0), (0, 0, 1)),
    ),
)
sample = linalg.mat([[1, 0, 0], [0, 2, 0], [0, 0, 2]])
cfg_s = SearchConfig.default(
    gl3, exponent_box=3, oracle_mode=True, normalizer_samples=(sample,)
)
centre = building_centre(pair, cfg_s)
print("  has centre:", centre.has_centre)
print("  simplex blocks:", centre.blocks)
print("  verified stabilizing samples:", len(centre.stabilizing_samples))

print()
print("== the trivial subgroup has no centre ==")
trivial = SubgroupPresentation(gl3, (linalg.identity(3),))
print("  has centre:", building_centre(trivial, cfg).has_centre)

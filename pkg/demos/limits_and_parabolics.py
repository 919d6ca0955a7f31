"""Limits along one-parameter subgroups and the parabolic they define.

Walks through the basic machinery on 2x2 matrices under conjugation:
weight gradings, limits, membership in P/L/R_u, the Levi projection, and
solving for a radical conjugator when the limit stays in the rational
orbit.
"""

from fractions import Fraction as F

from destab import (
    Cocharacter,
    ConjugationTuples,
    GroupSpec,
    c_lambda,
    classify,
    find_ru_conjugator,
    grade,
    limit,
)

sl2 = GroupSpec.make(("SL", 2))
rep = ConjugationTuples(sl2, 1)
lam = Cocharacter.standard(sl2, (1, -1))  # a -> diag(a, 1/a)

print("== grading a matrix by conjugation weight ==")
v = rep.point([[[1, 1], [0, 1]]])
g = grade(v, lam)
for level in g.levels:
    print(f"  level {level}: {rep.matrices(g.components[level])[0]}")

print()
print("== a limit that exists, and one that does not ==")
v = rep.point([[[2, F(-3, 2)], [0, F(1, 2)]]])
print("  v           =", rep.matrices(v)[0])
print("  lim v       =", rep.matrices(limit(v, lam))[0])
e21 = rep.point([[[0, 0], [1, 0]]])
print("  lim e21     =", limit(e21, lam))

print()
print("== membership in the parabolic attached to lambda ==")
for name, mat in [
    ("upper unipotent", [[1, 5], [0, 1]]),
    ("diagonal", [[2, 0], [0, F(1, 2)]]),
    ("upper triangular", [[2, 3], [0, F(1, 2)]]),
    ("lower unipotent", [[1, 0], [1, 1]]),
]:
    print(f"  {name:17s} -> {classify(mat, lam).value}")

print()
print("== the Levi projection is the diagonal part ==")
x = [[2, F(-3, 2)], [0, F(1, 2)]]
print("  c_lambda(x) =", c_lambda(x, lam))

print()
print("== the limit is a radical translate when orbits agree ==")
v_prime = rep.point([[[2, 0], [0, F(1, 2)]]])
u = find_ru_conjugator(v, v_prime, lam)
print("  u =", u)
print("  check: u v u^-1 =", rep.matrices(rep.act(u, v))[0])

print()
print("== ... and fails when they do not ==")
unip = rep.point([[[1, 1], [0, 1]]])
ident = rep.point([[[1, 0], [0, 1]]])
print("  conjugator for unipotent -> identity:", find_ru_conjugator(unip, ident, lam))

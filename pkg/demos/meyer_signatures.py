"""Signatures of surface bundles over punctured spheres, computed exactly.

The boundary correction of a torus bundle piece is a rational number built
from Dedekind sums.  Summing it over the monodromies of a bundle over a
punctured sphere gives the signature of the total space, an integer.
"""

import random
from fractions import Fraction

from fourfold import (
    B,
    ID,
    MatrixZ,
    S,
    dedekind_sum,
    fiber_sum_signature,
    meyer_cocycle,
    meyer_function,
    rademacher_phi,
)

print("== Dedekind sums ==")
for h, k in ((1, 3), (5, 7), (1, 12), (7, 12)):
    print(f"s({h},{k}) = {dedekind_sum(h, k)}")
assert dedekind_sum(1, 12) == Fraction(55, 72)

print()
print("== the correction on some standard elements ==")
for name, m in (("B", B), ("B^2", B ** 2), ("S", S), ("-id", -ID), ("B^-1", B.inverse())):
    print(f"M({name:4}) = {meyer_function(m)}   (Rademacher {rademacher_phi(m)})")
assert meyer_function(B) == Fraction(2, 3)
assert meyer_function(S) == -1

print()
print("== M(B^k) closes to sign(k) - k/3 ==")
for k in range(-6, 7):
    if k == 0:
        continue
    expect = (1 if k > 0 else -1) - Fraction(k, 3)
    got = meyer_function(B ** k)
    assert got == expect
    print(f"M(B^{k:>2}) = {got}")

print()
print("== cocycle property spot check ==")
rng = random.Random(11)


def random_matrix() -> MatrixZ:
    m = ID
    for _ in range(rng.randrange(1, 9)):
        m = m * (S if rng.random() < 0.5 else B ** rng.choice((-2, -1, 1, 2)))
    return m


for _ in range(50):
    g, h = random_matrix(), random_matrix()
    c = meyer_cocycle(g, h)
    assert c == meyer_function(g * h) - meyer_function(g) - meyer_function(h)
print("50 random pairs satisfy the coboundary identity")

print()
print("== signatures of bundles over punctured spheres ==")
for n in range(1, 6):
    mono = [B, B ** 3] * n + [B ** (-4 * n)]
    sig = fiber_sum_signature(mono)
    print(f"n={n}: monodromies (B, B^3) x {n} and B^{-4 * n} close up, signature {sig}")
    assert sig == 2 * n - 1

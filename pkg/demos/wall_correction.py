"""Wall's non-additivity correction for the semibundle trick, end to end.

A semibundle with monodromy phi sits over an interval.  Doubling the
interval direction turns two copies of it into a torus bundle piece; the
signature picked up in the process is minus the signature of a small
rational form built from three subspaces of a symplectic Q^4.
"""

from fourfold import (
    B,
    semibundle_relator,
    semibundle_trick_signature,
    semibundle_wall_data,
    wall_correction,
    wall_correction_form,
)


def vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


phi = B ** 3
triple = semibundle_wall_data(phi)

print(f"phi = {phi}")
print(f"A basis (graph of the reflection twist): {[vec(v) for v in triple.a_minus.basis()]}")
print(f"B basis (core plane):                    {[vec(v) for v in triple.b_core.basis()]}")
print(f"C basis (reflected graph):               {[vec(v) for v in triple.c_plus.basis()]}")

reps, gram = wall_correction_form(triple)
print(f"dim U = {len(reps)}")
for v, row in zip(reps, gram):
    print(f"  rep {vec(v)}  pairing row {vec(row)}")

corr = wall_correction(triple)
print(f"correction = {corr}")
print(f"trick signature = {semibundle_trick_signature(phi)}")
assert semibundle_trick_signature(phi) == -corr

print()
print("== the B^k family ==")
for k in range(1, 9):
    triple = semibundle_wall_data(B ** k)
    reps, gram = wall_correction_form(triple)
    assert len(reps) == 1
    assert gram[0][0] == -2 * k
    assert wall_correction(triple) == -1
    print(f"k={k}: dim U = 1, Gram [{gram[0][0]}], correction -1, trick signature +1")

print()
print("== relator of the doubled bundle ==")
for k in range(1, 6):
    rel = semibundle_relator(B ** k)
    print(f"phi = B^{k}: relator {rel}")
    assert rel == B ** (2 * k)

"""Filling torus bundles and semibundles by aspherical fourfolds.

Even abelianization class: the filling is constructed outright.  Odd class:
no construction is known and the outcome says so instead of guessing.
Passing to a finite cover kills the obstruction, so the virtual version
always succeeds.
"""

from fourfold import (
    B,
    ID,
    S,
    abelianization_class,
    compute_invariants,
    recipe_fill_semibundle,
    recipe_fill_torus_bundle,
    recipe_virtual_filling,
    word_to_matrix,
    GeneratorWord,
)

print("== torus bundles, literal twist powers ==")
for k in (2, 4, -2):
    out = recipe_fill_torus_bundle(B ** k)
    assert out.constructed
    rep = compute_invariants(out.assembly)
    residual = ", ".join(str(p) for p in rep.residual_boundary)
    print(f"B^{k:>2}: {out.status}, chi = {rep.euler}, sigma = {rep.signature}, "
          f"residual {residual}")

print()
print("== general monodromies, split by abelianization parity ==")
for text in ("T", "S T^2 S T^2", "S T S T^-1", "T^2 S T^2 S T^2"):
    phi = word_to_matrix(GeneratorWord.parse(text))
    j = int(abelianization_class(phi))
    out = recipe_fill_torus_bundle(phi)
    tag = f"class {j}"
    if out.constructed:
        rep = compute_invariants(out.assembly)
        print(f"{text!r:18} ({tag}): {out.status}, chi = {rep.euler}, sigma = {rep.signature}")
        assert rep.euler == 0
    else:
        print(f"{text!r:18} ({tag}): {out.status}")
        assert j % 2 == 1

print()
print("== semibundles reduce to torus bundles ==")
for name, psi in (("id", ID), ("B", B), ("B^2", B ** 2)):
    out = recipe_fill_semibundle(psi)
    inner = recipe_fill_torus_bundle(psi)
    assert out.constructed == inner.constructed
    if out.constructed:
        rep = compute_invariants(out.assembly)
        sigma = rep.signature if rep.signature is not None else "Unknown"
        print(f"psi = {name:4}: {out.status}, chi = {rep.euler}, sigma = {sigma}")
    else:
        print(f"psi = {name:4}: {out.status}")
        print(f"  note: {out.notes}")

print()
print("== virtual fillings always land ==")
for name, phi in (("B", B), ("S", S), ("T S T", word_to_matrix(GeneratorWord.parse("T S T")))):
    out = recipe_virtual_filling(phi)
    assert out.constructed
    rep = compute_invariants(out.assembly)
    print(f"phi = {name:6}: cover degree {out.cover_degree}, chi = {rep.euler}")

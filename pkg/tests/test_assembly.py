"""Tests for port matching, gluing, invariants, and the file format."""

import json
import random
from fractions import Fraction

import pytest

from fourfold.assembly import (
    Assembly,
    InvariantReport,
    ProductFactor,
    ProductRecipe,
    assembly_from_json_dict,
    assembly_to_json_dict,
    compute_invariants,
    load_assembly,
    omega,
    orientation_reverse,
    port_compatible,
    realize_spec_chi,
    save_assembly,
)
from fourfold.catalog import (
    SEMI_BUNDLE,
    TORUS_BUNDLE,
    V_ALPHA,
    BoundaryPort,
    FormalVolume,
    closed_flat_block,
    dicerbo_stover_block,
    flat_cap_block,
    punctured_sphere_bundle,
    semibundle_trick_block,
    torus_trick_block,
)
from fourfold.errors import GluingError
from fourfold.meyer import meyer_function
from fourfold.sl2z import B, ID, NEG_ID, S, MatrixZ


def random_matrix(rng, max_len=14):
    m = ID
    for _ in range(rng.randrange(max_len)):
        m = m * rng.choice([S, S.inverse(), B, B.inverse()])
    if rng.random() < 0.25:
        m = -m
    return m


def random_closing_tuple(rng, n):
    ms = [random_matrix(rng) for _ in range(n - 1)]
    prod = ID
    for m in ms:
        prod = m * prod
    ms.append(prod.inverse())
    return tuple(ms)


def x1_by_hand() -> Assembly:
    """The chi = sigma = 1 closed assembly, glued port by port."""
    blocks = (
        orientation_reverse(dicerbo_stover_block()),
        punctured_sphere_bundle([B, B ** 3, B ** -4]),
        semibundle_trick_block(B ** 2),
    )
    return (
        Assembly.of_blocks(blocks)
        .glue((0, 0), (1, 0))
        .glue((0, 1), (1, 1))
        .glue((1, 2), (2, 2))
        .glue((2, 0), (2, 1))
    )


# ---------------------------------------------------------------- matching

def test_torus_ports_match_inverse():
    p = BoundaryPort(TORUS_BUNDLE, B, 1)
    assert port_compatible(p, BoundaryPort(TORUS_BUNDLE, B.inverse(), 1))
    assert not port_compatible(p, BoundaryPort(TORUS_BUNDLE, B, 1))
    # sign -1 folds into the monodromy: -T(B) is T(B^-1)
    assert port_compatible(p, BoundaryPort(TORUS_BUNDLE, B, -1))
    assert not port_compatible(p, BoundaryPort(TORUS_BUNDLE, B.inverse(), -1))


def test_torus_ports_match_up_to_conjugacy_with_witness():
    rng = random.Random(711)
    for _ in range(60):
        m = random_matrix(rng)
        g = random_matrix(rng)
        p = BoundaryPort(TORUS_BUNDLE, m, 1)
        q = BoundaryPort(TORUS_BUNDLE, g * m.inverse() * g.inverse(), 1)
        match = port_compatible(p, q)
        assert match.compatible
        w = match.witness
        assert w * p.effective_monodromy.inverse() * w.inverse() == q.effective_monodromy


def test_semibundle_ports_need_same_monodromy_opposite_signs():
    lo = BoundaryPort(SEMI_BUNDLE, B, -1)
    hi = BoundaryPort(SEMI_BUNDLE, B, 1)
    assert port_compatible(lo, hi)
    assert port_compatible(hi, lo)
    assert not port_compatible(hi, hi)
    assert not port_compatible(hi, BoundaryPort(SEMI_BUNDLE, B ** 2, -1))
    # conjugate but unequal monodromies do not glue as semi-bundles
    conj = S * B * S.inverse()
    assert not port_compatible(hi, BoundaryPort(SEMI_BUNDLE, conj, -1))


def test_mixed_kinds_reject_except_flat_identification():
    tb = BoundaryPort(TORUS_BUNDLE, B, 1)
    nb = BoundaryPort(SEMI_BUNDLE, B, -1)
    assert not port_compatible(tb, nb)
    assert not port_compatible(nb, tb)
    # N(id) is T(-id): the one legal crossing, any sign pairing (central monodromy)
    flat_tb = BoundaryPort(TORUS_BUNDLE, NEG_ID, 1)
    for s in (1, -1):
        for t in (1, -1):
            assert port_compatible(
                BoundaryPort(SEMI_BUNDLE, ID, s),
                BoundaryPort(TORUS_BUNDLE, NEG_ID, t),
            )
    assert port_compatible(flat_tb, BoundaryPort(SEMI_BUNDLE, ID, -1))
    # the identification does not extend to other semi-bundles
    assert not port_compatible(BoundaryPort(SEMI_BUNDLE, B, 1), flat_tb)


# ---------------------------------------------------------------- gluing

def test_glue_happy_path_and_report():
    asm = x1_by_hand()
    assert asm.free_ports() == ()
    report = compute_invariants(asm)
    assert report.euler == 1
    assert report.signature == 1
    assert report.closed
    assert report.aspherical
    assert report.sv == FormalVolume.of({V_ALPHA: 1})
    assert report.l2_betti == (0, 0, 1, 0, 0)
    assert report.residual_boundary == ()
    assert report.unknown_sources == ()


def test_glue_rejects_reuse_self_and_bad_refs():
    blocks = (
        orientation_reverse(dicerbo_stover_block()),
        punctured_sphere_bundle([B, B ** 3, B ** -4]),
    )
    asm = Assembly.of_blocks(blocks).glue((0, 0), (1, 0))
    with pytest.raises(GluingError, match="already glued"):
        asm.glue((0, 0), (1, 0))
    with pytest.raises(GluingError, match="already glued"):
        asm.glue((1, 0), (1, 1))
    with pytest.raises(GluingError, match="itself"):
        asm.glue((1, 1), (1, 1))
    with pytest.raises(GluingError, match="no block"):
        asm.glue((5, 0), (1, 1))
    with pytest.raises(GluingError, match="has no port"):
        asm.glue((0, 7), (1, 1))


def test_glue_rejects_mismatch_with_detail():
    blocks = (dicerbo_stover_block(), dicerbo_stover_block())
    asm = Assembly.of_blocks(blocks)
    with pytest.raises(GluingError, match="not inverse up to conjugacy"):
        asm.glue((0, 0), (1, 0))  # T(B) against T(B): same, not inverse
    asm2 = Assembly.of_blocks((semibundle_trick_block(B), flat_cap_block()))
    with pytest.raises(GluingError, match="kind mismatch"):
        asm2.glue((0, 0), (1, 0))


def test_gluing_normalization_makes_order_irrelevant():
    blocks = (
        orientation_reverse(dicerbo_stover_block()),
        punctured_sphere_bundle([B, B ** 3, B ** -4]),
    )
    a = Assembly.of_blocks(blocks).glue((0, 0), (1, 0)).glue((0, 1), (1, 1))
    b = Assembly.of_blocks(blocks).glue((1, 1), (0, 1)).glue((1, 0), (0, 0))
    assert a == b


def test_disjoint_union_shifts_indices():
    core = x1_by_hand()
    extra = Assembly.of_blocks((closed_flat_block(),))
    both = core.disjoint_union(core).disjoint_union(extra)
    report = compute_invariants(both)
    assert report.euler == 2
    assert report.signature == 2
    assert report.closed
    assert report.sv.coefficient(V_ALPHA) == 2
    assert report.l2_betti == (0, 0, 2, 0, 0)


# ---------------------------------------------------------------- reversal

def test_orientation_reverse_block():
    blk = dicerbo_stover_block()
    rev = orientation_reverse(blk)
    assert rev.euler == blk.euler
    assert rev.signature == -1
    assert rev.reversed
    assert [p.sign for p in rev.ports] == [-1, -1]
    assert orientation_reverse(rev) == blk
    unknown = orientation_reverse(torus_trick_block(B, S))
    assert unknown.signature is None


def test_orientation_reverse_assembly_negates_signature():
    asm = x1_by_hand()
    rev = asm.orientation_reverse()
    report = compute_invariants(rev)
    assert report.euler == 1
    assert report.signature == -1
    assert report.closed
    assert report.sv == FormalVolume.of({V_ALPHA: 1})
    assert report.l2_betti == (0, 0, 1, 0, 0)
    assert rev.orientation_reverse() == asm


# ---------------------------------------------------------------- invariants

def test_unknown_signature_propagates_with_source():
    asm = Assembly.of_blocks((torus_trick_block(ID, B ** 2), flat_cap_block()))
    asm = asm.glue((0, 0), (1, 0))  # N(id) against T(-id)
    report = compute_invariants(asm)
    assert report.signature is None
    assert report.unknown_sources == ("block 0 (torus_trick): signature unknown",)
    assert "Unknown" in report.to_text()
    assert not report.closed
    assert [str(p) for p in report.residual_boundary] == [
        "T(1,-2,0,1)",
        "N(1,2,0,1)",
    ]


def test_invariants_permutation_invariant():
    rng = random.Random(712)
    core = x1_by_hand()
    for _ in range(50):
        asm = core
        for _ in range(rng.randrange(3)):
            ms = random_closing_tuple(rng, rng.randrange(2, 5))
            asm = asm.disjoint_union(
                Assembly.of_blocks((punctured_sphere_bundle(ms),))
            )
        n = len(asm.blocks)
        perm = list(range(n))
        rng.shuffle(perm)
        blocks = [None] * n
        for i, blk in enumerate(asm.blocks):
            blocks[perm[i]] = blk
        gluings = tuple(
            ((perm[i], p), (perm[j], q)) for (i, p), (j, q) in asm.gluings
        )
        shuffled = Assembly(tuple(blocks), gluings)
        a = compute_invariants(asm)
        b = compute_invariants(shuffled)
        assert (a.euler, a.signature, a.closed, a.sv) == (
            b.euler,
            b.signature,
            b.closed,
            b.sv,
        )
        assert a.l2_betti == b.l2_betti
        assert sorted(map(str, a.residual_boundary)) == sorted(
            map(str, b.residual_boundary)
        )


def test_closed_alternating_l2_sum_is_euler():
    rng = random.Random(713)
    asm = x1_by_hand()
    for _ in range(3):
        asm = asm.disjoint_union(x1_by_hand())
    asm = asm.disjoint_union(Assembly.of_blocks((closed_flat_block(),)))
    report = compute_invariants(asm)
    assert report.closed
    alternating = sum((-1) ** i * x for i, x in enumerate(report.l2_betti))
    assert alternating == report.euler == 4


def test_report_text_and_json_shapes():
    report = compute_invariants(x1_by_hand())
    text = report.to_text()
    assert "euler characteristic: 1" in text
    assert "signature: 1" in text
    assert "closed: yes" in text
    assert "simplicial volume: v_alpha" in text
    assert "L2-Betti numbers: (0, 0, 1, 0, 0)" in text
    assert "residual boundary: none" in text
    data = report.to_json_dict()
    assert data["euler"] == 1 and data["signature"] == 1
    assert data["simplicial_volume"] == {"v_alpha": "1"}
    assert data["l2_betti"] == ["0", "0", "1", "0", "0"]
    assert data["residual_boundary"] == []
    json.dumps(data)  # must be serializable as-is


# ---------------------------------------------------------------- file format

def test_json_round_trip_bit_exact(tmp_path):
    asm = x1_by_hand().disjoint_union(
        Assembly.of_blocks((torus_trick_block(ID, B ** 2), flat_cap_block())).glue(
            (0, 0), (1, 0)
        )
    )
    path = tmp_path / "assembly.json"
    save_assembly(asm, str(path))
    loaded = load_assembly(str(path))
    assert loaded == asm
    assert assembly_to_json_dict(loaded) == assembly_to_json_dict(asm)
    assert compute_invariants(loaded) == compute_invariants(asm)


def test_json_validates_on_load(tmp_path):
    asm = x1_by_hand()
    data = assembly_to_json_dict(asm)
    data["gluings"].append({"a": ["b0", 0], "b": ["b1", 0]})
    with pytest.raises(GluingError, match="already glued"):
        assembly_from_json_dict(data)
    bad_kind = {"blocks": [{"id": "b0", "kind": "mystery", "params": {}}], "gluings": []}
    with pytest.raises(ValueError, match="unknown block kind"):
        assembly_from_json_dict(bad_kind)
    dup = {
        "blocks": [
            {"id": "b0", "kind": "closed_flat", "params": {}},
            {"id": "b0", "kind": "closed_flat", "params": {}},
        ],
        "gluings": [],
    }
    with pytest.raises(ValueError, match="duplicate block id"):
        assembly_from_json_dict(dup)
    missing = {
        "blocks": [{"id": "b0", "kind": "flat_cap", "params": {}}],
        "gluings": [{"a": ["b0", 0], "b": ["b9", 0]}],
    }
    with pytest.raises(ValueError, match="unknown block id"):
        assembly_from_json_dict(missing)


def test_json_reversed_flag_round_trips():
    asm = Assembly.of_blocks((orientation_reverse(dicerbo_stover_block()),))
    data = assembly_to_json_dict(asm)
    assert data["blocks"][0]["reversed"] is True
    loaded = assembly_from_json_dict(data)
    assert loaded.blocks[0].signature == -1
    assert loaded == asm


def test_json_random_assemblies_round_trip():
    rng = random.Random(714)
    for _ in range(25):
        asm = Assembly.of_blocks(())
        asm = Assembly.of_blocks(
            tuple(
                punctured_sphere_bundle(random_closing_tuple(rng, rng.randrange(2, 5)))
                for _ in range(rng.randrange(1, 4))
            )
        )
        if rng.random() < 0.5:
            asm = asm.disjoint_union(
                Assembly.of_blocks((semibundle_trick_block(random_matrix(rng)),)).glue(
                    (0, 0), (0, 1)
                )
            )
        again = assembly_from_json_dict(assembly_to_json_dict(asm))
        assert again == asm


# ---------------------------------------------------------------- chi realization

def test_realize_dimension_four():
    for n in range(9):
        recipe = realize_spec_chi(4, n)
        assert recipe.dimension == 4
        assert recipe.euler == n
        assert [f.label for f in recipe.factors] == [f"X_{n}"]


def test_realize_dimension_six():
    for n, g in [(0, 1), (-2, 2), (-4, 3)]:
        recipe = realize_spec_chi(6, n)
        assert recipe.euler == n
        assert [f.label for f in recipe.factors] == ["X_1", f"Sigma_{g}"]
        assert sum(f.dimension for f in recipe.factors) == 6
    with pytest.raises(ValueError, match="non-positive even"):
        realize_spec_chi(6, -3)
    with pytest.raises(ValueError, match="non-positive even"):
        realize_spec_chi(6, 2)


def test_realize_higher_and_odd_dimensions():
    recipe = realize_spec_chi(8, 3)
    assert [f.label for f in recipe.factors] == ["X_1", "X_3"]
    recipe = realize_spec_chi(12, 0)
    assert [f.label for f in recipe.factors] == ["X_1", "X_1", "X_0"]
    recipe = realize_spec_chi(2, -6)
    assert [f.label for f in recipe.factors] == ["Sigma_4"]
    recipe = realize_spec_chi(5, 0)
    assert [f.label for f in recipe.factors] == ["T^5"]
    with pytest.raises(ValueError, match="odd-dimensional"):
        realize_spec_chi(5, 1)
    with pytest.raises(ValueError, match="chi >= 0"):
        realize_spec_chi(4, -1)
    with pytest.raises(ValueError, match="positive"):
        realize_spec_chi(0, 0)


def test_omega_anchors():
    assert [omega(m) for m in range(1, 9)] == [0, -2, 0, 1, 0, -2, 0, 1]


def test_product_recipe_validates():
    with pytest.raises(ValueError, match="dimensions"):
        ProductRecipe(4, 1, (ProductFactor("X_1", 2, 1),))
    with pytest.raises(ValueError, match="multiply"):
        ProductRecipe(4, 2, (ProductFactor("X_1", 4, 1),))
    text = realize_spec_chi(6, -4).describe()
    assert "X_1" in text and "Sigma_3" in text and "chi = -4" in text

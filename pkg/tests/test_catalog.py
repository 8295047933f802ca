"""Tests for the certified block catalog."""

import random
from fractions import Fraction

import pytest

from fourfold.catalog import (
    SEMI_BUNDLE,
    TORUS_BUNDLE,
    V_ALPHA,
    Block,
    BoundaryPort,
    FormalVolume,
    closed_flat_block,
    dicerbo_stover_block,
    flat_cap_block,
    punctured_sphere_bundle,
    semibundle_trick_block,
    torus_trick_block,
)
from fourfold.meyer import meyer_function
from fourfold.sl2z import B, ID, NEG_ID, S, MatrixZ, semibundle_relator
from fourfold.wall import semibundle_wall_data, wall_correction


def random_matrix(rng, max_len=16):
    m = ID
    for _ in range(rng.randrange(max_len)):
        m = m * rng.choice([S, S.inverse(), B, B.inverse()])
    if rng.random() < 0.25:
        m = -m
    return m


def random_closing_tuple(rng, n):
    """n monodromies whose ordered product (last first) is the identity."""
    ms = [random_matrix(rng) for _ in range(n - 1)]
    prod = ID
    for m in ms:
        prod = m * prod
    ms.append(prod.inverse())
    return tuple(ms)


# ---------------------------------------------------------------- ports

def test_port_validation():
    p = BoundaryPort(TORUS_BUNDLE, B, 1)
    assert p.effective_monodromy == B
    assert p.reverse().sign == -1
    assert p.reverse().effective_monodromy == B.inverse()
    assert p.reverse().reverse() == p
    with pytest.raises(ValueError):
        BoundaryPort("Lens", B, 1)
    with pytest.raises(ValueError):
        BoundaryPort(TORUS_BUNDLE, MatrixZ(-1, 0, 0, 1), 1)
    with pytest.raises(ValueError):
        BoundaryPort(TORUS_BUNDLE, B, 0)


def test_port_str():
    assert str(BoundaryPort(TORUS_BUNDLE, B, 1)) == "T(1,1,0,1)"
    assert str(BoundaryPort(SEMI_BUNDLE, B, -1)) == "-N(1,1,0,1)"


def test_semibundle_port_has_no_effective_monodromy():
    with pytest.raises(ValueError):
        BoundaryPort(SEMI_BUNDLE, B, 1).effective_monodromy


# ---------------------------------------------------------------- volumes

def test_formal_volume_arithmetic():
    zero = FormalVolume.zero()
    one = FormalVolume.of({V_ALPHA: 1})
    assert zero.is_zero and str(zero) == "0"
    assert (zero + one) == one
    assert (one + one) == FormalVolume.of({V_ALPHA: 2})
    assert one.scale(3).coefficient(V_ALPHA) == 3
    assert one.scale(0).is_zero
    assert str(one) == "v_alpha"
    assert str(FormalVolume.of({V_ALPHA: Fraction(3, 2)})) == "3/2*v_alpha"
    mixed = FormalVolume.of({"v_beta": 2, V_ALPHA: 1})
    assert str(mixed) == "v_alpha + 2*v_beta"
    with pytest.raises(ValueError):
        one.scale(-1)
    with pytest.raises(ValueError):
        FormalVolume(((V_ALPHA, Fraction(-1)),))


# ---------------------------------------------------------------- blocks

def test_dicerbo_stover_anchor():
    blk = dicerbo_stover_block()
    assert blk.euler == 1
    assert blk.signature == 1
    assert blk.aspherical
    assert blk.sv == FormalVolume.of({V_ALPHA: 1})
    assert blk.l2_betti == (0, 0, 1, 0, 0)
    assert [str(p) for p in blk.ports] == ["T(1,1,0,1)", "T(1,3,0,1)"]


def test_punctured_sphere_anchor():
    blk = punctured_sphere_bundle([B, B ** 3, B ** -4])
    assert blk.euler == 0
    assert blk.signature == 1
    assert blk.sv.is_zero
    assert blk.l2_betti == (0, 0, 0, 0, 0)
    assert [p.kind for p in blk.ports] == [TORUS_BUNDLE] * 3
    assert [p.monodromy for p in blk.ports] == [B, B ** 3, B ** -4]
    assert all(p.sign == 1 for p in blk.ports)


def test_punctured_sphere_rejects_non_closing():
    with pytest.raises(ValueError, match="do not close up"):
        punctured_sphere_bundle([B, B])
    with pytest.raises(ValueError):
        punctured_sphere_bundle([])


def test_punctured_sphere_signature_is_meyer_sum():
    rng = random.Random(411)
    for _ in range(60):
        ms = random_closing_tuple(rng, rng.randrange(2, 6))
        blk = punctured_sphere_bundle(ms)
        assert blk.signature == sum(meyer_function(m) for m in ms)


def test_punctured_sphere_cyclic_rotation_invariance():
    # rotating the puncture list must stay legal and keep the signature
    rng = random.Random(412)
    for _ in range(100):
        n = rng.randrange(2, 6)
        ms = random_closing_tuple(rng, n)
        base = punctured_sphere_bundle(ms).signature
        k = rng.randrange(n)
        rotated = ms[k:] + ms[:k]
        assert punctured_sphere_bundle(rotated).signature == base


def test_semibundle_trick_anchor():
    for k in range(1, 8):
        blk = semibundle_trick_block(B ** k)
        assert blk.euler == 0
        assert blk.signature == 1
        assert [str(p) for p in blk.ports] == [
            f"-N({(B ** k).compact()})",
            f"N({(B ** k).compact()})",
            f"T({(B ** (2 * k)).compact()})",
        ]


def test_semibundle_trick_ports_and_relator():
    rng = random.Random(413)
    for _ in range(40):
        phi = random_matrix(rng)
        blk = semibundle_trick_block(phi)
        lo, hi, tb = blk.ports
        assert (lo.kind, lo.monodromy, lo.sign) == (SEMI_BUNDLE, phi, -1)
        assert (hi.kind, hi.monodromy, hi.sign) == (SEMI_BUNDLE, phi, 1)
        assert (tb.kind, tb.monodromy, tb.sign) == (
            TORUS_BUNDLE,
            semibundle_relator(phi),
            1,
        )


def test_semibundle_trick_signature_is_minus_wall_correction():
    rng = random.Random(414)
    for _ in range(60):
        phi = random_matrix(rng)
        blk = semibundle_trick_block(phi)
        assert blk.signature == -wall_correction(semibundle_wall_data(phi))


def test_torus_trick_block():
    phi, psi = B, S
    blk = torus_trick_block(phi, psi)
    assert blk.euler == 0
    assert blk.signature is None
    assert blk.l2_betti == (0, 0, 0, 0, 0)
    a, b, c = blk.ports
    assert (a.kind, a.monodromy, a.sign) == (SEMI_BUNDLE, phi, -1)
    assert (b.kind, b.monodromy, b.sign) == (TORUS_BUNDLE, psi.inverse(), 1)
    assert (c.kind, c.monodromy, c.sign) == (SEMI_BUNDLE, psi * phi, 1)


def test_flat_blocks():
    cap = flat_cap_block()
    assert (cap.euler, cap.signature) == (0, 0)
    assert [str(p) for p in cap.ports] == ["T(-1,0,0,-1)"]
    assert cap.ports[0].monodromy == NEG_ID
    closed = closed_flat_block()
    assert closed.is_closed
    assert (closed.euler, closed.signature) == (0, 0)
    assert closed.sv.is_zero
    assert closed.l2_betti == (0, 0, 0, 0, 0)


def test_closed_block_alternating_sum_guard():
    # a closed block whose l2 numbers disagree with euler must be rejected
    with pytest.raises(ValueError):
        Block(
            kind="closed_flat",
            params=(),
            euler=1,
            signature=0,
            ports=(),
            sv=FormalVolume.zero(),
            l2_betti=(Fraction(0),) * 5,
        )


def test_describe_mentions_unknown():
    assert "Unknown" in torus_trick_block(B, S).describe()
    assert "signature 1" in dicerbo_stover_block().describe()

"""Certified building blocks for assembling aspherical 4-manifolds.

Each constructor returns an immutable Block whose invariants (Euler
characteristic, signature, L2-Betti numbers, formal simplicial volume) are
certified: either fixed constants carried by the block, or computed on the
spot by the meyer/wall modules.  Boundary components are BoundaryPorts, each
a torus bundle T(monodromy) or a torus semi-bundle N(monodromy) with an
orientation sign.

A signature of None means the value is genuinely unknown, not zero; the
assembly layer propagates that honestly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .meyer import fiber_sum_signature
from .sl2z import B, MatrixZ, NEG_ID, semibundle_relator
from .wall import semibundle_trick_signature

TORUS_BUNDLE = "TorusBundle"
SEMI_BUNDLE = "SemiBundle"

V_ALPHA = "v_alpha"

L2_ACYCLIC = (Fraction(0),) * 5


@dataclass(frozen=True)
class BoundaryPort:
    """One boundary component: a torus bundle or semi-bundle with a sign.

    Sign -1 denotes the orientation reversal of the sign +1 manifold.  For
    torus bundles (-1, phi) names the same oriented manifold as (+1, phi^-1).
    """

    kind: str
    monodromy: MatrixZ
    sign: int = 1

    def __post_init__(self) -> None:
        if self.kind not in (TORUS_BUNDLE, SEMI_BUNDLE):
            raise ValueError(f"unknown port kind {self.kind!r}")
        if self.monodromy.det != 1:
            raise ValueError("not in SL2(Z): determinant is -1")
        if self.sign not in (1, -1):
            raise ValueError("port sign must be +1 or -1")

    def reverse(self) -> "BoundaryPort":
        return BoundaryPort(self.kind, self.monodromy, -self.sign)

    @property
    def effective_monodromy(self) -> MatrixZ:
        """Monodromy after folding the sign in (torus bundles only)."""
        if self.kind != TORUS_BUNDLE:
            raise ValueError("effective monodromy is defined for torus bundle ports")
        return self.monodromy if self.sign > 0 else self.monodromy.inverse()

    def __str__(self) -> str:
        letter = "T" if self.kind == TORUS_BUNDLE else "N"
        prefix = "" if self.sign > 0 else "-"
        return f"{prefix}{letter}({self.monodromy.compact()})"


@dataclass(frozen=True)
class FormalVolume:
    """Formal non-negative rational combination of named volume atoms.

    The empty combination is zero.  Atoms stand for simplicial volumes that
    are certified positive but carry no known numeric value.
    """

    atoms: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self) -> None:
        for name, coeff in self.atoms:
            if coeff <= 0:
                raise ValueError(f"atom {name!r} must carry a positive coefficient")
        names = [name for name, _ in self.atoms]
        if names != sorted(set(names)):
            raise ValueError("atoms must be sorted and distinct")

    @classmethod
    def zero(cls) -> "FormalVolume":
        return cls(())

    @classmethod
    def of(cls, coefficients: dict) -> "FormalVolume":
        items = sorted((k, Fraction(v)) for k, v in coefficients.items() if Fraction(v) != 0)
        return cls(tuple(items))

    @property
    def is_zero(self) -> bool:
        return not self.atoms

    def coefficient(self, atom: str) -> Fraction:
        return dict(self.atoms).get(atom, Fraction(0))

    def __add__(self, other: "FormalVolume") -> "FormalVolume":
        total = dict(self.atoms)
        for name, coeff in other.atoms:
            total[name] = total.get(name, Fraction(0)) + coeff
        return FormalVolume.of(total)

    def scale(self, factor) -> "FormalVolume":
        factor = Fraction(factor)
        if factor == 0:
            return FormalVolume.zero()
        if factor < 0:
            raise ValueError("volume coefficients stay non-negative")
        return FormalVolume.of({name: coeff * factor for name, coeff in self.atoms})

    def __str__(self) -> str:
        if not self.atoms:
            return "0"
        return " + ".join(
            name if coeff == 1 else f"{coeff}*{name}" for name, coeff in self.atoms
        )


@dataclass(frozen=True)
class Block:
    """A certified 4-manifold piece with an ordered list of boundary ports.

    kind/params/reversed record how to rebuild the block, which is what the
    assembly file format serializes; the invariant fields are certified at
    construction and never recomputed downstream.
    """

    kind: str
    params: tuple
    euler: int
    signature: Optional[int]
    ports: tuple[BoundaryPort, ...]
    sv: FormalVolume
    l2_betti: Optional[tuple[Fraction, ...]]
    aspherical: bool = True
    reversed: bool = False

    def __post_init__(self) -> None:
        if self.l2_betti is not None:
            if len(self.l2_betti) != 5:
                raise ValueError("l2_betti must have 5 entries")
            if any(x < 0 for x in self.l2_betti):
                raise ValueError("l2_betti entries are non-negative")
            if not self.ports:
                alternating = sum((-1) ** i * x for i, x in enumerate(self.l2_betti))
                if alternating != self.euler:
                    raise ValueError("closed block violates the alternating-sum identity")

    @property
    def is_closed(self) -> bool:
        return not self.ports

    def describe(self) -> str:
        tag = self.kind + (" (reversed)" if self.reversed else "")
        sig = "Unknown" if self.signature is None else str(self.signature)
        ports = ", ".join(str(p) for p in self.ports) or "none"
        return f"{tag}: euler {self.euler}, signature {sig}, ports [{ports}]"


def dicerbo_stover_block() -> Block:
    """The hyperbolic-geometry block: euler 1, signature 1, boundary
    T(B) and T(B^3), one unit of the v_alpha volume atom, L2-homology
    concentrated in middle degree."""
    return Block(
        kind="dicerbo_stover",
        params=(),
        euler=1,
        signature=1,
        ports=(
            BoundaryPort(TORUS_BUNDLE, B, 1),
            BoundaryPort(TORUS_BUNDLE, B ** 3, 1),
        ),
        sv=FormalVolume.of({V_ALPHA: 1}),
        l2_betti=(Fraction(0), Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
    )


def punctured_sphere_bundle(monodromies: Sequence[MatrixZ]) -> Block:
    """Torus bundle over a punctured sphere; one port per puncture.

    The ordered product of the monodromies (last applied first) must be the
    identity, and the signature is the Meyer sum over the list.
    """
    monodromies = tuple(monodromies)
    if not monodromies:
        raise ValueError("a punctured sphere bundle needs at least one puncture")
    signature = fiber_sum_signature(monodromies)  # also validates the product
    return Block(
        kind="punctured_sphere",
        params=tuple(m.as_tuple() for m in monodromies),
        euler=0,
        signature=signature,
        ports=tuple(BoundaryPort(TORUS_BUNDLE, m, 1) for m in monodromies),
        sv=FormalVolume.zero(),
        l2_betti=L2_ACYCLIC,
    )


def semibundle_trick_block(phi: MatrixZ) -> Block:
    """Product of a semi-bundle with an interval, reglued: boundary
    -N(phi), N(phi), and the torus bundle of the double twist
    phi tau phi^-1 tau; signature comes from the wall module."""
    if phi.det != 1:
        raise ValueError("not in SL2(Z): determinant is -1")
    return Block(
        kind="semibundle_trick",
        params=(phi.as_tuple(),),
        euler=0,
        signature=semibundle_trick_signature(phi),
        ports=(
            BoundaryPort(SEMI_BUNDLE, phi, -1),
            BoundaryPort(SEMI_BUNDLE, phi, 1),
            BoundaryPort(TORUS_BUNDLE, semibundle_relator(phi), 1),
        ),
        sv=FormalVolume.zero(),
        l2_betti=L2_ACYCLIC,
    )


def torus_trick_block(phi: MatrixZ, psi: MatrixZ) -> Block:
    """Interpolating piece between semi-bundles: boundary -N(phi),
    T(psi^-1), N(psi phi).  Its signature is unknown; it propagates as
    None rather than a guessed zero."""
    if phi.det != 1 or psi.det != 1:
        raise ValueError("not in SL2(Z): determinant is -1")
    return Block(
        kind="torus_trick",
        params=(phi.as_tuple(), psi.as_tuple()),
        euler=0,
        signature=None,
        ports=(
            BoundaryPort(SEMI_BUNDLE, phi, -1),
            BoundaryPort(TORUS_BUNDLE, psi.inverse(), 1),
            BoundaryPort(SEMI_BUNDLE, psi * phi, 1),
        ),
        sv=FormalVolume.zero(),
        l2_betti=L2_ACYCLIC,
    )


def flat_cap_block() -> Block:
    """Twisted interval bundle filling T(-id): euler 0 and signature 0.

    The signature vanishes because the block deformation retracts onto a
    3-dimensional spine, so its intersection pairing is identically zero.
    """
    return Block(
        kind="flat_cap",
        params=(),
        euler=0,
        signature=0,
        ports=(BoundaryPort(TORUS_BUNDLE, NEG_ID, 1),),
        sv=FormalVolume.zero(),
        l2_betti=L2_ACYCLIC,
    )


def closed_flat_block() -> Block:
    """The 4-torus: closed, flat, all invariants zero."""
    return Block(
        kind="closed_flat",
        params=(),
        euler=0,
        signature=0,
        ports=(),
        sv=FormalVolume.zero(),
        l2_betti=L2_ACYCLIC,
    )


BLOCK_KINDS = (
    "dicerbo_stover",
    "punctured_sphere",
    "semibundle_trick",
    "torus_trick",
    "flat_cap",
    "closed_flat",
)

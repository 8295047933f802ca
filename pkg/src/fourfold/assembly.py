"""Gluing catalog blocks along matching boundary ports.

An Assembly is an immutable multiset of blocks plus a set of gluings, each
gluing identifying two distinct free ports whose boundary manifolds match:
torus bundle ports glue when their effective monodromies are inverse up to
conjugacy (the conjugating witness is kept), semi-bundle ports glue when
they carry the same monodromy with opposite signs.  The single cross-kind
identification N(id) = T(-id) is honoured.

Invariants of an assembly are additive over blocks; a None signature
anywhere poisons the sum and is reported with its source rather than
silently treated as zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from .catalog import (
    SEMI_BUNDLE,
    TORUS_BUNDLE,
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
from .errors import GluingError
from .sl2z import ID, NEG_ID, MatrixZ, are_conjugate

PortRef = tuple[int, int]


@dataclass(frozen=True)
class PortMatch:
    """Verdict on whether two ports bound diffeomorphic pieces, with the
    conjugating witness for torus bundle matches."""

    compatible: bool
    reason: str
    witness: Optional[MatrixZ] = None

    def __bool__(self) -> bool:
        return self.compatible


def _as_torus_port(p: BoundaryPort) -> BoundaryPort:
    # N(id) is the twisted interval bundle boundary, the same 3-manifold
    # as T(-id); fold that identification in before comparing kinds.
    if p.kind == SEMI_BUNDLE and p.monodromy == ID:
        return BoundaryPort(TORUS_BUNDLE, NEG_ID, p.sign)
    return p


def port_compatible(p: BoundaryPort, q: BoundaryPort) -> PortMatch:
    """Decide whether port q can be glued to port p.

    For torus bundles the witness g satisfies g eff(p)^-1 g^-1 = eff(q),
    where eff folds the port sign into the monodromy.
    """
    a, b = p, q
    if a.kind != b.kind:
        a, b = _as_torus_port(a), _as_torus_port(b)
        if a.kind != b.kind:
            return PortMatch(False, f"kind mismatch: {p} vs {q}")
    if a.kind == SEMI_BUNDLE:
        if a.monodromy != b.monodromy:
            return PortMatch(
                False, f"semi-bundle monodromies differ: {p} vs {q}"
            )
        if a.sign == b.sign:
            return PortMatch(
                False, f"semi-bundle ports need opposite signs: {p} vs {q}"
            )
        return PortMatch(True, "semi-bundle halves with opposite signs")
    res = are_conjugate(a.effective_monodromy.inverse(), b.effective_monodromy)
    if res.conjugate:
        return PortMatch(
            True, "torus bundle monodromies inverse up to conjugacy", res.witness
        )
    return PortMatch(
        False, f"torus bundle monodromies are not inverse up to conjugacy: {p} vs {q}"
    )


@dataclass(frozen=True)
class Assembly:
    """Blocks plus normalized, validated gluings.  Construction revalidates
    everything, so a deserialized assembly is as trustworthy as a built one."""

    blocks: tuple[Block, ...]
    gluings: tuple[tuple[PortRef, PortRef], ...] = ()

    def __post_init__(self) -> None:
        normalized = []
        used: set[PortRef] = set()
        for pair in self.gluings:
            a, b = (tuple(pair[0]), tuple(pair[1]))
            if b < a:
                a, b = b, a
            for end in (a, b):
                self._port_at(end)
                if end in used:
                    raise GluingError(
                        f"port already glued: block {end[0]} port {end[1]}"
                    )
                used.add(end)
            match = port_compatible(self._port_at(a), self._port_at(b))
            if not match:
                raise GluingError(
                    f"cannot glue block {a[0]} port {a[1]} to "
                    f"block {b[0]} port {b[1]}: {match.reason}"
                )
            normalized.append((a, b))
        normalized.sort()
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "gluings", tuple(normalized))

    @classmethod
    def of_blocks(cls, blocks: Sequence[Block]) -> "Assembly":
        return cls(tuple(blocks))

    def _port_at(self, ref: PortRef) -> BoundaryPort:
        i, j = ref
        if not 0 <= i < len(self.blocks):
            raise GluingError(f"no block with index {i}")
        ports = self.blocks[i].ports
        if not 0 <= j < len(ports):
            raise GluingError(
                f"block {i} ({self.blocks[i].kind}) has no port {j}"
            )
        return ports[j]

    def port(self, block_index: int, port_index: int) -> BoundaryPort:
        return self._port_at((block_index, port_index))

    def glue(self, end_a: PortRef, end_b: PortRef) -> "Assembly":
        """New assembly with one more gluing; raises GluingError on any
        reuse, bad reference, or port mismatch."""
        a, b = tuple(end_a), tuple(end_b)
        if a == b:
            raise GluingError("cannot glue a port to itself")
        return Assembly(self.blocks, self.gluings + ((a, b),))

    def disjoint_union(self, other: "Assembly") -> "Assembly":
        offset = len(self.blocks)
        shifted = tuple(
            ((a[0] + offset, a[1]), (b[0] + offset, b[1]))
            for a, b in other.gluings
        )
        return Assembly(self.blocks + other.blocks, self.gluings + shifted)

    def free_ports(self) -> tuple[tuple[PortRef, BoundaryPort], ...]:
        used = {end for pair in self.gluings for end in pair}
        return tuple(
            ((i, j), port)
            for i, blk in enumerate(self.blocks)
            for j, port in enumerate(blk.ports)
            if (i, j) not in used
        )

    def orientation_reverse(self) -> "Assembly":
        return Assembly(
            tuple(orientation_reverse(b) for b in self.blocks), self.gluings
        )


def orientation_reverse(block: Block) -> Block:
    """Same block with the opposite orientation: signature negates, every
    port sign flips, euler/volume/L2 data are orientation-blind."""
    return Block(
        kind=block.kind,
        params=block.params,
        euler=block.euler,
        signature=None if block.signature is None else -block.signature,
        ports=tuple(p.reverse() for p in block.ports),
        sv=block.sv,
        l2_betti=block.l2_betti,
        aspherical=block.aspherical,
        reversed=not block.reversed,
    )


# ---------------------------------------------------------------- invariants


@dataclass(frozen=True)
class InvariantReport:
    euler: int
    signature: Optional[int]
    closed: bool
    aspherical: bool
    sv: FormalVolume
    l2_betti: Optional[tuple[Fraction, ...]]
    residual_boundary: tuple[BoundaryPort, ...]
    unknown_sources: tuple[str, ...]

    def to_text(self) -> str:
        if self.signature is None:
            sig = "Unknown (" + "; ".join(self.unknown_sources) + ")"
        else:
            sig = str(self.signature)
        if self.l2_betti is None:
            l2 = "Unknown"
        else:
            l2 = "(" + ", ".join(str(x) for x in self.l2_betti) + ")"
        residual = (
            ", ".join(str(p) for p in self.residual_boundary) or "none"
        )
        return "\n".join(
            [
                f"euler characteristic: {self.euler}",
                f"signature: {sig}",
                f"closed: {'yes' if self.closed else 'no'}",
                f"aspherical: {'yes' if self.aspherical else 'no'}",
                f"simplicial volume: {self.sv}",
                f"L2-Betti numbers: {l2}",
                f"residual boundary: {residual}",
            ]
        )

    def to_json_dict(self) -> dict:
        return {
            "euler": self.euler,
            "signature": self.signature,
            "closed": self.closed,
            "aspherical": self.aspherical,
            "simplicial_volume": {
                name: str(coeff) for name, coeff in self.sv.atoms
            },
            "l2_betti": None
            if self.l2_betti is None
            else [str(x) for x in self.l2_betti],
            "residual_boundary": [
                _port_to_json(p) for p in self.residual_boundary
            ],
            "unknown_sources": list(self.unknown_sources),
        }


def compute_invariants(assembly: Assembly) -> InvariantReport:
    """Additive invariants of the glued manifold, with honest Unknowns."""
    euler = sum(b.euler for b in assembly.blocks)
    unknown = []
    signature: Optional[int] = 0
    for i, blk in enumerate(assembly.blocks):
        if blk.signature is None:
            unknown.append(f"block {i} ({blk.kind}): signature unknown")
            signature = None
        elif signature is not None:
            signature += blk.signature
    sv = FormalVolume.zero()
    for blk in assembly.blocks:
        sv = sv + blk.sv
    l2: Optional[tuple[Fraction, ...]] = (Fraction(0),) * 5
    for i, blk in enumerate(assembly.blocks):
        if blk.l2_betti is None:
            unknown.append(f"block {i} ({blk.kind}): L2-Betti numbers unknown")
            l2 = None
        elif l2 is not None:
            l2 = tuple(a + b for a, b in zip(l2, blk.l2_betti))
    residual = tuple(port for _, port in assembly.free_ports())
    return InvariantReport(
        euler=euler,
        signature=signature,
        closed=not residual,
        aspherical=all(b.aspherical for b in assembly.blocks),
        sv=sv,
        l2_betti=l2,
        residual_boundary=residual,
        unknown_sources=tuple(unknown),
    )


# ---------------------------------------------------------------- file format


_CONSTRUCTORS = {
    "dicerbo_stover": lambda p: dicerbo_stover_block(),
    "punctured_sphere": lambda p: punctured_sphere_bundle(
        [MatrixZ.parse(s) for s in p["monodromies"]]
    ),
    "semibundle_trick": lambda p: semibundle_trick_block(MatrixZ.parse(p["phi"])),
    "torus_trick": lambda p: torus_trick_block(
        MatrixZ.parse(p["phi"]), MatrixZ.parse(p["psi"])
    ),
    "flat_cap": lambda p: flat_cap_block(),
    "closed_flat": lambda p: closed_flat_block(),
}


def _quad_str(quad: tuple) -> str:
    return ",".join(str(x) for x in quad)


def _params_to_json(block: Block) -> dict:
    if block.kind == "punctured_sphere":
        return {"monodromies": [_quad_str(q) for q in block.params]}
    if block.kind == "semibundle_trick":
        return {"phi": _quad_str(block.params[0])}
    if block.kind == "torus_trick":
        return {
            "phi": _quad_str(block.params[0]),
            "psi": _quad_str(block.params[1]),
        }
    return {}


def _port_to_json(p: BoundaryPort) -> dict:
    return {
        "kind": p.kind,
        "monodromy": _quad_str(p.monodromy.as_tuple()),
        "sign": p.sign,
    }


def assembly_to_json_dict(assembly: Assembly) -> dict:
    blocks = [
        {
            "id": f"b{i}",
            "kind": blk.kind,
            "params": _params_to_json(blk),
            "reversed": blk.reversed,
        }
        for i, blk in enumerate(assembly.blocks)
    ]
    gluings = [
        {"a": [f"b{i}", p], "b": [f"b{j}", q]}
        for (i, p), (j, q) in assembly.gluings
    ]
    return {"blocks": blocks, "gluings": gluings}


def assembly_from_json_dict(data: dict) -> Assembly:
    """Rebuild through the catalog constructors, so every certified value
    is recomputed and every gluing revalidated; nothing is trusted."""
    positions: dict[str, int] = {}
    blocks: list[Block] = []
    for entry in data["blocks"]:
        bid = entry["id"]
        if bid in positions:
            raise ValueError(f"duplicate block id {bid!r}")
        kind = entry["kind"]
        if kind not in _CONSTRUCTORS:
            raise ValueError(f"unknown block kind {kind!r}")
        blk = _CONSTRUCTORS[kind](entry.get("params", {}))
        if entry.get("reversed", False):
            blk = orientation_reverse(blk)
        positions[bid] = len(blocks)
        blocks.append(blk)
    assembly = Assembly(tuple(blocks))
    for g in data.get("gluings", ()):
        (aid, ap), (bid, bp) = g["a"], g["b"]
        for name in (aid, bid):
            if name not in positions:
                raise ValueError(f"gluing references unknown block id {name!r}")
        assembly = assembly.glue((positions[aid], ap), (positions[bid], bp))
    return assembly


def save_assembly(assembly: Assembly, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(assembly_to_json_dict(assembly), fh, indent=2)
        fh.write("\n")


def load_assembly(path: str) -> Assembly:
    with open(path, "r", encoding="utf-8") as fh:
        return assembly_from_json_dict(json.load(fh))


# ---------------------------------------------------------------- chi realization


@dataclass(frozen=True)
class ProductFactor:
    label: str
    dimension: int
    euler: int


@dataclass(frozen=True)
class ProductRecipe:
    """Symbolic product of closed aspherical factors realizing a prescribed
    (dimension, Euler characteristic) pair."""

    dimension: int
    euler: int
    factors: tuple[ProductFactor, ...]

    def __post_init__(self) -> None:
        if sum(f.dimension for f in self.factors) != self.dimension:
            raise ValueError("factor dimensions do not add up")
        if prod(f.euler for f in self.factors) != self.euler:
            raise ValueError("factor Euler characteristics do not multiply up")

    def describe(self) -> str:
        terms = " x ".join(
            f"{f.label} (dim {f.dimension}, chi {f.euler})" for f in self.factors
        )
        return f"chi = {self.euler} in dimension {self.dimension}: {terms}"

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "euler": self.euler,
            "factors": [
                {"label": f.label, "dimension": f.dimension, "euler": f.euler}
                for f in self.factors
            ],
        }


def omega(m: int) -> int:
    """Step of the realizable Euler characteristics in dimension m: the
    closed aspherical products built here realize exactly omega(m) * k for
    k = 0, 1, 2, ...  (1 when 4 | m, -2 when m = 2 mod 4, 0 when m is odd)."""
    if m < 1:
        raise ValueError("dimension must be positive")
    if m % 2 == 1:
        return 0
    return 1 if m % 4 == 0 else -2


def realize_spec_chi(m: int, n: int) -> ProductRecipe:
    """Product of closed aspherical manifolds of total dimension m with
    Euler characteristic exactly n, or ValueError naming the obstruction."""
    w = omega(m)
    if w == 0:
        if n != 0:
            raise ValueError(
                f"every closed odd-dimensional manifold has Euler characteristic 0,"
                f" so chi = {n} is impossible in dimension {m}"
            )
        return ProductRecipe(m, 0, (ProductFactor(f"T^{m}", m, 0),))
    if w == 1:
        if n < 0:
            raise ValueError(
                f"in dimension {m} these products only realize chi >= 0;"
                f" chi = {n} is out of reach"
            )
        factors = tuple(
            ProductFactor("X_1", 4, 1) for _ in range(m // 4 - 1)
        ) + (ProductFactor(f"X_{n}", 4, n),)
        return ProductRecipe(m, n, factors)
    if n > 0 or n % 2 != 0:
        raise ValueError(
            f"in dimension {m} these products realize exactly the"
            f" non-positive even Euler characteristics; chi = {n} is rejected"
        )
    g = (2 - n) // 2
    factors = tuple(
        ProductFactor("X_1", 4, 1) for _ in range((m - 2) // 4)
    ) + (ProductFactor(f"Sigma_{g}", 2, n),)
    return ProductRecipe(m, n, factors)

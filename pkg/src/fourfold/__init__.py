"""Exact calculator for compact oriented aspherical 4-manifolds glued from
torus bundle pieces: SL2(Z) word and conjugacy machinery, Meyer signature
values, Wall correction terms, a catalog of certified building blocks, and
recipes that assemble closed manifolds with euler = signature = n.

All arithmetic is exact (integers and fractions); nothing is floating point.
"""

from .assembly import (
    Assembly,
    InvariantReport,
    PortMatch,
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
from .catalog import (
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
from .errors import ConsistencyError, GluingError
from .meyer import (
    dedekind_sum,
    fiber_sum_signature,
    meyer_cocycle,
    meyer_function,
    rademacher_phi,
)
from .recipes import (
    CONSTRUCTED,
    UNKNOWN_OPEN,
    FillingOutcome,
    commutator_filling,
    recipe_fill_semibundle,
    recipe_fill_torus_bundle,
    recipe_virtual_filling,
    recipe_xn,
    verify_paper,
)
from .sl2z import (
    B,
    ID,
    NEG_ID,
    S,
    T,
    TAU,
    U_BASIS,
    V_BASIS,
    W,
    AbelianClass,
    CommutatorCertificate,
    ConjugacyResult,
    GeneratorWord,
    MatrixZ,
    abelianization_class,
    are_conjugate,
    commutator,
    commutator_decomposition,
    is_in_derived_subgroup,
    matrix_to_word,
    semibundle_relator,
    word_to_matrix,
)
from .verify import CriterionResult, run_criteria
from .wall import (
    INTERSECTION_FORM,
    QSubspace,
    SymplecticForm,
    WallTriple,
    kernel_subspace,
    semibundle_trick_signature,
    semibundle_wall_data,
    symmetric_signature,
    symplectic_pairing,
    wall_correction,
    wall_correction_form,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianClass",
    "Assembly",
    "B",
    "Block",
    "BoundaryPort",
    "CONSTRUCTED",
    "CommutatorCertificate",
    "ConjugacyResult",
    "ConsistencyError",
    "CriterionResult",
    "FillingOutcome",
    "FormalVolume",
    "GeneratorWord",
    "GluingError",
    "ID",
    "INTERSECTION_FORM",
    "InvariantReport",
    "MatrixZ",
    "NEG_ID",
    "PortMatch",
    "ProductFactor",
    "ProductRecipe",
    "QSubspace",
    "S",
    "SEMI_BUNDLE",
    "SymplecticForm",
    "T",
    "TAU",
    "TORUS_BUNDLE",
    "UNKNOWN_OPEN",
    "U_BASIS",
    "V_ALPHA",
    "V_BASIS",
    "W",
    "WallTriple",
    "abelianization_class",
    "are_conjugate",
    "assembly_from_json_dict",
    "assembly_to_json_dict",
    "closed_flat_block",
    "commutator",
    "commutator_decomposition",
    "commutator_filling",
    "compute_invariants",
    "dedekind_sum",
    "dicerbo_stover_block",
    "fiber_sum_signature",
    "flat_cap_block",
    "is_in_derived_subgroup",
    "kernel_subspace",
    "load_assembly",
    "matrix_to_word",
    "meyer_cocycle",
    "meyer_function",
    "omega",
    "orientation_reverse",
    "port_compatible",
    "punctured_sphere_bundle",
    "rademacher_phi",
    "realize_spec_chi",
    "recipe_fill_semibundle",
    "recipe_fill_torus_bundle",
    "recipe_virtual_filling",
    "recipe_xn",
    "run_criteria",
    "save_assembly",
    "semibundle_relator",
    "semibundle_trick_block",
    "semibundle_trick_signature",
    "semibundle_wall_data",
    "symmetric_signature",
    "symplectic_pairing",
    "torus_trick_block",
    "verify_paper",
    "wall_correction",
    "wall_correction_form",
    "word_to_matrix",
]

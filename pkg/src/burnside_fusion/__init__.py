"""Burnside rings of saturated fusion systems.

The irreducible F-stable basis {alpha_P} of A(F), computed both by exact
inversion of modified Möbius matrices and by alternating sums over broken
chains, plus the minimal characteristic biset of F.
"""
from .group import (
    Embedding,
    GroupTable,
    ResourceCapError,
    Subgroup,
    build_group,
    conjugate_subgroup,
    direct_product,
    is_sylow,
    normalizer,
    subgroup_closure,
    transporter_count,
)
from .lattice import (
    SubgroupLattice,
    count_chains,
    enumerate_subgroups,
    incidence_matrix,
    is_elab_extension,
    mobius_matrix,
)
from .burnside import (
    BurnsideElement,
    MarkVector,
    ObstructionVector,
    mark_matrix,
    mob_matrix,
    modified_mu_S,
    modified_zeta_S,
    multiply,
    psi,
    to_marks,
    to_orbits,
)
from .fusion import (
    AlphaDiagnostic,
    FMatrices,
    FusionError,
    FusionSystem,
    alpha,
    f_matrices,
    fusion_from_ambient,
    fusion_from_partition,
    is_f_stable,
    trivial_fusion,
)
from .chains import (
    BrokenChain,
    CancellationError,
    SparkleClass,
    coeff_via_chains,
    enumerate_broken,
    enumerate_tethered,
    fixed_via_tethered,
    sparkle_class,
    verify_cancellation,
)
from .bisets import (
    CharacteristicBiset,
    DiagonalPoset,
    TwistedDiagonal,
    UnsupportedModeError,
    build_diagonal_poset,
    check_op_containment,
    enumerate_morphisms,
    minimal_biset,
    op_subgroup,
    verify_characteristic,
)

__version__ = "0.1.0"

__all__ = [
    "Embedding",
    "GroupTable",
    "ResourceCapError",
    "Subgroup",
    "build_group",
    "conjugate_subgroup",
    "direct_product",
    "is_sylow",
    "normalizer",
    "subgroup_closure",
    "transporter_count",
    "SubgroupLattice",
    "count_chains",
    "enumerate_subgroups",
    "incidence_matrix",
    "is_elab_extension",
    "mobius_matrix",
    "BurnsideElement",
    "MarkVector",
    "ObstructionVector",
    "mark_matrix",
    "mob_matrix",
    "modified_mu_S",
    "modified_zeta_S",
    "multiply",
    "psi",
    "to_marks",
    "to_orbits",
    "AlphaDiagnostic",
    "FMatrices",
    "FusionError",
    "FusionSystem",
    "alpha",
    "f_matrices",
    "fusion_from_ambient",
    "fusion_from_partition",
    "is_f_stable",
    "trivial_fusion",
    "BrokenChain",
    "CancellationError",
    "SparkleClass",
    "coeff_via_chains",
    "enumerate_broken",
    "enumerate_tethered",
    "fixed_via_tethered",
    "sparkle_class",
    "verify_cancellation",
    "CharacteristicBiset",
    "DiagonalPoset",
    "TwistedDiagonal",
    "UnsupportedModeError",
    "build_diagonal_poset",
    "check_op_containment",
    "enumerate_morphisms",
    "minimal_biset",
    "op_subgroup",
    "verify_characteristic",
]

"""Dioid partitions of finite groups: axiom checking, structure constants,
constructions, and the classification of 3-part d-partitions of Z_p."""

from .errors import (
    AxiomError,
    BudgetExceeded,
    DioidPartitionError,
    GroupError,
    NotASubgroup,
    NotNormal,
    NotSPartition,
    PartitionError,
    PreconditionError,
    TheoremViolation,
)
from .groups import (
    Automorphism,
    ElementSet,
    FiniteGroup,
    Partition,
    QuotientMap,
    build_group,
    conjugacy_partition,
    cyclic,
    dihedral,
    double_coset_partition,
    quotient_group,
    set_inverse,
    setwise_product,
    symmetric,
    units_automorphisms,
)
from .partitions import (
    AxiomReport,
    DPartition,
    as_d_partition,
    check_closure,
    check_intersection_property,
    check_inverse_property,
    enumerate_d_partitions,
    find_identity_part,
    is_d_partition,
    is_s_partition,
    small_part_forcing,
    validate_partition,
)
from .constructions import (
    GroupAction,
    coarsen_identity,
    complement_coarsen,
    double_coset_coarsen,
    lift_from_quotient,
    orbit_coarsen,
    refine_identity,
    split_at_subgroup,
    supplement_partition,
)
from .schur import (
    StructureConstants,
    are_isomorphic,
    dfield_search,
    schur_ring_constants,
    sd_correspondence,
    structure_constants,
    verify_dioid_axioms,
)

from .zp import (
    AdditiveSet,
    Tag,
    classification_census,
    classify_3part,
    enumerate_3part,
    gordon_census,
    pi_multiplicative,
)

__version__ = "0.1.0"

__all__ = [
    "AdditiveSet",
    "Automorphism",
    "AxiomError",
    "AxiomReport",
    "BudgetExceeded",
    "DPartition",
    "DioidPartitionError",
    "ElementSet",
    "FiniteGroup",
    "GroupAction",
    "GroupError",
    "NotASubgroup",
    "NotNormal",
    "NotSPartition",
    "Partition",
    "PartitionError",
    "PreconditionError",
    "QuotientMap",
    "StructureConstants",
    "Tag",
    "TheoremViolation",
    "are_isomorphic",
    "as_d_partition",
    "build_group",
    "check_closure",
    "check_intersection_property",
    "check_inverse_property",
    "classification_census",
    "classify_3part",
    "coarsen_identity",
    "complement_coarsen",
    "conjugacy_partition",
    "cyclic",
    "dfield_search",
    "dihedral",
    "double_coset_coarsen",
    "double_coset_partition",
    "enumerate_3part",
    "enumerate_d_partitions",
    "find_identity_part",
    "gordon_census",
    "is_d_partition",
    "is_s_partition",
    "lift_from_quotient",
    "orbit_coarsen",
    "pi_multiplicative",
    "quotient_group",
    "refine_identity",
    "schur_ring_constants",
    "sd_correspondence",
    "set_inverse",
    "setwise_product",
    "small_part_forcing",
    "split_at_subgroup",
    "structure_constants",
    "supplement_partition",
    "symmetric",
    "units_automorphisms",
    "validate_partition",
    "verify_dioid_axioms",
]

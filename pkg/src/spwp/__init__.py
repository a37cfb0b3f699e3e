"""Exact-arithmetic workbench for mutation of skew-symmetrizable matrices,
weighted quivers and species with potentials over finite-field towers."""

from .algebra import (
    DEFAULT_TRUNCATION,
    AlgebraElement,
    Path,
    Species,
    Substitution,
    apply_substitution,
    canonical_cyclic_form,
    cyclic_derivative,
    enumerate_paths,
    jacobian_quotient_dim,
    module_act,
)
from .basefield import BaseField, Scalar, base_field
from .mutation import (
    ReductionReport,
    SequenceCheck,
    SpeciesWithPotential,
    StepReport,
    is_nondegenerate_along,
    mutate_sp,
    mutate_step,
    premutate_sp,
    reduce_sp,
)
from .quiver import (
    Arrow,
    ExchangeMatrix,
    WeightedQuiver,
    composite_arrow_id,
    matrix_to_quiver,
    mutate_matrix,
    mutate_quiver,
    premutate_quiver,
    quiver_to_matrix,
    random_exchange_matrix,
    remove_2cycles,
    star_arrow_id,
)
from .search import (
    SearchResult,
    compatibility_report,
    default_max_cycle_length,
    enumerate_cycles,
    longest_chordless_cycle_length,
    random_potential,
    replay_candidate,
    search_nondegenerate,
)
from .tower import FieldTower, TowerElement, build_tower, extend_scalars

__all__ = [
    "BaseField",
    "Scalar",
    "base_field",
    "FieldTower",
    "TowerElement",
    "build_tower",
    "extend_scalars",
    "Arrow",
    "ExchangeMatrix",
    "WeightedQuiver",
    "composite_arrow_id",
    "star_arrow_id",
    "matrix_to_quiver",
    "quiver_to_matrix",
    "mutate_matrix",
    "mutate_quiver",
    "premutate_quiver",
    "remove_2cycles",
    "random_exchange_matrix",
    "DEFAULT_TRUNCATION",
    "AlgebraElement",
    "Path",
    "Species",
    "Substitution",
    "apply_substitution",
    "canonical_cyclic_form",
    "cyclic_derivative",
    "enumerate_paths",
    "jacobian_quotient_dim",
    "module_act",
    "SpeciesWithPotential",
    "ReductionReport",
    "StepReport",
    "SequenceCheck",
    "premutate_sp",
    "reduce_sp",
    "mutate_sp",
    "mutate_step",
    "is_nondegenerate_along",
    "SearchResult",
    "enumerate_cycles",
    "longest_chordless_cycle_length",
    "default_max_cycle_length",
    "random_potential",
    "replay_candidate",
    "search_nondegenerate",
    "compatibility_report",
]

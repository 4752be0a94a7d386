"""Finite H_v-modules and interval-valued intuitionistic (S,T)-fuzzy submodules.

Everything is exhaustive and exact: carriers are small, operations are
bitset tables, fuzzy values are intervals with Fraction endpoints, and
every checker returns a :class:`CheckReport` with a witness on failure.
"""

from __future__ import annotations

from .fundamental import (
    FundamentalQuotient,
    Partition,
    build_fundamental_quotient,
    epsilon_star,
    gamma_star,
    quotient_ivifs,
    verify_quotient_transfer,
)
from .fuzzy import IVIFS, IVFuzzySet, cut_families, lower_cut, upper_cut, validate_ivifs
from .generators import GenConfig, generate_hv_modules, generate_ivifs, hunt_counterexamples
from .homomorphisms import (
    ModuleMap,
    classify_map,
    verify_image_transfer,
    verify_preimage_submodule,
    verify_preimage_transfer,
)
from .hyperstructures import (
    Carrier,
    ExternalOp,
    HvModule,
    HvRing,
    HyperOp,
    OrdinaryModule,
    build_example_24,
    check_hv_group,
    check_hv_module,
    check_hv_ring,
    check_hv_semigroup,
    check_hv_submodule,
)
from .intervals import MIN_MAX, Interval, IntervalNormPair, ScalarNorm, lift_norm, make_interval, validate_idempotent_norm
from .io import dump_structure, load_structure, parse_structure_file
from .report import CheckReport, ConsistencyError, ConstructionError, PreconditionError, Status
from .submodules import (
    check_fuzzy_hv_submodule,
    check_st_hv_submodule,
    check_st_submodule_ordinary,
    verify_cut_equivalence,
)

__all__ = [
    "Carrier",
    "CheckReport",
    "ConsistencyError",
    "ConstructionError",
    "ExternalOp",
    "FundamentalQuotient",
    "GenConfig",
    "HvModule",
    "HvRing",
    "HyperOp",
    "IVFuzzySet",
    "IVIFS",
    "Interval",
    "IntervalNormPair",
    "MIN_MAX",
    "ModuleMap",
    "OrdinaryModule",
    "Partition",
    "PreconditionError",
    "ScalarNorm",
    "Status",
    "build_example_24",
    "build_fundamental_quotient",
    "check_fuzzy_hv_submodule",
    "check_hv_group",
    "check_hv_module",
    "check_hv_ring",
    "check_hv_semigroup",
    "check_hv_submodule",
    "check_st_hv_submodule",
    "check_st_submodule_ordinary",
    "classify_map",
    "cut_families",
    "dump_structure",
    "epsilon_star",
    "gamma_star",
    "generate_hv_modules",
    "generate_ivifs",
    "hunt_counterexamples",
    "lift_norm",
    "load_structure",
    "lower_cut",
    "make_interval",
    "parse_structure_file",
    "quotient_ivifs",
    "upper_cut",
    "validate_idempotent_norm",
    "validate_ivifs",
    "verify_cut_equivalence",
    "verify_image_transfer",
    "verify_preimage_submodule",
    "verify_preimage_transfer",
    "verify_quotient_transfer",
]

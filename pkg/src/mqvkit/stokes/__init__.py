"""Stokes data: fission spaces, splaying, tame-to-wild data and legs."""

from .fission_space import (
    FissionPoint,
    ReducedPoint,
    fission_moment,
    fission_point_from_unitriangular,
    random_fission_point,
    reduce_B,
    transport_adjacent_swap,
)
from .legs import (
    LegClass,
    MarkingReflection,
    core_quiver,
    leg_of,
    leg_to_class,
    marking_to_leg,
    reflect_marking,
    supernova_from_classes,
)
from .readings import emit_readings
from .splay import (
    FusedPoint,
    Pair,
    SplayVariant,
    SwapResult,
    fuse,
    mixed_pairs,
    mixed_to_xy,
    splay,
    swap_factors,
)
from .tame import (
    TameStokes,
    TameTuple,
    factor_unipotent_part,
    random_tame_tuple,
    tame_star_rep,
    tame_to_stokes,
)
from .twoform import DifferentialMode, check_two_form_identity

__all__ = [
    "FissionPoint",
    "ReducedPoint",
    "fission_moment",
    "reduce_B",
    "fission_point_from_unitriangular",
    "transport_adjacent_swap",
    "random_fission_point",
    "Pair",
    "SplayVariant",
    "FusedPoint",
    "SwapResult",
    "splay",
    "fuse",
    "mixed_pairs",
    "mixed_to_xy",
    "swap_factors",
    "TameTuple",
    "TameStokes",
    "factor_unipotent_part",
    "tame_to_stokes",
    "tame_star_rep",
    "random_tame_tuple",
    "LegClass",
    "MarkingReflection",
    "marking_to_leg",
    "leg_to_class",
    "core_quiver",
    "supernova_from_classes",
    "leg_of",
    "reflect_marking",
    "emit_readings",
    "DifferentialMode",
    "check_two_form_identity",
]

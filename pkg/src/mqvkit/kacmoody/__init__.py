"""Kac-Moody combinatorics: Cartan matrix, reflections and roots."""

from .classify import (
    GenericityResult,
    RootKind,
    RootSystem,
    classify_roots,
    expected_dimension,
    has_connected_support,
    is_generic,
    is_positive_root,
    r_plus,
    root_kind,
)
from .roots import (
    Params,
    RootVector,
    cartan_matrix,
    form,
    reflect_dim,
    reflect_params,
    reflect_sequence,
)

__all__ = [
    "RootVector",
    "Params",
    "cartan_matrix",
    "form",
    "reflect_dim",
    "reflect_params",
    "reflect_sequence",
    "RootSystem",
    "RootKind",
    "GenericityResult",
    "classify_roots",
    "root_kind",
    "is_positive_root",
    "has_connected_support",
    "r_plus",
    "is_generic",
    "expected_dimension",
]

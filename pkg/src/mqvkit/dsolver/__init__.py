"""Graphical Deligne-Simpson problems: criterion, witness search and harness."""

from .criterion import CriterionResult, criterion_for, ds_criterion
from .crossval import ds_cross_validate
from .family import interval, scalar_family, triangle
from .instance import DSInstance, ReflectedData, reflect_instance_data
from .search import (
    RestartResult,
    SearchResult,
    balance_rep,
    ds_search,
    verify_witness,
)

__all__ = [
    "DSInstance",
    "ReflectedData",
    "reflect_instance_data",
    "CriterionResult",
    "criterion_for",
    "ds_criterion",
    "RestartResult",
    "SearchResult",
    "balance_rep",
    "ds_search",
    "verify_witness",
    "ds_cross_validate",
    "interval",
    "triangle",
    "scalar_family",
]

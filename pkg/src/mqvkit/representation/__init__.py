"""Graph representations, the multiplicative moment map and stability."""

from .moment import (
    BigCellFactor,
    MomentValue,
    assemble_unitriangular,
    big_cell_factor,
    colour_grading,
    fiber_residual,
    fission_algebra_check,
    in_fiber,
    invertibility_minors,
    moment_map,
)
from .probe import moment_jacobian, quotient_dimension_probe
from .rep import GraphRep
from .stability import (
    algebra_dimension,
    find_proper_closure,
    generated_subspace,
    graded_bases,
    is_irreducible,
    subrepresentation_closure,
)
from .triangle import TriangleInvariants, triangle_invariants

__all__ = [
    "GraphRep",
    "BigCellFactor",
    "MomentValue",
    "assemble_unitriangular",
    "invertibility_minors",
    "big_cell_factor",
    "colour_grading",
    "moment_map",
    "in_fiber",
    "fiber_residual",
    "fission_algebra_check",
    "is_irreducible",
    "algebra_dimension",
    "find_proper_closure",
    "generated_subspace",
    "graded_bases",
    "subrepresentation_closure",
    "TriangleInvariants",
    "triangle_invariants",
    "moment_jacobian",
    "quotient_dimension_probe",
]

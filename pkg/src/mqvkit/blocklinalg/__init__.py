"""Block linear algebra: phi-chains, Gauss/Gram factorisations and Jordan data."""

from ..exceptions import InvalidGramError
from .bigcell import opposite_big_cell_factor
from .coxeter import CoxeterCheck, coxeter_killing_check
from .grading import GradedSpace
from .jordan import ClassSpec, jordan_child, numeric_jordan
from .numerics import (
    as_matrix,
    det,
    eye_like,
    inv,
    is_exact_array,
    is_invertible,
    norm,
    numerical_rank,
    sigma_ratio,
)
from .phi_chain import (
    GaussGram,
    PhiChain,
    build_dual_chain,
    build_phi_chain,
    dual_invertibility,
    gauss_gram,
    gauss_gram_residuals,
)

__all__ = [
    "GradedSpace",
    "PhiChain",
    "GaussGram",
    "build_phi_chain",
    "build_dual_chain",
    "dual_invertibility",
    "gauss_gram",
    "gauss_gram_residuals",
    "opposite_big_cell_factor",
    "coxeter_killing_check",
    "CoxeterCheck",
    "InvalidGramError",
    "ClassSpec",
    "jordan_child",
    "numeric_jordan",
    "as_matrix",
    "det",
    "eye_like",
    "inv",
    "is_exact_array",
    "is_invertible",
    "norm",
    "numerical_rank",
    "sigma_ratio",
]

"""Small matrix helpers shared by the float and exact code paths.

Exact matrices are numpy object arrays holding sympy numbers; float matrices
are complex128 arrays. Slicing and ``@`` work for both, inversion and
determinants dispatch on the dtype.
"""

import numpy as np
import scipy.linalg
import sympy

from ..config import AMBIGUITY_BAND, INVERTIBILITY_RTOL
from ..exceptions import AmbiguousRankError, IndeterminateError


def is_exact_array(m: np.ndarray) -> bool:
    """True for object arrays of sympy numbers."""
    return m.dtype == object


def as_matrix(m, exact: bool = False) -> np.ndarray:
    """Coerce to a 2D complex (or exact object) array."""
    arr = np.asarray(m, dtype=object if exact else complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if exact:
        arr = np.vectorize(sympy.nsimplify, otypes=[object])(arr) if arr.size else arr
    return arr


def eye_like(n: int, like: np.ndarray) -> np.ndarray:
    """Identity of size n in the arithmetic of ``like``."""
    if is_exact_array(like):
        out = np.zeros((n, n), dtype=object)
        out[...] = sympy.Integer(0)
        for k in range(n):
            out[k, k] = sympy.Integer(1)
        return out
    return np.eye(n, dtype=complex)


def zeros_like_shape(shape: tuple[int, int], like: np.ndarray) -> np.ndarray:
    """Zero matrix of a given shape in the arithmetic of ``like``."""
    if is_exact_array(like):
        out = np.empty(shape, dtype=object)
        out[...] = sympy.Integer(0)
        return out
    return np.zeros(shape, dtype=complex)


def inv(m: np.ndarray) -> np.ndarray:
    """Matrix inverse; zero-size matrices invert to themselves."""
    if m.shape[0] == 0:
        return m.copy()
    if is_exact_array(m):
        return np.array(sympy.Matrix(m).inv().tolist(), dtype=object)
    return scipy.linalg.inv(m)


def det(m: np.ndarray):
    """Determinant; 1 for zero-size matrices."""
    if m.shape[0] == 0:
        return sympy.Integer(1) if is_exact_array(m) else complex(1.0)
    if is_exact_array(m):
        return sympy.simplify(sympy.Matrix(m).det())
    return complex(scipy.linalg.det(m))


def simplify_array(m: np.ndarray) -> np.ndarray:
    """Entrywise simplification of exact arrays; float arrays pass through."""
    if not is_exact_array(m) or m.size == 0:
        return m
    return np.vectorize(sympy.simplify, otypes=[object])(m)


def norm(m: np.ndarray) -> float:
    """Frobenius norm (exact arrays are evaluated numerically)."""
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(np.asarray(m, dtype=complex)))


def sigma_ratio(m: np.ndarray) -> float:
    """Smallest over largest singular value; 0 for the zero matrix."""
    if m.shape[0] == 0:
        return 1.0
    sv = scipy.linalg.svdvals(np.asarray(m, dtype=complex))
    if sv[0] == 0:
        return 0.0
    return float(sv[-1] / sv[0])


def is_invertible(m: np.ndarray, rtol: float = INVERTIBILITY_RTOL) -> bool:
    """Invertibility test; exact arrays use the determinant.

    Raises:
        IndeterminateError: If the smallest singular value lies in the band.
    """
    if is_exact_array(m):
        return det(m) != 0
    ratio = sigma_ratio(m)
    if ratio > rtol:
        return True
    if ratio <= AMBIGUITY_BAND[0]:
        return False
    raise IndeterminateError(
        f"Smallest singular value ratio {ratio:.3e} inside tolerance band", ratio
    )


def numerical_rank(
    m: np.ndarray,
    rtol: float = INVERTIBILITY_RTOL,
    strict: bool = True,
    floor: float = AMBIGUITY_BAND[0],
) -> int:
    """Rank counting singular values above ``rtol`` times max(1, sigma_max).

    Args:
        m: Matrix.
        rtol: Relative threshold.
        strict: Raise when a singular value sits in the ambiguity band.
        floor: Lower edge of the band, relative to max(1, sigma_max).

    Raises:
        AmbiguousRankError: If ``strict`` and the gap is not clean.
    """
    if m.size == 0:
        return 0
    sv = scipy.linalg.svdvals(np.asarray(m, dtype=complex))
    scale = max(1.0, float(sv[0]))
    rank = int(np.sum(sv > rtol * scale))
    if strict:
        low = floor * scale
        band = [float(s) for s in sv if low < s <= rtol * scale]
        if band:
            raise AmbiguousRankError(
                f"Singular values {band} inside tolerance band", [float(s) for s in sv]
            )
    return rank

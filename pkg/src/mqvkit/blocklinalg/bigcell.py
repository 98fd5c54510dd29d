"""Factorisation in the opposite big cell: m = w_+ g w_-."""

import numpy as np

from ..exceptions import IndeterminateError, NotInBigCellError
from .grading import GradedSpace
from .numerics import (
    eye_like,
    inv,
    is_exact_array,
    is_invertible,
    sigma_ratio,
    simplify_array,
    zeros_like_shape,
)


def opposite_big_cell_factor(
    m: np.ndarray, grading: GradedSpace
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factor m = w_+ g w_- with w_+ upper, w_- lower unitriangular, g block diagonal.

    Elimination runs from the last block upward: g_k is the Schur complement
    on block k of the trailing part, so det of the trailing submatrix on
    blocks k, ..., end equals prod_{j >= k} det g_j.

    Args:
        m: Square matrix graded by ``grading``.
        grading: Ordered grading.

    Returns:
        (w_plus, g, w_minus).

    Raises:
        NotInBigCellError: If some pivot g_k is singular or inside the
            tolerance band; ``index`` is the 1-based block number.
    """
    n = grading.total
    work = simplify_array(m.copy())
    w_plus = eye_like(n, m)
    w_minus = eye_like(n, m)
    g = zeros_like_shape((n, n), m)
    for k in reversed(range(len(grading))):
        here = grading.slice(k)
        above = slice(0, grading.offsets[k])
        pivot = simplify_array(work[here, here])
        try:
            ok = is_invertible(pivot)
        except IndeterminateError as e:
            raise NotInBigCellError(k + 1, e.value) from e
        if not ok:
            raise NotInBigCellError(
                k + 1, None if is_exact_array(m) else sigma_ratio(pivot)
            )
        g[here, here] = pivot
        pivot_inv = inv(pivot)
        left = work[above, here] @ pivot_inv
        right = pivot_inv @ work[here, above]
        w_plus[above, here] = simplify_array(left)
        w_minus[here, above] = simplify_array(right)
        schur = work[above, above] - left @ work[here, above]
        work[above, above] = simplify_array(schur)
    return w_plus, g, w_minus

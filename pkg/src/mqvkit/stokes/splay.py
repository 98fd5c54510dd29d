"""Splaying (x, y) into fusion factors and fusing them back.

For W = W_1 + ... + W_s the pair (x, y) is written as a fusion product of
pairs over each W_i. Two orders are available:

- ``hat_y``: factors (yhat^i, x_i), with T_i = 1 + x_i yhat^i and
  y^i = yhat^i T_{i-1} ... T_1; then 1 + yx = u_-^{-1} h u_+ = h S_2 S_1 with
  S_1 = u_+, S_2 = h^{-1} u_-^{-1} h.
- ``hat_x``: factors (y^i, xhat_i), with M_i = 1 + xhat_i y^i and
  x_i = M_1 ... M_{i-1} xhat_i; then 1 + yx = v_- h v_+^{-1} = h S_2 S_1 with
  S_1 = v_+^{-1}, S_2 = h^{-1} v_- h.

For s = 2 the mixed pairs ((y^1, x_1), (y^2, xhat_2)) can be reordered by
``swap_factors``, which acts on the second pair by T_1.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import logfire
import numpy as np

from ..blocklinalg.grading import GradedSpace
from ..blocklinalg.numerics import eye_like, inv, simplify_array
from ..blocklinalg.phi_chain import GaussGram, PhiChain, build_phi_chain, gauss_gram

Pair = tuple[np.ndarray, np.ndarray]


class SplayVariant(str, Enum):
    """Which half of each pair carries the hat."""

    HAT_Y = "hat_y"
    HAT_X = "hat_x"


@dataclass
class FusedPoint:
    """(x, y) rebuilt from fusion factors, with the Stokes data of 1 + yx."""

    x: np.ndarray
    y: np.ndarray
    grading: GradedSpace
    h: np.ndarray
    S1: np.ndarray
    S2: np.ndarray
    chain: PhiChain
    gauss: GaussGram


@dataclass
class SwapResult:
    """Reordered mixed pairs and the group element applied to the moved pair."""

    pairs: tuple[Pair, Pair]
    g: np.ndarray
    grading: GradedSpace


def splay(
    x: np.ndarray,
    y: np.ndarray,
    grading: GradedSpace,
    variant: SplayVariant | str = SplayVariant.HAT_Y,
) -> list[Pair]:
    """Fusion factors of (x, y) along the grading of W.

    Raises:
        NotInBigCellError: If some phi_i is singular.
    """
    variant = SplayVariant(variant)
    chain = build_phi_chain(x, y, grading)
    if variant is SplayVariant.HAT_Y:
        return [(chain.y_hat[i], chain.x_block(i)) for i in range(chain.s)]
    return [(chain.y_block(i), chain.x_hat[i]) for i in range(chain.s)]


def _grading_of(pairs: Sequence[Pair], labels: Sequence[str] | None) -> GradedSpace:
    return GradedSpace.from_dims([p[0].shape[0] for p in pairs], labels)


def fuse(
    pairs: Sequence[Pair],
    variant: SplayVariant | str = SplayVariant.HAT_Y,
    labels: Sequence[str] | None = None,
) -> FusedPoint:
    """Rebuild (x, y, h, S_1, S_2) from fusion factors.

    Args:
        pairs: Output of ``splay`` for the same variant.
        variant: Factor order.
        labels: Optional labels for the blocks of W.

    Returns:
        FusedPoint with h S_2 S_1 = 1 + yx.

    Raises:
        ValueError: If no pairs are given.
        NotInBigCellError: If the rebuilt chain is singular.
    """
    if not pairs:
        raise ValueError("Need at least one pair")
    variant = SplayVariant(variant)
    grading = _grading_of(pairs, labels)
    like = pairs[0][1]
    n = like.shape[0]
    xs: list[np.ndarray] = []
    ys: list[np.ndarray] = []
    running = eye_like(n, like)
    for first, second in pairs:
        if variant is SplayVariant.HAT_Y:
            ys.append(simplify_array(first @ running))
            xs.append(second)
            running = simplify_array((eye_like(n, like) + second @ first) @ running)
        else:
            ys.append(first)
            xs.append(simplify_array(running @ second))
            running = simplify_array(running @ (eye_like(n, like) + second @ first))
    x = np.concatenate(xs, axis=1)
    y = np.concatenate(ys, axis=0)
    chain = build_phi_chain(x, y, grading)
    gg = gauss_gram(chain)
    h_inv = inv(gg.h)
    if variant is SplayVariant.HAT_Y:
        s1 = gg.u_plus
        s2 = simplify_array(h_inv @ inv(gg.u_minus) @ gg.h)
    else:
        s1 = simplify_array(inv(gg.v_plus))
        s2 = simplify_array(h_inv @ gg.v_minus @ gg.h)
    logfire.debug("Fused factors", s=len(pairs), variant=variant.value)
    return FusedPoint(x, y, grading, gg.h, s1, s2, chain, gg)


def mixed_pairs(
    x: np.ndarray, y: np.ndarray, grading: GradedSpace
) -> tuple[Pair, Pair]:
    """((y^1, x_1), (y^2, xhat_2)) for a two-block grading of W.

    Raises:
        ValueError: Unless the grading has two blocks.
        NotInBigCellError: If 1 + x_1 y^1 is singular.
    """
    if len(grading) != 2:
        raise ValueError(f"Mixed pairs need two blocks, got {len(grading)}")
    chain = build_phi_chain(x, y, grading)
    return (chain.y_block(0), chain.x_block(0)), (chain.y_block(1), chain.x_hat[1])


def mixed_to_xy(pairs: tuple[Pair, Pair]) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of ``mixed_pairs``: x_2 = (1 + x_1 y^1) xhat_2."""
    (y1, x1), (y2, x2_hat) = pairs
    t1 = eye_like(x1.shape[0], x1) + x1 @ y1
    x = np.concatenate([x1, simplify_array(t1 @ x2_hat)], axis=1)
    y = np.concatenate([y1, y2], axis=0)
    return x, y


def swap_factors(
    pairs: tuple[Pair, Pair], grading: GradedSpace | None = None
) -> SwapResult:
    """Exchange the two factors of a mixed s = 2 splitting.

    ((y^1, x_1), (y^2, xhat_2)) goes to ((yhat^2, x_2), (y^1, x_1)), where
    (yhat^2, x_2) = T_1 . (y^2, xhat_2) = (y^2 T_1^{-1}, T_1 xhat_2) and
    T_1 = 1 + x_1 y^1. Read as mixed pairs for W_2 + W_1, the result has
    the same 1 + xy = T_2 T_1.

    Args:
        pairs: Mixed pairs.
        grading: Grading of W_1 + W_2 (default labels "1", "2").

    Returns:
        SwapResult with the new pairs, g = T_1 and the swapped grading.

    Raises:
        NotInBigCellError: If T_1 is singular.
    """
    (y1, x1), (y2, x2_hat) = pairs
    if grading is None:
        grading = GradedSpace.from_dims([y1.shape[0], y2.shape[0]])
    t1 = build_phi_chain(x1, y1, GradedSpace.from_dims([y1.shape[0]])).T[0]
    moved = (simplify_array(y2 @ inv(t1)), simplify_array(t1 @ x2_hat))
    return SwapResult(pairs=(moved, (y1, x1)), g=t1, grading=grading.swapped(0))

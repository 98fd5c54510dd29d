"""The phi-chain of a pair x: W -> V, y: V -> W and its block Gauss data.

For a grading W = W_1 + ... + W_s, write x_i, y^i for the blocks and

    phi_i = 1 + x_1 y^1 + ... + x_i y^i   (acting on V).

When every phi_i is invertible the hat coordinates

    yhat^i = y^i phi_{i-1}^{-1},  xhat_i = phi_{i-1}^{-1} x_i

give h_i = 1 + yhat^i x_i, T_i = 1 + x_i yhat^i, M_i = 1 + xhat_i y^i with
phi_i = T_i ... T_1 = M_1 ... M_i, and 1 + yx = u_-^{-1} h u_+ = v_- h v_+^{-1}.
"""

from dataclasses import dataclass, field

import logfire
import numpy as np

from ..config import INVERTIBILITY_RTOL
from ..exceptions import IndeterminateError, NotInBigCellError
from .grading import GradedSpace
from .numerics import (
    eye_like,
    inv,
    is_exact_array,
    is_invertible,
    norm,
    sigma_ratio,
    simplify_array,
)


@dataclass
class PhiChain:
    """All derived quantities of the phi-chain of (x, y)."""

    x: np.ndarray
    y: np.ndarray
    grading: GradedSpace
    phi: list[np.ndarray] = field(default_factory=list)
    x_hat: list[np.ndarray] = field(default_factory=list)
    y_hat: list[np.ndarray] = field(default_factory=list)
    h: list[np.ndarray] = field(default_factory=list)
    T: list[np.ndarray] = field(default_factory=list)
    M: list[np.ndarray] = field(default_factory=list)

    @property
    def s(self) -> int:
        """Number of blocks of W."""
        return len(self.grading)

    @property
    def n(self) -> int:
        """Dimension of V."""
        return self.x.shape[0]

    @property
    def exact(self) -> bool:
        """True if computed in exact arithmetic."""
        return is_exact_array(self.x)

    def x_block(self, i: int) -> np.ndarray:
        """x_i : W_i -> V (0-based i)."""
        return self.x[:, self.grading.slice(i)]

    def y_block(self, i: int) -> np.ndarray:
        """y^i : V -> W_i (0-based i)."""
        return self.y[self.grading.slice(i), :]

    def product_T(self, upto: int | None = None) -> np.ndarray:
        """T_k ... T_1 for k = upto (default s)."""
        k = self.s if upto is None else upto
        out = eye_like(self.n, self.x)
        for i in range(k):
            out = self.T[i] @ out
        return simplify_array(out)

    def product_M(self, upto: int | None = None) -> np.ndarray:
        """M_1 ... M_k for k = upto (default s)."""
        k = self.s if upto is None else upto
        out = eye_like(self.n, self.x)
        for i in range(k):
            out = out @ self.M[i]
        return simplify_array(out)

    def one_plus_yx(self) -> np.ndarray:
        """1 + yx on W."""
        return simplify_array(eye_like(self.grading.total, self.x) + self.y @ self.x)

    def one_plus_xy(self) -> np.ndarray:
        """1 + xy on V."""
        return simplify_array(eye_like(self.n, self.x) + self.x @ self.y)


@dataclass
class GaussGram:
    """Block Gauss decompositions of 1 + yx."""

    u_minus: np.ndarray
    h: np.ndarray
    u_plus: np.ndarray
    v_minus: np.ndarray
    v_plus: np.ndarray
    gram_hat: np.ndarray  # [yhat^i x_j]
    gram_check: np.ndarray  # [y^i xhat_j]


def dual_invertibility(
    x: np.ndarray, y: np.ndarray, rtol: float = INVERTIBILITY_RTOL
) -> bool:
    """Decide invertibility of 1 + xy and 1 + yx together.

    Args:
        x: Map W -> V.
        y: Map V -> W.
        rtol: Relative singular-value threshold.

    Returns:
        True if both are invertible, False if both are singular.

    Raises:
        IndeterminateError: If either lies in the tolerance band, or the two
            decisions disagree.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    on_v = eye_like(x.shape[0], x) + x @ y
    on_w = eye_like(y.shape[0], x) + y @ x
    left = is_invertible(on_v, rtol)
    right = is_invertible(on_w, rtol)
    if left != right:
        raise IndeterminateError(
            "1+xy and 1+yx disagree on invertibility",
            min(sigma_ratio(on_v), sigma_ratio(on_w)),
        )
    return left


def build_phi_chain(
    x: np.ndarray,
    y: np.ndarray,
    grading: GradedSpace,
    rtol: float = INVERTIBILITY_RTOL,
) -> PhiChain:
    """Compute phi_i, hat coordinates, h_i, T_i and M_i.

    Args:
        x: Map W -> V as an (n, N) matrix, N = grading.total.
        y: Map V -> W as an (N, n) matrix.
        grading: Ordered grading of W.
        rtol: Invertibility threshold for each phi_i.

    Returns:
        Populated PhiChain.

    Raises:
        NotInBigCellError: If some phi_i is singular (1-based index).
        ValueError: On shape mismatch.
    """
    if x.shape[1] != grading.total or y.shape[0] != grading.total:
        raise ValueError(
            f"Shapes x{x.shape}, y{y.shape} do not match grading of size "
            f"{grading.total}"
        )
    if x.shape[0] != y.shape[1]:
        raise ValueError("x and y disagree on dim V")
    chain = PhiChain(x=x, y=y, grading=grading)
    ident = eye_like(chain.n, x)
    phi = ident
    chain.phi.append(phi)
    for i in range(len(grading)):
        xi, yi = chain.x_block(i), chain.y_block(i)
        phi_prev_inv = inv(phi)
        y_hat = simplify_array(yi @ phi_prev_inv)
        x_hat = simplify_array(phi_prev_inv @ xi)
        chain.y_hat.append(y_hat)
        chain.x_hat.append(x_hat)
        w = xi.shape[1]
        chain.h.append(simplify_array(eye_like(w, x) + y_hat @ xi))
        chain.T.append(simplify_array(ident + xi @ y_hat))
        chain.M.append(simplify_array(ident + x_hat @ yi))
        phi = simplify_array(phi + xi @ yi)
        try:
            ok = is_invertible(phi, rtol)
        except IndeterminateError as e:
            raise NotInBigCellError(i + 1, e.value) from e
        if not ok:
            raise NotInBigCellError(i + 1, None if chain.exact else sigma_ratio(phi))
        chain.phi.append(phi)
    logfire.debug("Built phi chain", s=chain.s, n=chain.n, exact=chain.exact)
    return chain


def build_dual_chain(
    x: np.ndarray,
    y: np.ndarray,
    grading_v: GradedSpace,
    rtol: float = INVERTIBILITY_RTOL,
) -> PhiChain:
    """The dual chain gamma_j = 1 + y_1 x^1 + ... + y_j x^j on W.

    Roles of V and W are exchanged: the result's ``phi`` are the gamma_j,
    ``h`` the g_j, ``T`` the R_j and ``M`` the N_j, with 1 + yx = N_1 ... N_r.
    """
    return build_phi_chain(y, x, grading_v, rtol)


def gauss_gram(chain: PhiChain) -> GaussGram:
    """Read off the block Gauss decompositions from the generalized Gram matrices.

    hu_+ - u_- = [yhat^i x_j] and v_- h - v_+ = [y^i xhat_j], with u_-, v_+
    strictly triangular perturbations of the identity.
    """
    grading = chain.grading
    s = chain.s
    like = chain.x
    total = grading.total
    ident = eye_like(total, like)
    gram_hat = np.concatenate(
        [chain.y_hat[i] @ chain.x for i in range(s)], axis=0
    ) if s else ident
    gram_check = np.concatenate(
        [chain.y_block(i) @ np.concatenate(chain.x_hat, axis=1) for i in range(s)],
        axis=0,
    ) if s else ident
    gram_hat = simplify_array(gram_hat)
    gram_check = simplify_array(gram_check)

    h = grading.block_diag(chain.h)
    h_inv = grading.block_diag([inv(hi) for hi in chain.h])
    u_minus = simplify_array(ident - grading.masked(gram_hat, ">"))
    u_plus = simplify_array(h_inv @ (ident + grading.masked(gram_hat, "<=")))
    v_plus = simplify_array(ident - grading.masked(gram_check, "<"))
    v_minus = simplify_array((ident + grading.masked(gram_check, ">=")) @ h_inv)
    return GaussGram(u_minus, h, u_plus, v_minus, v_plus, gram_hat, gram_check)


def gauss_gram_residuals(chain: PhiChain, gg: GaussGram) -> dict[str, float]:
    """Relative residuals of every identity the decomposition must satisfy."""
    target = chain.one_plus_yx()
    scale = max(1.0, norm(target))
    out = {
        "u": norm(gg.u_minus @ target - gg.h @ gg.u_plus) / scale,
        "v": norm(target @ gg.v_plus - gg.v_minus @ gg.h) / scale,
    }
    phi_t = phi_m = 0.0
    for i in range(chain.s + 1):
        pscale = max(1.0, norm(chain.phi[i]))
        phi_t = max(phi_t, norm(chain.phi[i] - chain.product_T(i)) / pscale)
        phi_m = max(phi_m, norm(chain.phi[i] - chain.product_M(i)) / pscale)
    out["phi_T"] = phi_t
    out["phi_M"] = phi_m
    out["h_check"] = max(
        (
            norm(
                chain.h[i]
                - (np.eye(chain.h[i].shape[0]) + chain.y_block(i) @ chain.x_hat[i])
            )
            for i in range(chain.s)
        ),
        default=0.0,
    )
    return out

"""Coxeter elements as products of reflections T_i = 1 - x_i (x_i, .)."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import InvalidGramError
from .grading import GradedSpace
from .numerics import as_matrix, inv, norm
from .phi_chain import build_phi_chain


@dataclass
class CoxeterCheck:
    """Outcome of the reflection-product identity."""

    product: np.ndarray
    expected: np.ndarray
    residual: float
    h_residual: float
    passed: bool
    order: int | None


def _finite_order(m: np.ndarray, limit: int = 60, tol: float = 1e-9) -> int | None:
    ident = np.eye(m.shape[0])
    power = m.copy()
    for k in range(1, limit + 1):
        if norm(power - ident) < tol:
            return k
        power = power @ m
    return None


def coxeter_killing_check(gram: np.ndarray, tol: float = 1e-10) -> CoxeterCheck:
    """Verify T_s ... T_1 = 1 + y = -u_-^{-1} u_+ with u_+ + u_- = G and h = -1.

    The basis x_1..x_s is the standard basis of C^s with bilinear form G,
    so yhat^i = -(x_i, .) is the negated i-th row of G.

    Args:
        gram: Symmetric s x s matrix with 2 on the diagonal.
        tol: Relative residual tolerance.

    Returns:
        CoxeterCheck with the product, the Gauss-form prediction and residuals.

    Raises:
        InvalidGramError: If G is not symmetric or has a diagonal entry != 2.
    """
    g = as_matrix(gram)
    s = g.shape[0]
    if g.shape != (s, s) or not np.allclose(g, g.T):
        raise InvalidGramError("Gram matrix must be square and symmetric", g.shape)
    if not np.allclose(np.diag(g), 2.0):
        raise InvalidGramError("Gram matrix must have 2 on the diagonal", g.shape)

    ident = np.eye(s, dtype=complex)
    product = ident.copy()
    for i in range(s):
        reflection = ident - np.outer(ident[:, i], g[i, :])
        product = reflection @ product

    u_plus = np.triu(g, 1) + ident
    u_minus = np.tril(g, -1) + ident
    expected = -inv(u_minus) @ u_plus
    scale = max(1.0, norm(product))
    residual = norm(product - expected) / scale

    chain = build_phi_chain(ident, product - ident, GradedSpace.from_dims([1] * s))
    h_residual = max(
        (abs(complex(h[0, 0]) + 1.0) for h in chain.h),
        default=0.0,
    )
    h_residual = max(
        h_residual,
        max((norm(chain.y_hat[i] + g[i : i + 1, :]) for i in range(s)), default=0.0),
    )
    return CoxeterCheck(
        product=product,
        expected=expected,
        residual=residual,
        h_residual=h_residual,
        passed=residual < tol and h_residual < tol * scale,
        order=_finite_order(product),
    )

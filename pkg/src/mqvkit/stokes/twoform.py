"""Numerical check of the two-form identity behind the splaying map.

For W = W_1 + W_2 and the Gauss data 1 + yx = u_-^{-1} h u_+, the identity

    Tr (1+yx)^{-1} dy^dx - Tr (1+xy)^{-1} dx^dy + Tr Ubar_- ^ h Ubar_+ h^{-1}
      = sum_i [Tr h_i^{-1} dyhat^i ^ dx_i - Tr T_i^{-1} dx_i ^ dyhat^i]
        - Tr T_1^{-1} T_2^{-1} dT_2 ^ dT_1

holds, with Ubar_pm = (du_pm) u_pm^{-1}. Both sides are evaluated on pairs of
tangent vectors, Tr(A dX ^ dY)(xi, eta) = Tr(A X_xi Y_eta) - Tr(A X_eta Y_xi).
"""

from dataclasses import dataclass
from enum import Enum

import logfire
import numpy as np
import sympy

from ..blocklinalg.grading import GradedSpace
from ..blocklinalg.numerics import inv, is_exact_array, zeros_like_shape
from ..blocklinalg.phi_chain import PhiChain, build_phi_chain, gauss_gram
from ..config import DEFAULT_SEED, FD_STEP


class DifferentialMode(str, Enum):
    """How differentials of derived quantities are obtained."""

    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "finite-difference"


@dataclass
class _Base:
    """Derived quantities at the base point."""

    chain: PhiChain
    u_minus: np.ndarray
    u_plus: np.ndarray
    h: np.ndarray

    @property
    def grading(self) -> GradedSpace:
        return self.chain.grading


@dataclass
class _Tangent:
    """A tangent vector and the differentials it induces."""

    dx: np.ndarray
    dy: np.ndarray
    dy_hat: list[np.ndarray]
    dT: list[np.ndarray]
    u_bar_minus: np.ndarray
    u_bar_plus: np.ndarray


def _base(x: np.ndarray, y: np.ndarray, grading: GradedSpace) -> _Base:
    chain = build_phi_chain(x, y, grading)
    gg = gauss_gram(chain)
    return _Base(chain, gg.u_minus, gg.u_plus, gg.h)


def _analytic(base: _Base, dx: np.ndarray, dy: np.ndarray) -> _Tangent:
    chain = base.chain
    grading = base.grading
    n = chain.n
    d_phi = zeros_like_shape((n, n), dx)
    dy_hat, dT = [], []
    for i in range(chain.s):
        span = grading.slice(i)
        phi_inv = inv(chain.phi[i])
        dxi, dyi = dx[:, span], dy[span, :]
        # d(phi^{-1}) = -phi^{-1} dphi phi^{-1}
        dyh = dyi @ phi_inv - chain.y_block(i) @ phi_inv @ d_phi @ phi_inv
        dy_hat.append(dyh)
        dT.append(dxi @ chain.y_hat[i] + chain.x_block(i) @ dyh)
        d_phi = d_phi + dxi @ chain.y_block(i) + chain.x_block(i) @ dyi
    d_gram = np.concatenate(
        [dy_hat[i] @ chain.x + chain.y_hat[i] @ dx for i in range(chain.s)], axis=0
    )
    du_minus = -grading.masked(d_gram, ">")
    dh = grading.masked(d_gram, "==")
    du_plus = inv(base.h) @ (grading.masked(d_gram, "<=") - dh @ base.u_plus)
    return _Tangent(
        dx=dx,
        dy=dy,
        dy_hat=dy_hat,
        dT=dT,
        u_bar_minus=du_minus @ inv(base.u_minus),
        u_bar_plus=du_plus @ inv(base.u_plus),
    )


def _finite_difference(
    base: _Base, dx: np.ndarray, dy: np.ndarray, step: float
) -> _Tangent:
    chain = base.chain
    scale = max(
        1.0,
        float(np.max(np.abs(chain.x), initial=0.0)),
        float(np.max(np.abs(chain.y), initial=0.0)),
    )
    eps = step * scale
    plus = _base(chain.x + eps * dx, chain.y + eps * dy, base.grading)
    minus = _base(chain.x - eps * dx, chain.y - eps * dy, base.grading)

    def diff(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a - b) / (2 * eps)

    pairs = zip(plus.chain.y_hat, minus.chain.y_hat, strict=True)
    dy_hat = [diff(p, m) for p, m in pairs]
    dT = [diff(p, m) for p, m in zip(plus.chain.T, minus.chain.T, strict=True)]
    return _Tangent(
        dx=dx,
        dy=dy,
        dy_hat=dy_hat,
        dT=dT,
        u_bar_minus=diff(plus.u_minus, minus.u_minus) @ inv(base.u_minus),
        u_bar_plus=diff(plus.u_plus, minus.u_plus) @ inv(base.u_plus),
    )


def _wedge(
    a: np.ndarray, x1: np.ndarray, y1: np.ndarray, x2: np.ndarray, y2: np.ndarray
):
    """Tr(a dX ^ dY) on the tangent pair whose components are (x1, y1), (x2, y2)."""
    return np.trace(a @ x1 @ y2) - np.trace(a @ x2 @ y1)


def _sides(base: _Base, xi: _Tangent, eta: _Tangent):
    chain = base.chain
    grading = base.grading
    h_inv = inv(base.h)
    lhs = (
        _wedge(inv(chain.one_plus_yx()), xi.dy, xi.dx, eta.dy, eta.dx)
        - _wedge(inv(chain.one_plus_xy()), xi.dx, xi.dy, eta.dx, eta.dy)
        + np.trace(xi.u_bar_minus @ base.h @ eta.u_bar_plus @ h_inv)
        - np.trace(eta.u_bar_minus @ base.h @ xi.u_bar_plus @ h_inv)
    )
    rhs = 0
    for i in range(chain.s):
        span = grading.slice(i)
        dx1, dx2 = xi.dx[:, span], eta.dx[:, span]
        dy1, dy2 = xi.dy_hat[i], eta.dy_hat[i]
        rhs = rhs + _wedge(inv(chain.h[i]), dy1, dx1, dy2, dx2)
        rhs = rhs - _wedge(inv(chain.T[i]), dx1, dy1, dx2, dy2)
    if chain.s == 2:
        t_inv = inv(chain.T[0]) @ inv(chain.T[1])
        rhs = rhs - _wedge(t_inv, xi.dT[1], xi.dT[0], eta.dT[1], eta.dT[0])
    return lhs, rhs


def _random_tangent(
    shape_x: tuple[int, int],
    shape_y: tuple[int, int],
    rng: np.random.Generator,
    exact: bool,
) -> tuple[np.ndarray, np.ndarray]:
    if exact:
        def draw(shape: tuple[int, int]) -> np.ndarray:
            out = np.empty(shape, dtype=object)
            for idx, value in np.ndenumerate(rng.integers(-2, 3, size=shape)):
                out[idx] = sympy.Integer(int(value))
            return out
    else:
        def draw(shape: tuple[int, int]) -> np.ndarray:
            return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return draw(shape_x), draw(shape_y)


@logfire.instrument("check_two_form_identity")
def check_two_form_identity(
    x: np.ndarray,
    y: np.ndarray,
    grading: GradedSpace,
    samples: int = 20,
    mode: DifferentialMode | str = DifferentialMode.ANALYTIC,
    rng: np.random.Generator | None = None,
    step: float = FD_STEP,
) -> float:
    """Largest relative residual of the two-form identity over random tangents.

    Args:
        x: Map W -> V.
        y: Map V -> W.
        grading: Grading of W with one or two blocks.
        samples: Number of random tangent pairs.
        mode: Closed-form differentials or central finite differences.
        rng: Random generator (seeded with DEFAULT_SEED when omitted).
        step: Finite-difference step, multiplied by max(1, |x|, |y|).

    Returns:
        max |LHS - RHS| / max(1, |LHS|, |RHS|); exact inputs in analytic
        mode give an exact comparison.

    Raises:
        ValueError: If the grading has more than two blocks, or finite
            differences are requested for exact inputs.
        NotInBigCellError: If the base point is outside the big cell.
    """
    mode = DifferentialMode(mode)
    if len(grading) not in (1, 2):
        raise ValueError(
            f"The identity is checked for one or two blocks, got {len(grading)}"
        )
    exact = is_exact_array(x)
    if exact and mode is DifferentialMode.FINITE_DIFFERENCE:
        raise ValueError("Finite differences need float inputs")
    rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
    base = _base(x, y, grading)

    def tangent() -> _Tangent:
        dx, dy = _random_tangent(x.shape, y.shape, rng, exact)
        if mode is DifferentialMode.ANALYTIC:
            return _analytic(base, dx, dy)
        return _finite_difference(base, dx, dy, step)

    worst = 0.0
    for _ in range(samples):
        lhs, rhs = _sides(base, tangent(), tangent())
        if exact:
            gap = sympy.simplify(lhs - rhs)
            residual = 0.0 if gap == 0 else abs(complex(gap))
        else:
            residual = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
        worst = max(worst, float(residual))
    logfire.info("Two-form identity", mode=mode.value, samples=samples, residual=worst)
    return worst

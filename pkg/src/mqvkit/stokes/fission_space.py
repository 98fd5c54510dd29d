"""Points of the higher fission spaces and their moment maps.

A point (C, S_1, ..., S_2r, h) has C in GL(V), S_odd upper and S_even lower
block-unitriangular for an ordered grading of V, and h block diagonal. Its
moment map is

    (C^{-1} h S_2r ... S_2 S_1 C, h^{-1}).

With r = 2 and G-moment 1 the point is determined by (v_+, v_-) = (S_1, S_2),
which identifies the reduced space with the space of invertible
representations of the complete k-partite graph on the grading.
"""

from dataclasses import dataclass, field

import logfire
import numpy as np

from ..blocklinalg.bigcell import opposite_big_cell_factor
from ..blocklinalg.grading import GradedSpace
from ..blocklinalg.numerics import (
    eye_like,
    inv,
    is_exact_array,
    is_invertible,
    norm,
    sigma_ratio,
    simplify_array,
    zeros_like_shape,
)
from ..config import FIBER_TOL
from ..exceptions import IndeterminateError, NotReducedError, SingularMatrixError

# Off-pattern entries below this (relative) size are snapped to exact zeros
PATTERN_ATOL = 1e-12


def _require_invertible(name: str, m: np.ndarray) -> None:
    try:
        ok = is_invertible(m)
    except IndeterminateError as e:
        raise SingularMatrixError(name, e.value) from e
    if not ok:
        raise SingularMatrixError(name, None if is_exact_array(m) else sigma_ratio(m))


@dataclass
class FissionPoint:
    """A point (C, S_1..S_2r, h) of the fission space of a graded V."""

    C: np.ndarray
    S: list[np.ndarray]
    h: np.ndarray
    grading: GradedSpace

    def __post_init__(self) -> None:
        """Check shapes and triangularity; snap float round-off in zero blocks."""
        n = self.grading.total
        if not self.S or len(self.S) % 2:
            raise ValueError(f"Need an even number of factors, got {len(self.S)}")
        named = [("C", self.C), ("h", self.h)]
        named += [(f"S_{k + 1}", s) for k, s in enumerate(self.S)]
        for name, m in named:
            if m.shape != (n, n):
                raise ValueError(f"{name} has shape {m.shape}, expected {(n, n)}")
        exact = is_exact_array(self.C)
        self.S = [
            self._pattern(s, upper=k % 2 == 0, exact=exact)
            for k, s in enumerate(self.S)
        ]
        off_diagonal = ~self.grading.block_mask("==")
        self.h = self._snap(self.h, off_diagonal, "h", exact)
        _require_invertible("C", self.C)
        for k, block in enumerate(self.grading.diagonal_blocks(self.h)):
            _require_invertible(f"h_{k + 1}", block)

    def _snap(
        self, m: np.ndarray, mask: np.ndarray, name: str, exact: bool
    ) -> np.ndarray:
        values = np.asarray(m[mask], dtype=complex)
        atol = 0.0 if exact else PATTERN_ATOL * max(1.0, norm(m))
        if values.size and float(np.max(np.abs(values))) > atol:
            raise ValueError(f"{name} is not block-structured as required")
        out = m.copy()
        out[mask] = zeros_like_shape(m.shape, m)[mask]
        return out

    def _pattern(self, m: np.ndarray, upper: bool, exact: bool) -> np.ndarray:
        name = "upper" if upper else "lower"
        m = self._snap(m, self.grading.block_mask(">" if upper else "<"), name, exact)
        diag = self.grading.block_mask("==")
        ident = eye_like(self.grading.total, m)
        residual = np.asarray(m[diag] - ident[diag], dtype=complex)
        atol = 0.0 if exact else PATTERN_ATOL * max(1.0, norm(m))
        if residual.size and float(np.max(np.abs(residual))) > atol:
            raise ValueError(f"Stokes factor is not {name} unitriangular")
        m = m.copy()
        m[diag] = ident[diag]
        return m

    @property
    def r(self) -> int:
        """Number of (S_odd, S_even) pairs."""
        return len(self.S) // 2

    def stokes_product(self) -> np.ndarray:
        """S_2r ... S_2 S_1."""
        out = eye_like(self.grading.total, self.C)
        for s in self.S:
            out = s @ out
        return simplify_array(out)


@dataclass
class ReducedPoint:
    """An r = 2 fission point with trivial G-moment, read as (v_+, v_-) data."""

    grading: GradedSpace
    v_plus: np.ndarray
    v_minus: np.ndarray
    g: np.ndarray
    a: np.ndarray | None = None
    b: np.ndarray | None = None
    moment: tuple[np.ndarray, ...] = field(default_factory=tuple)


def fission_moment(p: FissionPoint) -> tuple[np.ndarray, np.ndarray]:
    """Both components of the moment map, (C^{-1} h S_2r...S_1 C, h^{-1})."""
    g_value = simplify_array(inv(p.C) @ p.h @ p.stokes_product() @ p.C)
    return g_value, simplify_array(inv(p.h))


def _g_residual(g_value: np.ndarray) -> float:
    ident = eye_like(g_value.shape[0], g_value)
    return norm(g_value - ident) / max(1.0, norm(g_value))


def reduce_B(p: FissionPoint, tol: float = FIBER_TOL) -> ReducedPoint:  # noqa: N802
    """Read an r = 2 point with G-moment 1 as unitriangular (v_+, v_-) data.

    With two blocks the off-diagonal entries a = (S_1)_{12}, b = (S_2)_{21}
    are returned together with the moment ((1 + ab)^{-1}, 1 + ba).

    Raises:
        ValueError: Unless r = 2.
        NotReducedError: If the G-moment differs from the identity.
    """
    if p.r != 2:
        raise ValueError(f"reduce_B needs r = 2, got r = {p.r}")
    g_value, h_inv = fission_moment(p)
    residual = _g_residual(g_value)
    if residual > (0.0 if is_exact_array(g_value) else tol):
        raise NotReducedError(residual)
    out = ReducedPoint(p.grading, p.S[0], p.S[1], h_inv)
    if len(p.grading) == 2:
        out.a = p.grading.block(p.S[0], 0, 1)
        out.b = p.grading.block(p.S[1], 1, 0)
        like = p.C
        one_ab = eye_like(out.a.shape[0], like) + out.a @ out.b
        one_ba = eye_like(out.b.shape[0], like) + out.b @ out.a
        out.moment = (simplify_array(inv(one_ab)), simplify_array(one_ba))
    else:
        out.moment = tuple(p.grading.diagonal_blocks(h_inv))
    logfire.debug("Reduced fission point", blocks=len(p.grading), residual=residual)
    return out


def fission_point_from_unitriangular(
    v_plus: np.ndarray, v_minus: np.ndarray, grading: GradedSpace
) -> FissionPoint:
    """The r = 2 point with G-moment 1 over (v_+, v_-), inverse to reduce_B.

    Factor v_- v_+ = w_+ g w_- and take h = g^{-1}, S = (v_+, v_-, w_+^{-1},
    g w_-^{-1} g^{-1}), C = 1.

    Raises:
        NotInBigCellError: If v_- v_+ is not in the opposite big cell.
    """
    w_plus, g, w_minus = opposite_big_cell_factor(v_minus @ v_plus, grading)
    g_inv = inv(g)
    S = [
        v_plus,
        v_minus,
        simplify_array(inv(w_plus)),
        simplify_array(g @ inv(w_minus) @ g_inv),
    ]
    C = eye_like(grading.total, v_plus)
    return FissionPoint(C, S, simplify_array(g_inv), grading)


def _unit_block(
    m: np.ndarray, grading: GradedSpace, i: int, j: int, sign: int = 1
) -> np.ndarray:
    """1 + sign * (block (i, j) of m), embedded."""
    out = eye_like(grading.total, m)
    out[grading.slice(i), grading.slice(j)] = sign * grading.block(m, i, j)
    return out


def transport_adjacent_swap(p: FissionPoint, k: int) -> FissionPoint:
    """Move a point to the grading with blocks k and k+1 exchanged.

    Each S_{2j-1} = a_j S°_{2j-1} and S_{2j} = b_j S°_{2j} split off the
    elementary factor carrying the (k, k+1), resp. (k+1, k), block. The
    factors are shifted one place along the Stokes product,

        S'_{2j} = S°_{2j} a_j,  S'_{2j-1} = S°_{2j-1} b_{j-1},
        S'_1 = S°_1 h b_r h^{-1},  C' = h b_r^{-1} h^{-1} C,

    after which every S' is triangular for the swapped order. Both moment
    values are unchanged: the G-moment exactly, h^{-1} up to relabelling.

    Args:
        p: Fission point.
        k: 0-based index of the first block of the pair.

    Returns:
        Fission point for ``p.grading.swapped(k)``.

    Raises:
        ValueError: If k + 1 is not a block index.
    """
    grading = p.grading
    index = grading.swap_index(k)
    a = [_unit_block(s, grading, k, k + 1) for s in p.S[0::2]]
    b = [_unit_block(s, grading, k + 1, k) for s in p.S[1::2]]
    odd = [
        simplify_array(_unit_block(s, grading, k, k + 1, sign=-1) @ s)
        for s in p.S[0::2]
    ]
    even = [
        simplify_array(_unit_block(s, grading, k + 1, k, sign=-1) @ s)
        for s in p.S[1::2]
    ]
    h_inv = inv(p.h)
    b_tilde = simplify_array(p.h @ b[-1] @ h_inv)
    b_tilde_inv = simplify_array(p.h @ inv(b[-1]) @ h_inv)

    new_s: list[np.ndarray] = []
    for j in range(p.r):
        left = b_tilde if j == 0 else b[j - 1]
        new_s.append(simplify_array(odd[j] @ left))
        new_s.append(simplify_array(even[j] @ a[j]))
    new_c = simplify_array(b_tilde_inv @ p.C)

    def permuted(m: np.ndarray) -> np.ndarray:
        return m[np.ix_(index, index)]

    moved = FissionPoint(
        C=new_c[index, :],
        S=[permuted(s) for s in new_s],
        h=permuted(p.h),
        grading=grading.swapped(k),
    )
    logfire.debug("Transported fission point", k=k, r=p.r)
    return moved


def random_fission_point(
    grading: GradedSpace, r: int, rng: np.random.Generator, scale: float = 0.5
) -> FissionPoint:
    """A random float point: Gaussian off-diagonal blocks, h near the identity."""
    n = grading.total

    def gaussian() -> np.ndarray:
        return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))

    S = []
    for k in range(2 * r):
        s = np.eye(n, dtype=complex)
        mask = grading.block_mask("<" if k % 2 == 0 else ">")
        s[mask] = gaussian()[mask]
        S.append(s)
    h = np.eye(n, dtype=complex)
    diag = grading.block_mask("==")
    h[diag] += gaussian()[diag]
    C = np.eye(n, dtype=complex) + gaussian()
    return FissionPoint(C, S, h, grading)


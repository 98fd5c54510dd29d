"""Unitriangular assembly, big-cell factorisation and the moment map.

For a colour c with node order i_1 < ... < i_k, the maps of Gamma_c assemble
into v_+ = 1 + sum_{i<j} v_ij and v_- = 1 + sum_{i>j} v_ij on V_c. The
representation is invertible on c when v_- v_+ lies in the opposite big cell,
v_- v_+ = w_+ g_c w_-, and the moment map at node i is the ordered product of
the diagonal blocks g_{c,i} over the colours at i.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field

import logfire
import numpy as np

from ..blocklinalg.bigcell import opposite_big_cell_factor
from ..blocklinalg.grading import GradedSpace
from ..blocklinalg.numerics import det, eye_like, norm, simplify_array
from ..config import FIBER_TOL
from ..exceptions import NotInBigCellError, NotInvertibleError
from ..kacmoody.roots import Params
from ..scalars import Scalar, to_complex
from .rep import GraphRep


@dataclass
class BigCellFactor:
    """v_- v_+ = w_+ g w_- for one colour."""

    colour: int
    grading: GradedSpace
    w_plus: np.ndarray
    g: np.ndarray
    w_minus: np.ndarray

    def block(self, node: str) -> np.ndarray:
        """g_{c,node}."""
        k = self.grading.labels.index(node)
        return self.grading.block(self.g, k, k)


@dataclass
class MomentValue:
    """Moment map value: mu_i per node plus the per-colour factorisations."""

    mu: dict[str, np.ndarray]
    factors: dict[int, BigCellFactor] = field(default_factory=dict)

    def det_product(self) -> Scalar:
        """prod_i det(mu_i), which is always 1."""
        out: Scalar = 1
        for value in self.mu.values():
            out = out * det(value)
        return out


def colour_grading(rep: GraphRep, colour: int) -> GradedSpace:
    """Grading of V_c = sum of V_i over the colour's nodes in colour order."""
    nodes = rep.quiver.block(colour).nodes
    return GradedSpace.from_dims([rep.dims[n] for n in nodes], labels=list(nodes))


def _like(rep: GraphRep) -> np.ndarray:
    return np.empty((0, 0), dtype=object if rep.exact else complex)


def assemble_unitriangular(
    rep: GraphRep, colour: int
) -> tuple[np.ndarray, np.ndarray, GradedSpace]:
    """Assemble (v_+, v_-) on V_c in the colour's node order.

    Blocks between nodes of the same part are zero.

    Returns:
        (v_plus, v_minus, grading of V_c).
    """
    block = rep.quiver.block(colour)
    grading = colour_grading(rep, colour)
    like = _like(rep)
    n = grading.total
    v_plus = eye_like(n, like)
    v_minus = eye_like(n, like)
    order = block.nodes
    for a, head in enumerate(order):
        for b, tail in enumerate(order):
            if a == b or block.part_of(head) == block.part_of(tail):
                continue
            target = v_plus if a < b else v_minus
            target[grading.slice(a), grading.slice(b)] = rep.map(head, tail)
    return v_plus, v_minus, grading


def invertibility_minors(
    rep: GraphRep, colour: int
) -> tuple[dict[str, Scalar], Scalar]:
    """Trailing minors Delta_i of v_- v_+ on V_i + ... + V_last, and their product.

    Returns:
        (Delta per node, f_c = prod Delta_i).
    """
    v_plus, v_minus, grading = assemble_unitriangular(rep, colour)
    product = simplify_array(v_minus @ v_plus)
    minors: dict[str, Scalar] = {}
    f_c: Scalar = 1
    for k, node in enumerate(grading.labels):
        span = grading.trailing(k)
        minors[node] = det(product[span, span])
        f_c = f_c * minors[node]
    return minors, f_c


def big_cell_factor(rep: GraphRep, colour: int) -> BigCellFactor:
    """Factor v_- v_+ = w_+ g w_- by Schur elimination from the last block up.

    Raises:
        NotInvertibleError: If a pivot block g_i is singular (the failing
            node is reported); also raised for pivots inside the tolerance band.
    """
    v_plus, v_minus, grading = assemble_unitriangular(rep, colour)
    try:
        w_plus, g, w_minus = opposite_big_cell_factor(v_minus @ v_plus, grading)
    except NotInBigCellError as e:
        label = grading.labels[e.index - 1]
        raise NotInvertibleError(colour, label, e.sigma_min) from e
    return BigCellFactor(colour, grading, w_plus, g, w_minus)


def moment_map(rep: GraphRep) -> MomentValue:
    """mu_i = ordered product of g_{c,i} over the colours at node i.

    Raises:
        NotInvertibleError: If some colour leaves the opposite big cell.
    """
    like = _like(rep)
    factors = {c: big_cell_factor(rep, c) for c in rep.quiver.colours}
    mu = {}
    for node in rep.quiver.nodes:
        value = eye_like(rep.dims[node], like)
        for colour in rep.quiver.colours_at(node):
            value = value @ factors[colour].block(node)
        mu[node] = simplify_array(value)
    return MomentValue(mu=mu, factors=factors)


def fission_algebra_check(
    rep: GraphRep, q: Params | Mapping[str, Scalar], value: MomentValue | None = None
) -> dict[str, float]:
    """Per-node relation residuals ||prod_c g_{c,i} - q_i|| / max(1, ||mu_i||)."""
    value = value or moment_map(rep)
    params = q.as_dict() if isinstance(q, Params) else dict(q)
    out = {}
    for node, mu in value.mu.items():
        if mu.shape[0] == 0:
            out[node] = 0.0
            continue
        target = to_complex(params.get(node, 1)) * np.eye(mu.shape[0])
        out[node] = norm(np.asarray(mu, dtype=complex) - target) / max(1.0, norm(mu))
    return out


def fiber_residual(rep: GraphRep, q: Params | Mapping[str, Scalar]) -> float:
    """Largest relation residual over the nodes (inf if not invertible)."""
    try:
        residuals = fission_algebra_check(rep, q)
    except NotInvertibleError:
        return float("inf")
    return max(residuals.values(), default=0.0)


def in_fiber(
    rep: GraphRep, q: Params | Mapping[str, Scalar], tol: float = FIBER_TOL
) -> bool:
    """True if mu_i = q_i id at every node, to relative tolerance ``tol``."""
    residual = fiber_residual(rep, q)
    logfire.debug("Fiber membership", residual=residual, tol=tol)
    return residual < tol

"""Root classification, genericity and the expected dimension.

Positive real roots are the Weyl orbit of the simple roots, positive
imaginary roots the orbit of the fundamental region K (nonzero beta >= 0 with
connected support and (beta, e_i) <= 0 for all i). Both are enumerated inside
a coordinate box by closing upward under reflections that raise a coordinate.
"""

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

import logfire
import networkx as nx
import numpy as np

from ..graph.quiver import ColouredQuiver
from ..scalars import is_one
from .roots import Params, RootVector, cartan_matrix, form


class RootKind(str, Enum):
    """Classification of a lattice vector."""

    REAL = "real"
    IMAGINARY = "imaginary"
    NOT_A_ROOT = "not-a-root"


@dataclass
class RootSystem:
    """Positive roots inside a box, split into real and imaginary."""

    bound: int
    real: list[RootVector] = field(default_factory=list)
    imaginary: list[RootVector] = field(default_factory=list)

    def contains(self, d: RootVector) -> bool:
        """True if d is one of the enumerated positive roots."""
        return d in self.real or d in self.imaginary


@dataclass
class GenericityResult:
    """Outcome of the genericity test for (q, d)."""

    generic: bool | None
    witness: RootVector | None
    candidates: list[RootVector]


def has_connected_support(beta: RootVector, quiver: ColouredQuiver) -> bool:
    """True if the support of beta spans a connected subgraph."""
    support = beta.support
    if not support:
        return False
    return nx.is_connected(quiver.to_networkx().subgraph(support))


def _is_fundamental(
    beta: RootVector, cartan: np.ndarray, quiver: ColouredQuiver
) -> bool:
    if beta.is_zero() or not beta.is_nonnegative():
        return False
    if np.any(cartan @ beta.array() > 0):
        return False
    return has_connected_support(beta, quiver)


def _box(bounds: tuple[int, ...]) -> itertools.product:
    return itertools.product(*(range(b + 1) for b in bounds))


def _upward_closure(
    seeds: list[RootVector], cartan: np.ndarray, bounds: tuple[int, ...]
) -> list[RootVector]:
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        alpha = queue.popleft()
        pairing = cartan @ alpha.array()
        for k, value in enumerate(pairing):
            if value >= 0:
                continue
            coords = list(alpha.coords)
            coords[k] -= int(value)
            if coords[k] > bounds[k]:
                continue
            beta = RootVector(alpha.nodes, tuple(coords))
            if beta not in seen:
                seen.add(beta)
                queue.append(beta)
    return sorted(seen, key=lambda v: (sum(v.coords), v.coords))


@logfire.instrument("classify_roots")
def classify_roots(
    quiver: ColouredQuiver, bound: int | RootVector = 1
) -> RootSystem:
    """Enumerate the positive roots with coordinates in a box.

    Args:
        quiver: The quiver.
        bound: Either a uniform maximum coordinate, or a vector giving the
            maximum per node.

    Returns:
        RootSystem with real and imaginary roots sorted by height.
    """
    n = len(quiver.nodes)
    if isinstance(bound, RootVector):
        bounds = bound.coords
        uniform = max(bounds, default=0)
    else:
        if bound < 1:
            raise ValueError("bound must be at least 1")
        bounds = (bound,) * n
        uniform = bound
    cartan = cartan_matrix(quiver)
    simples = [
        RootVector.simple(quiver, node)
        for node, b in zip(quiver.nodes, bounds)
        if b >= 1
    ]
    real = _upward_closure(simples, cartan, bounds)
    fundamental = [
        RootVector(quiver.nodes, coords)
        for coords in _box(bounds)
        if _is_fundamental(RootVector(quiver.nodes, coords), cartan, quiver)
    ]
    imaginary = _upward_closure(fundamental, cartan, bounds)
    logfire.debug(
        "Classified roots",
        quiver=quiver.name,
        bound=uniform,
        real=len(real),
        imaginary=len(imaginary),
    )
    return RootSystem(bound=uniform, real=real, imaginary=imaginary)


def root_kind(d: RootVector, quiver: ColouredQuiver) -> RootKind:
    """Classify d by descending to a simple root or to the fundamental region.

    While some (d, e_i) > 0, replace d by s_i(d); this lowers the height and
    keeps positive roots positive. A negative coordinate means d was not a root.
    """
    if d.is_zero() or not d.is_nonnegative():
        return RootKind.NOT_A_ROOT
    cartan = cartan_matrix(quiver)
    coords = d.array().copy()
    while True:
        if coords.sum() == 1:
            return RootKind.REAL
        pairing = cartan @ coords
        k = int(np.argmax(pairing))
        if pairing[k] <= 0:
            beta = RootVector(d.nodes, tuple(int(c) for c in coords))
            if has_connected_support(beta, quiver):
                return RootKind.IMAGINARY
            return RootKind.NOT_A_ROOT
        coords[k] -= pairing[k]
        if coords[k] < 0:
            return RootKind.NOT_A_ROOT


def is_positive_root(d: RootVector, quiver: ColouredQuiver) -> bool:
    """True if d is a positive (real or imaginary) root."""
    return root_kind(d, quiver) != RootKind.NOT_A_ROOT


def r_plus(d: RootVector, quiver: ColouredQuiver) -> list[RootVector]:
    """R_+(d): alpha with (alpha, alpha) <= 2 and 0 <= alpha <= d, minus {0, d}."""
    out = []
    for coords in _box(d.coords):
        alpha = RootVector(d.nodes, coords)
        if alpha.is_zero() or alpha == d:
            continue
        if form(alpha, alpha, quiver) <= 2:
            out.append(alpha)
    return out


def is_generic(q: Params, d: RootVector, quiver: ColouredQuiver) -> GenericityResult:
    """Decide whether q^alpha != 1 for every alpha in R_+(d).

    Exact parameters are decided exactly. Float parameters may leave the
    answer undecided (``generic is None``) when some q^alpha is within the
    float ambiguity band of 1; the offending alpha is then the witness.
    """
    candidates = r_plus(d, quiver)
    undecided: RootVector | None = None
    for alpha in candidates:
        verdict = is_one(q.power(alpha))
        if verdict:
            return GenericityResult(False, alpha, candidates)
        if verdict is None and undecided is None:
            undecided = alpha
    if undecided is not None:
        return GenericityResult(None, undecided, candidates)
    return GenericityResult(True, None, candidates)


def expected_dimension(d: RootVector, quiver: ColouredQuiver) -> int:
    """Delta(d) = 2 - (d, d)."""
    return 2 - form(d, d, quiver)

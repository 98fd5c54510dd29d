"""Root lattice vectors, parameters and simple reflections on a quiver."""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from ..exceptions import IndexMismatchError, InvalidQuiverError, UnknownNodeError
from ..graph.quiver import ColouredQuiver
from ..scalars import Scalar, exact, format_scalar, is_exact, power_product, to_complex


@dataclass(frozen=True)
class RootVector:
    """An integer vector indexed by the nodes of a quiver."""

    nodes: tuple[str, ...]
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        """Check lengths agree."""
        if len(self.nodes) != len(self.coords):
            raise IndexMismatchError(self.nodes, tuple(map(str, self.coords)))
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def zero(cls, quiver: ColouredQuiver) -> "RootVector":
        """The zero vector."""
        return cls(quiver.nodes, (0,) * len(quiver.nodes))

    @classmethod
    def simple(cls, quiver: ColouredQuiver, node: str) -> "RootVector":
        """The simple root epsilon_node."""
        if node not in quiver.index:
            raise UnknownNodeError(node)
        coords = [0] * len(quiver.nodes)
        coords[quiver.index[node]] = 1
        return cls(quiver.nodes, tuple(coords))

    @classmethod
    def from_mapping(
        cls, quiver: ColouredQuiver, values: Mapping[str, int]
    ) -> "RootVector":
        """Build from a node -> value mapping; missing nodes are 0."""
        for node in values:
            if node not in quiver.index:
                raise UnknownNodeError(node)
        return cls(quiver.nodes, tuple(int(values.get(n, 0)) for n in quiver.nodes))

    def __getitem__(self, node: str) -> int:
        """Coordinate at a node."""
        try:
            return self.coords[self.nodes.index(node)]
        except ValueError as e:
            raise UnknownNodeError(node) from e

    def _check(self, other: "RootVector") -> None:
        if self.nodes != other.nodes:
            raise IndexMismatchError(self.nodes, other.nodes)

    def __add__(self, other: "RootVector") -> "RootVector":
        """Componentwise sum."""
        self._check(other)
        pairs = zip(self.coords, other.coords, strict=True)
        return RootVector(self.nodes, tuple(a + b for a, b in pairs))

    def __sub__(self, other: "RootVector") -> "RootVector":
        """Componentwise difference."""
        self._check(other)
        pairs = zip(self.coords, other.coords, strict=True)
        return RootVector(self.nodes, tuple(a - b for a, b in pairs))

    def __neg__(self) -> "RootVector":
        """Negation."""
        return RootVector(self.nodes, tuple(-a for a in self.coords))

    def scaled(self, k: int) -> "RootVector":
        """k times the vector."""
        return RootVector(self.nodes, tuple(k * a for a in self.coords))

    def array(self) -> np.ndarray:
        """Coordinates as an integer array."""
        return np.array(self.coords, dtype=int)

    def as_dict(self) -> dict[str, int]:
        """Node -> coordinate mapping."""
        return dict(zip(self.nodes, self.coords))

    @property
    def support(self) -> tuple[str, ...]:
        """Nodes with nonzero coordinate."""
        return tuple(n for n, c in zip(self.nodes, self.coords) if c)

    def is_zero(self) -> bool:
        """True for the zero vector."""
        return not any(self.coords)

    def is_nonnegative(self) -> bool:
        """True if every coordinate is >= 0."""
        return all(c >= 0 for c in self.coords)

    def fits_in(self, box: "RootVector") -> bool:
        """True if 0 <= self <= box componentwise."""
        self._check(box)
        return all(0 <= a <= b for a, b in zip(self.coords, box.coords))

    def describe(self) -> str:
        """Compact text form ``(1,0,2)``."""
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Params:
    """Nonzero multiplicative parameters indexed by the nodes of a quiver."""

    nodes: tuple[str, ...]
    coords: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        """Check lengths and that entries are nonzero."""
        if len(self.nodes) != len(self.coords):
            raise IndexMismatchError(self.nodes, tuple(map(str, self.coords)))
        if any(abs(to_complex(q)) == 0 for q in self.coords):
            raise InvalidQuiverError("Parameters must be nonzero")

    @classmethod
    def from_mapping(
        cls, quiver: ColouredQuiver, values: Mapping[str, Scalar]
    ) -> "Params":
        """Build from a node -> value mapping; missing nodes are 1."""
        for node in values:
            if node not in quiver.index:
                raise UnknownNodeError(node)
        return cls(quiver.nodes, tuple(exact(values.get(n, 1)) for n in quiver.nodes))

    def __getitem__(self, node: str) -> Scalar:
        """Parameter at a node."""
        try:
            return self.coords[self.nodes.index(node)]
        except ValueError as e:
            raise UnknownNodeError(node) from e

    @property
    def exact(self) -> bool:
        """True if every entry is an exact sympy number."""
        return all(is_exact(q) for q in self.coords)

    def power(self, beta: RootVector) -> Scalar:
        """q^beta = prod_i q_i^{beta_i}."""
        if beta.nodes != self.nodes:
            raise IndexMismatchError(self.nodes, beta.nodes)
        return power_product(self.coords, beta.coords)

    def as_dict(self) -> dict[str, Scalar]:
        """Node -> parameter mapping."""
        return dict(zip(self.nodes, self.coords))

    def describe(self) -> str:
        """Compact text form."""
        return "(" + ", ".join(format_scalar(q) for q in self.coords) + ")"


def cartan_matrix(quiver: ColouredQuiver) -> np.ndarray:
    """C = 2 - A with A the adjacency matrix of the underlying graph."""
    n = len(quiver.nodes)
    return 2 * np.eye(n, dtype=int) - quiver.adjacency()


def form(beta: RootVector, delta: RootVector, quiver: ColouredQuiver) -> int:
    """The symmetric bilinear form (beta, delta) = beta^T C delta.

    Raises:
        IndexMismatchError: If either vector is not indexed by the quiver's nodes.
    """
    for v in (beta, delta):
        if v.nodes != quiver.nodes:
            raise IndexMismatchError(quiver.nodes, v.nodes)
    return int(beta.array() @ cartan_matrix(quiver) @ delta.array())


def reflect_dim(node: str, d: RootVector, quiver: ColouredQuiver) -> RootVector:
    """s_i(d) = d - (d, e_i) e_i."""
    simple = RootVector.simple(quiver, node)
    return d - simple.scaled(form(d, simple, quiver))


def reflect_params(node: str, q: Params, quiver: ColouredQuiver) -> Params:
    """r_i(q)_j = q_i^{-(e_i, e_j)} q_j."""
    if node not in quiver.index:
        raise UnknownNodeError(node)
    if q.nodes != quiver.nodes:
        raise IndexMismatchError(quiver.nodes, q.nodes)
    row = cartan_matrix(quiver)[quiver.index[node]]
    q_i = q[node]
    coords = tuple(
        power_product((q_i, q_j), (-int(c), 1)) for q_j, c in zip(q.coords, row)
    )
    return Params(q.nodes, coords)


def reflect_sequence(
    nodes: Iterable[str], d: RootVector, q: Params, quiver: ColouredQuiver
) -> tuple[RootVector, Params]:
    """Apply (s_i, r_i) for each node in turn."""
    for node in nodes:
        d = reflect_dim(node, d, quiver)
        q = reflect_params(node, q, quiver)
    return d, q

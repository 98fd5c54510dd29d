"""Graph representations: one linear map per oriented edge."""

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from ..blocklinalg.numerics import inv, is_exact_array, zeros_like_shape
from ..exceptions import InvalidQuiverError, UnknownNodeError
from ..graph.quiver import ColouredQuiver
from ..graph.spec_format import GraphSpec
from ..kacmoody.roots import RootVector

MapKey = tuple[str, str]


@dataclass
class GraphRep:
    """A representation of the doubled graph.

    ``maps[(head, tail)]`` is v_{head,tail}: V_tail -> V_head, a matrix of
    shape (dims[head], dims[tail]). Both orientations of every edge are
    present; missing maps are filled with zeros.
    """

    quiver: ColouredQuiver
    dims: dict[str, int]
    maps: dict[MapKey, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Fill missing maps and validate shapes."""
        for node in self.dims:
            if node not in self.quiver.index:
                raise UnknownNodeError(node)
        self.dims = {node: int(self.dims.get(node, 0)) for node in self.quiver.nodes}
        oriented = set(self.quiver.oriented_edges())
        for key in self.maps:
            if key not in oriented:
                raise InvalidQuiverError(f"No edge {key[0]}<-{key[1]} in the quiver")
        exact = any(is_exact_array(m) for m in self.maps.values())
        like = np.empty((0, 0), dtype=object if exact else complex)
        for head, tail in self.quiver.oriented_edges():
            shape = (self.dims[head], self.dims[tail])
            matrix = self.maps.get((head, tail))
            if matrix is None or (matrix.size == 0 and 0 in shape):
                matrix = zeros_like_shape(shape, like)
            if matrix.shape != shape:
                raise InvalidQuiverError(
                    f"Map {head}<-{tail} has shape {matrix.shape}, expected {shape}"
                )
            if not exact:
                matrix = np.asarray(matrix, dtype=complex)
            self.maps[(head, tail)] = matrix

    @classmethod
    def zero(
        cls, quiver: ColouredQuiver, dims: Mapping[str, int], exact: bool = False
    ) -> "GraphRep":
        """The representation with every map zero."""
        like = np.empty((0, 0), dtype=object if exact else complex)
        maps = {
            (h, t): zeros_like_shape((dims.get(h, 0), dims.get(t, 0)), like)
            for h, t in quiver.oriented_edges()
        }
        return cls(quiver, dict(dims), maps)

    @classmethod
    def random(
        cls,
        quiver: ColouredQuiver,
        dims: Mapping[str, int],
        rng: np.random.Generator,
        scale: float = 1.0,
    ) -> "GraphRep":
        """Entries drawn from a complex Gaussian of standard deviation ``scale``."""
        maps = {}
        for h, t in quiver.oriented_edges():
            shape = (dims.get(h, 0), dims.get(t, 0))
            maps[(h, t)] = scale * (
                rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
            ) / np.sqrt(2)
        return cls(quiver, dict(dims), maps)

    @classmethod
    def from_spec(cls, spec: GraphSpec) -> "GraphRep":
        """Load the Representation section of a graph-spec document."""
        return cls(spec.quiver, spec.dimension_vector(), dict(spec.maps))

    @property
    def exact(self) -> bool:
        """True if the maps hold exact sympy entries."""
        return any(is_exact_array(m) for m in self.maps.values())

    @property
    def total(self) -> int:
        """dim V."""
        return sum(self.dims.values())

    def map(self, head: str, tail: str) -> np.ndarray:
        """v_{head,tail}."""
        try:
            return self.maps[(head, tail)]
        except KeyError as e:
            raise InvalidQuiverError(f"No edge {head}<-{tail}") from e

    def dimension_vector(self) -> RootVector:
        """Dimension vector in quiver node order."""
        return RootVector.from_mapping(self.quiver, self.dims)

    def offsets(self) -> dict[str, slice]:
        """Index range of each V_i inside V, in quiver node order."""
        out = {}
        start = 0
        for node in self.quiver.nodes:
            out[node] = slice(start, start + self.dims[node])
            start += self.dims[node]
        return out

    def embedded_maps(self) -> list[np.ndarray]:
        """Each v_a as an endomorphism of V = sum V_i."""
        n = self.total
        where = self.offsets()
        out = []
        for (head, tail), matrix in self.maps.items():
            big = np.zeros((n, n), dtype=complex)
            big[where[head], where[tail]] = np.asarray(matrix, dtype=complex)
            out.append(big)
        return out

    def projections(self) -> list[np.ndarray]:
        """The idempotents of V onto each nonzero V_i."""
        n = self.total
        out = []
        for node, span in self.offsets().items():
            if self.dims[node]:
                proj = np.zeros((n, n), dtype=complex)
                proj[span, span] = np.eye(self.dims[node])
                out.append(proj)
        return out

    def transpose(self) -> "GraphRep":
        """The representation v'_{ij} = v_{ji}^T."""
        maps = {(h, t): self.maps[(t, h)].T.copy() for h, t in self.maps}
        return GraphRep(self.quiver, dict(self.dims), maps)

    def conjugated(self, group: Mapping[str, np.ndarray]) -> "GraphRep":
        """Action of H = prod GL(V_i): v_{ij} -> g_i v_{ij} g_j^{-1}."""
        inverses = {node: inv(g) for node, g in group.items()}
        maps = {}
        for (h, t), matrix in self.maps.items():
            left = group.get(h)
            right = inverses.get(t)
            out = matrix if left is None else left @ matrix
            out = out if right is None else out @ right
            maps[(h, t)] = out
        return GraphRep(self.quiver, dict(self.dims), maps)

    def restricted(self, bases: Mapping[str, np.ndarray]) -> "GraphRep":
        """Restriction to an invariant graded subspace given by orthonormal bases."""
        dims = {node: bases[node].shape[1] for node in self.quiver.nodes}
        maps = {
            (h, t): bases[h].conj().T @ np.asarray(m, dtype=complex) @ bases[t]
            for (h, t), m in self.maps.items()
        }
        return GraphRep(self.quiver, dims, maps)

    def coordinate_count(self) -> int:
        """Number of complex coordinates of the representation space."""
        return sum(m.size for m in self.maps.values())

    def flatten(self) -> np.ndarray:
        """All map entries as one complex vector, in oriented-edge order."""
        parts = [
            np.asarray(self.maps[key], dtype=complex).ravel()
            for key in self.quiver.oriented_edges()
        ]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)

    def with_vector(self, vec: np.ndarray) -> "GraphRep":
        """Representation of the same shape with entries taken from ``vec``."""
        maps = {}
        start = 0
        for head, tail in self.quiver.oriented_edges():
            shape = (self.dims[head], self.dims[tail])
            size = shape[0] * shape[1]
            maps[(head, tail)] = np.asarray(vec[start : start + size]).reshape(shape)
            start += size
        return GraphRep(self.quiver, dict(self.dims), maps)

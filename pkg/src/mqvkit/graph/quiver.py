"""Coloured quivers and complete k-partite graphs."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import networkx as nx
import numpy as np

from ..exceptions import InvalidPartitionError, InvalidQuiverError, UnknownNodeError

if TYPE_CHECKING:
    from .legs import Leg


@dataclass(frozen=True)
class Edge:
    """An uncoloured-direction edge; ``first`` precedes ``second`` in colour order."""

    first: str
    second: str
    colour: int
    multiplicity: int = 1


@dataclass(frozen=True)
class ColourBlock:
    """One monochromatic complete k-partite subgraph with its ordering."""

    colour: int
    parts: tuple[tuple[str, ...], ...]

    @property
    def nodes(self) -> tuple[str, ...]:
        """Nodes in colour order (parts concatenated)."""
        return tuple(node for part in self.parts for node in part)

    def part_of(self, node: str) -> int:
        """Index of the part containing ``node``."""
        for j, part in enumerate(self.parts):
            if node in part:
                return j
        raise UnknownNodeError(node)

    def edges(self) -> list[Edge]:
        """All edges of the block: pairs of nodes in different parts."""
        order = self.nodes
        out = []
        for a in range(len(order)):
            for b in range(a + 1, len(order)):
                if self.part_of(order[a]) != self.part_of(order[b]):
                    out.append(Edge(order[a], order[b], self.colour))
        return out


@dataclass(frozen=True)
class LegChain:
    """A leg glued to a core node of a supernova graph."""

    core_node: str
    nodes: tuple[str, ...]  # starts with the core node
    leg: Leg


@dataclass(frozen=True)
class SupernovaLayout:
    """Records how a supernova graph splits into core and legs."""

    core_colour: int
    core_parts: tuple[tuple[str, ...], ...]
    legs: tuple[LegChain, ...]

    @property
    def core_nodes(self) -> tuple[str, ...]:
        """Core nodes in part order."""
        return tuple(node for part in self.core_parts for node in part)

    def chain(self, core_node: str) -> LegChain:
        """Leg chain attached to ``core_node``."""
        for chain in self.legs:
            if chain.core_node == core_node:
                return chain
        raise UnknownNodeError(core_node)

    def locate(self, node: str) -> tuple[str, int]:
        """Return (core node, 1-based leg position) for any supernova node."""
        for chain in self.legs:
            if node in chain.nodes:
                return chain.core_node, chain.nodes.index(node) + 1
        raise UnknownNodeError(node)

    def part_index(self, core_node: str) -> int:
        """Index of the core part containing ``core_node``."""
        for j, part in enumerate(self.core_parts):
            if core_node in part:
                return j
        raise UnknownNodeError(core_node)


@dataclass(frozen=True)
class ColouredQuiver:
    """A simply-laced coloured quiver with part and colour orderings.

    Each colour block is exactly the complete k-partite graph of its ordered
    partition. Nodes not covered by any block are isolated.
    """

    nodes: tuple[str, ...]
    blocks: tuple[ColourBlock, ...]
    colour_order: tuple[tuple[str, tuple[int, ...]], ...] = ()
    name: str = ""
    supernova: SupernovaLayout | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        """Fill in the default colour order and validate."""
        if not self.colour_order:
            default = tuple(
                (
                    node,
                    tuple(
                        sorted(b.colour for b in self.blocks if node in b.nodes)
                    ),
                )
                for node in self.nodes
            )
            object.__setattr__(self, "colour_order", default)
        self.validate()

    def validate(self) -> None:
        """Check the structural invariants.

        Raises:
            InvalidQuiverError: On duplicate nodes, unknown block nodes,
                repeated colours, doubled edges or inconsistent colour orders.
        """
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidQuiverError("Duplicate node names")
        known = set(self.nodes)
        colours = [b.colour for b in self.blocks]
        if len(set(colours)) != len(colours):
            raise InvalidQuiverError("Colour used by two blocks")
        seen_pairs: dict[frozenset[str], int] = {}
        for block in self.blocks:
            if not block.parts or any(not part for part in block.parts):
                raise InvalidQuiverError(f"Colour {block.colour} has an empty part")
            members = block.nodes
            if len(set(members)) != len(members):
                raise InvalidQuiverError(
                    f"Node repeated in ordering of colour {block.colour}"
                )
            unknown = set(members) - known
            if unknown:
                raise InvalidQuiverError(
                    f"Colour {block.colour} uses {sorted(unknown)}"
                )
            for edge in block.edges():
                pair = frozenset((edge.first, edge.second))
                if pair in seen_pairs:
                    raise InvalidQuiverError(
                        f"Nodes {sorted(pair)} joined in colours "
                        f"{seen_pairs[pair]} and {block.colour}"
                    )
                seen_pairs[pair] = block.colour
        orders = dict(self.colour_order)
        if set(orders) != known:
            raise InvalidQuiverError("Colour order must list every node once")
        for node, order in orders.items():
            expected = {b.colour for b in self.blocks if node in b.nodes}
            if set(order) != expected or len(order) != len(expected):
                raise InvalidQuiverError(
                    f"Colour order at {node!r} is {order}, "
                    f"colours present {sorted(expected)}"
                )

    @cached_property
    def index(self) -> dict[str, int]:
        """Dense integer index per node."""
        return {node: k for k, node in enumerate(self.nodes)}

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """All edges across colours."""
        return tuple(edge for block in self.blocks for edge in block.edges())

    @property
    def colours(self) -> tuple[int, ...]:
        """Colour identifiers."""
        return tuple(b.colour for b in self.blocks)

    def block(self, colour: int) -> ColourBlock:
        """The block of a colour."""
        for b in self.blocks:
            if b.colour == colour:
                return b
        raise InvalidQuiverError(f"No colour {colour}")

    def colours_at(self, node: str) -> tuple[int, ...]:
        """Cyclic colour order at ``node``."""
        if node not in self.index:
            raise UnknownNodeError(node)
        return dict(self.colour_order)[node]

    def oriented_edges(self) -> list[tuple[str, str]]:
        """Both orientations (head, tail) of every edge."""
        out = []
        for edge in self.edges:
            out.append((edge.first, edge.second))
            out.append((edge.second, edge.first))
        return out

    def adjacency(self) -> np.ndarray:
        """Symmetric integer adjacency matrix in node order."""
        n = len(self.nodes)
        adj = np.zeros((n, n), dtype=int)
        for edge in self.edges:
            i, j = self.index[edge.first], self.index[edge.second]
            adj[i, j] += edge.multiplicity
            adj[j, i] += edge.multiplicity
        return adj

    def to_networkx(self) -> nx.Graph:
        """Underlying simple graph with a ``colour`` edge attribute."""
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        for edge in self.edges:
            graph.add_edge(edge.first, edge.second, colour=edge.colour)
        return graph

    def is_monochromatic(self) -> bool:
        """True if at most one colour carries edges."""
        return sum(1 for b in self.blocks if len(b.parts) > 1) <= 1

    def with_block_order(
        self, colour: int, parts: Sequence[Sequence[str]]
    ) -> ColouredQuiver:
        """Same quiver with the part/node ordering of one colour replaced."""
        new_block = ColourBlock(colour, tuple(tuple(p) for p in parts))
        if sorted(new_block.nodes) != sorted(self.block(colour).nodes):
            raise InvalidQuiverError("Reordering must keep the node set of the colour")
        blocks = tuple(new_block if b.colour == colour else b for b in self.blocks)
        return ColouredQuiver(
            nodes=self.nodes,
            blocks=blocks,
            colour_order=self.colour_order,
            name=self.name,
            supernova=self.supernova,
        )


def build_complete_kpartite(
    parts: Iterable[Sequence[str]], colour: int = 0, name: str = ""
) -> ColouredQuiver:
    """Build the monochromatic complete k-partite quiver of an ordered partition.

    Args:
        parts: Ordered parts, each an ordered sequence of node names.
        colour: Colour identifier for every edge.
        name: Optional display name.

    Returns:
        ColouredQuiver with a single colour block.

    Raises:
        InvalidPartitionError: If a part is empty, parts overlap, or there
            are no parts.
    """
    part_list = [tuple(p) for p in parts]
    if not part_list:
        raise InvalidPartitionError("Partition has no parts", [])
    if any(len(p) == 0 for p in part_list):
        raise InvalidPartitionError("Empty part", [list(p) for p in part_list])
    flat = [node for part in part_list for node in part]
    if len(set(flat)) != len(flat):
        raise InvalidPartitionError(
            "Parts are not disjoint", [list(p) for p in part_list]
        )
    block = ColourBlock(colour, tuple(part_list))
    return ColouredQuiver(nodes=tuple(flat), blocks=(block,), name=name)


def expected_edge_count(part_sizes: Sequence[int]) -> int:
    """Number of edges of the complete k-partite graph with these part sizes."""
    return sum(
        part_sizes[j] * part_sizes[l]
        for j in range(len(part_sizes))
        for l in range(j + 1, len(part_sizes))  # noqa: E741
    )

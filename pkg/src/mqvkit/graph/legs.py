"""Type-A legs and supernova graphs."""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import logfire

from ..exceptions import InvalidQuiverError, NotSupernovaError, UnknownNodeError
from ..scalars import Scalar, format_scalar, to_complex
from .quiver import (
    ColourBlock,
    ColouredQuiver,
    LegChain,
    SupernovaLayout,
    build_complete_kpartite,
)


@dataclass(frozen=True)
class Leg:
    """Dimensions and parameters along a leg, starting at the core node."""

    dims: tuple[int, ...]
    params: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        """Validate lengths and entries."""
        if not self.dims:
            raise InvalidQuiverError("A leg has at least its core node")
        if len(self.dims) != len(self.params):
            raise InvalidQuiverError(
                f"Leg has {len(self.dims)} dims but {len(self.params)} params"
            )
        if any(d < 0 for d in self.dims):
            raise InvalidQuiverError(f"Negative leg dimension in {self.dims}")
        if any(abs(to_complex(q)) == 0 for q in self.params):
            raise InvalidQuiverError("Leg parameters must be nonzero")

    @property
    def length(self) -> int:
        """Number of edges of the leg."""
        return len(self.dims) - 1

    @property
    def markings(self) -> tuple[Scalar, ...]:
        """Cumulative products xi_k = q_1 ... q_k."""
        out: list[Scalar] = []
        acc: Scalar | None = None
        for q in self.params:
            acc = q if acc is None else acc * q
            out.append(acc)
        return tuple(out)

    def describe(self) -> str:
        """Compact text form used in reports and spec files."""
        dims = " ".join(str(d) for d in self.dims)
        params = " ".join(format_scalar(q) for q in self.params)
        return f"dims={dims}; params={params}"


def leg_node_name(core_node: str, position: int) -> str:
    """Name of the leg node at 1-based ``position`` (position 1 is the core)."""
    return core_node if position == 1 else f"{core_node}.{position}"


def attach_legs(core: ColouredQuiver, legs: Mapping[str, Leg]) -> ColouredQuiver:
    """Glue a leg onto every node of a complete k-partite core.

    Each leg edge gets a fresh colour; the core colour is untouched.

    Args:
        core: Monochromatic complete k-partite quiver.
        legs: One leg per core node (length-0 legs allowed).

    Returns:
        Supernova quiver carrying a SupernovaLayout.

    Raises:
        NotSupernovaError: If the core has more than one colour block.
        UnknownNodeError: If a leg names a node outside the core.
    """
    if len(core.blocks) > 1 or not core.is_monochromatic():
        raise NotSupernovaError("Core must be a single complete k-partite colour")
    for node in legs:
        if node not in core.index:
            raise UnknownNodeError(node)
    if core.blocks:
        core_colour = core.blocks[0].colour
        core_parts = core.blocks[0].parts
    else:
        core_colour = 0
        core_parts = tuple((node,) for node in core.nodes)
    next_colour = max(core.colours, default=-1) + 1

    nodes = list(core.nodes)
    blocks = list(core.blocks)
    orders: dict[str, list[int]] = {n: list(core.colours_at(n)) for n in core.nodes}
    chains = []
    for core_node in core.nodes:
        if core_node not in legs:
            raise NotSupernovaError(f"No leg given for core node {core_node!r}")
        leg = legs[core_node]
        chain = [core_node]
        for position in range(2, len(leg.dims) + 1):
            new_node = leg_node_name(core_node, position)
            if new_node in orders:
                raise InvalidQuiverError(f"Leg node name clash: {new_node!r}")
            nodes.append(new_node)
            blocks.append(ColourBlock(next_colour, ((chain[-1],), (new_node,))))
            orders[chain[-1]].append(next_colour)
            orders[new_node] = [next_colour]
            chain.append(new_node)
            next_colour += 1
        chains.append(LegChain(core_node, tuple(chain), leg))

    layout = SupernovaLayout(core_colour, core_parts, tuple(chains))
    quiver = ColouredQuiver(
        nodes=tuple(nodes),
        blocks=tuple(blocks),
        colour_order=tuple((n, tuple(orders[n])) for n in nodes),
        name=core.name,
        supernova=layout,
    )
    logfire.debug(
        "Attached legs", core=core.name, nodes=len(nodes), colours=len(blocks)
    )
    return quiver


def require_supernova(quiver: ColouredQuiver) -> SupernovaLayout:
    """Return the supernova layout or raise."""
    if quiver.supernova is None:
        raise NotSupernovaError(f"Quiver {quiver.name!r} is not a supernova graph")
    return quiver.supernova


def replace_legs(quiver: ColouredQuiver, legs: Mapping[str, Leg]) -> ColouredQuiver:
    """Rebuild a supernova graph with new legs on the same core."""
    layout = require_supernova(quiver)
    core = build_complete_kpartite(
        layout.core_parts, colour=layout.core_colour, name=quiver.name
    )
    return attach_legs(core, legs)


def legs_from_lists(
    dims: Mapping[str, Sequence[int]], params: Mapping[str, Sequence[Scalar]]
) -> dict[str, Leg]:
    """Pair per-node dimension and parameter lists into legs."""
    return {node: Leg(tuple(dims[node]), tuple(params[node])) for node in dims}

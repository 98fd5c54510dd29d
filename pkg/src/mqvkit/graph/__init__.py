"""Coloured quivers, supernova graphs and fission graphs."""

from .fission import (
    EigenNode,
    IrregularPart,
    IrregularType,
    fission_graph,
    fission_multiplicity,
)
from .legs import (
    Leg,
    attach_legs,
    leg_node_name,
    legs_from_lists,
    replace_legs,
    require_supernova,
)
from .quiver import (
    ColourBlock,
    ColouredQuiver,
    Edge,
    LegChain,
    SupernovaLayout,
    build_complete_kpartite,
    expected_edge_count,
)
from .spec_format import GraphSpec, parse_spec, render_spec

__all__ = [
    "ColouredQuiver",
    "ColourBlock",
    "Edge",
    "LegChain",
    "SupernovaLayout",
    "build_complete_kpartite",
    "expected_edge_count",
    "Leg",
    "attach_legs",
    "leg_node_name",
    "legs_from_lists",
    "replace_legs",
    "require_supernova",
    "EigenNode",
    "IrregularPart",
    "IrregularType",
    "fission_graph",
    "fission_multiplicity",
    "GraphSpec",
    "parse_spec",
    "render_spec",
]

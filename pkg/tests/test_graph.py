"""Tests for coloured quivers, legs, fission graphs and graph-spec documents."""

import numpy as np
import pytest
import sympy

from mqvkit.exceptions import (
    InvalidIrregularTypeError,
    InvalidPartitionError,
    InvalidQuiverError,
    NotSupernovaError,
    SpecParseError,
    UnknownNodeError,
)
from mqvkit.graph import (
    ColourBlock,
    ColouredQuiver,
    EigenNode,
    IrregularPart,
    IrregularType,
    Leg,
    attach_legs,
    build_complete_kpartite,
    expected_edge_count,
    fission_graph,
    fission_multiplicity,
    parse_spec,
    render_spec,
)
from mqvkit.schemas import ArithmeticMode

from .conftest import IRREGULAR_SPEC, STAR_SPEC, TRIANGLE_SPEC


class TestCompleteKPartite:
    def test_triangle_edges(self, triangle):
        assert len(triangle.edges) == 3
        assert triangle.is_monochromatic()
        assert triangle.to_networkx().number_of_edges() == 3

    def test_edge_count_formula(self):
        q = build_complete_kpartite([["a", "b"], ["c"], ["d", "e"]])
        assert len(q.edges) == expected_edge_count([2, 1, 2]) == 8

    def test_no_edges_inside_a_part(self):
        q = build_complete_kpartite([["a", "b"], ["c"]])
        pairs = {frozenset((e.first, e.second)) for e in q.edges}
        assert frozenset(("a", "b")) not in pairs

    def test_adjacency_is_symmetric(self, triangle):
        adj = triangle.adjacency()
        assert np.array_equal(adj, adj.T)
        assert adj.sum() == 6

    def test_empty_part_rejected(self):
        with pytest.raises(InvalidPartitionError):
            build_complete_kpartite([["a"], []])

    def test_overlapping_parts_rejected(self):
        with pytest.raises(InvalidPartitionError):
            build_complete_kpartite([["a", "b"], ["b"]])


class TestColouredQuiver:
    def test_doubled_edge_rejected(self):
        blocks = (
            ColourBlock(0, (("1",), ("2",))),
            ColourBlock(1, (("1",), ("2",))),
        )
        with pytest.raises(InvalidQuiverError):
            ColouredQuiver(nodes=("1", "2"), blocks=blocks)

    def test_unknown_block_node_rejected(self):
        with pytest.raises(InvalidQuiverError):
            ColouredQuiver(nodes=("1",), blocks=(ColourBlock(0, (("1",), ("2",))),))

    def test_default_colour_order(self):
        blocks = (
            ColourBlock(0, (("1",), ("2",))),
            ColourBlock(1, (("2",), ("3",))),
        )
        q = ColouredQuiver(nodes=("1", "2", "3"), blocks=blocks)
        assert q.colours_at("2") == (0, 1)
        assert q.colours_at("1") == (0,)

    def test_unknown_node(self, triangle):
        with pytest.raises(UnknownNodeError):
            triangle.colours_at("9")

    def test_reordering_keeps_edges(self, triangle):
        reordered = triangle.with_block_order(0, [["3"], ["1"], ["2"]])
        assert reordered.block(0).nodes == ("3", "1", "2")
        assert len(reordered.edges) == len(triangle.edges)


class TestLegs:
    def test_attach_names_leg_nodes(self, interval):
        legs = {
            "1": Leg((2, 1), (sympy.Integer(2), sympy.Integer(3))),
            "2": Leg((1,), (sympy.Integer(1),)),
        }
        q = attach_legs(interval, legs)
        assert q.nodes == ("1", "2", "1.2")
        layout = q.supernova
        assert layout.chain("1").nodes == ("1", "1.2")
        assert layout.locate("1.2") == ("1", 2)
        assert len(q.colours) == 2

    def test_leg_markings_are_cumulative(self):
        leg = Leg((3, 2, 1), (sympy.Integer(2), sympy.Integer(3), sympy.Integer(5)))
        assert leg.markings == (2, 6, 30)
        assert leg.length == 2

    def test_mismatched_leg_rejected(self):
        with pytest.raises(InvalidQuiverError):
            Leg((2, 1), (sympy.Integer(2),))

    def test_two_colour_core_rejected(self):
        blocks = (
            ColourBlock(0, (("1",), ("2",))),
            ColourBlock(1, (("2",), ("3",))),
        )
        q = ColouredQuiver(nodes=("1", "2", "3"), blocks=blocks)
        legs = {n: Leg((1,), (sympy.Integer(1),)) for n in q.nodes}
        with pytest.raises(NotSupernovaError):
            attach_legs(q, legs)


class TestFission:
    def test_edges_join_distinct_parts(self):
        irregular = IrregularType(
            (
                IrregularPart(0, (EigenNode("a", 0), EigenNode("b", 1))),
                IrregularPart(1, (EigenNode("c", 0),)),
            )
        )
        q = fission_graph(irregular, name="f")
        assert len(q.edges) == 2
        assert {e.colour for e in q.edges} == {0}

    @pytest.mark.parametrize(
        ("a_i", "t_i", "a_j", "t_j", "expected"),
        [(0, 0, 1, 5, 1), (2, 1, 3, 1, 1), (0, 1, 0, 2, 0), (1, 1, 1, 1, 0)],
    )
    def test_multiplicity_from_degree(self, a_i, t_i, a_j, t_j, expected):
        assert fission_multiplicity(a_i, t_i, a_j, t_j) == expected

    def test_repeated_a_eigenvalue_rejected(self):
        with pytest.raises(InvalidIrregularTypeError):
            IrregularType(
                (
                    IrregularPart(0, (EigenNode("a", 0),)),
                    IrregularPart(0, (EigenNode("b", 1),)),
                )
            )

    def test_repeated_t_eigenvalue_rejected(self):
        with pytest.raises(InvalidIrregularTypeError):
            IrregularType(
                (IrregularPart(0, (EigenNode("a", 0), EigenNode("b", 0))),)
            )


class TestSpecFormat:
    def test_triangle_document(self):
        spec = parse_spec(TRIANGLE_SPEC)
        assert spec.name == "triangle"
        assert spec.quiver.nodes == ("1", "2", "3")
        assert spec.dimension_vector() == {"1": 1, "2": 1, "3": 1}
        assert spec.params["3"] == sympy.Rational(1, 6)

    def test_float_mode(self):
        spec = parse_spec(TRIANGLE_SPEC, ArithmeticMode.FLOAT)
        assert isinstance(spec.params["3"], complex)
        assert abs(spec.params["3"] - 1 / 6) < 1e-15

    def test_legs_section(self):
        spec = parse_spec(STAR_SPEC)
        assert spec.quiver.nodes == ("0", "0.2")
        assert spec.dimension_vector() == {"0": 2, "0.2": 1}
        assert spec.parameter_vector()["0.2"] == 3

    def test_irregular_type_section(self):
        spec = parse_spec(IRREGULAR_SPEC)
        assert spec.irregular_type is not None
        assert spec.irregular_type.dims == {"a": 1, "b": 2, "c": 1}
        assert len(spec.core.edges) == 2

    def test_classes_and_representation(self):
        text = (
            "# pair\n\n## Colours\n0: 1 | 2\n\n"
            "## Classes\n1: 2:(1) 3:(1)\n2: 1/6:(1)\n\n"
            "## Representation\n1<-2:\n1\n0\n2<-1:\n1 2\n"
        )
        spec = parse_spec(text)
        assert spec.classes["1"].dimension == 2
        assert spec.maps[("1", "2")].shape == (2, 1)
        assert spec.maps[("2", "1")][0, 1] == 2

    def test_round_trip_structure(self):
        spec = parse_spec(STAR_SPEC)
        again = parse_spec(render_spec(spec))
        assert again.quiver.nodes == spec.quiver.nodes
        assert again.legs == spec.legs

    def test_error_reports_line(self):
        text = "# bad\n\n## Colours\n0: 1 | 2\n\n## Dimensions\n1: one\n"
        with pytest.raises(SpecParseError) as info:
            parse_spec(text)
        assert info.value.line == 7
        assert info.value.column == 4

    def test_unknown_section(self):
        with pytest.raises(SpecParseError) as info:
            parse_spec("# bad\n## Edges\n1 2\n")
        assert info.value.line == 2

    def test_unknown_node_in_data(self):
        text = "# bad\n\n## Colours\n0: 1 | 2\n\n## Parameters\n7: 2\n"
        with pytest.raises(SpecParseError):
            parse_spec(text)

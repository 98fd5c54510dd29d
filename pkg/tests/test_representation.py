"""Tests for graph representations, the moment map and irreducibility."""

import numpy as np
import pytest
import sympy

from mqvkit.exceptions import InvalidQuiverError, NotInvertibleError, UnknownNodeError
from mqvkit.kacmoody import Params, expected_dimension
from mqvkit.representation import (
    GraphRep,
    algebra_dimension,
    assemble_unitriangular,
    fiber_residual,
    fission_algebra_check,
    in_fiber,
    invertibility_minors,
    is_irreducible,
    moment_map,
    quotient_dimension_probe,
    triangle_invariants,
)


def _scalar_rep(quiver, a, b):
    maps = {("1", "2"): np.array([[a]]), ("2", "1"): np.array([[b]])}
    return GraphRep(quiver, {"1": 1, "2": 1}, maps)


def _exact_rep(quiver, a, b):
    maps = {
        ("1", "2"): np.array([[sympy.Integer(a)]], dtype=object),
        ("2", "1"): np.array([[sympy.Integer(b)]], dtype=object),
    }
    return GraphRep(quiver, {"1": 1, "2": 1}, maps)


class TestGraphRep:
    def test_missing_maps_are_zero(self, interval):
        rep = GraphRep(interval, {"1": 2, "2": 1})
        assert rep.map("1", "2").shape == (2, 1)
        assert not np.any(rep.map("2", "1"))
        assert rep.total == 3

    def test_wrong_shape_rejected(self, interval):
        with pytest.raises(InvalidQuiverError):
            GraphRep(interval, {"1": 1, "2": 1}, {("1", "2"): np.zeros((2, 2))})

    def test_unknown_node_rejected(self, interval):
        with pytest.raises(UnknownNodeError):
            GraphRep(interval, {"7": 1})

    def test_flatten_round_trip(self, triangle, rng):
        rep = GraphRep.random(triangle, {"1": 1, "2": 2, "3": 1}, rng)
        again = rep.with_vector(rep.flatten())
        for key, matrix in rep.maps.items():
            assert np.array_equal(again.maps[key], matrix)


class TestMomentMap:
    def test_interval_closed_form(self, interval):
        value = moment_map(_scalar_rep(interval, 1.0, 1.0))
        assert np.isclose(value.mu["1"][0, 0], 0.5)
        assert np.isclose(value.mu["2"][0, 0], 2.0)

    def test_exact_interval(self, interval):
        value = moment_map(_exact_rep(interval, 2, 1))
        assert value.mu["1"][0, 0] == sympy.Rational(1, 3)
        assert value.mu["2"][0, 0] == 3
        assert value.det_product() == 1

    def test_unitriangular_blocks(self, interval):
        v_plus, v_minus, grading = assemble_unitriangular(
            _scalar_rep(interval, 3.0, 5.0), 0
        )
        assert grading.labels == ("1", "2")
        assert np.allclose(v_plus, [[1.0, 3.0], [0.0, 1.0]])
        assert np.allclose(v_minus, [[1.0, 0.0], [5.0, 1.0]])

    def test_relation_residuals(self, interval):
        rep = _scalar_rep(interval, 1.0, 1.0)
        residuals = fission_algebra_check(rep, {"1": 0.5, "2": 2})
        assert max(residuals.values()) < 1e-12
        off = fission_algebra_check(rep, {"1": 1, "2": 2})
        assert np.isclose(off["1"], 0.5)
        assert off["2"] < 1e-12

    def test_minors(self, interval):
        minors, f_c = invertibility_minors(_scalar_rep(interval, 1.0, 1.0), 0)
        assert np.isclose(minors["2"], 2.0)
        assert np.isclose(minors["1"], 1.0)
        assert np.isclose(f_c, 2.0)

    def test_not_invertible(self, interval):
        with pytest.raises(NotInvertibleError) as info:
            moment_map(_scalar_rep(interval, 1.0, -1.0))
        assert info.value.node == "2"
        assert fiber_residual(_scalar_rep(interval, 1.0, -1.0), {}) == float("inf")

    def test_determinant_is_one(self, triangle, rng):
        for _ in range(20):
            rep = GraphRep.random(triangle, {"1": 2, "2": 1, "3": 2}, rng, scale=0.5)
            try:
                value = moment_map(rep)
            except NotInvertibleError:
                continue
            assert abs(complex(value.det_product()) - 1.0) < 1e-9

    def test_equivariance(self, interval, rng):
        rep = GraphRep.random(interval, {"1": 2, "2": 2}, rng, scale=0.5)
        group = {n: rng.standard_normal((2, 2)) + 2 * np.eye(2) for n in ("1", "2")}
        before = moment_map(rep).mu
        after = moment_map(rep.conjugated(group)).mu
        for node, g in group.items():
            assert np.allclose(after[node], g @ before[node] @ np.linalg.inv(g))

    def test_fiber_membership(self, interval):
        rep = _scalar_rep(interval, 1.0, 1.0)
        assert in_fiber(rep, Params.from_mapping(interval, {"1": 0.5, "2": 2}))
        assert not in_fiber(rep, Params.from_mapping(interval, {"1": 2, "2": 3}))


class TestIrreducibility:
    def test_irreducible_interval(self, interval):
        rep = _scalar_rep(interval, 1.0, 1.0)
        assert is_irreducible(rep)
        assert algebra_dimension(rep) == 4

    def test_one_way_maps_are_reducible(self, interval):
        rep = _scalar_rep(interval, 1.0, 0.0)
        assert not is_irreducible(rep)
        assert algebra_dimension(rep) == 3

    def test_zero_space_is_not_irreducible(self, interval):
        assert not is_irreducible(GraphRep(interval, {"1": 0, "2": 0}))

    def test_random_triangle_is_irreducible(self, triangle, rng):
        rep = GraphRep.random(triangle, {"1": 1, "2": 2, "3": 1}, rng)
        assert is_irreducible(rep)


class TestQuotientDimensionAndTriangle:
    def test_quotient_dimension_matches_expected(self, interval):
        rep = _scalar_rep(interval, 1.0, 1.0)
        expected = expected_dimension(rep.dimension_vector(), interval)
        assert quotient_dimension_probe(rep) == expected == 0

    def test_triangle_relations(self, triangle, rng):
        checked = 0
        for _ in range(20):
            rep = GraphRep.random(triangle, {"1": 1, "2": 1, "3": 1}, rng, scale=0.5)
            try:
                invariants = triangle_invariants(rep)
            except NotInvertibleError:
                continue
            assert invariants.max_residual() < 1e-9
            checked += 1
        assert checked > 0

    def test_triangle_needs_unit_dimensions(self, triangle):
        with pytest.raises(InvalidQuiverError):
            triangle_invariants(GraphRep(triangle, {"1": 2, "2": 1, "3": 1}))


def _integer_rep(quiver, dims, rng):
    maps = {}
    for head in quiver.nodes:
        for tail in quiver.nodes:
            if head != tail:
                shape = (dims[head], dims[tail])
                maps[(head, tail)] = rng.choice([0.0, 0.0, 1.0, 1.0, 2.0], size=shape)
    return GraphRep(quiver, dims, maps)


def _path_spans(rep, source):
    """Exact bases of the path-algebra pieces e_j A e_i for i = source."""
    spans = {node: [] for node in rep.quiver.nodes}
    identity = sympy.eye(rep.dims[source])
    spans[source].append(identity)
    frontier = [(source, identity)]
    while frontier:
        node, path = frontier.pop()
        for (head, tail), matrix in rep.maps.items():
            if tail != node or rep.dims[head] == 0:
                continue
            entries = np.rint(np.real(matrix)).astype(int).tolist()
            image = sympy.Matrix(entries) * path
            stacked = [m.reshape(len(image), 1) for m in spans[head]]
            before = sympy.Matrix.hstack(*stacked).rank() if stacked else 0
            after = sympy.Matrix.hstack(*stacked, image.reshape(len(image), 1)).rank()
            if after > before:
                spans[head].append(image)
                frontier.append((head, image))
    return spans


def _has_annihilating_pair(span, rows, cols):
    """Some rank-one phi x^T is orthogonal to every matrix of the span."""
    if span:
        vectors = sympy.Matrix.vstack(*[m.reshape(1, rows * cols) for m in span])
        orthogonal = vectors.nullspace()
    else:
        orthogonal = [sympy.eye(rows * cols)[:, k] for k in range(rows * cols)]
    if not orthogonal:
        return False
    if min(rows, cols) == 1 or len(orthogonal) >= 2:
        return True
    return orthogonal[0].reshape(rows, cols).det() == 0


def _reducible_by_enumeration(rep):
    """A nonzero homogeneous vector generating a proper graded subrepresentation."""
    for source in rep.quiver.nodes:
        if rep.dims[source] == 0:
            continue
        spans = _path_spans(rep, source)
        for target, span in spans.items():
            rows, cols = rep.dims[target], rep.dims[source]
            if rows and _has_annihilating_pair(span, rows, cols):
                return True
    return False


class TestIrreducibilityAgainstEnumeration:
    def test_small_representations_agree(self, interval, triangle, rng):
        outcomes = []
        for _ in range(300):
            quiver = triangle if rng.random() < 0.5 else interval
            while True:
                dims = {n: int(rng.integers(0, 3)) for n in quiver.nodes}
                if 1 <= sum(dims.values()) <= 4:
                    break
            rep = _integer_rep(quiver, dims, rng)
            expected = not _reducible_by_enumeration(rep)
            assert is_irreducible(rep) == expected, (dims, rep.maps)
            outcomes.append(expected)
        assert any(outcomes)
        assert not all(outcomes)

"""Tests for splaying, tame-to-Stokes data, legs, readings and fission spaces."""

import numpy as np
import pytest
import sympy

from mqvkit.blocklinalg import ClassSpec, GradedSpace, build_phi_chain
from mqvkit.exceptions import (
    DegenerateTupleError,
    EmptyClassError,
    InvalidMarkingError,
    NotReducedError,
    ReflectionError,
    SingularMatrixError,
)
from mqvkit.graph import Leg, build_complete_kpartite
from mqvkit.kacmoody import reflect_dim, reflect_params
from mqvkit.representation import GraphRep, is_irreducible, moment_map
from mqvkit.stokes import (
    DifferentialMode,
    TameTuple,
    check_two_form_identity,
    emit_readings,
    fission_moment,
    fission_point_from_unitriangular,
    fuse,
    leg_to_class,
    marking_to_leg,
    mixed_pairs,
    mixed_to_xy,
    random_fission_point,
    random_tame_tuple,
    reduce_B,
    reflect_marking,
    splay,
    supernova_from_classes,
    swap_factors,
    tame_star_rep,
    tame_to_stokes,
    transport_adjacent_swap,
)

TWO = sympy.Integer(2)
THREE = sympy.Integer(3)
SIX = sympy.Integer(6)


def _pair(rng, n, dims, scale=0.5):
    total = sum(dims)
    x = rng.standard_normal((n, total)) + 1j * rng.standard_normal((n, total))
    y = rng.standard_normal((total, n)) + 1j * rng.standard_normal((total, n))
    return scale * x, scale * y, GradedSpace.from_dims(dims)


def _scalar_classes(values):
    return {
        node: ClassSpec.scalar(sympy.Rational(v), 1)
        for node, v in zip(("1", "2", "3"), values, strict=True)
    }


class TestSplay:
    @pytest.mark.parametrize("variant", ["hat_y", "hat_x"])
    def test_fuse_inverts_splay(self, rng, variant):
        x, y, grading = _pair(rng, 3, [1, 2, 2])
        point = fuse(splay(x, y, grading, variant), variant)
        assert np.allclose(point.x, x)
        assert np.allclose(point.y, y)
        target = np.eye(grading.total) + y @ x
        assert np.allclose(point.h @ point.S2 @ point.S1, target)

    def test_stokes_factors_are_triangular(self, rng):
        x, y, grading = _pair(rng, 2, [1, 1, 2])
        point = fuse(splay(x, y, grading), "hat_y")
        assert grading.is_unitriangular(point.S1, upper=True, atol=1e-10)
        assert grading.is_unitriangular(point.S2, upper=False, atol=1e-10)

    def test_fuse_needs_pairs(self):
        with pytest.raises(ValueError):
            fuse([])

    def test_mixed_pairs_round_trip(self, rng):
        x, y, grading = _pair(rng, 3, [2, 1])
        again_x, again_y = mixed_to_xy(mixed_pairs(x, y, grading))
        assert np.allclose(again_x, x)
        assert np.allclose(again_y, y)

    def test_mixed_pairs_need_two_blocks(self, rng):
        x, y, grading = _pair(rng, 2, [1, 1, 1])
        with pytest.raises(ValueError):
            mixed_pairs(x, y, grading)

    def test_swap_keeps_one_plus_xy(self, rng):
        x, y, grading = _pair(rng, 3, [2, 1])
        result = swap_factors(mixed_pairs(x, y, grading), grading)
        new_x, new_y = mixed_to_xy(result.pairs)
        assert np.allclose(np.eye(3) + new_x @ new_y, np.eye(3) + x @ y)
        assert result.grading.dims == (1, 2)
        chain = build_phi_chain(x, y, grading)
        assert np.allclose(result.g, chain.T[0])

    @pytest.mark.parametrize("variant", ["hat_y", "hat_x"])
    def test_random_round_trips(self, rng, variant):
        for _ in range(200):
            s = int(rng.integers(1, 5))
            dims = [int(k) for k in rng.integers(1, 4, size=s)]
            x, y, grading = _pair(rng, int(rng.integers(1, 4)), dims, scale=0.3)
            point = fuse(splay(x, y, grading, variant), variant)
            assert np.allclose(point.x, x, atol=1e-8)
            assert np.allclose(point.y, y, atol=1e-8)
            target = np.eye(grading.total) + y @ x
            assert np.allclose(point.h @ point.S2 @ point.S1, target, atol=1e-8)

    def test_swap_twice_restores_pairs_up_to_recorded_g(self, rng):
        for _ in range(50):
            dims = [int(k) for k in rng.integers(1, 4, size=2)]
            x, y, grading = _pair(rng, int(rng.integers(1, 4)), dims, scale=0.3)
            (y1, x1), (y2, x2_hat) = mixed_pairs(x, y, grading)
            once = swap_factors(((y1, x1), (y2, x2_hat)), grading)
            twice = swap_factors(once.pairs, once.grading)
            (a1, b1), (a2, b2) = twice.pairs
            assert np.allclose(a1 @ twice.g, y1)
            assert np.allclose(np.linalg.solve(twice.g, b1), x1)
            assert np.allclose(a2 @ once.g, y2)
            assert np.allclose(np.linalg.solve(once.g, b2), x2_hat)
            assert twice.grading.dims == grading.dims


class TestTame:
    def test_random_tuple(self, rng):
        result = tame_to_stokes(random_tame_tuple(3, [1, 2], rng))
        assert result.dims == (1, 2)
        assert result.max_residual() < 1e-9
        assert result.relation_ok

    def test_unipotent_parent(self):
        result = tame_to_stokes(TameTuple([np.array([[1.0, 1.0], [0.0, 1.0]])]))
        assert result.dims == (1,)
        assert result.relation == "1+BA parent"
        assert result.relation_ok
        assert result.product_class.partition(1) == (2,)
        assert result.stokes_class.partition(1) == (1,)

    def test_identity_tuple_is_degenerate(self):
        with pytest.raises(DegenerateTupleError):
            tame_to_stokes(TameTuple([np.eye(2), np.eye(2)]))

    def test_singular_matrix_rejected(self):
        with pytest.raises(SingularMatrixError):
            TameTuple([np.zeros((2, 2))])

    def test_star_rep_is_irreducible(self, rng):
        result = tame_to_stokes(random_tame_tuple(3, [1, 2], rng))
        assert is_irreducible(tame_star_rep(result))


class TestLegs:
    def test_marking_to_leg(self):
        c = ClassSpec(((SIX, (1,)), (TWO, (1,))))
        leg = marking_to_leg(c, (TWO, SIX))
        assert leg.dims == (2, 1)
        assert leg.params == (2, 3)

    def test_star_class(self):
        realised = leg_to_class(Leg((2, 1), (TWO, THREE)))
        assert realised.class_spec.matches(ClassSpec(((SIX, (1,)), (TWO, (1,)))))
        assert list(np.diag(realised.M)) == [6, 2]

    def test_class_round_trip(self):
        c = ClassSpec(((TWO, (2, 1)), (THREE, (1,))))
        leg = marking_to_leg(c, c.minimal_marking())
        assert leg.dims == (4, 2, 1)
        assert leg_to_class(leg).class_spec.matches(c)

    def test_marking_must_annihilate(self):
        with pytest.raises(InvalidMarkingError):
            marking_to_leg(ClassSpec(((TWO, (2,)),)), (TWO,))

    def test_rising_leg_is_empty(self):
        with pytest.raises(EmptyClassError) as info:
            leg_to_class(Leg((1, 2), (TWO, THREE)))
        assert info.value.position == 1

    def test_supernova_from_scalar_classes(self, triangle):
        quiver, d, q = supernova_from_classes(
            triangle, _scalar_classes(["2", "3", "1/6"])
        )
        assert quiver.nodes == ("1", "2", "3")
        assert d.coords == (1, 1, 1)
        assert q["3"] == sympy.Rational(1, 6)


class TestReflectMarking:
    def test_core_reflection(self, triangle):
        classes = _scalar_classes(["2", "3", "1/6"])
        quiver, _, _ = supernova_from_classes(triangle, classes)
        result = reflect_marking(quiver, classes, {}, "1")
        assert result.gamma == 2
        assert result.q["1"] == sympy.Rational(1, 2)
        assert result.q["2"] == 6
        assert result.d.coords == (1, 1, 1)
        assert result.classes["1"].eigenvalues == (sympy.Rational(1, 2),)

    def test_leg_reflection_swaps_marking(self):
        core = build_complete_kpartite([["0"]], name="star")
        classes = {"0": ClassSpec(((SIX, (1,)), (TWO, (1,))))}
        markings = {"0": (TWO, SIX)}
        quiver, _, _ = supernova_from_classes(core, classes, markings)
        result = reflect_marking(quiver, classes, markings, "0.2")
        assert result.markings["0"] == (SIX, TWO)
        assert result.q["0.2"] == sympy.Rational(1, 3)
        assert result.d.as_dict() == {"0": 2, "0.2": 1}

    def test_unit_parameter_rejected(self, triangle):
        classes = _scalar_classes(["1", "3", "1/3"])
        quiver, _, _ = supernova_from_classes(triangle, classes)
        with pytest.raises(ReflectionError):
            reflect_marking(quiver, classes, {}, "1")


class TestReadings:
    def test_triangle_readings(self, triangle):
        quiver, d, q = supernova_from_classes(
            triangle, _scalar_classes(["2", "3", "1/6"])
        )
        readings = emit_readings(quiver, q, d)
        assert [r.label for r in readings] == ["generic", "part 1", "part 2", "part 3"]
        assert readings[0].rank == 3
        assert readings[0].m == 0
        assert all(r.rank == 2 and r.m == 1 for r in readings[1:])
        assert not any(r.empty for r in readings)
        assert "tame:1" in readings[1].classes

    def test_star_readings_are_empty(self):
        core = build_complete_kpartite([["0"]], name="star")
        classes = {"0": ClassSpec(((SIX, (1,)), (TWO, (1,))))}
        quiver, d, q = supernova_from_classes(core, classes, {"0": (TWO, SIX)})
        readings = emit_readings(quiver, q, d)
        assert len(readings) == 2
        assert all(r.empty for r in readings)
        assert "dim U = 0" in readings[1].note


class TestFissionSpace:
    def test_reduce_inverts_unitriangular_point(self, interval):
        grading = GradedSpace.from_dims([1, 1])
        v_plus = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
        v_minus = np.array([[1.0, 0.0], [1.0, 1.0]], dtype=complex)
        reduced = reduce_B(fission_point_from_unitriangular(v_plus, v_minus, grading))
        assert np.allclose(reduced.v_plus, v_plus)
        assert np.allclose(reduced.v_minus, v_minus)
        maps = {("1", "2"): reduced.a, ("2", "1"): reduced.b}
        mu = moment_map(GraphRep(interval, {"1": 1, "2": 1}, maps)).mu
        assert np.allclose(reduced.moment[0], mu["1"])
        assert np.allclose(reduced.moment[1], mu["2"])

    def test_random_point_is_not_reduced(self, rng):
        point = random_fission_point(GradedSpace.from_dims([1, 2]), 2, rng)
        with pytest.raises(NotReducedError):
            reduce_B(point)

    def test_reduce_needs_two_pairs(self, rng):
        point = random_fission_point(GradedSpace.from_dims([1, 1]), 1, rng)
        with pytest.raises(ValueError):
            reduce_B(point)

    def test_transport_keeps_moment(self, rng):
        grading = GradedSpace.from_dims([1, 2, 1])
        point = random_fission_point(grading, 2, rng)
        moved = transport_adjacent_swap(point, 1)
        assert moved.grading.dims == (1, 1, 2)
        before, _ = fission_moment(point)
        after, _ = fission_moment(moved)
        assert np.allclose(after, before)
        index = grading.swap_index(1)
        assert np.allclose(moved.h, point.h[np.ix_(index, index)])

    def test_triangularity_enforced(self):
        grading = GradedSpace.from_dims([1, 1])
        lower = np.array([[1.0, 0.0], [1.0, 1.0]], dtype=complex)
        with pytest.raises(ValueError):
            fission_point_from_unitriangular(lower, lower, grading)


class TestTwoForm:
    def test_analytic(self, rng):
        x, y, grading = _pair(rng, 2, [1, 2], scale=0.3)
        assert check_two_form_identity(x, y, grading, samples=5, rng=rng) < 1e-9

    def test_finite_difference(self, rng):
        x, y, grading = _pair(rng, 2, [2, 1], scale=0.3)
        residual = check_two_form_identity(
            x, y, grading, samples=3, mode=DifferentialMode.FINITE_DIFFERENCE, rng=rng
        )
        assert residual < 1e-5

    def test_exact_origin(self, rng):
        x = np.full((2, 3), sympy.Integer(0), dtype=object)
        y = np.full((3, 2), sympy.Integer(0), dtype=object)
        grading = GradedSpace.from_dims([1, 2])
        assert check_two_form_identity(x, y, grading, samples=2, rng=rng) == 0.0

    def test_three_blocks_rejected(self, rng):
        x, y, grading = _pair(rng, 2, [1, 1, 1])
        with pytest.raises(ValueError):
            check_two_form_identity(x, y, grading)

    def test_finite_difference_needs_floats(self):
        x = np.full((1, 1), sympy.Integer(0), dtype=object)
        y = np.full((1, 1), sympy.Integer(0), dtype=object)
        with pytest.raises(ValueError):
            check_two_form_identity(
                x, y, GradedSpace.from_dims([1]), mode="finite-difference"
            )


POOL = [TWO, THREE, sympy.Integer(-1), sympy.Rational(1, 2), sympy.Rational(5, 3)]
CORES = [
    [["1"], ["2"]],
    [["1"], ["2"], ["3"]],
    [["1", "2"], ["3"]],
    [["1", "2"], ["3", "4"]],
]


def _random_class(rng):
    count = int(rng.integers(1, 3))
    picks = rng.choice(len(POOL), size=count, replace=False)
    shapes = [(1,), (1,), (2,), (1, 1)]
    data = []
    for k in picks:
        partition = shapes[int(rng.integers(len(shapes)))]
        data.append((POOL[int(k)], partition))
    if sum(sum(p) for _, p in data) > 3:
        data = data[:1]
    return ClassSpec(tuple(data))


class TestRandomMarkingReflections:
    def test_matches_simple_reflections(self, rng):
        checked = 0
        for _ in range(1000):
            if checked >= 60:
                break
            core = build_complete_kpartite(
                CORES[int(rng.integers(len(CORES)))], name="core"
            )
            classes = {node: _random_class(rng) for node in core.nodes}
            markings = {
                node: tuple(rng.permutation(list(c.minimal_marking())))
                for node, c in classes.items()
            }
            quiver, d, q = supernova_from_classes(core, classes, markings)
            node = quiver.nodes[int(rng.integers(len(quiver.nodes)))]
            expected_d = reflect_dim(node, d, quiver)
            if q[node] == 1 or expected_d[node] < 0:
                continue
            try:
                result = reflect_marking(quiver, classes, markings, node)
            except ReflectionError as e:
                if isinstance(e.__cause__, EmptyClassError):
                    continue
                raise
            expected_q = reflect_params(node, q, quiver)
            assert result.d.as_dict() == expected_d.as_dict()
            for n in quiver.nodes:
                assert sympy.simplify(result.q[n] - expected_q[n]) == 0
            checked += 1
        assert checked >= 50

"""Tests for the Deligne-Simpson criterion, witness search and cross-validation."""

import numpy as np
import pytest
import sympy

from mqvkit.blocklinalg import ClassSpec
from mqvkit.dsolver import (
    DSInstance,
    ds_criterion,
    ds_cross_validate,
    ds_search,
    interval,
    reflect_instance_data,
    scalar_family,
    verify_witness,
)
from mqvkit.dsolver import triangle as triangle_core
from mqvkit.dsolver.crossval import witness_document
from mqvkit.exceptions import InvalidQuiverError, UnknownNodeError
from mqvkit.representation import GraphRep, in_fiber
from mqvkit.schemas import SearchOutcome, Verdict


def _scalar_instance(name, quiver, values, dims=None):
    dims = dims or {node: 1 for node in quiver.nodes}
    classes = {
        node: ClassSpec.scalar(sympy.Rational(values[node]), dims[node])
        for node in quiver.nodes
    }
    return DSInstance(name, quiver, classes)


@pytest.fixture
def solvable_pair(interval):
    """Scalars 2 and 1/2 on the interval; solved by ab = -1/2."""
    return _scalar_instance("pair", interval, {"1": 2, "2": "1/2"})


@pytest.fixture
def trivial_pair(interval):
    """Both classes the identity; only reducible solutions exist."""
    return _scalar_instance("trivial", interval, {"1": 1, "2": 1})


class TestInstance:
    def test_derived_data(self, triangle_instance):
        assert triangle_instance.d.coords == (1, 1, 1)
        assert triangle_instance.q_power_d() == 1
        assert triangle_instance.core_dims == {"1": 1, "2": 1, "3": 1}

    def test_missing_class(self, interval):
        with pytest.raises(InvalidQuiverError):
            DSInstance("bad", interval, {"1": ClassSpec.scalar(sympy.Integer(2), 1)})

    def test_unknown_node(self, interval):
        classes = {n: ClassSpec.scalar(sympy.Integer(2), 1) for n in ("1", "2", "9")}
        with pytest.raises(UnknownNodeError):
            DSInstance("bad", interval, classes)

    def test_reflection(self, triangle_instance):
        reflected = reflect_instance_data(triangle_instance, "1")
        assert reflected.d.coords == (1, 1, 1)
        assert reflected.q["1"] == sympy.Rational(1, 2)
        assert reflected.q["2"] == 6
        with pytest.raises(UnknownNodeError):
            reflect_instance_data(triangle_instance, ["9"])


class TestCriterion:
    def test_triangle_is_solvable(self, triangle_instance):
        result = ds_criterion(triangle_instance)
        assert result.verdict is Verdict.SOLVABLE
        assert result.delta == 2
        assert result.decompositions == 0

    def test_determinant_condition(self, triangle):
        inst = _scalar_instance("det", triangle, {"1": 2, "2": 3, "3": 5})
        result = ds_criterion(inst)
        assert result.verdict is Verdict.UNSOLVABLE
        assert "q^d" in result.certificate

    def test_decomposition_violates(self, trivial_pair):
        result = ds_criterion(trivial_pair)
        assert result.verdict is Verdict.UNSOLVABLE
        assert [p.coords for p in result.violating] == [(0, 1), (1, 0)]

    def test_not_a_root(self, interval):
        inst = _scalar_instance(
            "box", interval, {"1": 2, "2": 3}, dims={"1": 2, "2": 0}
        )
        result = ds_criterion(inst)
        assert result.verdict is Verdict.UNSOLVABLE
        assert "positive root" in result.certificate

    def test_solvable_pair(self, solvable_pair):
        assert ds_criterion(solvable_pair).verdict is Verdict.SOLVABLE


class TestSearch:
    def test_finds_witness(self, solvable_pair):
        result = ds_search(solvable_pair, restarts=3, iterations=60, seed=7)
        assert result.outcome is SearchOutcome.WITNESS
        assert result.residual < 1e-8
        assert result.witness is not None
        ok, _, reason = verify_witness(solvable_pair, result.witness, result.core_rep)
        assert ok, reason

    def test_search_is_reproducible(self, solvable_pair):
        first = ds_search(solvable_pair, restarts=2, iterations=40, seed=3)
        second = ds_search(solvable_pair, restarts=2, iterations=40, seed=3, workers=2)
        assert first.restart == second.restart
        assert first.residual == second.residual

    def test_triangle_witness(self, triangle_instance):
        result = ds_search(triangle_instance, restarts=4, iterations=100, seed=0)
        assert result.outcome is SearchOutcome.WITNESS

    def test_trivial_pair_has_no_witness(self, trivial_pair):
        result = ds_search(trivial_pair, restarts=2, iterations=40, seed=0)
        assert result.outcome is SearchOutcome.NONE_FOUND
        assert result.witness is None

    def test_verify_rejects_reducible(self, trivial_pair, interval):
        maps = {("1", "2"): np.array([[1.0]]), ("2", "1"): np.array([[0.0]])}
        rep = GraphRep(interval, {"1": 1, "2": 1}, maps)
        ok, residual, reason = verify_witness(trivial_pair, rep, rep)
        assert not ok
        assert residual < 1e-12
        assert reason == "reducible"

    def test_verify_rejects_points_off_the_fiber(self, solvable_pair, interval):
        maps = {("1", "2"): np.array([[1.0]]), ("2", "1"): np.array([[1.0]])}
        rep = GraphRep(interval, {"1": 1, "2": 1}, maps)
        ok, _, reason = verify_witness(solvable_pair, rep, rep)
        assert not ok
        assert reason == "not in fiber"

    def test_witness_document(self, solvable_pair):
        result = ds_search(solvable_pair, restarts=2, iterations=60, seed=7)
        document = witness_document(solvable_pair, result)
        assert document.startswith("% {")
        assert "## Classes" in document
        assert "## Representation" in document


class TestCrossValidation:
    def test_family_ids(self):
        family = scalar_family(interval(), max_total=2, seed=0)
        assert len(family) == 10
        assert family[0].instance_id.startswith("interval/d=")
        balanced = [f for f in family if f.instance_id.endswith("/balanced")]
        assert all(sympy.simplify(f.q_power_d() - 1) == 0 for f in balanced)

    def test_small_family_agrees(self):
        family = scalar_family(interval(), max_total=1, seed=0)
        records = ds_cross_validate(family, restarts=2, iterations=20, seed=0)
        assert len(records) == 4
        assert all(r.agreement == "agree" for r in records)
        verdicts = {r.instance_id.rsplit("/", 1)[1]: r.verdict for r in records}
        assert verdicts["balanced"] is Verdict.SOLVABLE
        assert verdicts["unbalanced"] is Verdict.UNSOLVABLE

    def test_records_render(self, solvable_pair):
        (record,) = ds_cross_validate([solvable_pair], restarts=2, iterations=60)
        assert record.machine_line().startswith("DS pair verdict=predicted-solvable")
        assert record.search is SearchOutcome.WITNESS

    def test_unbalanced_instances_have_no_points(self, interval, triangle, rng):
        pool = [sympy.Integer(2), sympy.Integer(3), sympy.Rational(1, 2), -1]
        checked = 0
        while checked < 50:
            quiver = triangle if checked % 2 else interval
            values = {n: pool[int(rng.integers(len(pool)))] for n in quiver.nodes}
            inst = _scalar_instance(f"u{checked}", quiver, values)
            if inst.q_power_d() == 1:
                continue
            dims = inst.d.as_dict()
            for _ in range(5):
                rep = GraphRep.random(inst.quiver, dims, rng)
                assert not in_fiber(rep, inst.q)
            result = ds_search(inst, restarts=2, iterations=30, seed=checked)
            assert result.outcome is SearchOutcome.NONE_FOUND
            assert ds_criterion(inst).verdict is Verdict.UNSOLVABLE
            checked += 1

    @pytest.mark.slow
    @pytest.mark.parametrize("make_core", [interval, triangle_core])
    def test_exhaustive_small_family_agrees(self, make_core):
        family = scalar_family(make_core(), max_total=3, seed=0)
        records = ds_cross_validate(family, seed=0)
        assert len(records) == len(family)
        disagreements = [r.instance_id for r in records if r.agreement != "agree"]
        assert disagreements == []

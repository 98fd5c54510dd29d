"""Tests for the property suites behind ``mqvkit verify``."""

import pytest

from mqvkit.suites import (
    SUITES,
    gauss_suite,
    jordan_suite,
    legs_suite,
    tame2stokes_suite,
    triangle_suite,
    twoform_suite,
)


class TestSuites:
    def test_registry(self):
        assert set(SUITES) == {
            "gauss",
            "twoform",
            "tame2stokes",
            "legs",
            "jordan",
            "triangle",
        }

    def test_gauss(self):
        (result,) = gauss_suite(samples=30, seed=1)
        assert result.passed, result.detail
        assert result.samples == 30

    def test_twoform(self):
        results = twoform_suite(samples=5, seed=1)
        assert {r.name for r in results} == {
            "twoform-analytic",
            "twoform-fd",
            "twoform-origin",
        }
        assert all(r.passed for r in results), [r.detail for r in results]

    def test_tame2stokes(self):
        results = tame2stokes_suite(samples=20, seed=2)
        assert all(r.passed for r in results), [r.detail for r in results]

    def test_legs(self):
        (result,) = legs_suite(samples=20, seed=3)
        assert result.passed, result.detail

    def test_jordan(self):
        (result,) = jordan_suite(samples=15, seed=4)
        assert result.passed, result.detail
        assert result.machine_line().startswith("CHECK jordan residual=")

    @pytest.mark.slow
    def test_triangle(self):
        results = triangle_suite(seed=0)
        assert [r.name for r in results] == ["triangle", "triangle-dim"]
        assert all(r.passed for r in results), [r.detail for r in results]

"""Tests for block Gauss data, big-cell factors and Jordan classes."""

import numpy as np
import pytest
import sympy

from mqvkit.blocklinalg import (
    ClassSpec,
    GradedSpace,
    build_dual_chain,
    build_phi_chain,
    coxeter_killing_check,
    dual_invertibility,
    gauss_gram,
    gauss_gram_residuals,
    is_invertible,
    jordan_child,
    numeric_jordan,
    numerical_rank,
    opposite_big_cell_factor,
)
from mqvkit.exceptions import (
    AmbiguousRankError,
    IndeterminateError,
    InvalidGramError,
    InvalidMarkingError,
    InvalidPartitionError,
    MqvError,
    NotInBigCellError,
)


def _pair(rng, n, dims, scale=0.5):
    total = sum(dims)
    x = rng.standard_normal((n, total)) + 1j * rng.standard_normal((n, total))
    y = rng.standard_normal((total, n)) + 1j * rng.standard_normal((total, n))
    return scale * x, scale * y, GradedSpace.from_dims(dims)


def _exact(rows):
    return np.array([[sympy.Integer(v) for v in row] for row in rows], dtype=object)


class TestGradedSpace:
    def test_offsets_and_slices(self):
        g = GradedSpace.from_dims([2, 1, 3])
        assert g.offsets == (0, 2, 3, 6)
        assert g.slice(2) == slice(3, 6)
        assert g.labels == ("1", "2", "3")

    def test_masks(self):
        g = GradedSpace.from_dims([1, 2])
        upper = g.block_mask("<")
        assert upper[0, 1] and upper[0, 2]
        assert not upper[1, 2]

    def test_swap_permutation(self):
        g = GradedSpace.from_dims([1, 2])
        perm = g.swap_permutation(0)
        v = np.array([1.0, 2.0, 3.0])
        assert np.allclose(perm @ v, [2.0, 3.0, 1.0])
        assert g.swapped(0).dims == (2, 1)

    def test_duplicate_labels_rejected(self):
        with pytest.raises(InvalidPartitionError):
            GradedSpace((("a", 1), ("a", 2)))


class TestPhiChain:
    def test_random_identities(self, rng):
        for _ in range(50):
            s = int(rng.integers(1, 5))
            dims = [int(d) for d in rng.integers(1, 5, size=s)]
            x, y, grading = _pair(rng, int(rng.integers(1, 5)), dims)
            try:
                chain = build_phi_chain(x, y, grading)
            except NotInBigCellError:
                continue
            residuals = gauss_gram_residuals(chain, gauss_gram(chain))
            assert max(residuals.values()) < 1e-8

    def test_gauss_factors_are_unitriangular(self, rng):
        x, y, grading = _pair(rng, 3, [1, 2, 1])
        gg = gauss_gram(build_phi_chain(x, y, grading))
        assert grading.is_unitriangular(gg.u_minus, upper=False, atol=1e-12)
        assert grading.is_unitriangular(gg.v_plus, upper=True, atol=1e-12)

    def test_exact_chain(self):
        x = _exact([[1, 0], [0, 1]])
        y = _exact([[1, 2], [0, 1]])
        chain = build_phi_chain(x, y, GradedSpace.from_dims([1, 1]))
        assert chain.exact
        residuals = gauss_gram_residuals(chain, gauss_gram(chain))
        assert max(residuals.values()) == 0.0

    def test_singular_phi(self):
        x = _exact([[1]])
        y = _exact([[-1]])
        with pytest.raises(NotInBigCellError) as info:
            build_phi_chain(x, y, GradedSpace.from_dims([1]))
        assert info.value.index == 1

    def test_dual_chain_factorises_one_plus_yx(self, rng):
        x, y, _ = _pair(rng, 3, [2])
        dual = build_dual_chain(x, y, GradedSpace.from_dims([1, 2]))
        target = np.eye(2) + y @ x
        assert np.allclose(dual.product_M(), target)
        assert np.allclose(dual.product_T(), target)

    def test_dual_invertibility(self):
        x = np.array([[1.0]])
        assert dual_invertibility(x, np.array([[1.0]]))
        assert not dual_invertibility(x, np.array([[-1.0]]))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            build_phi_chain(
                np.zeros((2, 3)), np.zeros((2, 2)), GradedSpace.from_dims([3])
            )


class TestBigCell:
    def test_factorisation(self, rng):
        grading = GradedSpace.from_dims([2, 1, 2])
        m = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        w_plus, g, w_minus = opposite_big_cell_factor(m, grading)
        assert np.allclose(w_plus @ g @ w_minus, m)
        assert grading.is_unitriangular(w_plus, upper=True, atol=1e-12)
        assert grading.is_unitriangular(w_minus, upper=False, atol=1e-12)
        assert np.allclose(grading.masked(g, "=="), g)

    def test_singular_trailing_block(self):
        m = _exact([[1, 1], [1, 0]])
        with pytest.raises(NotInBigCellError) as info:
            opposite_big_cell_factor(m, GradedSpace.from_dims([1, 1]))
        assert info.value.index == 2


class TestNumerics:
    def test_band_is_indeterminate(self):
        with pytest.raises(IndeterminateError):
            is_invertible(np.diag([1.0, 1e-9]))

    def test_invertibility_is_scale_free(self):
        assert is_invertible(1e-10 * np.eye(2))
        assert is_invertible(1e6 * np.diag([1.0, 1e-3]))
        assert not is_invertible(np.zeros((2, 2)))
        with pytest.raises(IndeterminateError):
            is_invertible(1e-10 * np.diag([1.0, 1e-9]))

    def test_rank_keeps_absolute_floor(self):
        assert numerical_rank(1e-14 * np.eye(2)) == 0

    def test_rank_gap(self):
        assert numerical_rank(np.diag([1.0, 1e-3, 0.0])) == 2
        with pytest.raises(AmbiguousRankError):
            numerical_rank(np.diag([1.0, 1e-9]))
        assert numerical_rank(np.diag([1.0, 1e-9]), strict=False) == 1


class TestCoxeter:
    def test_a2(self):
        check = coxeter_killing_check(np.array([[2.0, -1.0], [-1.0, 2.0]]))
        assert check.residual < 1e-12
        assert check.order == 3

    def test_a3_order(self):
        gram = np.array([[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]])
        assert coxeter_killing_check(gram).order == 4

    def test_invalid_gram(self):
        with pytest.raises(InvalidGramError) as info:
            coxeter_killing_check(np.array([[2.0, 1.0], [0.0, 2.0]]))
        assert isinstance(info.value, MqvError)
        assert info.value.shape == (2, 2)


class TestClassSpec:
    def test_basic_data(self):
        c = ClassSpec(((sympy.Integer(2), (1, 2)), (sympy.Integer(3), (1,))))
        assert c.dimension == 4
        assert c.partition(2) == (2, 1)
        assert c.minimal_marking() == (2, 2, 3)
        assert c.determinant() == 24
        assert c.describe() == "2:(2,1) 3:(1)"
        assert c.inverse().partition(sympy.Rational(1, 2)) == (2, 1)

    def test_zero_eigenvalue_rejected(self):
        with pytest.raises(InvalidMarkingError):
            ClassSpec(((sympy.Integer(0), (1,)),))

    def test_repeated_eigenvalue_rejected(self):
        with pytest.raises(InvalidMarkingError):
            ClassSpec(((sympy.Integer(2), (1,)), (sympy.Integer(2), (1,))))

    def test_jordan_child_deletes_a_column(self):
        parent = ClassSpec(((sympy.Integer(1), (2, 2, 1)),))
        child = jordan_child(parent)
        assert child.partition(1) == (1, 1)

    def test_jordan_child_keeps_other_eigenvalues(self):
        parent = ClassSpec(((sympy.Integer(1), (1,)), (sympy.Integer(5), (2,))))
        child = jordan_child(parent)
        assert child.eigenvalues == (5,)
        assert child.partition(5) == (2,)


class TestNumericJordan:
    def test_conjugated_jordan_form(self, rng):
        spec = ClassSpec(((2.0 + 0j, (2, 1)), (3.0 + 0j, (1,))))
        p = rng.standard_normal((4, 4))
        m = p @ spec.representative() @ np.linalg.inv(p)
        found = numeric_jordan(m, markers=(2.0, 3.0))
        assert found.matches(spec)
        assert found.eigenvalues[0] == 2.0

    def test_exact_matrix(self):
        m = _exact([[1, 1, 0], [0, 1, 0], [0, 0, 4]])
        found = numeric_jordan(m)
        assert found.partition(1) == (2,)
        assert found.partition(4) == (1,)

    def test_empty_matrix(self):
        assert numeric_jordan(np.zeros((0, 0))).dimension == 0

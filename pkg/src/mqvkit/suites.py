"""Randomised property suites behind ``mqvkit verify``.

Each suite draws its instances from a seeded generator and returns one or
more CheckResult records; a suite passes when every sample meets its
tolerance.
"""

from collections.abc import Callable

import logfire
import numpy as np
import sympy

from .blocklinalg.grading import GradedSpace
from .blocklinalg.jordan import ClassSpec, jordan_child, numeric_jordan
from .blocklinalg.phi_chain import build_phi_chain, gauss_gram, gauss_gram_residuals
from .config import DEFAULT_SEED
from .dsolver.instance import DSInstance
from .dsolver.search import ds_search
from .exceptions import (
    AmbiguousRankError,
    AmbiguousSpectrumError,
    DegenerateTupleError,
    MqvError,
    NotInBigCellError,
)
from .graph.quiver import build_complete_kpartite
from .kacmoody.classify import expected_dimension
from .representation.probe import quotient_dimension_probe
from .representation.triangle import triangle_invariants
from .scalars import power_product, simplify_exact
from .schemas import CheckResult, SearchOutcome
from .stokes.legs import leg_to_class, marking_to_leg
from .stokes.tame import random_tame_tuple, tame_to_stokes
from .stokes.twoform import DifferentialMode, check_two_form_identity

# Exact eigenvalues used for random classes
EIGENVALUE_POOL = (
    sympy.Integer(2),
    sympy.Integer(3),
    sympy.Integer(-1),
    sympy.Rational(1, 2),
    sympy.Rational(-2, 3),
)


def _random_pair(
    rng: np.random.Generator, n: int, dims: list[int], scale: float = 0.5
) -> tuple[np.ndarray, np.ndarray, GradedSpace]:
    total = sum(dims)
    x = rng.standard_normal((n, total)) + 1j * rng.standard_normal((n, total))
    y = rng.standard_normal((total, n)) + 1j * rng.standard_normal((total, n))
    return scale * x, scale * y, GradedSpace.from_dims(dims)


def _result(
    name: str, residual: float, tol: float, samples: int, detail: str = ""
) -> CheckResult:
    return CheckResult(
        name=name,
        residual=residual,
        passed=bool(residual < tol),
        samples=samples,
        detail=detail,
    )


@logfire.instrument("verify gauss")
def gauss_suite(
    samples: int = 500, seed: int = DEFAULT_SEED, tol: float = 1e-10
) -> list[CheckResult]:
    """Block Gauss/Gram identities and phi_i = T_i...T_1 = M_1...M_i."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    skipped = 0
    for _ in range(samples):
        s = int(rng.integers(1, 5))
        dims = [int(d) for d in rng.integers(1, 5, size=s)]
        n = int(rng.integers(1, 5))
        x, y, grading = _random_pair(rng, n, dims)
        try:
            chain = build_phi_chain(x, y, grading)
        except NotInBigCellError:
            skipped += 1
            continue
        residuals = gauss_gram_residuals(chain, gauss_gram(chain))
        worst = max(worst, max(residuals.values()))
    return [_result("gauss", worst, tol, samples - skipped, f"skipped={skipped}")]


@logfire.instrument("verify twoform")
def twoform_suite(
    samples: int = 100,
    seed: int = DEFAULT_SEED,
    tol: float = 1e-9,
    fd_tol: float = 1e-5,
) -> list[CheckResult]:
    """The two-form identity in both differential modes, and at the origin."""
    rng = np.random.default_rng(seed)
    analytic = fd = 0.0
    for _ in range(samples):
        n = int(rng.integers(1, 4))
        dims = [int(d) for d in rng.integers(1, 3, size=2)]
        x, y, grading = _random_pair(rng, n, dims, scale=0.4)
        try:
            analytic = max(
                analytic, check_two_form_identity(x, y, grading, 1, rng=rng)
            )
            fd = max(
                fd,
                check_two_form_identity(
                    x, y, grading, 1, DifferentialMode.FINITE_DIFFERENCE, rng
                ),
            )
        except NotInBigCellError:
            continue
    zero_x = np.full((2, 3), sympy.Integer(0), dtype=object)
    zero_y = np.full((3, 2), sympy.Integer(0), dtype=object)
    origin = check_two_form_identity(
        zero_x, zero_y, GradedSpace.from_dims([1, 2]), 3, rng=rng
    )
    return [
        _result("twoform-analytic", analytic, tol, samples),
        _result("twoform-fd", fd, fd_tol, samples),
        CheckResult(name="twoform-origin", residual=origin, passed=origin == 0.0),
    ]


def _char_poly_gap(left: np.ndarray, right: np.ndarray) -> float:
    a, b = np.poly(left), np.poly(right)
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(a)))))


@logfire.instrument("verify tame2stokes")
def tame2stokes_suite(
    samples: int = 200, seed: int = DEFAULT_SEED, tol: float = 1e-8
) -> list[CheckResult]:
    """Characteristic polynomials and the Jordan parent/child rule."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    mismatches = 0
    used = 0
    for _ in range(samples):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(1, 5))
        dims = [int(d) for d in rng.integers(0, n + 1, size=m)]
        try:
            t = random_tame_tuple(n, dims, rng)
            result = tame_to_stokes(t)
        except (
            DegenerateTupleError,
            AmbiguousRankError,
            AmbiguousSpectrumError,
            NotInBigCellError,
        ):
            continue
        used += 1
        gap = _char_poly_gap(t.product(), np.eye(n) + result.B @ result.A)
        worst = max(worst, gap, result.max_residual())
        if not result.relation_ok:
            mismatches += 1
    residual = worst if mismatches == 0 else float("inf")
    return [_result("tame2stokes", residual, tol, used, f"mismatches={mismatches}")]


def _random_class(rng: np.random.Generator, n: int, with_one: bool) -> ClassSpec:
    pool = [EIGENVALUE_POOL[k] for k in rng.permutation(len(EIGENVALUE_POOL))]
    values = ([sympy.Integer(1)] if with_one else []) + pool
    data = []
    left = n
    for value in values:
        if left == 0:
            break
        size = int(rng.integers(1, left + 1)) if value != values[-1] else left
        parts: list[int] = []
        remaining = size
        while remaining:
            p = int(rng.integers(1, remaining + 1))
            parts.append(p)
            remaining -= p
        data.append((value, tuple(parts)))
        left -= size
    return ClassSpec(tuple(data))


def _exact_conjugate(rng: np.random.Generator, m: sympy.Matrix) -> sympy.Matrix:
    n = m.shape[0]
    while True:
        p = sympy.Matrix(rng.integers(-2, 3, size=(n, n)).tolist())
        if p.det() != 0:
            return p * m * p.inv()


def _jordan_matrix(spec: ClassSpec) -> sympy.Matrix:
    blocks = []
    for value, parts in spec.eigen_data:
        for size in parts:
            cell = value * sympy.eye(size)
            for k in range(size - 1):
                cell[k, k + 1] = 1
            blocks.append(cell)
    return sympy.diag(*blocks)


def _rank_factor(e: sympy.Matrix) -> tuple[sympy.Matrix, sympy.Matrix]:
    """e = A B with A injective and B surjective."""
    reduced, pivots = e.rref()
    a = e[:, list(pivots)]
    b = reduced[: len(pivots), :]
    return a, b


def _obj(m: sympy.Matrix) -> np.ndarray:
    out = np.empty(m.shape, dtype=object)
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            out[i, j] = m[i, j]
    return out


@logfire.instrument("verify jordan")
def jordan_suite(samples: int = 200, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """numeric_jordan(1 + AB) -> jordan_child equals numeric_jordan(1 + BA)."""
    rng = np.random.default_rng(seed)
    fixed = ClassSpec(((sympy.Integer(1), (2, 2, 1)),))
    failures = 0
    checked = 0
    for k in range(samples):
        if k == 0:
            parent = fixed
        else:
            parent = _random_class(rng, int(rng.integers(1, 6)), with_one=True)
        big = _exact_conjugate(rng, _jordan_matrix(parent))
        shifted = big - sympy.eye(big.shape[0])
        if shifted.rank() == 0:
            continue
        a, b = _rank_factor(shifted)
        top = numeric_jordan(_obj(sympy.eye(big.shape[0]) + a * b))
        bottom = numeric_jordan(_obj(sympy.eye(a.shape[1]) + b * a))
        checked += 1
        if not (top.matches(parent) and jordan_child(top).matches(bottom)):
            failures += 1
            logfire.warn(
                "Parent/child rule failed",
                parent=parent.describe(),
                found=bottom.describe(),
            )
    residual = float(failures)
    return [_result("jordan", residual, 0.5, checked, f"failures={failures}")]


@logfire.instrument("verify legs")
def legs_suite(
    samples: int = 100, seed: int = DEFAULT_SEED, tol: float = 1e-10
) -> list[CheckResult]:
    """Marking -> leg -> class round trip and det M = prod q_k^{d_k}."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(1, 6))
        spec = _random_class(rng, n, with_one=bool(rng.random() < 0.5))
        minimal = spec.minimal_marking()
        marking = [minimal[k] for k in rng.permutation(len(minimal))]
        leg = marking_to_leg(spec, marking)
        realised = leg_to_class(leg)
        if not realised.class_spec.matches(spec):
            failures += 1
            continue
        det_m = sympy.Matrix(realised.M).det()
        expected = power_product(leg.params, leg.dims)
        worst = max(worst, abs(complex(simplify_exact(det_m - expected))))
    residual = worst if failures == 0 else float("inf")
    return [_result("legs", residual, tol, samples, f"failures={failures}")]


@logfire.instrument("verify triangle")
def triangle_suite(
    seed: int = DEFAULT_SEED,
    tol: float = 1e-9,
    q: tuple[sympy.Expr, sympy.Expr, sympy.Expr] = (
        sympy.Integer(2),
        sympy.Integer(3),
        sympy.Rational(1, 6),
    ),
) -> list[CheckResult]:
    """Search a triangle fiber point and check its invariant relations."""
    core = build_complete_kpartite([["1"], ["2"], ["3"]], name="triangle")
    classes = {n: ClassSpec.scalar(v, 1) for n, v in zip(core.nodes, q, strict=True)}
    inst = DSInstance("triangle", core, classes)
    search = ds_search(inst, seed=seed)
    if search.outcome is not SearchOutcome.WITNESS:
        return [CheckResult(name="triangle", residual=search.residual, passed=False)]
    relations = triangle_invariants(search.witness).max_residual()
    expected = expected_dimension(inst.d, inst.quiver)
    try:
        probe = quotient_dimension_probe(search.witness)
    except MqvError as e:
        return [
            _result("triangle", relations, tol, 1),
            CheckResult(name="triangle-dim", residual=1.0, passed=False, detail=str(e)),
        ]
    return [
        _result("triangle", relations, tol, 1),
        CheckResult(
            name="triangle-dim",
            residual=float(abs(probe - expected)),
            passed=probe == expected,
            detail=f"probe={probe} expected={expected}",
        ),
    ]


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "gauss": gauss_suite,
    "twoform": twoform_suite,
    "tame2stokes": tame2stokes_suite,
    "legs": legs_suite,
    "jordan": jordan_suite,
    "triangle": triangle_suite,
}

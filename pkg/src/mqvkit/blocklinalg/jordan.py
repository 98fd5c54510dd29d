"""Conjugacy classes as Jordan data, and recovering them from matrices."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import scipy.cluster.hierarchy
import scipy.linalg
import sympy

from ..config import AMBIGUITY_BAND, CLUSTER_RADIUS, INVERTIBILITY_RTOL
from ..exceptions import AmbiguousSpectrumError, InvalidMarkingError
from ..scalars import Scalar, format_scalar, is_exact, scalars_equal, to_complex
from .numerics import is_exact_array


def _normalise_partition(parts: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((int(p) for p in parts if p > 0), reverse=True))


@dataclass(frozen=True)
class ClassSpec:
    """A conjugacy class in GL_n: one partition per distinct eigenvalue."""

    eigen_data: tuple[tuple[Scalar, tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        """Normalise partitions and validate eigenvalues."""
        cleaned = tuple(
            (value, _normalise_partition(parts)) for value, parts in self.eigen_data
        )
        cleaned = tuple(item for item in cleaned if item[1])
        object.__setattr__(self, "eigen_data", cleaned)
        values = [v for v, _ in cleaned]
        for k, v in enumerate(values):
            if abs(to_complex(v)) == 0:
                raise InvalidMarkingError("Conjugacy class with eigenvalue 0", 0j)
            for w in values[k + 1 :]:
                if scalars_equal(v, w, tol=CLUSTER_RADIUS):
                    raise InvalidMarkingError(
                        f"Eigenvalue {format_scalar(v)} listed twice", to_complex(v)
                    )

    @classmethod
    def scalar(cls, value: Scalar, n: int) -> "ClassSpec":
        """The class of value * identity on C^n."""
        return cls(((value, (1,) * n),))

    @property
    def dimension(self) -> int:
        """Ambient dimension n."""
        return sum(sum(parts) for _, parts in self.eigen_data)

    @property
    def eigenvalues(self) -> tuple[Scalar, ...]:
        """Distinct eigenvalues in stored order."""
        return tuple(v for v, _ in self.eigen_data)

    def partition(self, value: Scalar, tol: float = CLUSTER_RADIUS) -> tuple[int, ...]:
        """Partition at an eigenvalue (empty if absent)."""
        for v, parts in self.eigen_data:
            if scalars_equal(v, value, tol):
                return parts
        return ()

    def inverse(self) -> "ClassSpec":
        """Class of the inverse matrix."""
        return ClassSpec(tuple((1 / v, parts) for v, parts in self.eigen_data))

    def scaled(self, factor: Scalar) -> "ClassSpec":
        """Class of factor * M."""
        return ClassSpec(tuple((factor * v, parts) for v, parts in self.eigen_data))

    def determinant(self) -> Scalar:
        """det M = prod of eigenvalues with multiplicity."""
        exact = all(is_exact(v) for v in self.eigenvalues)
        out: Scalar = sympy.Integer(1) if exact else 1.0
        for v, parts in self.eigen_data:
            out = out * v ** sum(parts)
        return out

    def minimal_marking(self) -> tuple[Scalar, ...]:
        """Each eigenvalue repeated by its largest block size, in stored order."""
        return tuple(v for v, parts in self.eigen_data for _ in range(parts[0]))

    def representative(self) -> np.ndarray:
        """Jordan normal form matrix (complex)."""
        blocks = []
        for v, parts in self.eigen_data:
            for size in parts:
                block = np.eye(size, dtype=complex) * to_complex(v)
                block += np.eye(size, k=1, dtype=complex)
                blocks.append(block)
        if not blocks:
            return np.zeros((0, 0), dtype=complex)
        return scipy.linalg.block_diag(*blocks).astype(complex)

    def matches(self, other: "ClassSpec", tol: float = CLUSTER_RADIUS) -> bool:
        """Same eigenvalues (to tolerance) with identical partitions."""
        if len(self.eigen_data) != len(other.eigen_data):
            return False
        return all(other.partition(v, tol) == parts for v, parts in self.eigen_data)

    def describe(self) -> str:
        """Canonical text form ``value:(p1,p2) value:(p)``."""
        return " ".join(
            f"{format_scalar(v)}:({','.join(str(p) for p in parts)})"
            for v, parts in self.eigen_data
        )


def _is_unit(value: Scalar, tol: float) -> bool:
    if is_exact(value):
        return bool(sympy.simplify(value - 1) == 0)
    return abs(to_complex(value) - 1.0) <= tol


def jordan_child(parent: ClassSpec, tol: float = CLUSTER_RADIUS) -> ClassSpec:
    """Delete the longest column of the Jordan diagram at eigenvalue 1.

    If 1 + AB is in the parent class (A injective, B surjective) then
    1 + BA is in the returned class; other eigenvalues are untouched.
    """
    data = []
    for value, parts in parent.eigen_data:
        if _is_unit(value, tol):
            parts = tuple(p - 1 for p in parts)
        data.append((value, parts))
    return ClassSpec(tuple(data))


def _cluster(eigs: np.ndarray, radius: float) -> list[np.ndarray]:
    if len(eigs) == 1:
        return [eigs]
    points = np.column_stack([eigs.real, eigs.imag])
    links = scipy.cluster.hierarchy.linkage(points, method="single")
    labels = scipy.cluster.hierarchy.fcluster(links, t=radius, criterion="distance")
    return [eigs[labels == label] for label in np.unique(labels)]


def _partition_from_ranks(
    m: np.ndarray, centre: complex, multiplicity: int
) -> tuple[int, ...]:
    n = m.shape[0]
    shifted = m - centre * np.eye(n)
    power = np.eye(n, dtype=complex)
    ranks = [n]
    for _ in range(multiplicity):
        power = power @ shifted
        sv = scipy.linalg.svdvals(power)
        scale = max(1.0, float(sv[0]))
        threshold = INVERTIBILITY_RTOL * scale
        band = [s for s in sv if AMBIGUITY_BAND[0] * scale < s <= threshold]
        if band:
            raise AmbiguousSpectrumError(
                f"Jordan rank of (M - {centre:.6g})^k is ill-conditioned", centre
            )
        ranks.append(int(np.sum(sv > threshold)))
        if ranks[-1] == ranks[-2]:
            break
    if n - ranks[-1] != multiplicity:
        raise AmbiguousSpectrumError(
            f"Cluster at {centre:.6g} has {multiplicity} eigenvalues but "
            f"generalized eigenspace of dimension {n - ranks[-1]}",
            centre,
        )
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    partition: list[int] = []
    for k, count in enumerate(at_least, start=1):
        exactly = count - (at_least[k] if k < len(at_least) else 0)
        partition.extend([k] * exactly)
    return _normalise_partition(partition)


def _exact_jordan(m: np.ndarray) -> ClassSpec:
    _, jordan = sympy.Matrix(m).jordan_form()
    n = jordan.shape[0]
    data: dict[sympy.Expr, list[int]] = {}
    k = 0
    while k < n:
        value = sympy.simplify(jordan[k, k])
        size = 1
        while k + size < n and jordan[k + size - 1, k + size] == 1:
            size += 1
        data.setdefault(value, []).append(size)
        k += size
    return ClassSpec(tuple((v, tuple(p)) for v, p in data.items()))


def numeric_jordan(
    m: np.ndarray,
    markers: Sequence[Scalar] = (),
    tol: float = CLUSTER_RADIUS,
) -> ClassSpec:
    """Recover the Jordan data of a matrix.

    Eigenvalues are clustered with radius max(tol, 10 (eps |M|)^(1/n)) and
    represented by the cluster mean, or by a marker within the radius. The
    partition of each cluster comes from the ranks of (M - s)^k.

    Args:
        m: Square matrix (object arrays are handled exactly by sympy).
        markers: Expected eigenvalues; matching clusters take these values.
        tol: Minimum clustering radius.

    Returns:
        ClassSpec, marker eigenvalues first in marker order.

    Raises:
        AmbiguousSpectrumError: If clustering and ranks are inconsistent.
    """
    if m.shape[0] == 0:
        return ClassSpec(())
    if is_exact_array(m):
        return _exact_jordan(m)
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    scale = max(1.0, float(np.linalg.norm(m, 2)))
    radius = max(tol, 10.0 * (np.finfo(float).eps * scale) ** (1.0 / n))
    eigs = scipy.linalg.eigvals(m)

    found: list[tuple[Scalar, tuple[int, ...]]] = []
    for cluster in _cluster(eigs, radius):
        centre = complex(np.mean(cluster))
        label: Scalar = centre
        for marker in markers:
            if abs(to_complex(marker) - centre) <= radius:
                label = marker
                centre = to_complex(marker)
                break
        found.append((label, _partition_from_ranks(m, centre, len(cluster))))

    def _order(item: tuple[Scalar, tuple[int, ...]]) -> tuple[int, float, float]:
        for k, marker in enumerate(markers):
            if item[0] is marker:
                return (k, 0.0, 0.0)
        c = to_complex(item[0])
        return (len(markers), round(c.real, 9), round(c.imag, 9))

    return ClassSpec(tuple(sorted(found, key=_order)))

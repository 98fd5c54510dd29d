"""Numerical dimension of the quotient at a stable fiber point."""

import logfire
import numpy as np

from ..blocklinalg.numerics import numerical_rank
from ..config import FD_STEP, PROBE_RANK_FLOOR, PROBE_RANK_RTOL
from ..exceptions import AmbiguousRankError, IndeterminateError
from .moment import moment_map
from .rep import GraphRep


def _moment_vector(rep: GraphRep) -> np.ndarray:
    value = moment_map(rep)
    parts = [np.asarray(value.mu[n], dtype=complex).ravel() for n in rep.quiver.nodes]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)


def moment_jacobian(rep: GraphRep, step: float = FD_STEP) -> np.ndarray:
    """Central finite-difference Jacobian of the (holomorphic) moment map."""
    base = rep.flatten()
    h = step * max(1.0, float(np.max(np.abs(base), initial=0.0)))
    columns = []
    for k in range(base.size):
        shift = np.zeros_like(base)
        shift[k] = h
        forward = _moment_vector(rep.with_vector(base + shift))
        backward = _moment_vector(rep.with_vector(base - shift))
        columns.append((forward - backward) / (2 * h))
    rows = sum(d * d for d in rep.dims.values())
    if not columns:
        return np.zeros((rows, 0), dtype=complex)
    return np.column_stack(columns)


def quotient_dimension_probe(rep: GraphRep) -> int:
    """dim ker(d mu) - (dim H - 1) at a stable point of a moment fiber.

    Args:
        rep: Stable representation in some fiber of the moment map.

    Returns:
        The local dimension of the quotient, to compare with 2 - (d, d).

    Raises:
        IndeterminateError: If the Jacobian rank has no clean gap.
    """
    if rep.exact:
        rep = GraphRep(
            rep.quiver,
            dict(rep.dims),
            {k: np.asarray(m, dtype=complex) for k, m in rep.maps.items()},
        )
    jac = moment_jacobian(rep)
    try:
        rank = numerical_rank(jac, rtol=PROBE_RANK_RTOL, floor=PROBE_RANK_FLOOR)
    except AmbiguousRankError as e:
        raise IndeterminateError(
            "Moment map Jacobian rank is ambiguous", min(e.singular_values, default=0.0)
        ) from e
    coordinates = rep.coordinate_count()
    group = sum(d * d for d in rep.dims.values())
    dimension = coordinates - rank - (group - 1) if group else 0
    logfire.debug(
        "Quotient dimension probe",
        coordinates=coordinates,
        rank=rank,
        group=group,
        dimension=dimension,
    )
    return dimension

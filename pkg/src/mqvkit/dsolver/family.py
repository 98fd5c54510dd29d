"""Small exhaustive families of scalar-class instances for cross-validation."""

import itertools

import numpy as np
import sympy

from ..blocklinalg.jordan import ClassSpec
from ..config import DEFAULT_SEED
from ..graph.quiver import ColouredQuiver, build_complete_kpartite
from .instance import DSInstance

# Rational parameters drawn for the free nodes
PARAMETER_POOL = (
    sympy.Integer(2),
    sympy.Integer(3),
    sympy.Integer(-1),
    sympy.Rational(1, 2),
    sympy.Rational(-1, 3),
)


def interval() -> ColouredQuiver:
    """The single edge 1 - 2."""
    return build_complete_kpartite([["1"], ["2"]], name="interval")


def triangle() -> ColouredQuiver:
    """The triangle on 1, 2, 3."""
    return build_complete_kpartite([["1"], ["2"], ["3"]], name="triangle")


def _dimension_vectors(n: int, max_total: int):
    for coords in itertools.product(range(max_total + 1), repeat=n):
        if 0 < sum(coords) <= max_total:
            yield coords


def scalar_family(
    core: ColouredQuiver, max_total: int = 3, seed: int = DEFAULT_SEED
) -> list[DSInstance]:
    """Scalar classes q_i on C^{d_i} for every d with sum d_i <= max_total.

    Each d contributes two instances: one with q^d = 1, obtained by solving
    for the parameter at the first node of least positive dimension, and one
    with q^d != 1.

    Returns:
        Instances with ids ``<core>/d=<d>/<balanced|unbalanced>``.
    """
    rng = np.random.default_rng(seed)
    nodes = core.nodes
    out = []
    for dims in _dimension_vectors(len(nodes), max_total):
        picks = rng.integers(0, len(PARAMETER_POOL), len(nodes))
        free = [PARAMETER_POOL[k] for k in picks]
        support = [k for k, dim in enumerate(dims) if dim > 0]
        j = min(support, key=lambda k: (dims[k], k))
        rest = sympy.Integer(1)
        for k in support:
            if k != j:
                rest *= free[k] ** dims[k]
        balanced = list(free)
        balanced[j] = sympy.root(1 / rest, dims[j])
        unbalanced = list(balanced)
        unbalanced[j] = 2 * balanced[j]
        label = ",".join(str(dim) for dim in dims)
        for tag, values in (("balanced", balanced), ("unbalanced", unbalanced)):
            classes = {
                node: ClassSpec.scalar(values[k], dims[k])
                for k, node in enumerate(nodes)
            }
            out.append(DSInstance(f"{core.name}/d={label}/{tag}", core, classes))
    return out

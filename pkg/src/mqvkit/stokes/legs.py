"""Conjugacy classes, markings and the legs of a supernova graph.

A marking (xi_1, ..., xi_w) of a class annihilates it, prod (M - xi_k) = 0.
It determines the leg

    q_1 = xi_1,  q_k = xi_k / xi_{k-1},  d_k = rank (M - xi_1) ... (M - xi_{k-1}),

and conversely every leg with weakly decreasing dimensions is realised by an
invertible representation N_k = q_k (1 + a_k b_k), 1 + b_k a_k = N_{k+1},
N_w = q_w, whose M = N_1 lies in the class.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import logfire
import numpy as np
import sympy

from ..blocklinalg.jordan import ClassSpec, numeric_jordan
from ..blocklinalg.numerics import numerical_rank, simplify_array, zeros_like_shape
from ..config import CLUSTER_RADIUS
from ..exceptions import EmptyClassError, InvalidMarkingError, ReflectionError
from ..graph.legs import Leg, attach_legs, require_supernova
from ..graph.quiver import ColouredQuiver, build_complete_kpartite
from ..kacmoody.roots import Params, RootVector, reflect_dim, reflect_params
from ..scalars import (
    Scalar,
    is_exact,
    is_one,
    scalars_equal,
    simplify_exact,
    to_complex,
)


@dataclass
class LegClass:
    """The class of a leg with the witness maps of its representation."""

    leg: Leg
    class_spec: ClassSpec
    M: np.ndarray
    a: list[np.ndarray] = field(default_factory=list)
    b: list[np.ndarray] = field(default_factory=list)
    N: list[np.ndarray] = field(default_factory=list)


@dataclass
class MarkingReflection:
    """Classes and markings after a simple reflection, with the new (q, d)."""

    node: str
    gamma: Scalar | None
    classes: dict[str, ClassSpec]
    markings: dict[str, tuple[Scalar, ...]]
    quiver: ColouredQuiver
    d: RootVector
    q: Params


def _ratio(top: Scalar, bottom: Scalar) -> Scalar:
    if is_exact(top) and is_exact(bottom):
        return simplify_exact(top / bottom)
    return to_complex(top) / to_complex(bottom)


def _count(marking: Sequence[Scalar], value: Scalar, upto: int) -> int:
    return sum(1 for xi in marking[:upto] if scalars_equal(xi, value, CLUSTER_RADIUS))


def _leg_params(marking: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """q_1 = xi_1, q_k = xi_k / xi_{k-1}."""
    ratios = (_ratio(marking[k], marking[k - 1]) for k in range(1, len(marking)))
    return (marking[0], *ratios)


def marking_to_leg(c: ClassSpec, marking: Sequence[Scalar]) -> Leg:
    """The leg (q, d) of a class with an annihilating marking.

    Args:
        c: Conjugacy class.
        marking: Ordered roots xi_1, ..., xi_w.

    Returns:
        Leg with d_1 = dim and q_1 = xi_1.

    Raises:
        InvalidMarkingError: If the marking is empty, contains 0, or does not
            annihilate the class.
    """
    marking = tuple(marking)
    if not marking:
        raise InvalidMarkingError("A marking needs at least one root")
    if any(abs(to_complex(xi)) == 0 for xi in marking):
        raise InvalidMarkingError("Marking roots must be nonzero", 0j)
    for value, parts in c.eigen_data:
        if _count(marking, value, len(marking)) < parts[0]:
            raise InvalidMarkingError(
                f"Marking does not annihilate the class at eigenvalue {value}",
                to_complex(value),
            )
    params = _leg_params(marking)
    dims = []
    for k in range(len(marking)):
        dims.append(
            sum(
                max(0, size - _count(marking, value, k))
                for value, parts in c.eigen_data
                for size in parts
            )
        )
    return Leg(tuple(dims), tuple(params))


def _rank(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    if m.dtype == object:
        return int(sympy.Matrix(m).rank())
    return numerical_rank(m)


def _scalar_matrix(value: Scalar, n: int, exact: bool) -> np.ndarray:
    if exact:
        out = zeros_like_shape((n, n), np.empty((0, 0), dtype=object))
        for k in range(n):
            out[k, k] = value
        return out
    return to_complex(value) * np.eye(n, dtype=complex)


def _surjective_b(
    shifted: np.ndarray, big: int, position: int, like: np.ndarray
) -> np.ndarray:
    """[N_{k+1} - 1 | standard basis vectors | 0], surjective onto C^small."""
    small = shifted.shape[0]
    columns = [shifted]
    rank = _rank(shifted)
    slots = big - small
    for j in range(small):
        if rank == small or slots == 0:
            break
        unit = zeros_like_shape((small, 1), like)
        unit[j, 0] = sympy.Integer(1) if like.dtype == object else 1.0
        if _rank(np.concatenate([*columns, unit], axis=1)) > rank:
            columns.append(unit)
            rank += 1
            slots -= 1
    if rank < small:
        raise EmptyClassError(f"No surjective b at leg position {position}", position)
    columns.append(zeros_like_shape((small, slots), like))
    return np.concatenate(columns, axis=1)


def leg_to_class(leg: Leg) -> LegClass:
    """Realise a leg by an invertible representation and read off its class.

    Works backward from N_w = q_w: with a_k = [1; 0] injective, the first
    d_{k+1} columns of b_k are N_{k+1} - 1 and the remaining columns add
    standard basis vectors until b_k is surjective.

    Raises:
        EmptyClassError: If d_{k+1} > d_k, or b_k cannot be made surjective;
            ``position`` is the 1-based index k.
    """
    exact = all(is_exact(q) for q in leg.params)
    like = np.empty((0, 0), dtype=object if exact else complex)
    w = len(leg.dims)
    N = [_scalar_matrix(leg.params[-1], leg.dims[-1], exact)]
    a: list[np.ndarray] = []
    b: list[np.ndarray] = []
    for k in reversed(range(w - 1)):
        big, small = leg.dims[k], leg.dims[k + 1]
        if small > big:
            raise EmptyClassError(f"Leg dimension rises at position {k + 1}", k + 1)
        shifted = simplify_array(N[-1] - _scalar_matrix(1, small, exact))
        b_k = _surjective_b(shifted, big, k + 1, like)
        a_k = _scalar_matrix(1, big, exact)[:, :small]
        one_plus = _scalar_matrix(1, big, exact) + a_k @ b_k
        N.append(simplify_array(_scalar_matrix(leg.params[k], big, exact) @ one_plus))
        a.append(a_k)
        b.append(b_k)
    N.reverse()
    a.reverse()
    b.reverse()
    M = N[0]
    class_spec = numeric_jordan(M, markers=leg.markings)
    logfire.debug("Leg realised", leg=leg.describe(), class_spec=class_spec.describe())
    return LegClass(leg, class_spec, M, a, b, N)


def core_quiver(quiver: ColouredQuiver) -> ColouredQuiver:
    """The complete k-partite core of a supernova graph."""
    layout = require_supernova(quiver)
    return build_complete_kpartite(
        layout.core_parts, colour=layout.core_colour, name=quiver.name
    )


def supernova_from_classes(
    core: ColouredQuiver,
    classes: Mapping[str, ClassSpec],
    markings: Mapping[str, Sequence[Scalar]] | None = None,
) -> tuple[ColouredQuiver, RootVector, Params]:
    """Attach the leg of each (class, marking) to the core and read off (q, d).

    Nodes without a marking use the class's minimal marking; a class on the
    zero space gives the leg d = (0), q = (1).
    """
    markings = markings or {}
    legs = {}
    for node in core.nodes:
        spec = classes[node]
        marking = markings.get(node) or spec.minimal_marking()
        if spec.dimension == 0 and not marking:
            legs[node] = Leg((0,), (sympy.Integer(1),))
            continue
        legs[node] = marking_to_leg(spec, marking)
    quiver = attach_legs(core, legs)
    layout = require_supernova(quiver)
    dims: dict[str, int] = {}
    params: dict[str, Scalar] = {}
    for chain in layout.legs:
        for position, node in enumerate(chain.nodes):
            dims[node] = chain.leg.dims[position]
            params[node] = chain.leg.params[position]
    return (
        quiver,
        RootVector.from_mapping(quiver, dims),
        Params.from_mapping(quiver, params),
    )


def leg_of(quiver: ColouredQuiver, core_node: str, d: RootVector, q: Params) -> Leg:
    """The leg at a core node with the dimensions and parameters of (d, q)."""
    chain = require_supernova(quiver).chain(core_node)
    return Leg(tuple(d[n] for n in chain.nodes), tuple(q[n] for n in chain.nodes))


def _core_neighbour_dims(quiver: ColouredQuiver, node: str, d: RootVector) -> int:
    layout = require_supernova(quiver)
    j = layout.part_index(node)
    return sum(
        d[other] for k, part in enumerate(layout.core_parts) if k != j for other in part
    )


def reflect_marking(
    quiver: ColouredQuiver,
    classes: Mapping[str, ClassSpec],
    markings: Mapping[str, Sequence[Scalar]],
    node: str,
) -> MarkingReflection:
    """Reflect classes and markings at a node and check the (q, d) bookkeeping.

    At a leg node xi_{k-1} and xi_k are swapped. At a core node i the shift
    gamma = xi_{i1} is divided out of the marking at i (which becomes
    (1/gamma, xi_{i2}/gamma, ...)) and multiplied into the classes and
    markings of the core nodes adjacent to i; the class at i is rebuilt from
    its new leg.

    Args:
        quiver: Supernova graph of (classes, markings).
        classes: Class per core node.
        markings: Marking per core node.
        node: Node to reflect at.

    Returns:
        MarkingReflection whose (q, d) equal r_i(q), s_i(d).

    Raises:
        UnknownNodeError: If the node is not in the quiver.
        ReflectionError: If q_i = 1 (or undecided), the new class is empty,
            or the recomputed (q, d) disagree with the reflections.
    """
    layout = require_supernova(quiver)
    core = core_quiver(quiver)
    markings = {
        n: tuple(markings.get(n) or classes[n].minimal_marking()) for n in core.nodes
    }
    classes = dict(classes)
    current, d, q = supernova_from_classes(core, classes, markings)
    if is_one(q[node]) is not False:
        raise ReflectionError(f"Reflection at {node!r} needs q != 1", node)
    core_node, position = layout.locate(node)
    gamma: Scalar | None = None

    if position >= 2:
        marking = list(markings[core_node])
        k = position - 1
        marking[k - 1], marking[k] = marking[k], marking[k - 1]
        markings[core_node] = tuple(marking)
    else:
        gamma = markings[node][0]
        j = layout.part_index(node)
        for k, part in enumerate(layout.core_parts):
            if k == j:
                continue
            for other in part:
                markings[other] = tuple(gamma * xi for xi in markings[other])
                classes[other] = classes[other].scaled(gamma)
        old = leg_of(current, node, d, q)
        next_dim = old.dims[1] if len(old.dims) > 1 else 0
        new_dim = _core_neighbour_dims(current, node, d) + next_dim - old.dims[0]
        if new_dim < 0:
            raise ReflectionError(f"Reflected dimension at {node!r} is negative", node)
        new_marking = (_ratio(1, gamma),) + tuple(
            _ratio(xi, gamma) for xi in markings[node][1:]
        )
        new_leg = Leg((new_dim, *old.dims[1:]), _leg_params(new_marking))
        try:
            classes[node] = leg_to_class(new_leg).class_spec
        except EmptyClassError as e:
            raise ReflectionError(f"Reflected class at {node!r} is empty", node) from e
        markings[node] = new_marking

    new_quiver, new_d, new_q = supernova_from_classes(core, classes, markings)
    expected_d = reflect_dim(node, d, current)
    expected_q = reflect_params(node, q, current)
    if new_d.as_dict() != expected_d.as_dict():
        raise ReflectionError(
            f"Dimension bookkeeping differs: {new_d.describe()} vs "
            f"{expected_d.describe()}",
            node,
        )
    for n in current.nodes:
        if not scalars_equal(new_q[n], expected_q[n]):
            raise ReflectionError(f"Parameter bookkeeping differs at {n!r}", node)
    logfire.info("Reflected marking", node=node, gamma=str(gamma), d=new_d.describe())
    return MarkingReflection(node, gamma, classes, markings, new_quiver, new_d, new_q)

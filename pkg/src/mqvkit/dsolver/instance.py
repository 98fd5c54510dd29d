"""Graphical Deligne-Simpson instances: a core graph with one class per node."""

from collections.abc import Sequence
from dataclasses import dataclass, field

from ..blocklinalg.jordan import ClassSpec
from ..exceptions import InvalidQuiverError, UnknownNodeError
from ..graph.quiver import ColouredQuiver
from ..graph.spec_format import GraphSpec
from ..kacmoody.roots import Params, RootVector, reflect_dim, reflect_params
from ..scalars import Scalar
from ..stokes.legs import core_quiver, supernova_from_classes


@dataclass
class DSInstance:
    """Classes C_i in GL(V_i) on the nodes of a complete k-partite core.

    The supernova graph and (q, d) are derived from the chosen markings
    (the minimal marking where none is given).
    """

    instance_id: str
    core: ColouredQuiver
    classes: dict[str, ClassSpec]
    markings: dict[str, tuple[Scalar, ...]] = field(default_factory=dict)
    quiver: ColouredQuiver = field(init=False)
    d: RootVector = field(init=False)
    q: Params = field(init=False)

    def __post_init__(self) -> None:
        """Check every core node has a class and derive the supernova data."""
        for node in list(self.classes) + list(self.markings):
            if node not in self.core.index:
                raise UnknownNodeError(node)
        missing = [n for n in self.core.nodes if n not in self.classes]
        if missing:
            raise InvalidQuiverError(f"No class given for core nodes {missing}")
        self.markings = {n: tuple(m) for n, m in self.markings.items()}
        self.quiver, self.d, self.q = supernova_from_classes(
            self.core, self.classes, self.markings
        )
        for node in self.core.nodes:
            if self.d[node] != self.classes[node].dimension:
                raise InvalidQuiverError(
                    f"Class at {node!r} has dimension "
                    f"{self.classes[node].dimension}, d={self.d[node]}"
                )

    @classmethod
    def from_spec(cls, spec: GraphSpec, instance_id: str | None = None) -> "DSInstance":
        """Build from the Classes and Markings sections of a graph-spec."""
        core = spec.core
        if spec.legs:
            core = core_quiver(spec.quiver)
        return cls(
            instance_id=instance_id or spec.name or "instance",
            core=core,
            classes=dict(spec.classes),
            markings=dict(spec.markings),
        )

    @property
    def core_dims(self) -> dict[str, int]:
        """dim V_i on the core nodes."""
        return {n: self.classes[n].dimension for n in self.core.nodes}

    def q_power_d(self) -> Scalar:
        """q^d, equal to the product of the class determinants."""
        return self.q.power(self.d)


@dataclass
class ReflectedData:
    """(q, d) of an instance after a sequence of simple reflections."""

    nodes: tuple[str, ...]
    quiver: ColouredQuiver
    d: RootVector
    q: Params


def reflect_instance_data(
    inst: DSInstance, nodes: str | Sequence[str]
) -> ReflectedData:
    """Apply (s_i, r_i) for each node in turn to the instance's (q, d).

    Raises:
        UnknownNodeError: If a node is not in the supernova graph.
    """
    if isinstance(nodes, str):
        nodes = (nodes,)
    d, q = inst.d, inst.q
    for node in nodes:
        if node not in inst.quiver.index:
            raise UnknownNodeError(node)
        d = reflect_dim(node, d, inst.quiver)
        q = reflect_params(node, q, inst.quiver)
    return ReflectedData(tuple(nodes), inst.quiver, d, q)


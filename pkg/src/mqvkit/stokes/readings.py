"""The readings of a supernova graph as wild character variety data.

A supernova graph with core parts I_1, ..., I_k can be read generically, with
all of V = sum_I V_i as the rank and a class per core node from its leg, or
through any part I_j: the nodes of I_j then become tame poles whose classes
come from their legs extended by U_i = sum_{l not in I_j} V_l with
parameter 1.
"""

import logfire

from ..blocklinalg.jordan import ClassSpec
from ..exceptions import EmptyClassError
from ..graph.legs import Leg, require_supernova
from ..graph.quiver import ColouredQuiver
from ..kacmoody.roots import Params, RootVector
from ..schemas import Reading
from ..scalars import exact, is_exact
from .legs import leg_of, leg_to_class


def _leg_class(leg: Leg) -> tuple[ClassSpec | None, str]:
    try:
        return leg_to_class(leg).class_spec, ""
    except EmptyClassError as e:
        return None, str(e)


def _describe(spec: ClassSpec | None) -> str:
    return "empty" if spec is None else spec.describe()


def emit_readings(quiver: ColouredQuiver, q: Params, d: RootVector) -> list[Reading]:
    """One generic reading and one reading per core part.

    Every reading presents the same variety, so an empty class found in any
    reading marks all of them empty with the collected notes.

    Args:
        quiver: Supernova graph.
        q: Parameters on its nodes.
        d: Dimension vector on its nodes.

    Returns:
        Readings in the order generic, part 1, ..., part k.

    Raises:
        NotSupernovaError: If the quiver has no supernova layout.
    """
    layout = require_supernova(quiver)
    parts = layout.core_parts
    core = layout.core_nodes
    notes: list[str] = []

    leg_classes: dict[str, ClassSpec | None] = {}
    for node in core:
        spec, note = _leg_class(leg_of(quiver, node, d, q))
        leg_classes[node] = spec
        if note:
            notes.append(f"{node}: {note}")

    readings = [
        Reading(
            label="generic",
            rank=sum(d[i] for i in core),
            m=0,
            h_factors=[d[i] for i in core],
            classes={i: _describe(leg_classes[i]) for i in core},
            n_a=len(parts),
            n_t=[len(p) for p in parts],
        )
    ]

    for j, part in enumerate(parts):
        rest = [i for i in core if i not in part]
        u_dim = sum(d[i] for i in rest)
        classes = {i: _describe(leg_classes[i]) for i in rest}
        for i in part:
            leg = leg_of(quiver, i, d, q)
            if leg.dims[0] > u_dim:
                notes.append(f"{i}: dim V_{i} = {leg.dims[0]} > dim U = {u_dim}")
                classes[f"tame:{i}"] = "empty"
                continue
            one = exact(1) if all(is_exact(p) for p in leg.params) else 1.0
            spec, note = _leg_class(Leg((u_dim, *leg.dims), (one, *leg.params)))
            if note:
                notes.append(f"{i}: {note}")
            classes[f"tame:{i}"] = _describe(None if spec is None else spec.inverse())
        readings.append(
            Reading(
                label=f"part {j + 1}",
                rank=u_dim,
                m=len(part),
                h_factors=[d[i] for i in rest],
                classes=classes,
                n_a=len(parts) - 1,
                n_t=[len(p) for k, p in enumerate(parts) if k != j],
            )
        )

    for reading in readings:
        reading.empty = bool(notes)
        reading.note = "; ".join(notes)
    logfire.debug("Readings", quiver=quiver.name, count=len(readings), notes=len(notes))
    return readings

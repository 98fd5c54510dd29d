"""Fission graphs of degree-two irregular types.

An irregular type Q = A z^2/2 + T z is recorded by its simultaneous
eigenspaces: each part carries one eigenvalue of A, and each node inside a
part one eigenvalue of T. Two eigenspaces are joined by deg(q_i - q_j) - 1
edges, which is 1 across parts and 0 within a part.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import InvalidIrregularTypeError
from .quiver import ColouredQuiver, build_complete_kpartite


@dataclass(frozen=True)
class EigenNode:
    """A simultaneous eigenspace of (A, T)."""

    name: str
    t_eig: complex
    dim: int = 1


@dataclass(frozen=True)
class IrregularPart:
    """An eigenspace of A with its T-eigenspaces."""

    a_eig: complex
    nodes: tuple[EigenNode, ...]


@dataclass(frozen=True)
class IrregularType:
    """Diagonal irregular type dQ = (Az + T) dz."""

    parts: tuple[IrregularPart, ...]

    def __post_init__(self) -> None:
        """Check that eigenvalues separate parts and nodes."""
        if not self.parts:
            raise InvalidIrregularTypeError("Irregular type has no parts")
        a_eigs = [complex(p.a_eig) for p in self.parts]
        if len(set(a_eigs)) != len(a_eigs):
            raise InvalidIrregularTypeError("Repeated eigenvalue of A")
        for part in self.parts:
            if not part.nodes:
                raise InvalidIrregularTypeError("Empty A-eigenspace", str(part.a_eig))
            t_eigs = [complex(n.t_eig) for n in part.nodes]
            if len(set(t_eigs)) != len(t_eigs):
                raise InvalidIrregularTypeError(
                    "Repeated T eigenvalue within one part", str(part.a_eig)
                )
            if any(n.dim < 1 for n in part.nodes):
                raise InvalidIrregularTypeError("Eigenspace of dimension 0")

    @property
    def dims(self) -> dict[str, int]:
        """Eigenspace dimension per node."""
        return {n.name: n.dim for p in self.parts for n in p.nodes}

    def translated(self, a_shift: complex = 0, t_shift: complex = 0) -> "IrregularType":
        """Shift every A eigenvalue and every T eigenvalue."""
        return IrregularType(
            tuple(
                IrregularPart(
                    p.a_eig + a_shift,
                    tuple(EigenNode(n.name, n.t_eig + t_shift, n.dim) for n in p.nodes),
                )
                for p in self.parts
            )
        )


def fission_multiplicity(
    a_i: complex, t_i: complex, a_j: complex, t_j: complex
) -> int:
    """deg(q_i - q_j) - 1 for q = a z^2/2 + t z, floored at 0."""
    diff = np.polynomial.Polynomial([0, t_i - t_j, (a_i - a_j) / 2]).trim()
    return max(diff.degree() - 1, 0)


def fission_graph(irregular_type: IrregularType, name: str = "") -> ColouredQuiver:
    """Build the fission graph of an irregular type.

    Args:
        irregular_type: Validated irregular type.
        name: Optional display name.

    Returns:
        Monochromatic complete k-partite quiver, parts = A-eigenspaces.
    """
    quiver = build_complete_kpartite(
        [[n.name for n in part.nodes] for part in irregular_type.parts], name=name
    )
    eig = {
        n.name: (complex(p.a_eig), complex(n.t_eig))
        for p in irregular_type.parts
        for n in p.nodes
    }
    expected = sum(
        fission_multiplicity(*eig[a], *eig[b])
        for i, a in enumerate(quiver.nodes)
        for b in quiver.nodes[i + 1 :]
    )
    if expected != len(quiver.edges):
        raise InvalidIrregularTypeError("Fission multiplicities are not simply laced")
    return quiver

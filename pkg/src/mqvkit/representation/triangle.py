"""Invariants of rank-one representations of the monochromatic triangle."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import InvalidQuiverError
from ..scalars import to_complex
from .moment import big_cell_factor
from .rep import GraphRep


@dataclass
class TriangleInvariants:
    """Cycle invariants of a scalar triangle representation.

    With (n1, n2, n3) the nodes in reverse colour order:
    a = v12 v21, b = v13 v31, c = v23 v32, p = v12 v23 v31, r = v21 v13 v32.
    """

    nodes: tuple[str, str, str]
    a: complex
    b: complex
    c: complex
    p: complex
    r: complex
    h1: complex
    h2: complex

    @property
    def cycle_residual(self) -> float:
        """|abc - pr|."""
        return abs(self.a * self.b * self.c - self.p * self.r)

    @property
    def first_residual(self) -> float:
        """|1 + a + b - h1|."""
        return abs(1 + self.a + self.b - self.h1)

    @property
    def second_residual(self) -> float:
        """|1 + b + c + ac - p - r - h1 h2|."""
        lhs = 1 + self.b + self.c + self.a * self.c - self.p - self.r
        return abs(lhs - self.h1 * self.h2)

    def max_residual(self) -> float:
        """Largest of the three relation residuals, relative to the scale."""
        scale = max(1.0, abs(self.h1 * self.h2), abs(self.a), abs(self.b), abs(self.c))
        worst = max(self.cycle_residual, self.first_residual, self.second_residual)
        return worst / scale


def triangle_invariants(rep: GraphRep) -> TriangleInvariants:
    """Compute (a, b, c, p, r) and the diagonal factors h1, h2.

    Raises:
        InvalidQuiverError: Unless the quiver is a single-colour triangle with
            every dimension equal to 1.
    """
    quiver = rep.quiver
    if len(quiver.blocks) != 1 or len(quiver.nodes) != 3 or len(quiver.edges) != 3:
        raise InvalidQuiverError("Triangle invariants need a monochromatic triangle")
    if any(rep.dims[n] != 1 for n in quiver.nodes):
        raise InvalidQuiverError("Triangle invariants need d = (1, 1, 1)")
    colour = quiver.blocks[0].colour
    n1, n2, n3 = reversed(quiver.block(colour).nodes)

    def v(head: str, tail: str) -> complex:
        return to_complex(np.asarray(rep.map(head, tail)).item())

    factor = big_cell_factor(rep, colour)
    return TriangleInvariants(
        nodes=(n1, n2, n3),
        a=v(n1, n2) * v(n2, n1),
        b=v(n1, n3) * v(n3, n1),
        c=v(n2, n3) * v(n3, n2),
        p=v(n1, n2) * v(n2, n3) * v(n3, n1),
        r=v(n2, n1) * v(n1, n3) * v(n3, n2),
        h1=to_complex(np.asarray(factor.block(n1)).item()),
        h2=to_complex(np.asarray(factor.block(n2)).item()),
    )

"""Irreducibility (stability) of graph representations.

A graded subrepresentation is a subspace of V invariant under every embedded
edge map and every projection onto V_i. Two tests are combined:

- a screen: the subrepresentation generated by each coordinate basis vector,
  for the representation and its transpose; a proper closure is a witness of
  reducibility;
- the decision: the algebra generated by the maps and projections is all of
  End(V) exactly when no proper invariant subspace exists.
"""

import logfire
import numpy as np
import scipy.linalg

from ..config import INVERTIBILITY_RTOL
from .rep import GraphRep


def _orth_extend(basis: np.ndarray, vectors: np.ndarray, rtol: float) -> np.ndarray:
    """Append the part of ``vectors`` outside span(basis), orthonormalised."""
    if basis.shape[1]:
        vectors = vectors - basis @ (basis.conj().T @ vectors)
    if vectors.size == 0:
        return basis
    scale = max(1.0, float(np.max(np.abs(vectors))))
    u, s, _ = scipy.linalg.svd(vectors, full_matrices=False)
    keep = s > rtol * scale
    if not np.any(keep):
        return basis
    return np.hstack([basis, u[:, keep]])


def generated_subspace(
    generators: list[np.ndarray], start: np.ndarray, rtol: float = INVERTIBILITY_RTOL
) -> np.ndarray:
    """Orthonormal basis of the smallest subspace containing ``start`` and
    closed under every generator."""
    n = start.shape[0]
    basis = _orth_extend(np.zeros((n, 0), dtype=complex), start, rtol)
    frontier = basis
    while frontier.shape[1]:
        if generators:
            images = np.hstack([g @ frontier for g in generators])
        else:
            images = frontier[:, :0]
        before = basis.shape[1]
        basis = _orth_extend(basis, images, rtol)
        frontier = basis[:, before:]
        if basis.shape[1] == n:
            break
    return basis


def _generators(rep: GraphRep) -> list[np.ndarray]:
    return rep.embedded_maps() + rep.projections()


def subrepresentation_closure(rep: GraphRep, node: str, index: int) -> np.ndarray:
    """Basis of the subrepresentation generated by a coordinate vector of V_node."""
    n = rep.total
    start = np.zeros((n, 1), dtype=complex)
    start[rep.offsets()[node].start + index, 0] = 1.0
    return generated_subspace(_generators(rep), start)


def find_proper_closure(rep: GraphRep) -> np.ndarray | None:
    """A proper nonzero invariant subspace generated by a basis vector, if any."""
    for node in rep.quiver.nodes:
        for index in range(rep.dims[node]):
            basis = subrepresentation_closure(rep, node, index)
            if basis.shape[1] < rep.total:
                return basis
    return None


def algebra_dimension(rep: GraphRep, rtol: float = INVERTIBILITY_RTOL) -> int:
    """Dimension of the subalgebra of End(V) generated by the maps and projections."""
    n = rep.total
    if n == 0:
        return 0
    generators = _generators(rep)
    identity = np.eye(n, dtype=complex).reshape(n * n, 1)
    # Left multiplication by generators acts on vectorised matrices.
    lifted = [np.kron(g, np.eye(n)) for g in generators]
    return generated_subspace(lifted, identity, rtol).shape[1]


def is_irreducible(rep: GraphRep) -> bool:
    """True if V is nonzero and has no proper nonzero graded subrepresentation."""
    n = rep.total
    if n == 0:
        return False
    closure = find_proper_closure(rep)
    if closure is not None or find_proper_closure(rep.transpose()) is not None:
        logfire.debug("Reducible by basis-vector closure", dims=rep.dims)
        return False
    return algebra_dimension(rep) == n * n


def graded_bases(rep: GraphRep, basis: np.ndarray) -> dict[str, np.ndarray]:
    """Split an invariant subspace of V into orthonormal bases of its V_i parts."""
    out = {}
    for node, span in rep.offsets().items():
        block = basis[span, :]
        if block.size == 0:
            out[node] = np.zeros((rep.dims[node], 0), dtype=complex)
            continue
        out[node] = _orth_extend(
            np.zeros((rep.dims[node], 0), dtype=complex), block, INVERTIBILITY_RTOL
        )
    return out

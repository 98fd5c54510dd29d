"""Ordered gradings V = V_1 + ... + V_k and block-matrix bookkeeping."""

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..exceptions import InvalidPartitionError
from .numerics import eye_like, zeros_like_shape


@dataclass(frozen=True)
class GradedSpace:
    """An ordered direct sum of labelled blocks."""

    parts: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        """Check labels are distinct and dimensions non-negative."""
        labels = [label for label, _ in self.parts]
        if len(set(labels)) != len(labels):
            raise InvalidPartitionError("Grading labels must be distinct")
        if any(dim < 0 for _, dim in self.parts):
            raise InvalidPartitionError("Grading dimensions must be non-negative")

    @classmethod
    def from_dims(
        cls, dims: Sequence[int], labels: Sequence[str] | None = None
    ) -> "GradedSpace":
        """Build from dimensions, labelling blocks 1..k by default."""
        if labels is None:
            labels = [str(k + 1) for k in range(len(dims))]
        return cls(tuple(zip(labels, (int(d) for d in dims), strict=True)))

    @property
    def dims(self) -> tuple[int, ...]:
        """Block dimensions."""
        return tuple(dim for _, dim in self.parts)

    @property
    def labels(self) -> tuple[str, ...]:
        """Block labels."""
        return tuple(label for label, _ in self.parts)

    @property
    def total(self) -> int:
        """Total dimension n."""
        return sum(self.dims)

    def __len__(self) -> int:
        """Number of blocks."""
        return len(self.parts)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """Start offset of each block, plus the total at the end."""
        out = [0]
        for dim in self.dims:
            out.append(out[-1] + dim)
        return tuple(out)

    def slice(self, k: int) -> slice:
        """Index range of block k."""
        return slice(self.offsets[k], self.offsets[k + 1])

    def block(self, m: np.ndarray, i: int, j: int) -> np.ndarray:
        """Block (i, j) of a square matrix graded by this space."""
        return m[self.slice(i), self.slice(j)]

    def trailing(self, k: int) -> slice:
        """Index range of the blocks k, k+1, ..., end."""
        return slice(self.offsets[k], self.total)

    def block_mask(self, relation: str) -> np.ndarray:
        """Boolean mask of blocks (i, j) with ``i <relation> j``.

        Args:
            relation: One of "<", "<=", ">", ">=", "==".
        """
        n = self.total
        owner = np.zeros(n, dtype=int)
        for k in range(len(self)):
            owner[self.slice(k)] = k
        rows, cols = owner[:, None], owner[None, :]
        return {
            "<": rows < cols,
            "<=": rows <= cols,
            ">": rows > cols,
            ">=": rows >= cols,
            "==": rows == cols,
        }[relation]

    def masked(self, m: np.ndarray, relation: str) -> np.ndarray:
        """Copy of m keeping only blocks selected by ``relation``."""
        out = zeros_like_shape(m.shape, m)
        mask = self.block_mask(relation)
        out[mask] = m[mask]
        return out

    def block_diag(self, blocks: Sequence[np.ndarray]) -> np.ndarray:
        """Assemble a block-diagonal matrix."""
        like = blocks[0] if blocks else np.zeros((0, 0), dtype=complex)
        out = zeros_like_shape((self.total, self.total), like)
        for k, b in enumerate(blocks):
            out[self.slice(k), self.slice(k)] = b
        return out

    def diagonal_blocks(self, m: np.ndarray) -> list[np.ndarray]:
        """The diagonal blocks of m."""
        return [self.block(m, k, k) for k in range(len(self))]

    def is_unitriangular(self, m: np.ndarray, upper: bool, atol: float = 0.0) -> bool:
        """Block-unitriangular test: identity diagonal blocks, zeros on one side."""
        off = self.block_mask(">" if upper else "<")
        diag = self.block_mask("==")
        ident = eye_like(self.total, m)
        zero_ok = np.all(np.abs(np.asarray(m[off], dtype=complex)) <= atol)
        diag_ok = np.all(
            np.abs(np.asarray(m[diag] - ident[diag], dtype=complex)) <= atol
        )
        return bool(zero_ok and diag_ok)

    def swapped(self, k: int) -> "GradedSpace":
        """Grading with blocks k and k+1 exchanged."""
        parts = list(self.parts)
        parts[k], parts[k + 1] = parts[k + 1], parts[k]
        return GradedSpace(tuple(parts))

    def swap_index(self, k: int) -> np.ndarray:
        """Coordinate order of the swapped grading: (P v)[a] = v[index[a]]."""
        if not 0 <= k < len(self) - 1:
            raise ValueError(f"No adjacent pair at block {k} of {len(self)}")
        order = list(range(len(self)))
        order[k], order[k + 1] = order[k + 1], order[k]
        return np.concatenate(
            [np.arange(self.offsets[b], self.offsets[b + 1]) for b in order]
        ).astype(int)

    def swap_permutation(self, k: int) -> np.ndarray:
        """Permutation matrix P with P v expressed in the swapped grading."""
        index = self.swap_index(k)
        perm = np.zeros((self.total, self.total), dtype=complex)
        perm[np.arange(self.total), index] = 1.0
        return perm

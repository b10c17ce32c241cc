"""
Transition matrices, vertices and edges.

Entry ``f[v][w]`` of a level matrix counts the edges from source vertex ``w`` to range
vertex ``v``: rows are the range level, columns the source level.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..core.errors import DimensionMismatch


@dataclass(frozen=True)
class TransitionMatrix:
    """Nonnegative integer matrix of edge multiplicities between two levels."""
    entries: Tuple[Tuple[int, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "TransitionMatrix":
        if isinstance(rows, TransitionMatrix):
            return rows
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "TransitionMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: Tuple[int, int]) -> int:
        v, w = idx
        return self.entries[v][w]

    def transpose(self) -> "TransitionMatrix":
        return TransitionMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        """Plain integer product (``self`` applied after ``other``)."""
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries))
        return TransitionMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.entries
        ))

    def apply(self, vec: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def is_positive(self) -> bool:
        return all(x > 0 for row in self.entries for x in row)

    def zero_rows(self) -> List[int]:
        return [i for i, row in enumerate(self.entries) if not any(row)]

    def zero_cols(self) -> List[int]:
        return [j for j in range(self.cols) if not any(row[j] for row in self.entries)]

    def negative_entries(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.entries) for j, x in enumerate(row) if x < 0]

    def row_sum(self, v: int) -> int:
        return sum(self.entries[v])

    def to_array(self, dtype=object) -> np.ndarray:
        return np.array(self.entries, dtype=dtype)

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def __repr__(self) -> str:
        return f"TransitionMatrix({self.to_list()})"


@dataclass(frozen=True, order=True)
class Vertex:
    level: int
    index: int


@dataclass(frozen=True, order=True)
class Edge:
    """One of the ``f[range][source]`` parallel edges at ``level``.

    Positive levels ``k`` join ``V_{k-1}`` to ``V_k``; negative levels ``-k`` join
    ``V_{-k}`` to ``V_{-k+1}``. Side views of the negative part flip source and range.
    """
    level: int
    source: int
    range: int
    copy: int = 0

    def to_list(self) -> List[int]:
        return [self.level, self.source, self.range, self.copy]

    @classmethod
    def from_list(cls, data: Sequence[int]) -> "Edge":
        level, source, rng, copy = data
        return cls(int(level), int(source), int(rng), int(copy))


def mpn_matrix(p: int, n: int) -> TransitionMatrix:
    """The upper-triangular block ``M(p, n) = [[p, n], [0, 1]]``."""
    return TransitionMatrix(((int(p), int(n)), (0, 1)))

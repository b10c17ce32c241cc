"""
Finite paths through a one-sided diagram and the ordered path sets ``S(v)``.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from ..core.errors import ValidationFailure
from ..diagram.matrix import Edge, Vertex
from .orders import SideOrders, as_side


@dataclass(frozen=True)
class FinitePath:
    """Edges ``e_1..e_k`` with ``e_i`` at level ``i`` and ``r(e_i) = s(e_{i+1})``."""
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        for i, edge in enumerate(self.edges):
            if edge.level != i + 1:
                raise ValidationFailure(f"edge {i} sits at level {edge.level}, expected {i + 1}")
        for a, b in zip(self.edges, self.edges[1:]):
            if a.range != b.source:
                raise ValidationFailure(f"edges at levels {a.level} and {b.level} do not compose")

    @property
    def depth(self) -> int:
        return len(self.edges)

    @property
    def start_vertex(self) -> int:
        return self.edges[0].source

    @property
    def end_vertex(self) -> Vertex:
        return Vertex(self.depth, self.edges[-1].range)

    def __len__(self) -> int:
        return len(self.edges)

    def to_dict(self) -> Dict[str, Any]:
        return {"edges": [e.to_list() for e in self.edges]}

    @classmethod
    def from_lists(cls, edges) -> "FinitePath":
        return cls(tuple(Edge.from_list(e) for e in edges))


def _walk_down(orders: SideOrders, k: int, v: int, last: bool) -> List[Edge]:
    edges: List[Edge] = []
    for level in range(k, 0, -1):
        edge = orders.last_in(level, v) if last else orders.first_in(level, v)
        edges.append(edge)
        v = edge.source
    edges.reverse()
    return edges


def minimal_path(orders, k: int, v: int) -> FinitePath:
    """First element of ``S(v)`` for ``v`` at level ``k``."""
    return FinitePath(tuple(_walk_down(as_side(orders), k, v, last=False)))


def maximal_path(orders, k: int, v: int) -> FinitePath:
    return FinitePath(tuple(_walk_down(as_side(orders), k, v, last=True)))


def enumerate_S(v: Vertex, orders) -> List[FinitePath]:
    """All paths from level 0 into ``v``, ascending.

    Paths are compared at the deepest level where they differ, so the outer loop
    runs over the last edge.
    """
    side = as_side(orders)
    if v.level < 1:
        raise ValueError("S(v) is defined for vertices at level >= 1")

    def paths_into(level: int, vertex: int) -> List[Tuple[Edge, ...]]:
        if level == 0:
            return [()]
        result = []
        for edge in side.incoming(level, vertex):
            for prefix in paths_into(level - 1, edge.source):
                result.append(prefix + (edge,))
        return result

    return [FinitePath(p) for p in paths_into(v.level, v.index)]


def is_maximal(path: FinitePath, orders) -> bool:
    side = as_side(orders)
    return all(side.is_last_in(e) for e in path.edges)


def is_minimal(path: FinitePath, orders) -> bool:
    side = as_side(orders)
    return all(side.is_first_in(e) for e in path.edges)

"""
Cutting-and-stacking stacks of one side of a weighted ordered diagram.

At stage ``k`` every path ``gamma`` from level 0 into ``v`` in ``V_k`` owns a cell of
width ``w_k(v)``. A cell is split among its outgoing edges in ``<=_s`` order; the cells
of ``S(v)`` are stacked in ``<=_r`` order.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from ..core.errors import NeedsPositiveWeights
from ..diagram.matrix import Edge
from ..ordering.orders import SideOrders, as_side
from ..utils.json_io import scalar_to_json
from ..weights.weight_function import WeightFunction


@dataclass(frozen=True)
class Cell:
    """The subinterval ``[left, left + width)`` owned by one path."""
    path: Tuple[Edge, ...]
    left: Any
    width: Any
    start: int
    vertex: int

    @property
    def right(self):
        return self.left + self.width

    def to_dict(self) -> Dict[str, Any]:
        return {
            "left": scalar_to_json(self.left),
            "right": scalar_to_json(self.right),
            "start": self.start,
            "vertex": self.vertex,
        }


@dataclass(frozen=True)
class StackFamily:
    """Stage-``k`` stacks; ``cells`` are in position order, ``stacks[v]`` bottom to top."""
    level: int
    cells: Tuple[Cell, ...]
    stacks: Tuple[Tuple[int, ...], ...]
    base: Tuple[Any, ...]

    @property
    def length(self):
        return self.base[-1]

    def stack(self, v: int) -> List[Cell]:
        return [self.cells[i] for i in self.stacks[v]]

    def heights(self) -> List[int]:
        return [len(s) for s in self.stacks]

    def widths(self) -> List[Any]:
        return [self.cells[s[0]].width if s else 0 for s in self.stacks]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "stacks": [[self.cells[i].to_dict() for i in s] for s in self.stacks],
        }


def base_points(widths: Sequence) -> Tuple[Any, ...]:
    """Cumulative sums ``0 = X_0 <= X_1 <= ... <= X_n``."""
    points = [widths[0] * 0]
    for w in widths:
        points.append(points[-1] + w)
    return tuple(points)


def _stack_key(side: SideOrders, path: Tuple[Edge, ...], cache: Dict) -> Tuple[int, ...]:
    """Incoming ranks from the deepest edge down; ``S(v)`` is ordered by it."""
    key = []
    for edge in reversed(path):
        slot = (edge.level, edge.range)
        if slot not in cache:
            cache[slot] = {e: i for i, e in enumerate(side.incoming(edge.level, edge.range))}
        key.append(cache[slot][edge])
    return tuple(key)


def build_stacks(orders, w: WeightFunction, k: int) -> StackFamily:
    """Stage-``k`` stacks of the side seen by ``orders`` with widths from ``w``."""
    side = as_side(orders)
    base_widths = list(w.at(0))
    base = base_points(base_widths)
    cells = [Cell((), base[u], base_widths[u], u, u) for u in range(len(base_widths))]
    for level in range(1, k + 1):
        widths = w.at(level)
        refined = []
        for cell in cells:
            offset = cell.left
            for edge in side.outgoing(level, cell.vertex):
                width = widths[edge.range]
                refined.append(Cell(cell.path + (edge,), offset, width, cell.start, edge.range))
                offset = offset + width
        cells = refined

    for cell in cells:
        if cell.width == 0:
            raise NeedsPositiveWeights(
                f"vertex {cell.vertex} at level {k} has paths but zero width", level=k, vertex=cell.vertex)

    cache: Dict = {}
    members: Dict[int, List[int]] = {}
    for i, cell in enumerate(cells):
        members.setdefault(cell.vertex, []).append(i)
    stacks = []
    for v in range(side.level_size(k)):
        ordered = sorted(members.get(v, []), key=lambda i: _stack_key(side, cells[i].path, cache))
        stacks.append(tuple(ordered))
    return StackFamily(k, tuple(cells), tuple(stacks), base)

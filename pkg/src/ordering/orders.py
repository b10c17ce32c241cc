"""
Edge orders on bi-infinite diagrams.

Orders are kept in uniform orientation (see ``BiInfiniteDiagram``): ``incoming`` orders
the edges of one level with a common range, ``outgoing`` those with a common source.
A policy generates every order on demand; explicit permutations override the policy
for individual vertices. Nothing walks the parallel copies of an edge one by one,
so multiplicities of any size are fine.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

from ..config.constants import POLICY_LEFT_RIGHT, POLICY_RIGHT_LEFT, SUPPORTED_POLICIES
from ..core.errors import ValidationFailure
from ..diagram.bidiagram import BiInfiniteDiagram
from ..diagram.matrix import Edge, TransitionMatrix

INCOMING = "incoming"
OUTGOING = "outgoing"

Slot = Tuple[int, int]  # (index of the other endpoint, copy)
Key = Tuple[str, int, int]  # (direction, level, vertex)


@dataclass(frozen=True)
class VertexOrder:
    """Total order on the edges at one vertex, as ``(other, copy)`` slots."""
    mults: Tuple[int, ...]
    reverse: bool = False
    perm: Optional[Tuple[Slot, ...]] = None

    def __len__(self) -> int:
        return sum(self.mults)

    # left-to-right primitives
    def _lr_first(self) -> Optional[Slot]:
        for j, m in enumerate(self.mults):
            if m > 0:
                return j, 0
        return None

    def _lr_last(self) -> Optional[Slot]:
        for j in range(len(self.mults) - 1, -1, -1):
            if self.mults[j] > 0:
                return j, self.mults[j] - 1
        return None

    def _lr_next(self, slot: Slot) -> Optional[Slot]:
        j, c = slot
        if c + 1 < self.mults[j]:
            return j, c + 1
        for jj in range(j + 1, len(self.mults)):
            if self.mults[jj] > 0:
                return jj, 0
        return None

    def _lr_prev(self, slot: Slot) -> Optional[Slot]:
        j, c = slot
        if c > 0:
            return j, c - 1
        for jj in range(j - 1, -1, -1):
            if self.mults[jj] > 0:
                return jj, self.mults[jj] - 1
        return None

    def _lr_rank(self, slot: Slot) -> int:
        j, c = slot
        return sum(self.mults[:j]) + c

    def _check(self, slot: Slot) -> None:
        j, c = slot
        if not (0 <= j < len(self.mults) and 0 <= c < self.mults[j]):
            raise ValueError(f"edge slot {slot} does not exist at this vertex")

    def first(self) -> Optional[Slot]:
        if self.perm is not None:
            return self.perm[0] if self.perm else None
        return self._lr_last() if self.reverse else self._lr_first()

    def last(self) -> Optional[Slot]:
        if self.perm is not None:
            return self.perm[-1] if self.perm else None
        return self._lr_first() if self.reverse else self._lr_last()

    def next(self, slot: Slot) -> Optional[Slot]:
        self._check(slot)
        if self.perm is not None:
            i = self.perm.index(slot)
            return self.perm[i + 1] if i + 1 < len(self.perm) else None
        return self._lr_prev(slot) if self.reverse else self._lr_next(slot)

    def prev(self, slot: Slot) -> Optional[Slot]:
        self._check(slot)
        if self.perm is not None:
            i = self.perm.index(slot)
            return self.perm[i - 1] if i > 0 else None
        return self._lr_next(slot) if self.reverse else self._lr_prev(slot)

    def rank(self, slot: Slot) -> int:
        self._check(slot)
        if self.perm is not None:
            return self.perm.index(slot)
        r = self._lr_rank(slot)
        return len(self) - 1 - r if self.reverse else r

    def slots(self) -> Iterator[Slot]:
        slot = self.first()
        while slot is not None:
            yield slot
            slot = self.next(slot)


def _slot_of(direction: str, edge: Edge) -> Tuple[int, Slot]:
    if direction == INCOMING:
        return edge.range, (edge.source, edge.copy)
    return edge.source, (edge.range, edge.copy)


def _edge_of(direction: str, level: int, vertex: int, slot: Slot) -> Edge:
    other, copy = slot
    if direction == INCOMING:
        return Edge(level, other, vertex, copy)
    return Edge(level, vertex, other, copy)


def _multiplicities(m: TransitionMatrix, direction: str, vertex: int) -> Tuple[int, ...]:
    if direction == INCOMING:
        return m.entries[vertex]
    return tuple(row[vertex] for row in m.entries)


def transport_level(level: int, n: int) -> int:
    """Uniform edge level after shifting the diagram by ``n``."""
    if level > n:
        return level - n
    if level > 0:
        return level - n - 1
    return level - n


@dataclass(frozen=True)
class EdgeOrders:
    """The orders ``<=_r`` (incoming) and ``<=_s`` (outgoing) of a diagram."""
    diagram: BiInfiniteDiagram
    policy: str = POLICY_LEFT_RIGHT
    explicit: Dict[Key, Tuple[Slot, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.policy not in SUPPORTED_POLICIES:
            raise ValidationFailure(f"unknown order policy {self.policy!r}")
        for (direction, level, vertex), perm in self.explicit.items():
            mults = _multiplicities(self.diagram.matrix_at(level), direction, vertex)
            expected = sorted((j, c) for j, m in enumerate(mults) for c in range(m))
            if sorted(perm) != expected:
                raise ValidationFailure(
                    f"{direction} order at level {level}, vertex {vertex} is not a permutation of its edges",
                    level=level, vertex=vertex)

    def vertex_order(self, direction: str, level: int, vertex: int) -> VertexOrder:
        mults = _multiplicities(self.diagram.matrix_at(level), direction, vertex)
        perm = self.explicit.get((direction, level, vertex))
        return VertexOrder(mults, self.policy == POLICY_RIGHT_LEFT, perm)

    def _step(self, direction: str, edge: Edge, forward: bool) -> Optional[Edge]:
        vertex, slot = _slot_of(direction, edge)
        order = self.vertex_order(direction, edge.level, vertex)
        nxt = order.next(slot) if forward else order.prev(slot)
        return None if nxt is None else _edge_of(direction, edge.level, vertex, nxt)

    def _end(self, direction: str, level: int, vertex: int, last: bool) -> Edge:
        order = self.vertex_order(direction, level, vertex)
        slot = order.last() if last else order.first()
        if slot is None:
            raise ValidationFailure(f"vertex {vertex} has no {direction} edges at level {level}")
        return _edge_of(direction, level, vertex, slot)

    # incoming (<=_r)
    def first_in(self, level: int, v: int) -> Edge:
        return self._end(INCOMING, level, v, last=False)

    def last_in(self, level: int, v: int) -> Edge:
        return self._end(INCOMING, level, v, last=True)

    def next_in(self, edge: Edge) -> Optional[Edge]:
        return self._step(INCOMING, edge, True)

    def prev_in(self, edge: Edge) -> Optional[Edge]:
        return self._step(INCOMING, edge, False)

    def incoming(self, level: int, v: int) -> List[Edge]:
        order = self.vertex_order(INCOMING, level, v)
        return [_edge_of(INCOMING, level, v, s) for s in order.slots()]

    # outgoing (<=_s)
    def first_out(self, level: int, w: int) -> Edge:
        return self._end(OUTGOING, level, w, last=False)

    def last_out(self, level: int, w: int) -> Edge:
        return self._end(OUTGOING, level, w, last=True)

    def next_out(self, edge: Edge) -> Optional[Edge]:
        return self._step(OUTGOING, edge, True)

    def prev_out(self, edge: Edge) -> Optional[Edge]:
        return self._step(OUTGOING, edge, False)

    def outgoing(self, level: int, w: int) -> List[Edge]:
        order = self.vertex_order(OUTGOING, level, w)
        return [_edge_of(OUTGOING, level, w, s) for s in order.slots()]

    def rank(self, direction: str, edge: Edge) -> int:
        vertex, slot = _slot_of(direction, edge)
        return self.vertex_order(direction, edge.level, vertex).rank(slot)

    def side(self, sign: int) -> "SideOrders":
        return SideOrders(self, 1 if sign > 0 else -1)

    def with_policy(self, policy: str) -> "EdgeOrders":
        return EdgeOrders(self.diagram, policy, dict(self.explicit))

    def transported(self, n: int) -> "EdgeOrders":
        """The same orders on ``diagram.shift(n)``."""
        moved = {(d, transport_level(level, n), v): perm for (d, level, v), perm in self.explicit.items()}
        return EdgeOrders(self.diagram.shift(n), self.policy, moved)

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {"policy": self.policy}
        for direction in (INCOMING, OUTGOING):
            block: Dict[str, Dict[str, List[List[int]]]] = {}
            for (d, level, v), perm in sorted(self.explicit.items()):
                if d == direction:
                    block.setdefault(str(level), {})[str(v)] = [list(s) for s in perm]
            if block:
                doc[direction] = block
        return doc

    @classmethod
    def from_dict(cls, diagram: BiInfiniteDiagram, data) -> "EdgeOrders":
        if data is None:
            return cls(diagram)
        if isinstance(data, str):
            return cls(diagram, data)
        explicit: Dict[Key, Tuple[Slot, ...]] = {}
        for direction in (INCOMING, OUTGOING):
            for level, per_vertex in data.get(direction, {}).items():
                for v, perm in per_vertex.items():
                    explicit[(direction, int(level), int(v))] = tuple((int(a), int(b)) for a, b in perm)
        return cls(diagram, data.get("policy", POLICY_LEFT_RIGHT), explicit)


def default_orders(diagram: BiInfiniteDiagram, policy: str = POLICY_LEFT_RIGHT) -> EdgeOrders:
    """Left-to-right reading: incoming by (source, copy), outgoing by (range, copy)."""
    return EdgeOrders(diagram, policy)


def _flip(edge: Edge) -> Edge:
    """Uniform negative-level edge <-> side edge (an involution)."""
    return Edge(-edge.level, edge.range, edge.source, edge.copy)


@dataclass(frozen=True)
class SideOrders:
    """One side of ``EdgeOrders`` in one-sided standard orientation.

    On the negative side, side level ``k`` is uniform level ``-k`` read backwards, so
    the side's incoming order is the uniform outgoing order ``<=_s``.
    """
    orders: EdgeOrders
    sign: int = 1

    @property
    def diagram(self) -> BiInfiniteDiagram:
        return self.orders.diagram

    def matrix(self, k: int) -> TransitionMatrix:
        return self.diagram.side(self.sign).matrix(k)

    def level_size(self, k: int) -> int:
        return self.diagram.side(self.sign).level_size(k)

    def _wrap(self, edge: Optional[Edge]) -> Optional[Edge]:
        if edge is None or self.sign > 0:
            return edge
        return _flip(edge)

    def _unwrap(self, edge: Edge) -> Edge:
        return edge if self.sign > 0 else _flip(edge)

    def first_in(self, k: int, v: int) -> Edge:
        if self.sign > 0:
            return self.orders.first_in(k, v)
        return _flip(self.orders.first_out(-k, v))

    def last_in(self, k: int, v: int) -> Edge:
        if self.sign > 0:
            return self.orders.last_in(k, v)
        return _flip(self.orders.last_out(-k, v))

    def next_in(self, edge: Edge) -> Optional[Edge]:
        if self.sign > 0:
            return self.orders.next_in(edge)
        return self._wrap(self.orders.next_out(self._unwrap(edge)))

    def prev_in(self, edge: Edge) -> Optional[Edge]:
        if self.sign > 0:
            return self.orders.prev_in(edge)
        return self._wrap(self.orders.prev_out(self._unwrap(edge)))

    def incoming(self, k: int, v: int) -> List[Edge]:
        if self.sign > 0:
            return self.orders.incoming(k, v)
        return [_flip(e) for e in self.orders.outgoing(-k, v)]

    def outgoing(self, k: int, w: int) -> List[Edge]:
        """Side edges at level ``k`` leaving ``w`` in ``V_{k-1}``, in ``<=_s`` order of the side."""
        if self.sign > 0:
            return self.orders.outgoing(k, w)
        return [_flip(e) for e in self.orders.incoming(-k, w)]

    def is_first_in(self, edge: Edge) -> bool:
        return self.first_in(edge.level, edge.range) == edge

    def is_last_in(self, edge: Edge) -> bool:
        return self.last_in(edge.level, edge.range) == edge

    def in_multiplicity(self, k: int, v: int) -> int:
        return self.matrix(k).row_sum(v)


def as_side(orders) -> SideOrders:
    return orders if isinstance(orders, SideOrders) else SideOrders(orders, 1)

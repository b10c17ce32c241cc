#!/usr/bin/env python3
"""
Tests for edge orders, finite paths and the ordered path sets S(v).
"""

import pytest

from src.config.constants import POLICY_RIGHT_LEFT
from src.core.errors import ValidationFailure
from src.diagram.bidiagram import BiInfiniteDiagram
from src.diagram.matrix import Edge, Vertex, mpn_matrix
from src.diagram.sources import StationarySource
from src.ordering.orders import INCOMING, OUTGOING, EdgeOrders, default_orders, transport_level
from src.ordering.paths import FinitePath, enumerate_S, is_maximal, is_minimal, maximal_path, minimal_path

FIB = [[1, 1], [1, 0]]


def fibonacci_diagram() -> BiInfiniteDiagram:
    return BiInfiniteDiagram(StationarySource((FIB,)), StationarySource((FIB,)), 2)


def chacon_diagram() -> BiInfiniteDiagram:
    return BiInfiniteDiagram(StationarySource((mpn_matrix(3, 1),)), StationarySource(([[1, 0], [0, 1]],)), 2)


def test_default_incoming_order_reads_left_to_right():
    orders = default_orders(fibonacci_diagram())
    assert orders.incoming(1, 0) == [Edge(1, 0, 0), Edge(1, 1, 0)]
    assert orders.first_in(1, 1) == orders.last_in(1, 1) == Edge(1, 0, 1)
    assert orders.next_in(Edge(1, 0, 0)) == Edge(1, 1, 0)
    assert orders.next_in(Edge(1, 1, 0)) is None


def test_right_left_policy_reverses():
    orders = default_orders(fibonacci_diagram(), POLICY_RIGHT_LEFT)
    assert orders.incoming(1, 0) == [Edge(1, 1, 0), Edge(1, 0, 0)]
    assert orders.rank(INCOMING, Edge(1, 0, 0)) == 1
    assert orders.with_policy("default-left-right").incoming(1, 0)[0] == Edge(1, 0, 0)


def test_parallel_edges_are_ordered_by_copy():
    orders = default_orders(chacon_diagram())
    incoming = orders.incoming(1, 0)
    assert len(incoming) == 4, f"M(3, 1) has four edges into vertex 0, got {len(incoming)}"
    assert incoming[:3] == [Edge(1, 0, 0, c) for c in range(3)]
    assert orders.rank(INCOMING, Edge(1, 1, 0)) == 3
    assert orders.outgoing(1, 1) == [Edge(1, 1, 0), Edge(1, 1, 1)]


def test_explicit_permutation_overrides_policy():
    d = fibonacci_diagram()
    orders = EdgeOrders(d, explicit={(INCOMING, 1, 0): ((1, 0), (0, 0))})
    assert orders.first_in(1, 0) == Edge(1, 1, 0)
    again = EdgeOrders.from_dict(d, orders.to_dict())
    assert again.incoming(1, 0) == orders.incoming(1, 0), "orders should survive to_dict/from_dict"
    with pytest.raises(ValidationFailure):
        EdgeOrders(d, explicit={(INCOMING, 1, 0): ((0, 0), (0, 1))})
    with pytest.raises(ValidationFailure):
        EdgeOrders(d, "upside-down")


def test_negative_side_uses_outgoing_orders():
    orders = default_orders(chacon_diagram())
    side = orders.side(-1)
    assert side.matrix(1).to_list() == [[1, 0], [0, 1]]
    assert side.incoming(1, 0) == [Edge(1, 0, 0)]
    assert orders.outgoing(-1, 0) == [Edge(-1, 0, 0)]


def test_transport_level():
    assert transport_level(3, 2) == 1
    assert transport_level(2, 2) == -1
    assert transport_level(1, 2) == -2
    assert transport_level(-1, 2) == -3


def test_finite_path_must_compose():
    with pytest.raises(ValidationFailure):
        FinitePath((Edge(1, 0, 1), Edge(2, 0, 0)))
    with pytest.raises(ValidationFailure):
        FinitePath((Edge(2, 0, 0),))
    path = FinitePath.from_lists([[1, 0, 1, 0], [2, 1, 0, 0]])
    assert path.depth == 2 and path.start_vertex == 0
    assert path.end_vertex == Vertex(2, 0)


def test_enumerate_S_is_ordered_and_counted():
    side = default_orders(fibonacci_diagram()).side(1)
    paths = enumerate_S(Vertex(3, 0), side)
    assert len(paths) == 5, f"|S(v)| should equal the path count 5, got {len(paths)}"
    assert paths[0] == minimal_path(side, 3, 0)
    assert paths[-1] == maximal_path(side, 3, 0)
    assert is_minimal(paths[0], side) and not is_minimal(paths[1], side)
    assert is_maximal(paths[-1], side)
    assert len(set(paths)) == len(paths)
    with pytest.raises(ValueError):
        enumerate_S(Vertex(0, 0), side)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

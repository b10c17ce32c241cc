#!/usr/bin/env python3
"""
Tests for the Vershik maps, periodic components, minimality evidence and the metamour function.
"""

import json

import pytest

from src.bundles.catalog import fibonacci
from src.bundles.random_diagrams import random_valid_diagram
from src.config.constants import EXTENSION_NONE, EXTENSION_WRAP
from src.core.errors import MaximalPath, NeedsDepth
from src.diagram.bidiagram import BiInfiniteDiagram
from src.diagram.matrix import TransitionMatrix, Vertex, mpn_matrix
from src.diagram.sources import StationarySource
from src.dynamics.components import (
    MINIMAL, NOT_MINIMAL, component_report, minimality_certificate, periodic_component_scan,
)
from src.dynamics.metamour import Unknown, metamour, metamour_plus
from src.dynamics.vershik import TAIL_MAX, orbit, predecessor, start_path, successor
from src.ordering.orders import default_orders
from src.ordering.paths import enumerate_S
from src.surface.iet import code_orbit, iet_from_stacks
from src.surface.stacks import build_stacks

FIB = TransitionMatrix.of([[1, 1], [1, 0]])


def fibonacci_diagram() -> BiInfiniteDiagram:
    return BiInfiniteDiagram(StationarySource((FIB,)), StationarySource((FIB,)), 2)


def chacon_diagram() -> BiInfiniteDiagram:
    identity = TransitionMatrix.identity(2)
    return BiInfiniteDiagram(StationarySource((mpn_matrix(3, 1),)), StationarySource((identity,)), 2)


def test_orbit_walks_S_v_in_order():
    side = default_orders(fibonacci_diagram()).side(1)
    start = start_path(side, 3, 0)
    trace = orbit(start, side, 4, 3)
    expected = enumerate_S(Vertex(3, 0), side)
    assert [p.prefix for p in trace.paths] == expected, "successor should step through S(v) in order"
    assert trace.itinerary == tuple(p.start_vertex for p in expected)


def test_successor_needs_depth_at_a_free_maximal_prefix():
    side = default_orders(fibonacci_diagram()).side(1)
    top = orbit(start_path(side, 2, 0), side, 2, 2).paths[-1]
    with pytest.raises(NeedsDepth):
        successor(top, side, 2, EXTENSION_NONE)
    wrapped = successor(top, side, 2, EXTENSION_WRAP)
    assert wrapped == start_path(side, 2, 0), "wrap extension restarts at the minimal prefix"


def test_declared_maximal_tail_raises():
    side = default_orders(fibonacci_diagram()).side(1)
    path = start_path(side, 2, 0, "max")
    assert path.tail_tag == TAIL_MAX
    with pytest.raises(MaximalPath):
        successor(path, side, 2, EXTENSION_NONE)


def test_predecessor_inverts_successor():
    side = default_orders(fibonacci_diagram()).side(1)
    start = start_path(side, 4, 1)
    for path in orbit(start, side, 2, 4).paths[:-1]:
        assert predecessor(successor(path, side, 4), side, 4) == path


def test_negative_steps_walk_backwards():
    side = default_orders(fibonacci_diagram()).side(1)
    top = start_path(side, 3, 0, "max")
    trace = orbit(top, side, -4, 3)
    assert trace.paths[-1].prefix == start_path(side, 3, 0).prefix
    first = json.loads(trace.json_lines(-1)[1])
    assert first["step"] == -1
    assert set(first) == {"step", "startVertexIndex", "prefixEdges"}


def test_code_orbit_agrees_with_vershik_itinerary():
    bundle = fibonacci()
    side = bundle.orders.side(1)
    depth = 4
    stacks = build_stacks(side, bundle.w_plus, depth)
    iet = iet_from_stacks(stacks)
    for v in range(2):
        bottom = stacks.cells[stacks.stacks[v][0]]
        steps = len(stacks.stacks[v]) - 1
        coding = code_orbit(iet, bottom.left, steps)
        trace = orbit(start_path(side, depth, v), side, steps, depth)
        assert coding.symbols == trace.itinerary, f"vertex {v}: {coding.symbols} != {trace.itinerary}"
        assert not coding.truncated
        assert code_orbit(iet, bottom.left, steps + 1).gap_step == steps + 1


def test_chacon_has_a_periodic_component():
    components = periodic_component_scan(chacon_diagram(), 4)
    assert len(components) == 1
    comp = components[0]
    assert comp.head_vertex == 1 and comp.period == 1
    assert (comp.stall_level, comp.stall_vertex) == (0, 1)
    assert minimality_certificate(chacon_diagram(), 4).verdict == NOT_MINIMAL


def test_fibonacci_is_minimal():
    evidence = minimality_certificate(fibonacci_diagram(), 4)
    assert evidence.verdict == MINIMAL and evidence.proof == "periodic-power"
    report = component_report(fibonacci_diagram(), 4)
    assert report.transitivity == (1, 0)
    assert report.to_dict()["periodicComponents"] == []


def test_metamour_values():
    assert metamour(fibonacci_diagram(), 0, 0, 1, 8) == 1
    assert metamour_plus(fibonacci_diagram(), 0, 8) == 1
    assert metamour_plus(chacon_diagram(), 0, 8) == 1
    identity = TransitionMatrix.identity(2)
    apart = BiInfiniteDiagram(StationarySource((identity,)), StationarySource((identity,)), 2)
    value = metamour_plus(apart, 0, 8)
    assert isinstance(value, Unknown) and value.proven, "identity levels never merge"


def _brute_metamour(diagram, v, w, cap):
    side = diagram.positive_side
    for m in range(cap + 1):
        product = side.product(0, m)
        if any(product[u, v] and product[u, w] for u in range(product.rows)):
            return m
    return None


@pytest.mark.parametrize("seed", range(6))
def test_metamour_matches_brute_force_on_random_diagrams(seed):
    diagram = random_valid_diagram(seed).diagram
    cap = 10
    for v in range(diagram.weld_size):
        for w in range(v + 1, diagram.weld_size):
            expected = _brute_metamour(diagram, v, w, cap)
            got = metamour(diagram, 0, v, w, cap)
            if expected is None:
                assert isinstance(got, Unknown), f"seed {seed}: expected no meeting, got {got}"
            else:
                assert got == expected, f"seed {seed}, pair {(v, w)}: {got} != {expected}"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""
Finite approximants: the diagram truncated to identity matrices beyond level ``+-i``.

The truncated surface has completely periodic vertical and horizontal flows. Vertical
cylinders are the closed stacks of the positive side, horizontal ones those of the
negative side. The topology of the approximant comes from the Euler characteristic of
its rectangle complex.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import networkx as nx

from ..diagram.bidiagram import BiInfiniteDiagram
from ..diagram.sources import TAIL_IDENTITY, ExplicitWindowSource
from ..ordering.orders import EdgeOrders
from ..utils.json_io import scalar_to_json
from ..utils.logging_config import LOGGER
from ..weights.weight_function import WeightFunction
from ..weights.weighted_diagram import WeightedDiagram
from .iet import IETApprox
from .model import FlatSurfaceModel, build_surface


@dataclass(frozen=True)
class Cylinder:
    """A closed stack: ``width`` across the flow, ``circumference`` along it."""
    index: int
    width: Any
    circumference: Any
    word: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "width": scalar_to_json(self.width),
            "circumference": scalar_to_json(self.circumference),
            "word": list(self.word),
        }


@dataclass(frozen=True)
class ApproximantReport:
    level: int
    surface: FlatSurfaceModel
    vertical: Tuple[Cylinder, ...]
    horizontal: Tuple[Cylinder, ...]
    euler_characteristic: int
    genera: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def components(self) -> int:
        return len(self.genera)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "verticalCylinders": [c.to_dict() for c in self.vertical],
            "horizontalCylinders": [c.to_dict() for c in self.horizontal],
            "eulerCharacteristic": self.euler_characteristic,
            "components": self.components,
            "genera": list(self.genera),
            "surface": self.surface.to_dict(),
        }


def truncated(wd: WeightedDiagram, i: int) -> WeightedDiagram:
    """``B_i``: the matrices of ``wd`` on ``|k| <= i`` and identities beyond."""
    diagram = wd.diagram
    positive = ExplicitWindowSource(tuple(diagram.positive_side.matrix(k) for k in range(1, i + 1)),
                                    TAIL_IDENTITY, diagram.weld_size)
    negative = ExplicitWindowSource(tuple(diagram.negative_side.matrix(k) for k in range(1, i + 1)),
                                    TAIL_IDENTITY, diagram.weld_size)
    cut = BiInfiniteDiagram(positive, negative, diagram.weld_size)

    def frozen(w: WeightFunction) -> WeightFunction:
        levels = {k: w.at(k) for k in range(i + 1)}
        one = levels[0][0] * 0 + 1
        return WeightFunction(levels, w.mode, 1, one)

    explicit = {key: perm for key, perm in wd.orders.explicit.items() if abs(key[1]) <= i}
    orders = EdgeOrders(cut, wd.orders.policy, explicit)
    return WeightedDiagram(cut, frozen(wd.w_plus), frozen(wd.w_minus), orders, f"{wd.name}|{i}" if wd.name else "")


def _cylinders(iet: IETApprox, along) -> List[Cylinder]:
    """One cylinder per closed stack; ``along`` holds the rectangle sides the flow crosses."""
    stacks: Dict[int, List[int]] = {}
    for cell in range(len(iet.lefts)):
        stacks.setdefault(iet.bottoms[cell], []).append(cell)
    result = []
    for n, bottom in enumerate(sorted(stacks)):
        chain = [bottom]
        while iet.targets[chain[-1]] is not None:
            chain.append(iet.targets[chain[-1]])
        word = tuple(iet.symbols[c] for c in chain)
        circumference = sum((along[u] for u in word), along[0] * 0)
        result.append(Cylinder(n, iet.rights[bottom] - iet.lefts[bottom], circumference, word))
    return result


def _span(iet: IETApprox, rect: int) -> Tuple[int, int]:
    cells = [i for i, s in enumerate(iet.symbols) if s == rect]
    return cells[0], cells[-1] + 1


def gluing_graphs(surface: FlatSurfaceModel) -> Tuple[nx.Graph, nx.Graph]:
    """Boundary points joined by the side identifications, and rectangles joined by shared sides.

    A boundary point is ``(side, rectangle, breakpoint)`` with ``side`` one of ``T B L R``.
    """
    top, right = surface.top_map, surface.right_map
    corners = nx.Graph()
    faces = nx.Graph()
    for r in range(len(surface.widths)):
        x0, x1 = _span(top, r)
        y0, y1 = _span(right, r)
        corners.add_nodes_from((side, r, b) for side in "TB" for b in range(x0, x1 + 1))
        corners.add_nodes_from((side, r, b) for side in "LR" for b in range(y0, y1 + 1))
        corners.add_edges_from([(("T", r, x0), ("L", r, y1)), (("T", r, x1), ("R", r, y1)),
                                (("B", r, x0), ("L", r, y0)), (("B", r, x1), ("R", r, y0))])
        faces.add_node(r)
    for kind, glued, iet in (("T", "B", top), ("R", "L", right)):
        for i in range(len(iet.lefts)):
            t = iet.target(i, closed=True)
            r, s = iet.symbols[i], iet.symbols[t]
            corners.add_edge((kind, r, i), (glued, s, t))
            corners.add_edge((kind, r, i + 1), (glued, s, t + 1))
            faces.add_edge(r, s)
    return corners, faces


def euler_data(surface: FlatSurfaceModel) -> Tuple[int, Tuple[int, ...]]:
    """Euler characteristic and per-component genus of the closed rectangle complex."""
    corners, faces = gluing_graphs(surface)
    components = sorted((sorted(c) for c in nx.connected_components(faces)), key=lambda c: c[0])
    component_of = {r: n for n, members in enumerate(components) for r in members}

    tally = [[0, 0, len(members)] for members in components]
    for iet in (surface.top_map, surface.right_map):
        for s in iet.symbols:
            tally[component_of[s]][1] += 1
    vertices = list(nx.connected_components(corners))
    for vertex in vertices:
        _, rect, _ = next(iter(vertex))
        tally[component_of[rect]][0] += 1
    chi = sum(v - e + f for v, e, f in tally)
    genera = tuple((2 - (v - e + f)) // 2 for v, e, f in tally)
    LOGGER.debug(f"rectangle complex: {len(tally)} component(s), {len(vertices)} vertices")
    return chi, genera


def finite_approximant(wd: WeightedDiagram, i: int) -> ApproximantReport:
    """Surface of ``B_i`` with its vertical and horizontal cylinder decompositions."""
    if i < 0:
        raise ValueError("approximant level must be nonnegative")
    surface = build_surface(truncated(wd, i), i, i)
    vertical = _cylinders(surface.top_map, surface.heights)
    horizontal = _cylinders(surface.right_map, surface.widths)
    chi, genera = euler_data(surface)
    LOGGER.info(f"approximant B_{i}: {len(vertical)} vertical cylinders, chi={chi}, genera={list(genera)}")
    return ApproximantReport(i, surface, tuple(vertical), tuple(horizontal), chi, genera)

"""
The rectangles-with-identifications model of the flat surface of a weighted ordered
diagram, and the Teichmuller deformation acting on it.
"""

import math
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Tuple

from ..config.constants import MODE_EXACT, MODE_FLOAT
from ..utils.json_io import scalar_from_json, scalar_to_json
from ..utils.logging_config import LOGGER
from ..weights.weighted_diagram import WeightedDiagram
from .iet import IETApprox, iet_at_depth
from .stacks import base_points

TOP = "top"
RIGHT = "right"


@dataclass(frozen=True)
class Rectangle:
    index: int
    x0: Any
    x1: Any
    y0: Any
    y1: Any

    @property
    def width(self):
        return self.x1 - self.x0

    @property
    def height(self):
        return self.y1 - self.y0

    def to_dict(self) -> Dict[str, Any]:
        return {"index": self.index, **{k: scalar_to_json(getattr(self, k)) for k in ("x0", "x1", "y0", "y1")}}


@dataclass(frozen=True)
class Identification:
    """A top segment glued to a bottom segment, or a right segment to a left one.

    ``closing`` marks gluings that only exist in the stage-``k`` approximant (top of a
    stack sent back to its bottom).
    """
    kind: str
    source_rect: int
    target_rect: int
    source: Tuple[Any, Any]
    target: Tuple[Any, Any]
    closing: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "sourceRect": self.source_rect,
            "targetRect": self.target_rect,
            "source": [scalar_to_json(x) for x in self.source],
            "target": [scalar_to_json(x) for x in self.target],
            "closing": self.closing,
        }


def _scaled_iet(iet: IETApprox, factor) -> IETApprox:
    return replace(
        iet,
        lefts=tuple(x * factor for x in iet.lefts),
        rights=tuple(x * factor for x in iet.rights),
        length=iet.length * factor,
    )


@dataclass(frozen=True)
class FlatSurfaceModel:
    """``R_i = [X_{i-1}, X_i] x [Y_{i-1}, Y_i]`` glued by ``T^+`` (top/bottom) and ``T^-`` (right/left)."""
    widths: Tuple[Any, ...]
    heights: Tuple[Any, ...]
    top_map: IETApprox
    right_map: IETApprox
    mode: str = MODE_EXACT
    name: str = ""

    @property
    def depth(self) -> int:
        return self.top_map.depth

    @property
    def negative_depth(self) -> int:
        return self.right_map.depth

    @property
    def rectangles(self) -> List[Rectangle]:
        xs, ys = base_points(self.widths), base_points(self.heights)
        return [Rectangle(i, xs[i], xs[i + 1], ys[i], ys[i + 1]) for i in range(len(self.widths))]

    @property
    def area(self):
        return sum((w * h for w, h in zip(self.widths, self.heights)), self.widths[0] * 0)

    def identifications(self) -> List[Identification]:
        pairs = []
        for kind, iet in ((TOP, self.top_map), (RIGHT, self.right_map)):
            for i in range(len(iet.lefts)):
                t = iet.target(i, closed=True)
                pairs.append(Identification(
                    kind, iet.symbols[i], iet.symbols[t],
                    (iet.lefts[i], iet.rights[i]), (iet.lefts[t], iet.rights[t]),
                    closing=iet.targets[i] is None,
                ))
        return pairs

    def singular_set(self) -> List[Tuple[Any, Any]]:
        """Boundary points where the closed ``T^+`` or ``T^-`` is discontinuous, with their images."""
        rects = self.rectangles
        points = []
        for kind, iet in ((TOP, self.top_map), (RIGHT, self.right_map)):
            for i in range(len(iet.lefts) - 1):
                if iet.symbols[i] != iet.symbols[i + 1]:
                    continue
                a, b = iet.target(i, closed=True), iet.target(i + 1, closed=True)
                if iet.symbols[a] == iet.symbols[b] and abs(float(iet.lefts[b] - iet.rights[a])) <= 1e-12:
                    continue
                rect = rects[iet.symbols[i]]
                if kind == TOP:
                    points.append((iet.rights[i], rect.y1))
                    points.append((iet.rights[a], rects[iet.symbols[a]].y0))
                    points.append((iet.lefts[b], rects[iet.symbols[b]].y0))
                else:
                    points.append((rect.x1, iet.rights[i]))
                    points.append((rects[iet.symbols[a]].x0, iet.rights[a]))
                    points.append((rects[iet.symbols[b]].x0, iet.lefts[b]))
        return sorted(set(points))

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            "numericMode": self.mode,
            "depth": self.depth,
            "negativeDepth": self.negative_depth,
            "area": scalar_to_json(self.area),
            "widths": [scalar_to_json(w) for w in self.widths],
            "heights": [scalar_to_json(h) for h in self.heights],
            "rectangles": [r.to_dict() for r in self.rectangles],
            "topMap": self.top_map.to_dict(),
            "rightMap": self.right_map.to_dict(),
            "identifications": [p.to_dict() for p in self.identifications()],
            "singularSet": [[scalar_to_json(x), scalar_to_json(y)] for x, y in self.singular_set()],
        }
        if self.name:
            doc["name"] = self.name
        return doc

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FlatSurfaceModel":
        return cls(
            widths=tuple(scalar_from_json(w) for w in data["widths"]),
            heights=tuple(scalar_from_json(h) for h in data["heights"]),
            top_map=IETApprox.from_dict(data["topMap"]),
            right_map=IETApprox.from_dict(data["rightMap"]),
            mode=data.get("numericMode", MODE_EXACT),
            name=data.get("name", ""),
        )


def build_surface(wd: WeightedDiagram, depth: int, negative_depth: Optional[int] = None,
                  normalize: bool = True) -> FlatSurfaceModel:
    """Rectangles from the level-0 weights, glued through the stage-``depth`` maps of both sides."""
    if normalize:
        wd = wd.normalized()
    negative_depth = depth if negative_depth is None else negative_depth
    top = iet_at_depth(wd.orders.side(1), wd.w_plus, depth)
    right = iet_at_depth(wd.orders.side(-1), wd.w_minus, negative_depth)
    surface = FlatSurfaceModel(tuple(wd.w_plus.at(0)), tuple(wd.w_minus.at(0)), top, right, wd.mode, wd.name)
    LOGGER.debug(f"surface built at depths {depth}/{negative_depth}: "
                  f"{len(top.lefts)} top cells, {len(right.lefts)} right cells")
    return surface


def teichmuller_deform(surface: FlatSurfaceModel, t: float = 0.0, factor=None) -> FlatSurfaceModel:
    """``g_t``: horizontal data times ``e^t``, vertical data times ``e^{-t}``.

    An exact ``factor`` (standing for ``e^t``) keeps exact surfaces exact.
    """
    if factor is None:
        if t == 0:
            return surface
        factor = math.exp(t)
    mode = surface.mode
    if isinstance(factor, float) and mode == MODE_EXACT:
        LOGGER.info("deforming an exact surface by an irrational factor; switching to float")
        surface = converted_surface(surface, MODE_FLOAT)
        mode = MODE_FLOAT
    inverse = 1 / factor
    return FlatSurfaceModel(
        widths=tuple(w * factor for w in surface.widths),
        heights=tuple(h * inverse for h in surface.heights),
        top_map=_scaled_iet(surface.top_map, factor),
        right_map=_scaled_iet(surface.right_map, inverse),
        mode=mode,
        name=surface.name,
    )


def _float_iet(iet: IETApprox) -> IETApprox:
    return replace(iet, lefts=tuple(float(x) for x in iet.lefts), rights=tuple(float(x) for x in iet.rights),
                   length=float(iet.length))


def converted_surface(surface: FlatSurfaceModel, mode: str) -> FlatSurfaceModel:
    if mode == surface.mode or mode == MODE_EXACT:
        return surface
    return FlatSurfaceModel(
        widths=tuple(float(w) for w in surface.widths),
        heights=tuple(float(h) for h in surface.heights),
        top_map=_float_iet(surface.top_map),
        right_map=_float_iet(surface.right_map),
        mode=MODE_FLOAT,
        name=surface.name,
    )


def canonical_pieces(iet: IETApprox) -> List[Tuple[Any, Any, Any, bool]]:
    """Maximal runs of adjacent cells moved by one translation: ``(left, right, shift, closing)``."""
    pieces: List[Tuple[Any, Any, Any, bool]] = []
    for i in range(len(iet.lefts)):
        t = iet.target(i, closed=True)
        shift = iet.lefts[t] - iet.lefts[i]
        closing = iet.targets[i] is None
        if pieces and i and iet.symbols[i] == iet.symbols[i - 1]:
            left, _, last_shift, last_closing = pieces[-1]
            if last_closing == closing and abs(float(shift - last_shift)) <= 1e-12:
                pieces[-1] = (left, iet.rights[i], last_shift, closing)
                continue
        pieces.append((iet.lefts[i], iet.rights[i], shift, closing))
    return pieces


def surface_deviation(a: FlatSurfaceModel, b: FlatSurfaceModel) -> float:
    """Largest difference between rectangle data and canonical gluing maps; ``inf`` when
    the combinatorics differ."""
    if len(a.widths) != len(b.widths):
        return math.inf
    worst = 0.0
    for x, y in zip(a.widths + a.heights, b.widths + b.heights):
        worst = max(worst, abs(float(x) - float(y)))
    for p, q in ((a.top_map, b.top_map), (a.right_map, b.right_map)):
        mine, theirs = canonical_pieces(p), canonical_pieces(q)
        if len(mine) != len(theirs) or any(m[3] != t[3] for m, t in zip(mine, theirs)):
            return math.inf
        for m, t in zip(mine, theirs):
            worst = max(worst, *(abs(float(x) - float(y)) for x, y in zip(m[:3], t[:3])))
    return worst

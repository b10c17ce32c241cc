"""
Vershik successor and predecessor maps on truncated paths.
"""

from dataclasses import dataclass, replace
from typing import Any, Dict, List, Tuple

from ..config.constants import EXTENSION_PERIODIC, EXTENSION_WRAP, SUPPORTED_EXTENSIONS
from ..core.errors import MaximalPath, MinimalPath, NeedsDepth
from ..ordering.orders import SideOrders, as_side
from ..ordering.paths import FinitePath, maximal_path, minimal_path
from ..utils.json_io import dumps_line
from .components import is_periodic_head

TAIL_FREE = "Free"
TAIL_MAX = "MaxTail"
TAIL_MIN = "MinTail"


@dataclass(frozen=True)
class TruncatedPath:
    """A finite prefix plus a declaration about the unobserved tail."""
    prefix: FinitePath
    tail_tag: str = TAIL_FREE

    @property
    def depth(self) -> int:
        return self.prefix.depth

    @property
    def start_vertex(self) -> int:
        return self.prefix.start_vertex

    @property
    def end_vertex(self) -> int:
        return self.prefix.edges[-1].range

    def with_prefix(self, prefix: FinitePath) -> "TruncatedPath":
        return replace(self, prefix=prefix)

    def to_dict(self) -> Dict[str, Any]:
        return {"tailTag": self.tail_tag, **self.prefix.to_dict()}


def _check(path: TruncatedPath, depth_budget: int, extension: str) -> None:
    if extension not in SUPPORTED_EXTENSIONS:
        raise ValueError(f"unknown extension mode {extension!r}")
    if depth_budget < path.depth:
        raise ValueError(f"depth budget {depth_budget} is below the prefix depth {path.depth}")


def _wraps(side: SideOrders, path: TruncatedPath, extension: str, tag: str) -> bool:
    if extension == EXTENSION_WRAP:
        return True
    if extension == EXTENSION_PERIODIC and path.tail_tag == tag:
        return is_periodic_head(side.diagram.side(side.sign), path.depth, path.end_vertex)
    return False


def successor(path: TruncatedPath, orders, depth_budget: int,
              extension: str = EXTENSION_PERIODIC) -> TruncatedPath:
    """Advance the first non-maximal edge and reset everything below it to minimal."""
    _check(path, depth_budget, extension)
    side = as_side(orders)
    edges = path.prefix.edges
    for i, edge in enumerate(edges):
        nxt = side.next_in(edge)
        if nxt is None:
            continue
        below = minimal_path(side, i, nxt.source).edges if i else ()
        return path.with_prefix(FinitePath(below + (nxt,) + edges[i + 1:]))

    if _wraps(side, path, extension, TAIL_MAX):
        return path.with_prefix(minimal_path(side, path.depth, path.end_vertex))
    if path.tail_tag == TAIL_MAX:
        raise MaximalPath(f"path is maximal (tail declared maximal) at vertex {path.end_vertex}",
                          vertex=path.end_vertex)
    raise NeedsDepth(f"prefix is maximal through depth {path.depth}", step=0, depth=path.depth)


def predecessor(path: TruncatedPath, orders, depth_budget: int,
                extension: str = EXTENSION_PERIODIC) -> TruncatedPath:
    _check(path, depth_budget, extension)
    side = as_side(orders)
    edges = path.prefix.edges
    for i, edge in enumerate(edges):
        prv = side.prev_in(edge)
        if prv is None:
            continue
        below = maximal_path(side, i, prv.source).edges if i else ()
        return path.with_prefix(FinitePath(below + (prv,) + edges[i + 1:]))

    if _wraps(side, path, extension, TAIL_MIN):
        return path.with_prefix(maximal_path(side, path.depth, path.end_vertex))
    if path.tail_tag == TAIL_MIN:
        raise MinimalPath(f"path is minimal (tail declared minimal) at vertex {path.end_vertex}",
                          vertex=path.end_vertex)
    raise NeedsDepth(f"prefix is minimal through depth {path.depth}", step=0, depth=path.depth)


@dataclass(frozen=True)
class OrbitTrace:
    paths: Tuple[TruncatedPath, ...]
    itinerary: Tuple[int, ...]

    def json_lines(self, step_sign: int = 1) -> List[str]:
        return [
            dumps_line({
                "step": step_sign * i,
                "startVertexIndex": p.start_vertex,
                "prefixEdges": [e.to_list() for e in p.prefix.edges],
            })
            for i, p in enumerate(self.paths)
        ]


def orbit(path: TruncatedPath, orders, steps: int, depth_budget: int,
          extension: str = EXTENSION_PERIODIC) -> OrbitTrace:
    """Iterate successor (predecessor for negative ``steps``), recording level-0 symbols."""
    move = successor if steps >= 0 else predecessor
    paths = [path]
    for step in range(1, abs(steps) + 1):
        try:
            paths.append(move(paths[-1], orders, depth_budget, extension))
        except NeedsDepth as e:
            raise NeedsDepth(e.message, step=step, partial=list(paths)) from e
    return OrbitTrace(tuple(paths), tuple(p.start_vertex for p in paths))


def start_path(orders, depth: int, vertex: int, start: str = "min") -> TruncatedPath:
    """Minimal or maximal prefix into ``vertex``, tagged so that its tail agrees."""
    if start == "max":
        return TruncatedPath(maximal_path(orders, depth, vertex), TAIL_MAX)
    return TruncatedPath(minimal_path(orders, depth, vertex), TAIL_FREE)


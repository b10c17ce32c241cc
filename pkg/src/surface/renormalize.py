"""
The renormalization map ``R_k``: deform by ``g_{t_k}``, cut every rectangle along the
stage-``k`` cells and restack the pieces into one rectangle per level-``k`` vertex.

The result is compared with the surface of the ``k``-fold shift; a mismatch beyond the
tolerance raises ``ToleranceViolation``.
"""

from typing import Dict, List, Optional, Tuple

from ..config.constants import GEOMETRY_TOL
from ..core.errors import NeedsDepth, ToleranceViolation
from ..renormalization.shifting import shift_weighted
from ..utils import numeric
from ..utils.logging_config import LOGGER
from ..weights.weighted_diagram import WeightedDiagram
from .iet import IETApprox
from .model import FlatSurfaceModel, build_surface, surface_deviation, teichmuller_deform
from .stacks import StackFamily, base_points, build_stacks


def _restacked_top(deformed: FlatSurfaceModel, deep: StackFamily, stage: StackFamily, factor,
                   widths) -> IETApprox:
    """First return of ``T^+`` to the bottoms of the stage-``k`` stacks, in new coordinates."""
    k = stage.level
    old = deformed.top_map
    index = {cell.path: c for c, cell in enumerate(stage.cells)}
    owner = [index[cell.path[:k]] for cell in deep.cells]
    in_base = [stage.stacks[stage.cells[c].vertex][0] == c for c in owner]

    xs = base_points(widths)
    chosen = sorted((i for i in range(len(deep.cells)) if in_base[i]),
                    key=lambda i: (stage.cells[owner[i]].vertex, i))
    renumber = {i: n for n, i in enumerate(chosen)}
    lefts, rights, symbols, targets, bottoms = [], [], [], [], []
    for i in chosen:
        c = owner[i]
        v = stage.cells[c].vertex
        left = xs[v] + old.lefts[i] - stage.cells[c].left * factor
        lefts.append(left)
        rights.append(left + (old.rights[i] - old.lefts[i]))
        symbols.append(v)
        j = old.targets[i]
        while j is not None and not in_base[j]:
            j = old.targets[j]
        targets.append(None if j is None else renumber[j])
        bottoms.append(renumber[old.bottoms[i]])
    return IETApprox(old.depth - k, tuple(lefts), tuple(rights), tuple(symbols), tuple(targets),
                     tuple(bottoms), xs[-1])


def _restacked_right(deformed: FlatSurfaceModel, stage: StackFamily, heights) -> IETApprox:
    """The right/left gluing after stacking: pieces cut from one rectangle continue into
    each other; the last piece of a rectangle continues through the old ``T^-``."""
    old = deformed.right_map
    old_ys = base_points(deformed.heights)
    new_ys = base_points(heights)

    following: Dict[int, Optional[int]] = {}
    leftmost: Dict[int, int] = {}
    for c, cell in enumerate(stage.cells):
        leftmost.setdefault(cell.start, c)
        nxt = c + 1
        following[c] = nxt if nxt < len(stage.cells) and stage.cells[nxt].start == cell.start else None

    rows: Dict[int, List[int]] = {}
    for d, u in enumerate(old.symbols):
        rows.setdefault(u, []).append(d)

    cells: List[Tuple[int, int]] = []
    lefts, rights, symbols = [], [], []
    for v, members in enumerate(stage.stacks):
        offset = new_ys[v]
        for c in members:
            u = stage.cells[c].start
            for d in rows.get(u, []):
                left = offset + (old.lefts[d] - old_ys[u])
                cells.append((c, d))
                lefts.append(left)
                rights.append(left + (old.rights[d] - old.lefts[d]))
                symbols.append(v)
            offset = offset + deformed.heights[u]

    renumber = {key: n for n, key in enumerate(cells)}
    targets, bottoms = [], []
    for c, d in cells:
        if following[c] is not None:
            targets.append(renumber[(following[c], d)])
        elif old.targets[d] is None:
            targets.append(None)
        else:
            d2 = old.targets[d]
            targets.append(renumber[(leftmost[old.symbols[d2]], d2)])
        db = old.bottoms[d]
        bottoms.append(renumber[(leftmost[old.symbols[db]], db)])

    return IETApprox(old.depth + stage.level, tuple(lefts), tuple(rights), tuple(symbols), tuple(targets),
                     tuple(bottoms), new_ys[-1])


def renorm_map(surface: FlatSurfaceModel, wd: WeightedDiagram, k: int, check: bool = True,
               tol: float = GEOMETRY_TOL) -> FlatSurfaceModel:
    """``R_k`` applied to the surface of ``wd`` (built at ``surface.depth``)."""
    if k == 0:
        return surface
    if k > surface.depth:
        raise NeedsDepth(f"renormalizing by {k} needs the surface at depth >= {k}", step=0, depth=surface.depth)
    wd = wd.normalized()
    side = wd.orders.side(1)
    factor = numeric.reciprocal(wd.w_plus.total(k))
    deformed = teichmuller_deform(surface, factor=factor)

    stage = build_stacks(side, wd.w_plus, k)
    deep = build_stacks(side, wd.w_plus, surface.depth)
    widths = tuple(stage.cells[members[0]].width * factor for members in stage.stacks)
    heights = tuple(sum((deformed.heights[stage.cells[c].start] for c in members), deformed.heights[0] * 0)
                    for members in stage.stacks)
    result = FlatSurfaceModel(
        widths=widths,
        heights=heights,
        top_map=_restacked_top(deformed, deep, stage, factor, widths),
        right_map=_restacked_right(deformed, stage, heights),
        mode=deformed.mode,
        name=f"{wd.name}>>{k}" if wd.name else "",
    )
    if check:
        expected = build_surface(shift_weighted(wd, k), result.depth, result.negative_depth)
        deviation = surface_deviation(result, expected)
        if deviation > tol:
            raise ToleranceViolation(f"R_{k} differs from the surface of the shifted diagram by {deviation:.3g}",
                                     deviation=deviation, tol=tol)
        LOGGER.debug(f"R_{k} agrees with the shifted surface (deviation {deviation:.3g})")
    return result

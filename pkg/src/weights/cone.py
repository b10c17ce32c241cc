"""
Cone-contraction oracle for unique ergodicity.

The columns of ``P_K = F_1^T ... F_K^T`` span the cone of level-0 weights that extend
to level ``K``. Its Hilbert projective diameter shrinks to zero exactly when the
invariant weight is unique. Products stay exact Python integers; distances are
computed from exact cross-ratios so that tiny diameters do not underflow.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config.constants import DEFAULT_TOL, MODE_EXACT, MODE_FLOAT
from ..core.errors import DegenerateCone, NotPrimitive, ToleranceViolation
from ..diagram.bidiagram import BiInfiniteDiagram, BratteliSide
from ..diagram.matrix import TransitionMatrix
from ..dynamics.components import PeriodicComponent, periodic_component_scan
from ..utils.logging_config import LOGGER
from .perron import exact_perron, perron_data, period_block
from .weight_function import WeightFunction, pullback_levels

UNIQUE_NON_ATOMIC = "UniqueNonAtomic"
MULTIPLE_OR_ATOMIC = "MultipleOrAtomic"
INCONCLUSIVE = "Inconclusive"

DIVERGENCE_FLOOR = 1e-3
# second-half growth relative to first-half growth; sqrt-type growth gives ~0.41
GROWTH_SHARE = 0.25
MONOTONE_SLACK = 1e-12


def _side(diagram) -> BratteliSide:
    return diagram.positive_side if isinstance(diagram, BiInfiniteDiagram) else diagram


def hilbert_distance(x: Sequence[int], y: Sequence[int]) -> float:
    """Hilbert projective distance between two nonnegative integer vectors."""
    support_x = [a for a, value in enumerate(x) if value > 0]
    support_y = [a for a, value in enumerate(y) if value > 0]
    if support_x != support_y or not support_x:
        return math.inf
    up = max(Fraction(x[a], y[a]) for a in support_x)
    down = min(Fraction(x[a], y[a]) for a in support_x)
    ratio = up / down
    return math.log1p(float(ratio - 1))


def column_diameter(columns: Sequence[Sequence[int]]) -> float:
    if len(columns) < 2:
        return 0.0
    return max(hilbert_distance(a, b) for a, b in combinations(columns, 2))


def normalized_column(column: Sequence[int]) -> List[float]:
    s = sum(column)
    return [float(Fraction(x, s)) for x in column]


@dataclass(frozen=True)
class ConeState:
    depth: int
    columns: Tuple[Tuple[int, ...], ...]
    diameter: float
    history: Tuple[float, ...] = ()

    @property
    def normalized_columns(self) -> List[List[float]]:
        return [normalized_column(c) for c in self.columns]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "depth": self.depth,
            "hilbertDiameter": self.diameter,
            "diameterHistory": list(self.history),
            "normalizedColumns": self.normalized_columns,
        }


def invariant_cone(diagram, depth: int) -> ConeState:
    """Column cone of ``P_depth``; ``columns[u]`` is the pullback of the unit vector at ``u``.

    The cones are nested, so the diameter may never grow; a step that grows it by more
    than ``MONOTONE_SLACK`` (relative) raises ToleranceViolation.
    """
    side = _side(diagram)
    rows = TransitionMatrix.identity(side.weld_size)
    history = [column_diameter(rows.entries)]
    for k in range(1, depth + 1):
        rows = side.matrix(k) @ rows
        for u, row in enumerate(rows.entries):
            if not any(row):
                raise DegenerateCone(f"column {u} of the level-{k} product vanishes", level=k, vertex=u)
        d = column_diameter(rows.entries)
        previous = history[-1]
        if math.isfinite(previous) and d > previous * (1 + MONOTONE_SLACK) + MONOTONE_SLACK:
            raise ToleranceViolation(f"cone diameter grew at level {k}: {previous} -> {d}",
                                     deviation=d - previous, tol=MONOTONE_SLACK, level=k)
        history.append(d)
        LOGGER.debug(f"cone level {k}: diameter {d:.6g}")
    return ConeState(depth, rows.entries, history[-1], tuple(history))


def _mass_ratio(columns, atomic_support: Sequence[int], atomic_heads: Sequence[int]) -> float:
    """Mass of the non-periodic columns on the atomic support over their mass elsewhere."""
    on, off = Fraction(0), Fraction(0)
    for u, column in enumerate(columns):
        if u in atomic_heads:
            continue
        s = sum(column)
        for a, x in enumerate(column):
            if a in atomic_support:
                on += Fraction(x, s)
            else:
                off += Fraction(x, s)
    return math.inf if off == 0 else float(on / off)


@dataclass(frozen=True)
class UniqueWeightReport:
    verdict: str
    depth: int
    diameter: float
    atomic_rays: Tuple[Tuple[Any, ...], ...] = ()
    nonatomic_rays: Tuple[Tuple[Any, ...], ...] = ()
    divergent: bool = False
    mass_ratios: Tuple[float, ...] = ()
    components: Tuple[PeriodicComponent, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "depth": self.depth,
            "hilbertDiameter": self.diameter,
            "atomicRays": [list(r) for r in self.atomic_rays],
            "nonAtomicRays": [list(r) for r in self.nonatomic_rays],
            "divergent": self.divergent,
            "massRatios": list(self.mass_ratios),
            "periodicComponents": [c.to_dict() for c in self.components],
        }


def _ray(column: Sequence[int], mode: str) -> Tuple[Any, ...]:
    s = sum(column)
    if mode == MODE_EXACT:
        return tuple(Fraction(x, s) for x in column)
    return tuple(float(Fraction(x, s)) for x in column)


def _same_ray(a: Sequence[Any], b: Sequence[Any]) -> bool:
    if all(isinstance(x, (Fraction, int)) for x in (*a, *b)):
        return tuple(a) == tuple(b)
    return bool(np.allclose([float(x) for x in a], [float(x) for x in b], atol=1e-9))


def _stationary_ray(side: BratteliSide, mode: str) -> Optional[Tuple[Any, ...]]:
    """Perron ray of the period block; exact when ``mode`` is exact and the ray is rational."""
    if side.source.period_info() is None:
        return None
    try:
        if mode == MODE_EXACT:
            data = exact_perron(period_block(side)[2].transpose())
            if data is not None and min(data.vector) >= 0:
                return tuple(data.vector)
            LOGGER.debug("stationary ray is irrational; reporting it in float")
        data = perron_data(side, MODE_FLOAT, require_positive=False)
    except NotPrimitive:
        return None
    return tuple(float(x) for x in data.vector)


def _divergence(side: BratteliSide, depth: int, support: Sequence[int]):
    """Ratios ``R_0, R_{K/2}, R_K`` and whether their growth is not slowing down."""
    ratios = []
    for k in (0, depth // 2, depth):
        columns = side.product(0, k).entries
        ratios.append(_mass_ratio(columns, support, _heads_at(side, k)))
    r0, r_mid, r_top = ratios
    growth = r_top - r_mid
    divergent = growth > DIVERGENCE_FLOOR and growth >= GROWTH_SHARE * (r_mid - r0)
    return tuple(ratios), divergent


def _heads_at(side: BratteliSide, k: int) -> List[int]:
    return [c.head_vertex for c in periodic_component_scan(side, k)]


def unique_weight_report(diagram, depth: int, tol: float = DEFAULT_TOL,
                         mode: str = MODE_EXACT) -> UniqueWeightReport:
    """Unique non-atomic weight, several (or atomic) weights, or no decision at this depth.

    In exact mode rational rays (atomic columns, a rational Perron ray) are reported as
    Fractions; irrational rays are always floats.
    """
    side = _side(diagram)
    components = periodic_component_scan(side, depth)
    cone = invariant_cone(side, depth)
    heads = [c.head_vertex for c in components]
    atomic = tuple(_ray(cone.columns[x], mode) for x in heads)
    support = sorted({a for x in heads for a, value in enumerate(cone.columns[x]) if value > 0})

    others = [c for u, c in enumerate(cone.columns) if u not in heads]
    nonatomic: Tuple[Tuple[Any, ...], ...] = ()
    ray = _stationary_ray(side, mode)
    if ray is not None and not any(_same_ray(ray, a) for a in atomic):
        nonatomic = (ray,)
    elif others and column_diameter(others) < max(tol, 1e-9):
        bary = np.mean([normalized_column(c) for c in others], axis=0)
        nonatomic = (tuple(float(x) for x in bary),)

    divergent, ratios = False, ()
    if components:
        ratios, divergent = _divergence(side, depth, support)
        verdict = MULTIPLE_OR_ATOMIC
    elif cone.diameter < tol:
        verdict = UNIQUE_NON_ATOMIC
        if not nonatomic:
            bary = np.mean(cone.normalized_columns, axis=0)
            nonatomic = (tuple(float(x) for x in bary),)
    else:
        half = cone.history[depth // 2]
        stalled = math.isinf(cone.diameter) or (depth >= 2 and cone.diameter >= 0.9 * half)
        verdict = MULTIPLE_OR_ATOMIC if stalled else INCONCLUSIVE
    LOGGER.info(f"unique weight report at depth {depth}: {verdict} (diameter {cone.diameter:.3g})")
    return UniqueWeightReport(verdict, depth, cone.diameter, atomic, nonatomic, divergent, ratios,
                              tuple(components))


def solve_weights(diagram, depth: int, mode: str = MODE_EXACT) -> WeightFunction:
    """A probability weight function through ``depth``.

    ``w_depth`` weights every vertex so that its pulled-back column has mass
    ``1 / |V_depth|``; level 0 is then the barycenter of the normalized columns of
    ``P_depth``.
    """
    side = _side(diagram)
    columns = side.product(0, depth).entries
    n = len(columns)
    top = [Fraction(1, n * sum(column)) for column in columns]
    weights = pullback_levels(side, top, depth, mode)
    LOGGER.debug(f"solved weights through depth {depth} ({n} top vertices)")
    return weights

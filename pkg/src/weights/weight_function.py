"""
Weight functions on one side of a diagram and their validation.

A weight function stores one vector per level. It satisfies the invariance recursion
``w_{k-1} = F_k^T w_k``; edge weights are derived as ``w(r(e)) / w(s(e))``. A weight
function may carry a period ``(j, ratio)`` meaning ``w_{k+j} = w_k / ratio`` beyond the
stored levels, which makes stationary weights available at any depth.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..config.constants import DEFAULT_TOL, MODE_EXACT
from ..core.errors import NeedsDepth, ZeroPairing
from ..diagram.bidiagram import BratteliSide
from ..diagram.matrix import Edge
from ..dynamics.components import periodic_component_scan
from ..utils import numeric
from ..utils.json_io import scalar_from_json, scalar_to_json
from ..utils.logging_config import LOGGER

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class WeightFunction:
    levels: Dict[int, np.ndarray]
    mode: str = MODE_EXACT
    period: Optional[int] = None
    ratio: Any = None

    def __post_init__(self):
        numeric.check_mode(self.mode)
        if not self.levels or 0 not in self.levels:
            raise ValueError("a weight function needs at least level 0")

    @classmethod
    def from_vectors(cls, vectors: Sequence, mode: str, period: Optional[int] = None, ratio=None):
        levels = {k: numeric.vector(v, mode) for k, v in enumerate(vectors)}
        if ratio is not None:
            ratio = numeric.to_scalar(ratio, mode)
        return cls(levels, mode, period, ratio)

    @property
    def depth(self) -> int:
        return max(self.levels)

    def at(self, k: int) -> np.ndarray:
        if k in self.levels:
            return self.levels[k]
        if self.period and k > self.depth:
            steps = -(-(k - self.depth) // self.period)
            base = self.levels[k - steps * self.period]
            factor = self.ratio ** steps
            return np.array([x / factor for x in base], dtype=base.dtype)
        raise NeedsDepth(f"weights are known through level {self.depth}, asked for {k}", step=0, level=k)

    def vertex(self, k: int, v: int):
        return self.at(k)[v]

    def edge_weight(self, edge: Edge):
        """``w(r(e)) / w(s(e))``; None where the source weight vanishes."""
        source = self.vertex(edge.level - 1, edge.source)
        if source == 0:
            return None
        return self.vertex(edge.level, edge.range) / source

    def total(self, k: int):
        return numeric.total(self.at(k))

    def is_positive(self, depth: Optional[int] = None) -> bool:
        top = self.depth if depth is None else depth
        return all(x > 0 for k in range(top + 1) for x in self.at(k))

    def is_probability(self, tol: float = DEFAULT_TOL) -> bool:
        s = self.total(0)
        return s == 1 if self.mode == MODE_EXACT else abs(float(s) - 1.0) <= tol

    def scaled(self, factor) -> "WeightFunction":
        levels = {k: np.array([x * factor for x in v], dtype=v.dtype) for k, v in self.levels.items()}
        return WeightFunction(levels, self.mode, self.period, self.ratio)

    def converted(self, mode: str) -> "WeightFunction":
        levels = {k: numeric.convert(v, mode) for k, v in self.levels.items()}
        ratio = None if self.ratio is None else numeric.to_scalar(self.ratio, mode)
        return WeightFunction(levels, mode, self.period, ratio)

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            "numericMode": self.mode,
            "levels": [{"k": k, "weights": [scalar_to_json(x) for x in self.levels[k]]}
                       for k in sorted(self.levels)],
        }
        if self.period:
            doc["period"] = {"length": self.period, "ratio": scalar_to_json(self.ratio)}
        return doc

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WeightFunction":
        mode = data.get("numericMode", MODE_EXACT)
        levels = {int(entry["k"]): numeric.vector([scalar_from_json(x) for x in entry["weights"]], mode)
                  for entry in data["levels"]}
        period = data.get("period")
        if period:
            return cls(levels, mode, int(period["length"]), numeric.to_scalar(scalar_from_json(period["ratio"]), mode))
        return cls(levels, mode)


def pullback(side: BratteliSide, k: int, top: np.ndarray) -> np.ndarray:
    """``F_k^T top`` in the vector's own mode."""
    m = numeric.int_matrix(side.matrix(k).transpose().entries, numeric.mode_of(top))
    return m.dot(top)


def pullback_levels(side: BratteliSide, top: Sequence, depth: int, mode: str) -> WeightFunction:
    """Weight function generated by a top-level vector ``w_depth``."""
    levels = {depth: numeric.vector(top, mode)}
    for k in range(depth, 0, -1):
        levels[k - 1] = pullback(side, k, levels[k])
    return WeightFunction(levels, mode)


@dataclass(frozen=True)
class WeightReport:
    depth: int
    recursion_residual: float
    edge_sum_residual: float
    condition_iii: str
    condition_iii_reason: str
    is_positive: bool
    is_probability: bool
    tol: float
    cylinder_max: List[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.recursion_residual <= self.tol and self.edge_sum_residual <= self.tol
                and self.condition_iii != FAIL)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "depth": self.depth,
            "recursionResidual": self.recursion_residual,
            "edgeSumResidual": self.edge_sum_residual,
            "conditionIII": self.condition_iii,
            "conditionIIIReason": self.condition_iii_reason,
            "isPositive": self.is_positive,
            "isProbability": self.is_probability,
            "passed": self.passed,
            "tol": self.tol,
        }


def atomic_components(side: BratteliSide, w: WeightFunction, depth: int, tol: float = DEFAULT_TOL):
    """Periodic components at ``depth`` on which ``w`` keeps a positive weight."""
    found = []
    for comp in periodic_component_scan(side, depth):
        head = w.vertex(depth, comp.head_vertex)
        start = w.vertex(comp.stall_level, comp.stall_vertex)
        # an atom keeps its weight along the confined chain
        if head > tol and float(head) >= float(start) * (1.0 - 1e-9):
            found.append(comp)
    return found


def _condition_iii(side: BratteliSide, w: WeightFunction, depth: int, tol: float):
    maxima = [float(max(w.at(k))) for k in range(depth + 1)]
    atoms = atomic_components(side, w, depth, tol)
    if atoms:
        return FAIL, f"periodic component at vertex {atoms[0].head_vertex} carries an atom", maxima
    top, mid, base = maxima[depth], maxima[depth // 2], maxima[0]
    if top <= tol:
        return PASS, "cylinder weights below tolerance", maxima
    if 0 < top < mid < base and np.log(mid / top) >= 0.5 * np.log(base / mid):
        return PASS, "cylinder weights decay geometrically", maxima
    return INCONCLUSIVE, "cylinder weights plateau above tolerance", maxima


def validate_weight(w: WeightFunction, side: BratteliSide, depth: int, tol: float = DEFAULT_TOL) -> WeightReport:
    """Invariance recursion, per-vertex edge sums and the vanishing of cylinder weights."""
    recursion = 0.0
    edge_sum = 0.0
    for k in range(1, depth + 1):
        below = pullback(side, k, w.at(k))
        current = w.at(k - 1)
        recursion = max(recursion, numeric.max_abs(below - current))
        for v, x in enumerate(current):
            if x > 0:
                edge_sum = max(edge_sum, abs(float(below[v] / x) - 1.0))
    verdict, reason, maxima = _condition_iii(side, w, depth, tol)
    report = WeightReport(
        depth=depth,
        recursion_residual=recursion,
        edge_sum_residual=edge_sum,
        condition_iii=verdict,
        condition_iii_reason=reason,
        is_positive=w.is_positive(depth),
        is_probability=w.is_probability(tol),
        tol=tol,
        cylinder_max=maxima,
    )
    if not report.passed:
        LOGGER.warning(f"weight check failed: recursion={recursion:.3g}, edge sums={edge_sum:.3g}, (iii)={verdict}")
    return report


def biinfinite_normalize(w_plus: np.ndarray, w_minus: np.ndarray):
    """Scale ``w_minus`` so that the level-0 pairing with ``w_plus`` is 1."""
    pairing = numeric.dot(w_plus, w_minus)
    if pairing == 0:
        raise ZeroPairing("level-0 weights pair to zero; the surface would have no area")
    factor = numeric.reciprocal(pairing)
    scaled = np.array([x * factor for x in w_minus], dtype=w_minus.dtype)
    if not numeric.is_exact(w_minus):
        scaled = scaled.astype(float)
    return w_plus, scaled


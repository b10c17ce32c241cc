"""
The shift on weighted ordered diagrams.

Shifting by ``n`` moves old level ``n`` to level 0. Widths are divided by the level-``n``
width sum and heights multiplied by it, so the new level-0 widths again form a
probability vector and the area is unchanged.
"""

import math
from typing import Optional

import numpy as np

from ..config.constants import DEFAULT_TOL
from ..core.errors import NeedsDepth, ValidationFailure
from ..utils import numeric
from ..utils.logging_config import LOGGER
from ..weights.weight_function import WeightFunction, pullback
from ..weights.weighted_diagram import WeightedDiagram
from .schedule import heights


def _scaled(vec: np.ndarray, factor) -> np.ndarray:
    return np.array([x * factor for x in vec], dtype=vec.dtype)


def _shifted_plus(w_plus: WeightFunction, n: int, scale) -> WeightFunction:
    top = w_plus.depth - n
    if w_plus.period:
        top = max(top, w_plus.period)
    if top < 0:
        raise NeedsDepth(f"positive weights are known through level {w_plus.depth}, cannot shift by {n}",
                         step=0, level=n)
    levels = {j: _scaled(w_plus.at(n + j), scale) for j in range(top + 1)}
    return WeightFunction(levels, w_plus.mode, w_plus.period, w_plus.ratio)


def _shifted_minus(wd: WeightedDiagram, n: int, sum_n) -> WeightFunction:
    w_minus = wd.w_minus
    hv = heights(wd.diagram, w_minus.at(0), n)
    levels = {j: _scaled(hv.at(n - j), sum_n) for j in range(n + 1)}
    tail = max(w_minus.depth, w_minus.period or 0)
    for i in range(1, tail + 1):
        levels[n + i] = _scaled(w_minus.at(i), sum_n)
    return WeightFunction(levels, w_minus.mode, w_minus.period, w_minus.ratio)


def _known_depth(w: WeightFunction) -> float:
    return math.inf if w.period else w.depth


def _residual(w: WeightFunction, side, depth: int) -> float:
    """Largest deviation from ``w_{k-1} = F_k^T w_k`` through ``depth``."""
    worst = 0.0
    for k in range(1, depth + 1):
        worst = max(worst, numeric.max_abs(pullback(side, k, w.at(k)) - w.at(k - 1)))
    return worst


def shift_weighted(wd: WeightedDiagram, n: int, check_depth: Optional[int] = None,
                   tol: float = DEFAULT_TOL) -> WeightedDiagram:
    """``sigma^n`` of a weighted ordered diagram, validated through ``check_depth`` levels."""
    if n < 0:
        raise ValueError("shift amount must be nonnegative")
    if n == 0:
        return wd
    sum_n = wd.w_plus.total(n)
    if sum_n == 0:
        raise ValidationFailure(f"level-{n} widths vanish; cannot renormalize", level=n)
    shifted = WeightedDiagram(
        diagram=wd.diagram.shift(n),
        w_plus=_shifted_plus(wd.w_plus, n, numeric.reciprocal(sum_n)),
        w_minus=_shifted_minus(wd, n, sum_n),
        orders=wd.orders.transported(n),
        name=f"{wd.name}>>{n}" if wd.name else "",
    )
    depth = check_depth if check_depth is not None else 4
    report = shifted.diagram.validate(depth)
    if not report.valid:
        raise ValidationFailure(f"shifted diagram is invalid: {', '.join(report.kinds())}",
                                offenders=[o.to_dict() for o in report.offenders])
    failed = []
    for key, w, side in (("wPlus", shifted.w_plus, shifted.diagram.positive_side),
                         ("wMinus", shifted.w_minus, shifted.diagram.negative_side)):
        if _residual(w, side, min(depth, _known_depth(w))) > tol:
            failed.append(key)
    if failed:
        raise ValidationFailure(f"shifted weights break the invariance recursion: {', '.join(failed)}")
    LOGGER.debug(f"shifted weighted diagram by {n}; level-{n} width sum {float(sum_n):.12g}")
    return shifted

"""
Limits of the rescaled weight and height vectors along an accumulating subsequence.

At a hit ``k`` the shifted bundle has widths ``w^+_{k+j} / S_k`` on its levels ``j``
and level-0 heights ``S_k h^k``. Their pairing is 1 at every hit, so the limits
pair to 1 as well.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config.constants import GEOMETRY_TOL, WEIGHT_CONVERGENCE_FACTOR
from ..core.errors import EmptyG0, NeedsDepth, NotCauchy, ToleranceViolation
from ..diagram.bidiagram import BiInfiniteDiagram
from ..renormalization.schedule import heights
from ..utils import numeric
from ..utils.logging_config import LOGGER
from ..weights.weight_function import WeightFunction
from .accumulation import AccumulationWitness


@dataclass(frozen=True)
class LimitWeights:
    """``w_plus[j]`` is the limit weight on level ``j`` of the limit diagram."""
    subsequence: Tuple[int, ...]
    w_plus: Tuple[np.ndarray, ...]
    h: np.ndarray
    width_sequence: Tuple[np.ndarray, ...]
    height_sequence: Tuple[np.ndarray, ...]
    width_deviation: float
    height_deviation: float
    # level_sequences[j][n]: rescaled widths on level j at the n-th hit
    level_sequences: Tuple[Tuple[np.ndarray, ...], ...] = ()

    @property
    def w_minus(self) -> np.ndarray:
        return self.h

    @property
    def pairing(self) -> float:
        return float(np.dot(self.w_plus[0], self.h))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subsequence": list(self.subsequence),
            "wPlus": [[float(x) for x in w] for w in self.w_plus],
            "h0": [float(x) for x in self.h],
            "widthDeviation": self.width_deviation,
            "heightDeviation": self.height_deviation,
            "pairing": self.pairing,
        }


def _usable_hits(witness: AccumulationWitness, w_plus: WeightFunction, levels: int) -> List[int]:
    hits = []
    for k in witness.subsequence:
        try:
            w_plus.at(k + levels)
        except NeedsDepth:
            break
        hits.append(k)
    return hits


def _tail_deviation(sequence: Sequence[np.ndarray]) -> float:
    last = sequence[-1]
    tail = sequence[len(sequence) // 2:]
    return max(float(np.max(np.abs(x - last))) for x in tail)


def limit_weights(witness: AccumulationWitness, diagram: BiInfiniteDiagram, w_plus: WeightFunction,
                  w_minus: WeightFunction, levels: Optional[int] = None) -> LimitWeights:
    """Componentwise limits through ``levels`` (default: the match depth)."""
    levels = witness.match_depth if levels is None else levels
    hits = _usable_hits(witness, w_plus, levels)
    if len(hits) < 2:
        raise NotCauchy(f"only {len(hits)} hit(s) lie within the known weight depth", hits=hits)

    w0, m0 = w_plus.at(0), w_minus.at(0)
    pairing = numeric.dot(w0, m0)
    h0 = np.array([x / pairing for x in m0], dtype=m0.dtype)
    hv = heights(diagram, h0, hits[-1])

    widths: List[List[np.ndarray]] = [[] for _ in range(levels + 1)]
    rescaled_h: List[np.ndarray] = []
    for k in hits:
        s = w_plus.total(k)
        for j in range(levels + 1):
            widths[j].append(numeric.as_float(w_plus.at(k + j)) / float(s))
        rescaled_h.append(numeric.as_float(np.array([x * s for x in hv.at(k)], dtype=hv.at(k).dtype)))

    w_star = tuple(seq[-1] for seq in widths)
    h_star = rescaled_h[-1]
    width_dev = max(_tail_deviation(seq) for seq in widths)
    height_dev = _tail_deviation(rescaled_h)
    LOGGER.debug(f"limit weights over {len(hits)} hits: width deviation {width_dev:.3g}, "
                 f"height deviation {height_dev:.3g}")

    floor = float(np.min(w_star[0]))
    if floor <= 0 or width_dev > WEIGHT_CONVERGENCE_FACTOR * floor:
        raise NotCauchy(f"rescaled widths oscillate by {width_dev:.3g} (min limit weight {floor:.3g})",
                        deviation=width_dev)
    if height_dev > WEIGHT_CONVERGENCE_FACTOR * float(np.max(h_star)):
        raise NotCauchy(f"rescaled heights oscillate by {height_dev:.3g}", deviation=height_dev)

    result = LimitWeights(tuple(hits), w_star, h_star, tuple(widths[0]), tuple(rescaled_h),
                          width_dev, height_dev, tuple(tuple(seq) for seq in widths))
    if abs(result.pairing - 1.0) > GEOMETRY_TOL:
        raise ToleranceViolation(f"limit weights pair to {result.pairing!r}, not 1",
                                 deviation=abs(result.pairing - 1.0), tol=GEOMETRY_TOL)
    return result


def partition_G0_H0(h_sequence: Sequence[np.ndarray], tol: float) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Vertices whose rescaled heights die out (``H0``) and the rest (``G0``)."""
    first, last = h_sequence[0], h_sequence[-1]
    vanishing = tuple(v for v in range(len(last)) if last[v] <= tol and last[v] <= first[v])
    good = tuple(v for v in range(len(last)) if v not in vanishing)
    if not good:
        raise EmptyG0("every rescaled height tends to zero, contradicting the unit pairing")
    return good, vanishing

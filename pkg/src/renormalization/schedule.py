"""
Renormalization times and the height/width vectors they rescale.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from ..config.constants import DEFAULT_TOL
from ..diagram.bidiagram import BiInfiniteDiagram
from ..utils import numeric
from ..utils.json_io import scalar_to_json
from ..weights.weight_function import WeightFunction, atomic_components


@dataclass(frozen=True)
class HeightVectors:
    """``h^0 = w^-_0`` and ``h^k = F_k h^{k-1}``."""
    levels: Tuple[np.ndarray, ...]

    def at(self, k: int) -> np.ndarray:
        return self.levels[k]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def to_dict(self) -> Dict[str, Any]:
        return {"levels": [{"k": k, "heights": [scalar_to_json(x) for x in h]} for k, h in enumerate(self.levels)]}


def heights(diagram: BiInfiniteDiagram, w_minus_0: np.ndarray, depth: int) -> HeightVectors:
    levels = [w_minus_0]
    mode = numeric.mode_of(w_minus_0)
    for k in range(1, depth + 1):
        m = numeric.int_matrix(diagram.matrix_at(k).entries, mode)
        levels.append(m.dot(levels[-1]))
    return HeightVectors(tuple(levels))


@dataclass(frozen=True)
class RenormSchedule:
    """Times ``t_k = -log sum(w^+_k)`` with the exact sums they come from."""
    width_sums: Tuple[Any, ...]
    bounded_flag: bool = False

    @property
    def depth(self) -> int:
        return len(self.width_sums) - 1

    def time(self, k: int) -> float:
        return -numeric.log(self.width_sums[k])

    @property
    def times(self) -> List[float]:
        return [self.time(k) for k in range(1, self.depth + 1)]

    def expansion(self, k: int):
        """``e^{t_k}``, exact when the weights are."""
        return numeric.reciprocal(self.width_sums[k])

    def rescaled_widths(self, w_plus: WeightFunction, k: int) -> np.ndarray:
        factor = self.expansion(k)
        return np.array([x * factor for x in w_plus.at(k)], dtype=w_plus.at(k).dtype)

    def rescaled_heights(self, hv: HeightVectors, k: int) -> np.ndarray:
        factor = self.width_sums[k]
        return np.array([x * factor for x in hv.at(k)], dtype=hv.at(k).dtype)

    def min_gap(self) -> float:
        gaps = [b - a for a, b in zip(self.times, self.times[1:])]
        return min(gaps) if gaps else math.inf

    def to_dict(self) -> Dict[str, Any]:
        return {
            "boundedFlag": self.bounded_flag,
            "schedule": [
                {"k": k, "t": self.time(k), "widthSum": scalar_to_json(self.width_sums[k])}
                for k in range(1, self.depth + 1)
            ],
        }


def renorm_times(diagram: BiInfiniteDiagram, w_plus: WeightFunction, depth: int,
                 tol: float = DEFAULT_TOL) -> RenormSchedule:
    sums = tuple(w_plus.total(k) for k in range(depth + 1))
    bounded = bool(atomic_components(diagram.positive_side, w_plus, depth, tol)) if depth else False
    return RenormSchedule(sums, bounded)

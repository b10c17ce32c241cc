"""
Weight series of the upper-triangular ``M(p, n)`` family.

Anchoring the level-``k`` weight at ``(p^{-k}, 0)`` and pulling back gives the
partial sums ``s_k = sum_{i<=k} a_i / p^i`` with ``a_0 = 1`` and ``a_i`` the corner
entry of ``F_i``. Boundedness of ``s_k`` decides whether the family carries a finite
non-atomic weight.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Tuple

from ..diagram.sources import ProgrammaticSource
from ..utils.json_io import scalar_to_json

BOUNDED = "bounded"
UNBOUNDED = "unbounded"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class SeriesReport:
    p: int
    partial_sums: Tuple[Fraction, ...]
    increments: Tuple[Fraction, ...]
    verdict: str
    pullback_agrees: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "partialSums": [scalar_to_json(s) for s in self.partial_sums],
            "partialSumsFloat": [float(s) for s in self.partial_sums],
            "verdict": self.verdict,
            "pullbackAgrees": self.pullback_agrees,
        }


def _pulled_back_corner(source: ProgrammaticSource, p: int, k: int) -> Fraction:
    """Second level-0 coordinate of the pullback of ``(p^{-k}, 0)``."""
    first, second = Fraction(1, p ** k), Fraction(0)
    for level in range(k, 0, -1):
        (a, b), (c, d) = source.matrix(level).entries
        first, second = a * first + c * second, b * first + d * second
    return second


def mpn_weight_series(p: int, params: Dict[str, Any], depth: int) -> SeriesReport:
    """Partial sums through ``depth`` and a bounded / unbounded / undetermined verdict."""
    if p < 2:
        raise ValueError("p must be at least 2")
    source = ProgrammaticSource("mpn-family", dict(params, p=p))
    sums = [Fraction(1)]
    increments = [Fraction(1)]
    for k in range(1, depth + 1):
        increment = Fraction(source.matrix(k)[0, 1], p ** k)
        increments.append(increment)
        sums.append(sums[-1] + increment)
    if all(increments[i] ** 2 <= Fraction(1, p ** i) for i in range(1, depth + 1)):
        verdict = BOUNDED
    elif sum(1 for inc in increments[1:] if inc >= 1) >= 2:
        verdict = UNBOUNDED
    else:
        verdict = UNDETERMINED
    agrees = sums[-1] == 1 + _pulled_back_corner(source, p, depth)
    return SeriesReport(p, tuple(sums), tuple(increments), verdict, agrees)

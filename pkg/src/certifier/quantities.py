"""
Geometric quantities of the divergence criterion and the divergence sums.

For the limit data ``(w*, h*)`` and the good vertices ``G0``:

* ``delta = min(eps, min w*_Delta / 4)`` bounds the length of connecting paths,
* ``D = 4 (|w*_0|_inf + |h*_0|_inf)`` bounds every rectangle diameter,
* each time ``t_{kappa_n}`` contributes ``(C D_n / eps^2 + (C - 1) / delta_n)^-2``, where
  ``D_n`` and ``delta_n`` come from the rescaled data at the n-th hit and tend to ``D``
  and ``delta``; their limit summand is ``tau``.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config.constants import DEFAULT_ETA
from ..core.errors import DeltaUnknown, EpsilonTooLarge
from ..dynamics.metamour import Unknown, metamour_plus
from ..renormalization.schedule import RenormSchedule
from ..utils.logging_config import LOGGER
from .accumulation import AccumulationWitness
from .limits import LimitWeights

AREA_BISECTION_STEPS = 80


@dataclass(frozen=True)
class CriterionQuantities:
    delta_level: int
    g0: Tuple[int, ...]
    h0: Tuple[int, ...]
    epsilon: float
    delta: float
    diameter_bound: float
    c: int
    term_value: float
    eta: float = DEFAULT_ETA
    good_area: float = 1.0
    epsilon_shrunk: bool = False
    subsequence: Tuple[int, ...] = ()
    mu: Optional[float] = None
    # per hit of ``subsequence``; empty when only the limit data is known
    hit_diameters: Tuple[float, ...] = ()
    hit_deltas: Tuple[float, ...] = ()

    @property
    def epsilon_part(self) -> float:
        """``C D / eps^2``."""
        return self.c * self.diameter_bound / self.epsilon ** 2

    @property
    def delta_part(self) -> float:
        """``(C - 1) / delta``."""
        return (self.c - 1) / self.delta

    def hit_parts(self) -> List[Tuple[float, float]]:
        """``(C D_n / eps^2, (C - 1) / delta_n)`` for every hit with recorded data."""
        parts = []
        for d, delta in zip(self.hit_diameters, self.hit_deltas):
            if self.c == 1:
                y = 0.0
            else:
                y = (self.c - 1) / delta if delta > 0 else math.inf
            parts.append((self.c * d / self.epsilon ** 2, y))
        return parts

    def to_dict(self) -> Dict[str, Any]:
        return {
            "Delta": self.delta_level,
            "G0": list(self.g0),
            "H0": list(self.h0),
            "epsilon": self.epsilon,
            "epsilonShrunk": self.epsilon_shrunk,
            "eta": self.eta,
            "goodArea": self.good_area,
            "delta": self.delta,
            "D": self.diameter_bound,
            "C": self.c,
            "mu": self.mu,
            "termValue": self.term_value,
            "hitDiameters": list(self.hit_diameters),
            "hitDeltas": list(self.hit_deltas),
        }


def good_area(widths: Sequence[float], heights: Sequence[float], g0: Sequence[int], eps: float) -> float:
    """Area of the points at distance ``>= eps`` from the sides of the ``G0`` rectangles."""
    return float(sum(max(widths[v] - 2 * eps, 0.0) * max(heights[v] - 2 * eps, 0.0) for v in g0))


def area_bound(widths, heights, g0, eta: float, ceiling: float) -> float:
    """Largest ``eps <= ceiling`` (up to bisection accuracy) with good area ``>= 1 - eta``."""
    if good_area(widths, heights, g0, 0.0) < 1.0 - eta:
        return 0.0
    if good_area(widths, heights, g0, ceiling) >= 1.0 - eta:
        return ceiling
    lo, hi = 0.0, ceiling
    for _ in range(AREA_BISECTION_STEPS):
        mid = (lo + hi) / 2
        if good_area(widths, heights, g0, mid) >= 1.0 - eta:
            lo = mid
        else:
            hi = mid
    return lo


def divergence_term(c: int, diameter_bound: float, epsilon: float, delta: float) -> float:
    return (c * diameter_bound / epsilon ** 2 + (c - 1) / delta) ** -2


def _hit_data(limits: LimitWeights, delta_level: int, epsilon: float):
    """``D_n`` and ``delta_n`` from the rescaled widths and heights at each hit."""
    if not limits.level_sequences:
        return (), ()
    diameters = tuple(4 * (float(np.max(w)) + float(np.max(h)))
                      for w, h in zip(limits.width_sequence, limits.height_sequence))
    deltas = tuple(min(epsilon, float(np.min(w)) / 4) for w in limits.level_sequences[delta_level])
    return diameters, deltas


def criterion_quantities(witness: AccumulationWitness, limits: LimitWeights, g0: Sequence[int],
                         h0: Sequence[int] = (), eta: float = DEFAULT_ETA, epsilon: Optional[float] = None,
                         cap: int = 32) -> CriterionQuantities:
    """Fill in ``Delta, eps, delta, D, C``, the limit summand and the per-hit ``D_n, delta_n``."""
    if witness.limit is None:
        raise DeltaUnknown("the recurrent window has no periodic extension")
    delta_level = metamour_plus(witness.limit, 0, cap)
    if isinstance(delta_level, Unknown):
        raise DeltaUnknown(f"reach sets of the limit do not meet within {cap} levels",
                           proven=delta_level.proven)
    if delta_level >= len(limits.w_plus):
        raise DeltaUnknown(f"Delta = {delta_level} lies beyond the matched window", delta=delta_level)

    w0 = [float(x) for x in limits.w_plus[0]]
    h = [float(x) for x in limits.h]
    floor = min(w0)
    ceiling = floor / 3
    shrunk = False
    if epsilon is None:
        epsilon = floor / 4
    elif not 0 < epsilon < ceiling:
        raise EpsilonTooLarge(f"epsilon must lie in (0, {ceiling:.6g}), got {epsilon}", epsilon=epsilon)

    area = good_area(w0, h, g0, epsilon)
    if area < 1.0 - eta:
        bound = area_bound(w0, h, g0, eta, ceiling)
        if bound <= 0:
            raise EpsilonTooLarge(f"no epsilon keeps the good area above {1 - eta}", eta=eta)
        LOGGER.warning(f"epsilon {epsilon:.6g} leaves good area {area:.4f} < {1 - eta}; "
                       f"using half the feasible bound {bound:.6g}")
        epsilon = bound / 2
        area = good_area(w0, h, g0, epsilon)
        shrunk = True

    w_delta = limits.w_plus[delta_level]
    delta = min(epsilon, float(np.min(w_delta)) / 4)
    diameter = 4 * (float(np.max(limits.w_plus[0])) + float(np.max(limits.h)))
    c = len(g0)
    tau = divergence_term(c, diameter, epsilon, delta)
    hit_diameters, hit_deltas = _hit_data(limits, delta_level, epsilon)
    LOGGER.info(f"criterion quantities: Delta={delta_level}, C={c}, eps={epsilon:.6g}, "
                f"delta={delta:.6g}, D={diameter:.6g}, tau={tau:.6g}")
    return CriterionQuantities(delta_level, tuple(g0), tuple(h0), epsilon, delta, diameter, c, tau,
                               eta, area, shrunk, limits.subsequence, None, hit_diameters, hit_deltas)


@dataclass(frozen=True)
class DivergenceEvidence:
    terms: Tuple[float, ...]
    partial_sums: Tuple[float, ...]
    term_value: float
    mu: float
    min_gap: float
    interval_term: float
    interval_lower_bound: float
    diverges: bool
    reason: str = ""
    measured: int = 0
    interval_terms: Tuple[float, ...] = ()
    term_spread: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "termValue": self.term_value,
            "nTerms": len(self.terms),
            "measuredTerms": self.measured,
            "termSpread": self.term_spread,
            "partialSums": list(self.partial_sums),
            "mu": self.mu,
            "minTimeGap": self.min_gap,
            "intervalTerm": self.interval_term,
            "intervalTerms": list(self.interval_terms),
            "intervalLowerBound": self.interval_lower_bound,
            "diverges": self.diverges,
            "reason": self.reason,
        }


def _interval(x: float, y: float, mu: float) -> float:
    return mu * (math.exp(1.5 * mu) * x + math.exp(0.5 * mu) * y) ** -2


def interval_term(quantities: CriterionQuantities, mu: float) -> float:
    """Contribution of one ``mu``-interval around a renormalization time."""
    return _interval(quantities.epsilon_part, quantities.delta_part, mu)


def divergence_check(quantities: CriterionQuantities, schedule: RenormSchedule, n_terms: int,
                     mu: Optional[float] = None) -> DivergenceEvidence:
    """Discrete sum over the hits and its continuous-time lower bound.

    The n-th term is evaluated from the data at the n-th hit; terms past the last
    recorded hit take the limit summand ``tau``.
    """
    hits = [k for k in quantities.subsequence if k <= schedule.depth]
    times = [schedule.time(k) for k in hits]
    gaps = [b - a for a, b in zip(times, times[1:])]
    min_gap = min(gaps) if gaps else 0.0
    if mu is None:
        mu = min_gap / 2

    tau = quantities.term_value
    parts = quantities.hit_parts()[:min(len(hits), n_terms)]
    measured = [(x + y) ** -2 for x, y in parts]
    terms = np.array(measured + [tau] * (n_terms - len(measured)), dtype=float)
    partial = np.cumsum(terms)
    intervals = tuple(_interval(x, y, mu) for x, y in parts) if mu > 0 else ()
    exact = interval_term(quantities, mu) if mu > 0 else 0.0
    lower = mu * math.exp(-3 * mu) * tau
    spread = max(abs(t - tau) for t in measured) / tau if measured and tau > 0 else 0.0

    reason = ""
    if len(hits) < 2:
        reason = "fewer than two renormalization times along the subsequence"
    elif min_gap <= 0:
        reason = f"renormalization times along the subsequence do not separate (gap {min_gap:.3g})"
    elif tau <= 0 or not np.all(terms > 0):
        reason = "the summand vanishes"
    diverges = not reason
    if diverges:
        LOGGER.info(f"divergence: {n_terms} terms ({len(measured)} from hit data, spread {spread:.3g}) "
                    f"of {tau:.6g}, interval bound {lower:.6g} (mu={mu:.4g})")
    else:
        LOGGER.warning(f"divergence not established: {reason}")
    return DivergenceEvidence(tuple(float(x) for x in terms), tuple(float(x) for x in partial), tau, mu,
                              min_gap, exact, lower, diverges, reason, len(measured), intervals, spread)

"""
Stationarity detection and the expansion factor of the induced pseudo-Anosov map.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional

from ..config.constants import MODE_FLOAT
from ..core.errors import NotPrimitive
from ..diagram.bidiagram import BiInfiniteDiagram
from ..ordering.orders import EdgeOrders
from ..utils.json_io import scalar_to_json
from ..utils.logging_config import LOGGER
from ..weights.perron import perron_vector

MAX_PERIOD = 12


@dataclass(frozen=True)
class PseudoAnosovReport:
    is_stationary: bool
    period: Optional[int] = None
    expansion_factor: Any = None
    two_sided: bool = False

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {"isStationary": self.is_stationary, "twoSided": self.two_sided}
        if self.is_stationary:
            doc["period"] = self.period
            doc["expansionFactor"] = scalar_to_json(self.expansion_factor)
            doc["expansionFactorFloat"] = float(self.expansion_factor)
        return doc


def _repeats(seq, j: int) -> bool:
    return all(seq[n] == seq[n + j] for n in range(len(seq) - j))


def _orders_repeat(orders: EdgeOrders, levels, j: int) -> bool:
    """Explicit overrides must recur every ``j`` levels inside the checked window."""
    window = set(levels)
    for (direction, level, vertex), perm in orders.explicit.items():
        if level not in window:
            continue
        i = levels.index(level)
        for other in (i - j, i + j):
            if 0 <= other < len(levels):
                key = (direction, levels[other], vertex)
                if orders.explicit.get(key) != perm:
                    return False
    return True


def _positive_period(diagram: BiInfiniteDiagram, orders: EdgeOrders) -> Optional[int]:
    info = diagram.positive.period_info()
    if info is None or info[0] != 0:
        return None
    levels = list(range(1, 3 * info[1] + 2))
    seq = [diagram.matrix_at(k) for k in levels]
    for j in range(1, info[1] + 1):
        if info[1] % j == 0 and _repeats(seq, j) and _orders_repeat(orders, levels, j):
            return j
    return None


def _two_sided(diagram: BiInfiniteDiagram, orders: EdgeOrders, j: int) -> bool:
    reach = 3 * j + MAX_PERIOD
    levels = [k for k in range(-reach, reach + 1) if k != 0]
    seq = [diagram.matrix_at(k) for k in levels]
    return _repeats(seq, j) and _orders_repeat(orders, levels, j)


def stationary_pA_report(diagram: BiInfiniteDiagram, orders: EdgeOrders) -> PseudoAnosovReport:
    """Period of the matrices and orders of the positive side, and the PF eigenvalue of one period."""
    j = _positive_period(diagram, orders)
    if j is None:
        return PseudoAnosovReport(False)
    block = diagram.positive_side.product(0, j)
    try:
        data = perron_vector(block.transpose(), MODE_FLOAT, require_positive=False)
    except NotPrimitive as e:
        LOGGER.warning(f"stationary diagram without Perron-Frobenius data: {e.message}")
        return PseudoAnosovReport(False, j)
    report = PseudoAnosovReport(True, j, data.eigenvalue, _two_sided(diagram, orders, j))
    LOGGER.info(f"stationary with period {j}, expansion factor {float(data.eigenvalue):.12g}")
    return report

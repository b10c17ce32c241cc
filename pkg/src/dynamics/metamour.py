"""
The metamour function: how many levels two vertices need before their forward
reach sets meet.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, FrozenSet, Set, Tuple, Union

from ..diagram.bidiagram import BiInfiniteDiagram
from ..utils.logging_config import LOGGER


@dataclass(frozen=True)
class Unknown:
    """No meeting within ``cap`` levels; ``proven`` when the search state cycled."""
    cap: int
    proven: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {"unknown": True, "cap": self.cap, "provenInfinite": self.proven}


MetamourValue = Union[int, Unknown]


def _step(diagram: BiInfiniteDiagram, level: int, reach: FrozenSet[int]) -> FrozenSet[int]:
    m = diagram.transition(level)
    return frozenset(u for u in range(m.rows) if any(m.entries[u][x] for x in reach))


def _cycle_key(diagram: BiInfiniteDiagram, level: int):
    """Level class under the positive source's periodicity, or None before the period starts."""
    info = diagram.positive.period_info()
    if info is None or level < info[0]:
        return None
    return (level - info[0]) % info[1]


def metamour(diagram: BiInfiniteDiagram, k: int, v: int, w: int, cap: int) -> MetamourValue:
    """Smallest ``m <= cap`` with ``ReachSet_m(v)`` meeting ``ReachSet_m(w)`` from level ``k``."""
    reach_v, reach_w = frozenset([v]), frozenset([w])
    seen: Set[Tuple[int, FrozenSet[int], FrozenSet[int]]] = set()
    for m in range(cap + 1):
        if reach_v & reach_w:
            return m
        level = k + m
        key = _cycle_key(diagram, level)
        if key is not None:
            state = (key, reach_v, reach_w)
            if state in seen:
                LOGGER.debug(f"metamour({k}, {v}, {w}): reach sets cycle, never meet")
                return Unknown(cap, proven=True)
            seen.add(state)
        if m == cap:
            break
        reach_v = _step(diagram, level, reach_v)
        reach_w = _step(diagram, level, reach_w)
    return Unknown(cap)


def metamour_plus(diagram: BiInfiniteDiagram, k: int, cap: int) -> MetamourValue:
    """Maximum of ``metamour`` over all vertex pairs at level ``k``."""
    worst = 0
    unknown = None
    for v, w in combinations(range(diagram.level_size(k)), 2):
        value = metamour(diagram, k, v, w, cap)
        if isinstance(value, Unknown):
            if unknown is None or value.proven:
                unknown = value
            continue
        worst = max(worst, value)
    return unknown if unknown is not None else worst

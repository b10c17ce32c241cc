"""
Tail-equivalence structure of one-sided diagrams: periodic components, minimality
and transitivity evidence.

All answers are depth-relative. A periodic head is a vertex from which a chain of
``confirm_levels`` further vertices each receive exactly one edge, coming from the
previous vertex of the chain; the tails through the head are then confined and
the path count stops growing.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..config.constants import PERIODIC_CONFIRM_LEVELS, PRIMITIVITY_MAX_POWER
from ..diagram.bidiagram import BiInfiniteDiagram, BratteliSide
from ..diagram.matrix import TransitionMatrix
from ..utils.logging_config import LOGGER

MINIMAL = "Minimal"
NOT_MINIMAL = "NotMinimal"
INCONCLUSIVE = "Inconclusive"


def _side(diagram) -> BratteliSide:
    return diagram.positive_side if isinstance(diagram, BiInfiniteDiagram) else diagram


def _pattern(m: TransitionMatrix) -> TransitionMatrix:
    return TransitionMatrix(tuple(tuple(1 if x > 0 else 0 for x in row) for row in m.entries))


def _pattern_product(side: BratteliSide, lo: int, hi: int) -> TransitionMatrix:
    result = _pattern(TransitionMatrix.identity(side.level_size(lo)))
    for level in range(lo + 1, hi + 1):
        result = _pattern(_pattern(side.matrix(level)) @ result)
    return result


@dataclass(frozen=True)
class PeriodicComponent:
    head_level: int
    head_vertex: int
    stall_level: int
    stall_vertex: int
    period: int
    chain: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "headLevel": self.head_level,
            "headVertex": self.head_vertex,
            "stallLevel": self.stall_level,
            "stallVertex": self.stall_vertex,
            "period": self.period,
            "chain": list(self.chain),
        }


def _single_source(m: TransitionMatrix, u: int) -> Optional[int]:
    """The source of the only edge into ``u``, if ``u`` has exactly one."""
    row = m.entries[u]
    if sum(row) != 1:
        return None
    return row.index(1)


def _forward_chain(side: BratteliSide, level: int, x: int, remaining: int) -> Optional[List[int]]:
    if remaining == 0:
        return []
    m = side.matrix(level + 1)
    for u in range(m.rows):
        if _single_source(m, u) == x:
            rest = _forward_chain(side, level + 1, u, remaining - 1)
            if rest is not None:
                return [u] + rest
    return None


def periodic_chain(side: BratteliSide, level: int, x: int,
                   confirm_levels: int = PERIODIC_CONFIRM_LEVELS) -> Optional[List[int]]:
    """Vertices continuing a confined chain from ``x`` at ``level``, or None."""
    return _forward_chain(_side(side), level, x, confirm_levels)


def is_periodic_head(side, level: int, x: int, confirm_levels: int = PERIODIC_CONFIRM_LEVELS) -> bool:
    return periodic_chain(side, level, x, confirm_levels) is not None


def _stall(side: BratteliSide, level: int, x: int) -> Tuple[int, int]:
    while level > 0:
        source = _single_source(side.matrix(level), x)
        if source is None:
            break
        level, x = level - 1, source
    return level, x


def periodic_component_scan(diagram, depth: int,
                            confirm_levels: int = PERIODIC_CONFIRM_LEVELS) -> List[PeriodicComponent]:
    """Candidate periodic components headed at level ``depth``."""
    side = _side(diagram)
    counts = side.path_counts(depth)
    found = []
    for x in range(side.level_size(depth)):
        chain = periodic_chain(side, depth, x, confirm_levels)
        if chain is None:
            continue
        stall_level, stall_vertex = _stall(side, depth, x)
        found.append(PeriodicComponent(depth, x, stall_level, stall_vertex, counts[x], (x,) + tuple(chain)))
    LOGGER.debug(f"periodic scan at depth {depth}: {len(found)} candidate(s)")
    return found


@dataclass(frozen=True)
class MinimalityEvidence:
    verdict: str
    proof: str = ""
    blocks: Tuple[Tuple[int, int], ...] = ()
    components: Tuple[PeriodicComponent, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "proof": self.proof,
            "blocks": [list(b) for b in self.blocks],
            "periodicComponents": [c.to_dict() for c in self.components],
        }


def _first_positive_block(side: BratteliSide, lo: int, hi_max: int) -> Optional[int]:
    for hi in range(lo + 1, hi_max + 1):
        if _pattern_product(side, lo, hi).is_positive():
            return hi
    return None


def minimality_certificate(diagram, depth: int) -> MinimalityEvidence:
    """Positive block products prove minimality; a periodic component refutes it."""
    side = _side(diagram)
    info = side.source.period_info()
    if info is not None:
        head, period = info
        block = _pattern_product(side, head, head + period)
        power = block
        for j in range(1, PRIMITIVITY_MAX_POWER + 1):
            if power.is_positive():
                return MinimalityEvidence(MINIMAL, "periodic-power", ((head, head + j * period),))
            power = _pattern(block @ power)
    else:
        half = depth // 2
        first = _first_positive_block(side, 0, depth)
        second = _first_positive_block(side, half, depth)
        if first is not None and second is not None:
            return MinimalityEvidence(MINIMAL, "window", ((0, first), (half, second)))
    components = periodic_component_scan(side, depth)
    if components:
        return MinimalityEvidence(NOT_MINIMAL, "periodic-component", components=tuple(components))
    LOGGER.warning(f"minimality inconclusive through depth {depth}")
    return MinimalityEvidence(INCONCLUSIVE)


@dataclass(frozen=True)
class ComponentReport:
    depth: int
    periodic_components: Tuple[PeriodicComponent, ...]
    minimality: MinimalityEvidence
    transitivity: Optional[Tuple[int, int]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "depth": self.depth,
            "periodicComponents": [c.to_dict() for c in self.periodic_components],
            "minimality": self.minimality.to_dict(),
            "transitivity": None if self.transitivity is None else {
                "level": self.transitivity[0], "vertex": self.transitivity[1]},
        }


def transitivity_witness(diagram, depth: int) -> Optional[Tuple[int, int]]:
    """First ``(m, u)`` with ``u`` in ``V_m`` reachable from every vertex of ``V_0``."""
    side = _side(diagram)
    for m in range(1, depth + 1):
        product = _pattern_product(side, 0, m)
        for u, row in enumerate(product.entries):
            if all(row):
                return m, u
    return None


def component_report(diagram, depth: int) -> ComponentReport:
    return ComponentReport(
        depth=depth,
        periodic_components=tuple(periodic_component_scan(diagram, depth)),
        minimality=minimality_certificate(diagram, depth),
        transitivity=transitivity_witness(diagram, depth),
    )

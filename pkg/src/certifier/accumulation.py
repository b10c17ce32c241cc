"""
Recurrence of the shift orbit at finite depth.

``sigma^k(B)`` is compared with other shifts through the edge matrices on levels
``-d..d``. A window seen at two or more shifts is taken as the accumulation point,
and the limit diagram is its periodic extension. The orbit passes through that
window in runs of consecutive shifts; the subsequence keeps the one shift of each
run that sits deepest in the limit.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..diagram.bidiagram import BiInfiniteDiagram
from ..diagram.matrix import TransitionMatrix
from ..diagram.sources import TAIL_REPEAT, ExplicitWindowSource, StationarySource
from ..utils.logging_config import LOGGER

Window = Tuple[TransitionMatrix, ...]


@dataclass(frozen=True)
class AccumulationWitness:
    subsequence: Tuple[int, ...]
    limit_window: Window
    match_depth: int
    exact: bool
    limit: Optional[BiInfiniteDiagram] = field(default=None, compare=False)

    @property
    def weld_size(self) -> int:
        return self.limit_window[self.match_depth].cols

    def to_dict(self) -> Dict[str, Any]:
        levels = [k for k in range(-self.match_depth, self.match_depth + 1) if k != 0]
        return {
            "subsequence": list(self.subsequence),
            "matchDepth": self.match_depth,
            "exact": self.exact,
            "limitWindow": [{"k": k, "matrix": m.to_list()} for k, m in zip(levels, self.limit_window)],
            "limit": None if self.limit is None else self.limit.to_dict(),
        }


def shifted_window(diagram: BiInfiniteDiagram, k: int, depth: int) -> Window:
    return diagram.shift(k).window(depth)


def _cyclic(matrices: List[TransitionMatrix]) -> Optional[ExplicitWindowSource]:
    if matrices[0].cols != matrices[-1].rows:
        return None
    return ExplicitWindowSource(tuple(matrices), TAIL_REPEAT)


def window_extension(window: Window, depth: int) -> Optional[BiInfiniteDiagram]:
    """Both halves of the window repeated forever, or None when a half cannot cycle."""
    positive = _cyclic(list(window[depth:]))
    negative = _cyclic([window[depth - j].transpose() for j in range(1, depth + 1)])
    if positive is None or negative is None:
        return None
    return BiInfiniteDiagram(positive, negative, window[depth].cols)


def _periodic_limit(diagram: BiInfiniteDiagram, k0: int, period: int) -> BiInfiniteDiagram:
    """The two-sided stationary diagram that ``sigma^{k0 + m period}`` converges to."""
    forward = tuple(diagram.matrix_at(k0 + j) for j in range(1, period + 1))
    backward = tuple(diagram.matrix_at(k0 - j + 1).transpose() for j in range(1, period + 1))
    return BiInfiniteDiagram(StationarySource(forward), StationarySource(backward), forward[0].cols)


def limit_agreement(diagram: BiInfiniteDiagram, limit: BiInfiniteDiagram, k: int, cap: int) -> Tuple[int, int]:
    """Levels below and above vertex level 0 where ``sigma^k`` agrees with ``limit``, up to ``cap``."""
    shifted = diagram.shift(k)
    below = next((j - 1 for j in range(1, cap + 1) if shifted.matrix_at(-j) != limit.matrix_at(-j)), cap)
    above = next((j - 1 for j in range(1, cap + 1) if shifted.matrix_at(j) != limit.matrix_at(j)), cap)
    return below, above


def centered_depth(below: int, above: int) -> int:
    """Radius of the agreement centred on the edge level entering vertex level 0."""
    return min(below - 1, above)


def _runs(hits: Sequence[int]) -> List[List[int]]:
    runs: List[List[int]] = []
    for k in hits:
        if runs and runs[-1][-1] == k - 1:
            runs[-1].append(k)
        else:
            runs.append([k])
    return runs


def deepest_hits(diagram: BiInfiniteDiagram, limit: BiInfiniteDiagram, hits: Sequence[int],
                 window_depth: int, cap: int) -> Tuple[int, ...]:
    """One shift per run of hits: the latest with the largest centred depth.

    Runs whose centred depth stays below ``window_depth`` are dropped. When fewer than
    two runs survive every hit is kept.
    """
    chosen = []
    for run in _runs(hits):
        depths = [centered_depth(*limit_agreement(diagram, limit, k, cap)) for k in run]
        best = max(depths)
        if best >= window_depth:
            chosen.append(max(k for k, d in zip(run, depths) if d == best))
    if len(chosen) < 2:
        return tuple(hits)
    return tuple(chosen)


def verify_witness(diagram: BiInfiniteDiagram, witness: AccumulationWitness) -> bool:
    """Re-fetch every hit's window and compare it with the limit window."""
    return all(shifted_window(diagram, k, witness.match_depth) == witness.limit_window
               for k in witness.subsequence)


def detect_accumulation(diagram: BiInfiniteDiagram, max_shift: int,
                        window_depth: int) -> Optional[AccumulationWitness]:
    """Most frequent depth-``window_depth`` window among the shifts ``1..max_shift``.

    Programmatic sides report one deepest shift per run of hits (see ``deepest_hits``);
    periodic sides report every hit.
    """
    if max_shift < window_depth:
        raise ValueError(f"max_shift ({max_shift}) must be at least window_depth ({window_depth})")
    windows = {k: shifted_window(diagram, k, window_depth) for k in range(1, max_shift + 1)}

    info = diagram.positive.period_info()
    if info is not None:
        head, period = info
        k0 = head + max(window_depth, period)
        if k0 <= max_shift:
            target = windows[k0]
            hits = tuple(k for k, w in windows.items() if w == target)
            witness = AccumulationWitness(hits, target, window_depth, True, _periodic_limit(diagram, k0, period))
            LOGGER.info(f"accumulation (exact): period {period} from level {head}, {len(hits)} hit(s)")
            return witness

    counts = Counter(windows.values())
    first_seen = {}
    for k, w in windows.items():
        first_seen.setdefault(w, k)
    target, count = max(counts.items(), key=lambda item: (item[1], -first_seen[item[0]]))
    if count < 2:
        LOGGER.warning(f"no depth-{window_depth} window recurs among shifts 1..{max_shift}")
        return None
    hits = tuple(k for k, w in windows.items() if w == target)
    limit = window_extension(target, window_depth)
    if limit is not None:
        hits = deepest_hits(diagram, limit, hits, window_depth, max_shift)
    witness = AccumulationWitness(hits, target, window_depth, False, limit)
    LOGGER.info(f"accumulation: window recurs at {count} of {max_shift} shifts, "
                f"subsequence {list(hits)}")
    return witness

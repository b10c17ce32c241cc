"""
Stage-``k`` interval maps ``T_k`` from cutting-and-stacking stacks.

``T_k`` translates every cell that is not on top of its stack onto the cell directly
above it. Top cells are gaps where ``T_k`` is undefined; the closed map sends them to
the bottom of their own stack instead, which is the map of the finite approximant.
"""

from bisect import bisect_right
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..core.errors import NeedsDepth
from ..utils.json_io import scalar_from_json, scalar_to_json
from ..weights.weight_function import WeightFunction
from .stacks import StackFamily, build_stacks


@dataclass(frozen=True)
class IETApprox:
    """Cells in position order with their translations (``None`` on domain gaps)."""
    depth: int
    lefts: Tuple[Any, ...]
    rights: Tuple[Any, ...]
    symbols: Tuple[int, ...]
    targets: Tuple[Optional[int], ...]
    bottoms: Tuple[int, ...]
    length: Any

    @property
    def breakpoints(self) -> List[Any]:
        return list(self.lefts) + [self.length]

    @property
    def translations(self) -> List[Optional[Any]]:
        return [None if t is None else self.lefts[t] - self.lefts[i] for i, t in enumerate(self.targets)]

    @property
    def domain_gaps(self) -> List[int]:
        return [i for i, t in enumerate(self.targets) if t is None]

    def cell_of(self, x) -> int:
        if x < 0 or x >= self.length:
            raise ValueError(f"{float(x)} does not lie in [0, {float(self.length)})")
        return bisect_right(self.lefts, x) - 1

    def target(self, i: int, closed: bool = False) -> int:
        t = self.targets[i]
        if t is None:
            if closed:
                return self.bottoms[i]
            raise NeedsDepth(f"T_{self.depth} is undefined on the top cell {i}", step=0, cell=i)
        return t

    def __call__(self, x, closed: bool = False):
        i = self.cell_of(x)
        return x - self.lefts[i] + self.lefts[self.target(i, closed)]

    def extends(self, coarser: "IETApprox", samples: int = 8) -> bool:
        """True when this map agrees with ``coarser`` on the coarser map's domain."""
        for i, t in enumerate(coarser.targets):
            if t is None:
                continue
            width = coarser.rights[i] - coarser.lefts[i]
            for j in range(samples):
                x = coarser.lefts[i] + width * (2 * j + 1) / (2 * samples)
                expected = x - coarser.lefts[i] + coarser.lefts[t]
                try:
                    got = self(x)
                except NeedsDepth:
                    return False
                if abs(float(got - expected)) > 1e-9:
                    return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "depth": self.depth,
            "breakpoints": [scalar_to_json(b) for b in self.breakpoints],
            "translations": [None if t is None else scalar_to_json(t) for t in self.translations],
            "domainGaps": self.domain_gaps,
            "symbols": list(self.symbols),
            "targets": list(self.targets),
            "bottoms": list(self.bottoms),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "IETApprox":
        points = [scalar_from_json(b) for b in data["breakpoints"]]
        return cls(
            depth=int(data["depth"]),
            lefts=tuple(points[:-1]),
            rights=tuple(points[1:]),
            symbols=tuple(int(s) for s in data["symbols"]),
            targets=tuple(None if t is None else int(t) for t in data["targets"]),
            bottoms=tuple(int(b) for b in data["bottoms"]),
            length=points[-1],
        )


def iet_from_stacks(stacks: StackFamily) -> IETApprox:
    n = len(stacks.cells)
    targets: List[Optional[int]] = [None] * n
    bottoms = [0] * n
    for members in stacks.stacks:
        for below, above in zip(members, members[1:]):
            targets[below] = above
        for i in members:
            bottoms[i] = members[0]
    return IETApprox(
        depth=stacks.level,
        lefts=tuple(c.left for c in stacks.cells),
        rights=tuple(c.right for c in stacks.cells),
        symbols=tuple(c.start for c in stacks.cells),
        targets=tuple(targets),
        bottoms=tuple(bottoms),
        length=stacks.length,
    )


def iet_at_depth(orders, w: WeightFunction, k: int) -> IETApprox:
    return iet_from_stacks(build_stacks(orders, w, k))


@dataclass(frozen=True)
class OrbitCoding:
    """Level-0 symbols visited; ``gap_step`` is the step that hit a domain gap."""
    symbols: Tuple[int, ...]
    gap_step: Optional[int] = None

    @property
    def truncated(self) -> bool:
        return self.gap_step is not None

    def to_dict(self) -> Dict[str, Any]:
        return {"symbols": list(self.symbols), "truncated": self.truncated, "gapStep": self.gap_step}


def code_orbit(iet: IETApprox, x, steps: int, closed: bool = False) -> OrbitCoding:
    """Itinerary of ``x`` over the level-0 intervals under ``T_k``."""
    i = iet.cell_of(x)
    symbols = [iet.symbols[i]]
    for step in range(1, steps + 1):
        t = iet.targets[i]
        if t is None:
            if not closed:
                return OrbitCoding(tuple(symbols), step)
            t = iet.bottoms[i]
        i = t
        symbols.append(iet.symbols[i])
    return OrbitCoding(tuple(symbols))

"""
Finite descriptions of one side of a bi-infinite diagram.

A source answers ``matrix(k)`` for every level ``k >= 1`` of a one-sided Bratteli
diagram in standard orientation (rows = level ``k``, columns = level ``k - 1``).
Sources are immutable and pure functions of ``k``.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

from .matrix import TransitionMatrix, mpn_matrix
from ..core.errors import TailPolicyFail, ValidationFailure

TAIL_IDENTITY = "identity"
TAIL_REPEAT = "repeat"
TAIL_FAIL = "fail"
TAIL_POLICIES = (TAIL_IDENTITY, TAIL_REPEAT, TAIL_FAIL)


def _matrices(rows) -> Tuple[TransitionMatrix, ...]:
    return tuple(TransitionMatrix.of(m) for m in rows)


class MatrixSource:
    """Base class for level-indexed matrix sequences."""
    kind = "abstract"

    def matrix(self, k: int) -> TransitionMatrix:
        raise NotImplementedError

    def period_info(self) -> Optional[Tuple[int, int]]:
        """``(head, period)`` when ``matrix(k + period) == matrix(k)`` for all ``k > head``."""
        return None

    def is_stationary(self) -> bool:
        info = self.period_info()
        return info is not None and info[0] == 0

    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError

    def _check_level(self, k: int) -> None:
        if k < 1:
            raise ValueError(f"{self.kind} source levels start at 1, got {k}")


@dataclass(frozen=True)
class StationarySource(MatrixSource):
    period: Tuple[TransitionMatrix, ...]
    kind = "stationary"

    def __post_init__(self):
        object.__setattr__(self, "period", _matrices(self.period))
        if not self.period:
            raise ValidationFailure("stationary source needs a non-empty period")

    def matrix(self, k: int) -> TransitionMatrix:
        self._check_level(k)
        return self.period[(k - 1) % len(self.period)]

    def period_info(self):
        return 0, len(self.period)

    def to_dict(self):
        return {"kind": self.kind, "period": [m.to_list() for m in self.period]}


@dataclass(frozen=True)
class EventuallyPeriodicSource(MatrixSource):
    head: Tuple[TransitionMatrix, ...]
    period: Tuple[TransitionMatrix, ...]
    kind = "eventually-periodic"

    def __post_init__(self):
        object.__setattr__(self, "head", _matrices(self.head))
        object.__setattr__(self, "period", _matrices(self.period))
        if not self.period:
            raise ValidationFailure("eventually periodic source needs a non-empty period")

    def matrix(self, k: int) -> TransitionMatrix:
        self._check_level(k)
        if k <= len(self.head):
            return self.head[k - 1]
        return self.period[(k - 1 - len(self.head)) % len(self.period)]

    def period_info(self):
        return len(self.head), len(self.period)

    def to_dict(self):
        return {
            "kind": self.kind,
            "head": [m.to_list() for m in self.head],
            "period": [m.to_list() for m in self.period],
        }


@dataclass(frozen=True)
class ExplicitWindowSource(MatrixSource):
    """A finite window followed by a tail policy (identity, repeat the window, or fail)."""
    matrices: Tuple[TransitionMatrix, ...]
    tail_policy: str = TAIL_IDENTITY
    identity_size: Optional[int] = None
    kind = "explicit-window"

    def __post_init__(self):
        object.__setattr__(self, "matrices", _matrices(self.matrices))
        if self.tail_policy not in TAIL_POLICIES:
            raise ValidationFailure(f"unknown tail policy {self.tail_policy!r}")
        if not self.matrices and self.tail_policy != TAIL_IDENTITY:
            raise ValidationFailure("an empty window needs the identity tail")
        if not self.matrices and not self.identity_size:
            raise ValidationFailure("an empty window needs identity_size")

    def matrix(self, k: int) -> TransitionMatrix:
        self._check_level(k)
        n = len(self.matrices)
        if k <= n:
            return self.matrices[k - 1]
        if self.tail_policy == TAIL_IDENTITY:
            size = self.matrices[-1].rows if self.matrices else self.identity_size
            return TransitionMatrix.identity(size)
        if self.tail_policy == TAIL_REPEAT:
            return self.matrices[(k - 1) % n]
        raise TailPolicyFail(f"level {k} is past the explicit window of length {n}", level=k)

    def period_info(self):
        if self.tail_policy == TAIL_IDENTITY:
            return len(self.matrices), 1
        if self.tail_policy == TAIL_REPEAT:
            return 0, len(self.matrices)
        return None

    def to_dict(self):
        doc = {
            "kind": self.kind,
            "matrices": [m.to_list() for m in self.matrices],
            "tailPolicy": self.tail_policy,
        }
        if self.identity_size:
            doc["identitySize"] = self.identity_size
        return doc


# --- programmatic rules -----------------------------------------------------

def jump_index(k: int) -> Optional[int]:
    """``i >= 1`` with ``k = (i + 1)^2 - 1``, else None."""
    root = math.isqrt(k + 1)
    if root * root == k + 1 and root >= 2:
        return root - 1
    return None


def mpn_n_value(params: Dict[str, Any], i: int) -> int:
    """The multiplicity ``n_i`` of the M(p, n) family."""
    p = int(params["p"])
    if "n" in params:
        seq = params["n"]
        return int(seq[i - 1]) if i - 1 < len(seq) else 1
    rule = str(params.get("nRule", "1")).replace(" ", "")
    if rule == "1":
        return 1
    if rule == "p^((i+1)^2-1)":
        return p ** ((i + 1) ** 2 - 1)
    if rule == "p^i":
        return p ** i
    raise ValidationFailure(f"unknown nRule {rule!r}")


def _mpn_family(params: Dict[str, Any], k: int) -> TransitionMatrix:
    p = int(params["p"])
    i = jump_index(k)
    if i is None:
        return mpn_matrix(p, 1)
    return mpn_matrix(p, mpn_n_value(params, i))


def _is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


def single_vertex_level_size(k: int) -> int:
    """One vertex at level 0 and at levels ``2^m`` and ``2^m - 1``, two elsewhere."""
    if k == 0 or _is_power_of_two(k) or _is_power_of_two(k + 1):
        return 1
    return 2


def _single_vertex_often(params: Dict[str, Any], k: int) -> TransitionMatrix:
    scalar = int(params.get("scalar", 2))
    inner = params.get("inner", [[1, 1], [1, 0]])
    shape = (single_vertex_level_size(k), single_vertex_level_size(k - 1))
    if shape == (1, 1):
        return TransitionMatrix(((scalar,),))
    if shape == (2, 1):
        return TransitionMatrix(((1,), (1,)))
    if shape == (1, 2):
        return TransitionMatrix(((1, 1),))
    return TransitionMatrix.of(inner)


def _freeze(value):
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    return value


def _thaw(value):
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


RULES: Dict[str, Callable[[Dict[str, Any], int], TransitionMatrix]] = {
    "mpn-family": _mpn_family,
    "single-vertex-often": _single_vertex_often,
}


@dataclass(frozen=True)
class ProgrammaticSource(MatrixSource):
    rule_id: str
    params: Tuple[Tuple[str, Any], ...] = field(default_factory=tuple)
    kind = "programmatic"

    def __post_init__(self):
        if self.rule_id not in RULES:
            raise ValidationFailure(f"unknown programmatic rule {self.rule_id!r}; known: {sorted(RULES)}")
        if isinstance(self.params, dict):
            frozen = tuple(sorted((k, _freeze(v)) for k, v in self.params.items()))
            object.__setattr__(self, "params", frozen)

    @property
    def param_dict(self) -> Dict[str, Any]:
        return dict(self.params)

    def matrix(self, k: int) -> TransitionMatrix:
        self._check_level(k)
        return RULES[self.rule_id](self.param_dict, k)

    def to_dict(self):
        params = {k: _thaw(v) for k, v in self.params}
        return {"kind": self.kind, "ruleId": self.rule_id, "params": params}


# --- composite sources produced by shift / telescope -------------------------

@dataclass(frozen=True)
class OffsetSource(MatrixSource):
    """Levels of ``base`` read from ``offset + 1`` on."""
    base: MatrixSource
    offset: int
    kind = "offset"

    def matrix(self, k: int) -> TransitionMatrix:
        self._check_level(k)
        return self.base.matrix(k + self.offset)

    def period_info(self):
        info = self.base.period_info()
        if info is None:
            return None
        head, period = info
        return max(head - self.offset, 0), period

    def to_dict(self):
        return {"kind": self.kind, "base": self.base.to_dict(), "offset": self.offset}


@dataclass(frozen=True)
class PrependedSource(MatrixSource):
    """``head`` matrices first, then the levels of ``base``."""
    head: Tuple[TransitionMatrix, ...]
    base: MatrixSource
    kind = "prepended"

    def __post_init__(self):
        object.__setattr__(self, "head", _matrices(self.head))

    def matrix(self, k: int) -> TransitionMatrix:
        self._check_level(k)
        if k <= len(self.head):
            return self.head[k - 1]
        return self.base.matrix(k - len(self.head))

    def period_info(self):
        info = self.base.period_info()
        if info is None:
            return None
        head, period = info
        return head + len(self.head), period

    def to_dict(self):
        return {"kind": self.kind, "head": [m.to_list() for m in self.head], "base": self.base.to_dict()}


@dataclass(frozen=True)
class TelescopedSource(MatrixSource):
    """Block products ``F_b ... F_{a+1}`` between consecutive cut levels.

    Cuts start from the implicit level 0; past the last listed cut the blocks
    continue with length ``every``.
    """
    base: MatrixSource
    cuts: Tuple[int, ...] = ()
    every: int = 1
    kind = "telescoped"

    def __post_init__(self):
        cuts = tuple(int(c) for c in self.cuts)
        object.__setattr__(self, "cuts", cuts)
        if any(c < 1 for c in cuts) or any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValidationFailure(f"cut levels must be strictly increasing and >= 1, got {list(cuts)}")
        if self.every < 1:
            raise ValidationFailure("telescoping block length must be positive")

    def cut_level(self, m: int) -> int:
        if m == 0:
            return 0
        if m <= len(self.cuts):
            return self.cuts[m - 1]
        last = self.cuts[-1] if self.cuts else 0
        return last + (m - len(self.cuts)) * self.every

    def matrix(self, k: int) -> TransitionMatrix:
        self._check_level(k)
        lo, hi = self.cut_level(k - 1), self.cut_level(k)
        product = self.base.matrix(lo + 1)
        for level in range(lo + 2, hi + 1):
            product = self.base.matrix(level) @ product
        return product

    def period_info(self):
        info = self.base.period_info()
        if info is None or info[1] % self.every:
            return None
        head, period = info
        last = self.cuts[-1] if self.cuts else 0
        if head > last:
            return None
        return len(self.cuts), period // self.every

    def to_dict(self):
        return {"kind": self.kind, "base": self.base.to_dict(), "cuts": list(self.cuts), "every": self.every}


def source_from_dict(data: Dict[str, Any]) -> MatrixSource:
    """Inverse of ``MatrixSource.to_dict``."""
    kind = data.get("kind")
    if kind == StationarySource.kind:
        return StationarySource(tuple(data["period"]))
    if kind == EventuallyPeriodicSource.kind:
        return EventuallyPeriodicSource(tuple(data.get("head", [])), tuple(data["period"]))
    if kind == ExplicitWindowSource.kind:
        return ExplicitWindowSource(
            tuple(data.get("matrices", [])),
            data.get("tailPolicy", TAIL_IDENTITY),
            data.get("identitySize"),
        )
    if kind == ProgrammaticSource.kind:
        return ProgrammaticSource(data["ruleId"], dict(data.get("params", {})))
    if kind == OffsetSource.kind:
        return OffsetSource(source_from_dict(data["base"]), int(data["offset"]))
    if kind == PrependedSource.kind:
        return PrependedSource(tuple(data["head"]), source_from_dict(data["base"]))
    if kind == TelescopedSource.kind:
        return TelescopedSource(source_from_dict(data["base"]), tuple(data.get("cuts", [])), int(data.get("every", 1)))
    raise ValidationFailure(f"unknown source kind {kind!r}")

"""
Bi-infinite Bratteli diagrams: two one-sided diagrams welded along level 0.

Uniform convention: ``matrix_at(k)`` always has rows indexed by the level closer to
``+infinity``. For ``k > 0`` it is ``F_k`` (from ``V_{k-1}`` to ``V_k``); for ``k < 0`` it
is the transpose of the negative side's ``F^-_{-k}``, joining ``V_k`` to ``V_{k+1}``.
Negative sources therefore describe ``F^-`` in standard one-sided orientation.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from .matrix import TransitionMatrix
from .sources import (
    MatrixSource, OffsetSource, PrependedSource, StationarySource, TelescopedSource,
    source_from_dict,
)
from ..core.errors import BratteliKitError, TailPolicyFail, ValidationFailure
from ..utils.logging_config import LOGGER


@dataclass(frozen=True)
class BratteliSide:
    """One side of a bi-infinite diagram as an ordinary one-sided Bratteli diagram."""
    source: MatrixSource
    weld_size: int

    def matrix(self, k: int) -> TransitionMatrix:
        return self.source.matrix(k)

    def level_size(self, k: int) -> int:
        return self.weld_size if k == 0 else self.source.matrix(k).rows

    def path_counts(self, k: int) -> Tuple[int, ...]:
        """``c_k = F_k c_{k-1}`` with ``c_0`` all ones; entry ``v`` is ``|S(v)|``."""
        counts = tuple([1] * self.weld_size)
        for level in range(1, k + 1):
            counts = self.matrix(level).apply(counts)
        return counts

    def product(self, lo: int, hi: int) -> TransitionMatrix:
        """``F_hi ... F_{lo+1}``; the identity when ``lo == hi``."""
        result = TransitionMatrix.identity(self.level_size(lo))
        for level in range(lo + 1, hi + 1):
            result = self.matrix(level) @ result
        return result


@dataclass(frozen=True)
class Offender:
    level: int
    kind: str
    detail: str

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level, "kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    depth: int
    offenders: Tuple[Offender, ...]
    level_sizes: Dict[int, int] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.offenders

    def kinds(self) -> List[str]:
        return [o.kind for o in self.offenders]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "depth": self.depth,
            "valid": self.valid,
            "offenders": [o.to_dict() for o in self.offenders],
            "levelSizes": {str(k): v for k, v in sorted(self.level_sizes.items())},
        }


def _offset(source: MatrixSource, n: int) -> MatrixSource:
    if isinstance(source, OffsetSource):
        return OffsetSource(source.base, source.offset + n)
    if isinstance(source, StationarySource) and n % len(source.period) == 0:
        return source
    return OffsetSource(source, n)


def _prepend(head: Tuple[TransitionMatrix, ...], source: MatrixSource) -> MatrixSource:
    if isinstance(source, PrependedSource):
        return PrependedSource(tuple(head) + source.head, source.base)
    return PrependedSource(tuple(head), source)


@dataclass(frozen=True)
class BiInfiniteDiagram:
    positive: MatrixSource
    negative: MatrixSource
    weld_size: int

    def __post_init__(self):
        if self.weld_size < 1:
            raise ValidationFailure(f"weldSize must be positive, got {self.weld_size}")

    # --- level access -----------------------------------------------------

    def matrix_at(self, k: int) -> TransitionMatrix:
        if k == 0:
            raise ValueError("there is no edge level 0")
        if k > 0:
            return self.positive.matrix(k)
        return self.negative.matrix(-k).transpose()

    def transition(self, level: int) -> TransitionMatrix:
        """Matrix carrying vertex level ``level`` to ``level + 1``."""
        return self.matrix_at(level + 1) if level >= 0 else self.matrix_at(level)

    def level_size(self, k: int) -> int:
        if k == 0:
            return self.weld_size
        side = self.positive if k > 0 else self.negative
        return side.matrix(abs(k)).rows

    @property
    def positive_side(self) -> BratteliSide:
        return BratteliSide(self.positive, self.weld_size)

    @property
    def negative_side(self) -> BratteliSide:
        return BratteliSide(self.negative, self.weld_size)

    def side(self, sign: int) -> BratteliSide:
        return self.positive_side if sign > 0 else self.negative_side

    def window(self, radius: int) -> Tuple[TransitionMatrix, ...]:
        """Edge matrices at levels ``-radius..-1, 1..radius``."""
        levels = [k for k in range(-radius, radius + 1) if k != 0]
        return tuple(self.matrix_at(k) for k in levels)

    def agrees_with(self, other: "BiInfiniteDiagram", depth: int) -> bool:
        return self.weld_size == other.weld_size and self.window(depth) == other.window(depth)

    # --- validation -------------------------------------------------------

    def validate(self, depth: int) -> ValidationReport:
        """Dimension chain, zero rows/columns and weld compatibility on ``-depth..depth``."""
        if depth < 1:
            raise ValueError("depth must be >= 1")
        offenders: List[Offender] = []
        sizes = {0: self.weld_size}
        for sign in (1, -1):
            source = self.positive if sign > 0 else self.negative
            previous = self.weld_size
            for k in range(1, depth + 1):
                level = sign * k
                try:
                    m = source.matrix(k)
                except TailPolicyFail as e:
                    offenders.append(Offender(level, "tail-policy", e.message))
                    break
                if m.rows < 1 or m.cols < 1:
                    offenders.append(Offender(level, "dimension-mismatch", f"empty matrix {m.shape}"))
                    break
                if m.cols != previous:
                    kind = "weld-mismatch" if k == 1 else "dimension-mismatch"
                    offenders.append(Offender(
                        level, kind, f"matrix has {m.cols} source columns, level below has {previous} vertices"))
                for i, j in m.negative_entries():
                    offenders.append(Offender(level, "negative-entry", f"entry ({i},{j}) = {m[i, j]}"))
                for i in m.zero_rows():
                    offenders.append(Offender(level, "zero-row", f"vertex {i} has no incoming edge"))
                for j in m.zero_cols():
                    offenders.append(Offender(level, "zero-column", f"vertex {j} has no outgoing edge"))
                sizes[level] = m.rows
                previous = m.rows
        report = ValidationReport(depth, tuple(offenders), sizes)
        LOGGER.debug(f"validate(depth={depth}): {len(offenders)} offender(s)")
        return report

    # --- derived diagrams -------------------------------------------------

    def shift(self, n: int) -> "BiInfiniteDiagram":
        """Re-index so that old vertex level ``n`` becomes level 0.

        Positive edge levels ``1..n`` migrate to the negative side in reverse order,
        each transposed into one-sided orientation.
        """
        if n < 0:
            raise ValueError("shift amount must be nonnegative")
        if n == 0:
            return self
        head = tuple(self.positive.matrix(j).transpose() for j in range(n, 0, -1))
        shifted = BiInfiniteDiagram(
            positive=_offset(self.positive, n),
            negative=_prepend(head, self.negative),
            weld_size=head[0].cols,
        )
        LOGGER.debug(f"shift by {n}: weld size {self.weld_size} -> {shifted.weld_size}")
        return shifted

    def telescope(self, cut_levels=(), every: int = 1) -> "BiInfiniteDiagram":
        """Positive side replaced by block products between cut levels."""
        return BiInfiniteDiagram(TelescopedSource(self.positive, tuple(cut_levels), every),
                                 self.negative, self.weld_size)

    def path_count_vector(self, k: int) -> Tuple[int, ...]:
        return self.positive_side.path_counts(k)

    # --- serialization ----------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            "positive": self.positive.to_dict(),
            "negative": self.negative.to_dict(),
            "weldSize": self.weld_size,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BiInfiniteDiagram":
        try:
            return cls(
                positive=source_from_dict(data["positive"]),
                negative=source_from_dict(data["negative"]),
                weld_size=int(data["weldSize"]),
            )
        except BratteliKitError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationFailure(f"malformed diagram document: {e}") from e


def diagram_from_document(doc: Dict[str, Any]) -> BiInfiniteDiagram:
    """Accept a bare diagram or a bundle document carrying a ``diagram`` key."""
    if "diagram" in doc:
        doc = doc["diagram"]
    return BiInfiniteDiagram.from_dict(doc)

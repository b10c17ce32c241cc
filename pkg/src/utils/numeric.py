"""
Exact/float numeric helpers shared by the weight, surface and certificate code.

Exact mode keeps numpy object arrays of ``Fraction``/``int``; float mode keeps float64
arrays. Matrix products work the same way in both modes through ``@``.
"""

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from ..config.constants import MODE_EXACT, MODE_FLOAT, SUPPORTED_MODES

Scalar = Union[int, float, Fraction]


def check_mode(mode: str) -> str:
    if mode not in SUPPORTED_MODES:
        raise ValueError(f"Unknown numeric mode {mode!r}; expected one of {sorted(SUPPORTED_MODES)}")
    return mode


def to_scalar(value, mode: str) -> Scalar:
    """Coerce ``value`` (int, float, Fraction or "p/q" string) into the mode's scalar type."""
    if isinstance(value, str):
        value = Fraction(value)
    if mode == MODE_EXACT:
        return value if isinstance(value, Fraction) else Fraction(value)
    return float(value)


def vector(values: Iterable, mode: str) -> np.ndarray:
    check_mode(mode)
    if mode == MODE_EXACT:
        return np.array([to_scalar(v, mode) for v in values], dtype=object)
    return np.array([float(Fraction(v)) if isinstance(v, str) else float(v) for v in values], dtype=float)


def int_matrix(entries: Sequence[Sequence[int]], mode: str) -> np.ndarray:
    """Integer matrix as an array usable against ``vector(..., mode)``."""
    if mode == MODE_EXACT:
        arr = np.empty((len(entries), len(entries[0]) if entries else 0), dtype=object)
        for i, row in enumerate(entries):
            for j, x in enumerate(row):
                arr[i, j] = int(x)
        return arr
    return np.array(entries, dtype=float)


def is_exact(arr: np.ndarray) -> bool:
    return arr.dtype == object


def mode_of(arr: np.ndarray) -> str:
    return MODE_EXACT if is_exact(arr) else MODE_FLOAT


def as_float(arr: np.ndarray) -> np.ndarray:
    return np.array([float(x) for x in arr], dtype=float) if is_exact(arr) else np.asarray(arr, dtype=float)


def total(arr: np.ndarray) -> Scalar:
    if is_exact(arr):
        return sum(arr, Fraction(0))
    return float(np.sum(arr))


def max_abs(arr: np.ndarray) -> float:
    if len(arr) == 0:
        return 0.0
    return float(max(abs(x) for x in arr))


def dot(a: np.ndarray, b: np.ndarray) -> Scalar:
    if is_exact(a) and is_exact(b):
        return sum((x * y for x, y in zip(a, b)), Fraction(0))
    return float(np.dot(as_float(a), as_float(b)))


def log(value: Scalar) -> float:
    """Natural log that stays accurate for huge/tiny rationals."""
    if isinstance(value, Fraction):
        if value <= 0:
            raise ValueError(f"log of non-positive value {value}")
        return math.log(value.numerator) - math.log(value.denominator)
    return math.log(value)


def reciprocal(value: Scalar) -> Scalar:
    if isinstance(value, Fraction):
        return 1 / value
    return 1.0 / float(value)


def normalized(arr: np.ndarray) -> np.ndarray:
    """Scale a nonnegative vector to unit sum (no-op on the zero vector)."""
    s = total(arr)
    if s == 0:
        return arr.copy()
    return arr / s if not is_exact(arr) else np.array([x / s for x in arr], dtype=object)


def convert(arr: np.ndarray, mode: str) -> np.ndarray:
    if mode == MODE_FLOAT:
        return as_float(arr)
    if is_exact(arr):
        return arr.copy()
    return np.array([Fraction(float(x)) for x in arr], dtype=object)

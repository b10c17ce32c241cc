"""
Deterministic JSON encoding for reports, bundles and certificates.
"""

import json
import math
from fractions import Fraction
from typing import Any

import numpy as np


def scalar_to_json(value: Any) -> Any:
    """Rationals become "p/q" strings, non-finite floats become "inf"/"-inf"/"nan"."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


def scalar_from_json(value: Any):
    if isinstance(value, str):
        if value in ("inf", "-inf", "nan"):
            return float(value)
        return Fraction(value)
    return value


def to_jsonable(obj: Any) -> Any:
    """Recursively convert numpy arrays, tuples and rationals."""
    if hasattr(obj, "to_dict") and callable(obj.to_dict):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    return scalar_to_json(obj)


def dumps(obj: Any, indent: int = 2) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=indent)


def dumps_line(obj: Any) -> str:
    """Single-line form for JSON-lines traces."""
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


def write_json(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(obj))
        f.write("\n")


def read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)

"""
Perron-Frobenius data for stationary and eventually periodic sides.

Exact mode asks sympy for the dominant eigenvector and keeps it when it is rational;
irrational eigendata falls back to float power iteration with a warning.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

import numpy as np
import sympy

from ..config.constants import DEFAULT_TOL, MODE_EXACT, MODE_FLOAT, POWER_ITERATION_MAX_STEPS
from ..core.errors import NotPrimitive
from ..diagram.bidiagram import BiInfiniteDiagram, BratteliSide
from ..diagram.matrix import TransitionMatrix
from ..utils import numeric
from ..utils.json_io import scalar_to_json
from ..utils.logging_config import LOGGER
from .weight_function import WeightFunction, pullback


@dataclass(frozen=True)
class PerronData:
    eigenvalue: Any
    vector: np.ndarray
    mode: str

    @property
    def exact(self) -> bool:
        return self.mode == MODE_EXACT

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eigenvalue": scalar_to_json(self.eigenvalue),
            "eigenvalueFloat": float(self.eigenvalue),
            "vector": [scalar_to_json(x) for x in self.vector],
            "mode": self.mode,
        }


def exact_perron(matrix: TransitionMatrix) -> Optional[PerronData]:
    """Rational dominant eigenpair, or None when the eigendata is irrational."""
    m = sympy.Matrix(matrix.to_list())
    best = None
    for value, _, basis in m.eigenvects():
        approx = complex(sympy.N(value))
        if abs(approx.imag) > 1e-12:
            continue
        if best is None or approx.real > best[0]:
            best = (approx.real, value, basis)
    if best is None:
        return None
    _, value, basis = best
    if len(basis) != 1:
        raise NotPrimitive(f"dominant eigenvalue {value} has a {len(basis)}-dimensional eigenspace")
    if not value.is_rational or not all(x.is_rational for x in basis[0]):
        return None
    vec = [Fraction(int(x.p), int(x.q)) for x in basis[0]]
    s = sum(vec, Fraction(0))
    if s == 0:
        return None
    vec = [x / s for x in vec]
    return PerronData(Fraction(int(value.p), int(value.q)), np.array(vec, dtype=object), MODE_EXACT)


def _float_perron(matrix: TransitionMatrix, tol: float) -> PerronData:
    a = matrix.to_array(float)
    shifted = a + np.eye(a.shape[0])
    x = np.full(a.shape[0], 1.0 / a.shape[0])
    for _ in range(POWER_ITERATION_MAX_STEPS):
        y = shifted @ x
        y /= y.sum()
        if np.max(np.abs(y - x)) <= tol:
            x = y
            break
        x = y
    else:
        LOGGER.warning(f"power iteration did not settle within {POWER_ITERATION_MAX_STEPS} steps")
    return PerronData(float((a @ x).sum()), x, MODE_FLOAT)


def perron_vector(matrix: TransitionMatrix, mode: str = MODE_FLOAT, tol: float = DEFAULT_TOL,
                  require_positive: bool = True) -> PerronData:
    """Dominant eigenpair ``(lambda, xi)`` of ``matrix`` with ``xi`` normalized to unit sum."""
    numeric.check_mode(mode)
    if matrix.rows != matrix.cols:
        raise NotPrimitive(f"Perron data needs a square matrix, got {matrix.shape}")
    data = None
    if mode == MODE_EXACT:
        data = exact_perron(matrix)
        if data is None:
            LOGGER.warning("Perron-Frobenius eigendata is irrational; falling back to float mode")
    if data is None:
        data = _float_perron(matrix, tol)
    floor = 0 if data.exact else tol
    if min(data.vector) < -floor:
        raise NotPrimitive("dominant eigenvector has entries of both signs")
    if require_positive and min(data.vector) <= floor:
        raise NotPrimitive("dominant eigenvector is not strictly positive", vector=[float(x) for x in data.vector])
    return data


def _side(diagram) -> BratteliSide:
    return diagram.positive_side if isinstance(diagram, BiInfiniteDiagram) else diagram


def period_block(side: BratteliSide):
    """``(head, period, F_{head+period} ... F_{head+1})`` of a periodic side."""
    info = side.source.period_info()
    if info is None:
        raise NotPrimitive("side is not stationary or eventually periodic")
    head, period = info
    return head, period, side.product(head, head + period)


def perron_data(diagram, mode: str = MODE_FLOAT, tol: float = DEFAULT_TOL,
                require_positive: bool = True) -> PerronData:
    """Eigenpair of the transposed period block (weights pull back through ``F^T``)."""
    _, _, block = period_block(_side(diagram))
    return perron_vector(block.transpose(), mode, tol, require_positive)


def pf_weights(diagram, mode: str = MODE_FLOAT, tol: float = DEFAULT_TOL,
               require_positive: bool = True) -> WeightFunction:
    """``w_{head + m j} = lambda^{-m} xi``, pulled back through the head and the period."""
    side = _side(diagram)
    head, period, block = period_block(side)
    data = perron_vector(block.transpose(), mode, tol, require_positive)
    top = head + period
    levels = {top: np.array([x / data.eigenvalue for x in data.vector], dtype=data.vector.dtype)}
    levels[head] = data.vector
    for k in range(top - 1, head, -1):
        levels[k] = pullback(side, k + 1, levels[k + 1])
    for k in range(head, 0, -1):
        levels[k - 1] = pullback(side, k, levels[k])
    weights = WeightFunction(levels, data.mode, period, data.eigenvalue)
    if head:
        total = weights.total(0)
        weights = weights.scaled(numeric.reciprocal(total))
    LOGGER.debug(f"PF weights: eigenvalue {float(data.eigenvalue):.12g}, mode {data.mode}")
    return weights

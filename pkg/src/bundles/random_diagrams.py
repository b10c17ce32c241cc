"""
Seeded random valid diagrams for property tests.
"""

from fractions import Fraction
from typing import List

import numpy as np

from ..config.constants import MODE_EXACT
from ..diagram.bidiagram import BiInfiniteDiagram
from ..diagram.matrix import TransitionMatrix
from ..diagram.sources import TAIL_IDENTITY, ExplicitWindowSource
from ..ordering.orders import default_orders
from ..weights.cone import solve_weights
from ..weights.weight_function import WeightFunction
from ..weights.weighted_diagram import WeightedDiagram

MAX_MULTIPLICITY = 2


def _random_matrix(rng: np.random.Generator, rows: int, cols: int) -> TransitionMatrix:
    """Entries in ``0..MAX_MULTIPLICITY`` without zero rows or columns."""
    m = rng.integers(0, MAX_MULTIPLICITY + 1, size=(rows, cols))
    for i in range(rows):
        if not m[i].any():
            m[i, rng.integers(0, cols)] = 1
    for j in range(cols):
        if not m[:, j].any():
            m[rng.integers(0, rows), j] = 1
    return TransitionMatrix.of(m.tolist())


def _random_side(rng: np.random.Generator, weld: int, max_vertices: int, depth: int) -> ExplicitWindowSource:
    matrices: List[TransitionMatrix] = []
    below = weld
    for _ in range(depth):
        size = int(rng.integers(1, max_vertices + 1))
        matrices.append(_random_matrix(rng, size, below))
        below = size
    return ExplicitWindowSource(tuple(matrices), TAIL_IDENTITY)


def _frozen_tail(w: WeightFunction) -> WeightFunction:
    """Identity tail: the top weight repeats on every deeper level."""
    return WeightFunction(dict(w.levels), w.mode, 1, Fraction(1) if w.mode == MODE_EXACT else 1.0)


def random_valid_diagram(seed: int, max_vertices: int = 4, depth: int = 6,
                         mode: str = MODE_EXACT) -> WeightedDiagram:
    """Random matrices on levels ``+-1..depth`` (identity beyond) with positive solved weights."""
    if max_vertices < 1 or depth < 1:
        raise ValueError("max_vertices and depth must be positive")
    rng = np.random.default_rng(seed)
    weld = int(rng.integers(1, max_vertices + 1))
    diagram = BiInfiniteDiagram(
        _random_side(rng, weld, max_vertices, depth),
        _random_side(rng, weld, max_vertices, depth),
        weld,
    )
    w_plus = _frozen_tail(solve_weights(diagram.positive_side, depth, mode))
    w_minus = _frozen_tail(solve_weights(diagram.negative_side, depth, mode))
    bundle = WeightedDiagram(diagram, w_plus, w_minus, default_orders(diagram), f"random-{seed}")
    return bundle.normalized()

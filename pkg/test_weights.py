#!/usr/bin/env python3
"""
Tests for Perron-Frobenius weights, weight validation, the cone oracle and the M(p, n) weight series.
"""

import math
from fractions import Fraction

import pytest

from src.config.constants import MODE_EXACT, MODE_FLOAT
from src.core.errors import NeedsDepth, NotPrimitive, ToleranceViolation, ZeroPairing
from src.diagram.bidiagram import BiInfiniteDiagram, BratteliSide
from src.diagram.matrix import TransitionMatrix, mpn_matrix
from src.diagram.sources import EventuallyPeriodicSource, StationarySource
from src.weights import cone as cone_module
from src.weights.cone import (
    MULTIPLE_OR_ATOMIC, UNIQUE_NON_ATOMIC, column_diameter, hilbert_distance, invariant_cone, solve_weights,
    unique_weight_report,
)
from src.weights.perron import perron_vector, pf_weights
from src.weights.series import BOUNDED, UNBOUNDED, mpn_weight_series
from src.weights.weight_function import FAIL, PASS, WeightFunction, biinfinite_normalize, validate_weight

PHI = (1 + math.sqrt(5)) / 2
FIB = TransitionMatrix.of([[1, 1], [1, 0]])


def fibonacci_side() -> BratteliSide:
    return BiInfiniteDiagram(StationarySource((FIB,)), StationarySource((FIB,)), 2).positive_side


def chacon_side() -> BratteliSide:
    identity = TransitionMatrix.identity(2)
    return BiInfiniteDiagram(StationarySource((mpn_matrix(3, 1),)), StationarySource((identity,)), 2).positive_side


def test_fibonacci_perron_vector_falls_back_to_float():
    data = perron_vector(FIB, MODE_EXACT)
    assert data.mode == MODE_FLOAT, "irrational eigendata should fall back to float mode"
    assert float(data.eigenvalue) == pytest.approx(PHI)
    assert [float(x) for x in data.vector] == pytest.approx([1 / PHI, 1 / PHI ** 2])


def test_fibonacci_pf_weights_are_stationary():
    w = pf_weights(fibonacci_side(), MODE_FLOAT)
    assert list(w.at(0)) == pytest.approx([1 / PHI, 1 / PHI ** 2])
    assert list(w.at(5)) == pytest.approx([PHI ** -6, PHI ** -7])
    report = validate_weight(w, fibonacci_side(), 6, tol=1e-9)
    assert report.passed, f"PF weights should validate, got {report.to_dict()}"
    assert report.condition_iii == PASS
    assert report.is_probability


def test_chacon_pf_weights_are_exact():
    w = pf_weights(chacon_side(), MODE_EXACT)
    assert w.mode == MODE_EXACT
    assert list(w.at(0)) == [Fraction(2, 3), Fraction(1, 3)]
    assert list(w.at(1)) == [Fraction(2, 9), Fraction(1, 9)]
    report = validate_weight(w, chacon_side(), 6)
    assert report.recursion_residual == 0
    assert report.passed


def test_atomic_weight_fails_condition_iii():
    atom = WeightFunction.from_vectors([[0, 1]], MODE_EXACT, period=1, ratio=1)
    report = validate_weight(atom, chacon_side(), 5)
    assert report.recursion_residual == 0, "the atom still satisfies the recursion"
    assert report.condition_iii == FAIL
    assert not report.passed
    assert not report.is_positive


def test_eventually_periodic_weights_are_pulled_through_the_head():
    side = BratteliSide(EventuallyPeriodicSource(([[2]],), ([[3]],)), 1)
    w = pf_weights(side, MODE_EXACT)
    assert [w.vertex(k, 0) for k in range(3)] == [1, Fraction(1, 2), Fraction(1, 6)]
    assert w.vertex(4, 0) == Fraction(1, 54)


def test_perron_rejects_identity():
    with pytest.raises(NotPrimitive):
        perron_vector(TransitionMatrix.identity(2), MODE_EXACT)
    with pytest.raises(NotPrimitive):
        perron_vector(TransitionMatrix.of([[1, 1]]))


def test_weight_function_depth_and_period():
    w = WeightFunction.from_vectors([[1, 1], [1, 0]], MODE_EXACT)
    assert w.depth == 1
    with pytest.raises(NeedsDepth):
        w.at(2)
    again = WeightFunction.from_dict(pf_weights(chacon_side(), MODE_EXACT).to_dict())
    assert again.vertex(7, 0) == Fraction(2, 3 ** 8)


def test_zero_pairing_is_rejected():
    plus = WeightFunction.from_vectors([[1, 0]], MODE_EXACT).at(0)
    minus = WeightFunction.from_vectors([[0, 1]], MODE_EXACT).at(0)
    with pytest.raises(ZeroPairing):
        biinfinite_normalize(plus, minus)


def test_solve_weights_is_a_probability_near_the_pf_ray():
    w = solve_weights(fibonacci_side(), 6, MODE_EXACT)
    assert w.total(0) == 1
    assert validate_weight(w, fibonacci_side(), 6).recursion_residual == 0
    assert [float(x) for x in w.at(0)] == pytest.approx([1 / PHI, 1 / PHI ** 2], abs=1e-2)


def test_hilbert_distance():
    assert hilbert_distance((1, 2), (2, 1)) == pytest.approx(math.log(4))
    assert hilbert_distance((3, 5), (3, 5)) == 0
    assert hilbert_distance((1, 0), (1, 1)) == math.inf
    assert column_diameter([(1, 2)]) == 0.0


def test_cone_oracle_fibonacci_is_unique():
    report = unique_weight_report(fibonacci_side(), 40)
    assert report.verdict == UNIQUE_NON_ATOMIC, f"got {report.verdict} with diameter {report.diameter}"
    assert report.nonatomic_rays[0] == pytest.approx((1 / PHI, 1 / PHI ** 2))
    assert report.atomic_rays == ()


def test_cone_oracle_chacon_has_an_atom():
    report = unique_weight_report(chacon_side(), 20)
    assert report.verdict == MULTIPLE_OR_ATOMIC
    assert report.atomic_rays == ((Fraction(0), Fraction(1)),)
    assert report.nonatomic_rays == ((Fraction(2, 3), Fraction(1, 3)),), "the Chacon ray is rational"
    assert all(isinstance(x, Fraction) for x in report.nonatomic_rays[0])
    assert not report.divergent, f"mass ratios {report.mass_ratios} should settle near 1/2"
    assert report.to_dict()["periodicComponents"][0]["headVertex"] == 1

    floated = unique_weight_report(chacon_side(), 20, mode=MODE_FLOAT)
    assert all(isinstance(x, float) for x in floated.nonatomic_rays[0])
    assert floated.nonatomic_rays[0] == pytest.approx((2 / 3, 1 / 3))


def test_cone_diameter_fibonacci_depth_60():
    cone = invariant_cone(fibonacci_side(), 60)
    assert cone.diameter < 1e-10, f"diameter {cone.diameter} did not contract"
    assert len(cone.history) == 61
    assert all(b <= a for a, b in zip(cone.history, cone.history[1:])), "diameter must not grow"


def test_cone_block_diagonal_stays_wide():
    block = [[1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 1], [0, 0, 1, 1]]
    side = BiInfiniteDiagram(StationarySource((block,)), StationarySource((block,)), 4).positive_side
    cone = invariant_cone(side, 60)
    assert all(d > 0.1 for d in cone.history), "two invariant rays keep the cone wide"
    assert unique_weight_report(side, 60).verdict == MULTIPLE_OR_ATOMIC


def test_cone_diameter_growth_is_rejected(monkeypatch):
    values = iter([1.0, 0.5, 0.7])
    monkeypatch.setattr(cone_module, "column_diameter", lambda columns: next(values))
    with pytest.raises(ToleranceViolation) as info:
        invariant_cone(fibonacci_side(), 3)
    assert info.value.deviation == pytest.approx(0.2)
    assert info.value.exit_code == 3


def test_mpn_series_bounded():
    report = mpn_weight_series(3, {"nRule": "1"}, 3)
    assert report.partial_sums[-1] == Fraction(40, 27)
    assert report.verdict == BOUNDED
    assert report.pullback_agrees


def test_mpn_series_unbounded():
    report = mpn_weight_series(3, {"nRule": "p^((i+1)^2-1)"}, 8)
    assert report.verdict == UNBOUNDED
    assert report.increments[3] == 1 and report.increments[8] == 1
    assert report.pullback_agrees
    with pytest.raises(ValueError):
        mpn_weight_series(1, {"nRule": "1"}, 3)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

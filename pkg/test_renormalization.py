#!/usr/bin/env python3
"""
Tests for renormalization times, height vectors and the shift on weighted diagrams.
"""

import math
from fractions import Fraction

import pytest

from src.bundles.catalog import chacon, fibonacci, odometer_tower
from src.config.constants import MODE_EXACT
from src.renormalization.schedule import heights, renorm_times
from src.renormalization.shifting import shift_weighted
from src.utils import numeric
from src.weights.weight_function import WeightFunction

PHI = (1 + math.sqrt(5)) / 2


def test_fibonacci_times_are_linear():
    bundle = fibonacci()
    schedule = renorm_times(bundle.diagram, bundle.w_plus, 6)
    assert schedule.times == pytest.approx([k * math.log(PHI) for k in range(1, 7)])
    assert schedule.min_gap() == pytest.approx(math.log(PHI))
    assert not schedule.bounded_flag
    assert float(numeric.total(schedule.rescaled_widths(bundle.w_plus, 4))) == pytest.approx(1.0)


def test_odometer_time_is_log_two():
    bundle = odometer_tower(2)
    schedule = renorm_times(bundle.diagram, bundle.w_plus, 3)
    assert schedule.time(1) == pytest.approx(math.log(2))
    assert schedule.expansion(1) == 2, "exact weights give an exact expansion"
    assert schedule.to_dict()["schedule"][2]["widthSum"] == "1/8"


def test_atomic_weights_freeze_the_clock():
    bundle = chacon()
    atom = WeightFunction.from_vectors([[0, 1]], MODE_EXACT, period=1, ratio=1)
    schedule = renorm_times(bundle.diagram, atom, 3)
    assert schedule.bounded_flag, "an atom on a periodic component keeps the width sums bounded"
    assert schedule.times == [0.0, 0.0, 0.0]


def test_heights_pair_with_widths_to_the_area():
    bundle = fibonacci()
    hv = heights(bundle.diagram, bundle.w_minus.at(0), 5)
    for k in range(6):
        area = float(numeric.dot(bundle.w_plus.at(k), hv.at(k)))
        assert area == pytest.approx(1.0), f"area at level {k} is {area}"
    assert list(hv.at(0)) == pytest.approx([1.17082039, 0.72360680])


def test_shift_fibonacci_is_self_similar():
    bundle = fibonacci()
    shifted = shift_weighted(bundle, 1)
    assert list(shifted.w_plus.at(0)) == pytest.approx(list(bundle.w_plus.at(0)))
    assert list(shifted.w_minus.at(0)) == pytest.approx(list(bundle.w_minus.at(0)))
    assert float(shifted.pairing()) == pytest.approx(1.0)
    assert shifted.diagram.matrix_at(-1) == bundle.diagram.matrix_at(1)


def test_shift_chacon_exact():
    shifted = shift_weighted(chacon(), 2)
    assert list(shifted.w_plus.at(0)) == [Fraction(2, 3), Fraction(1, 3)]
    assert list(shifted.w_minus.at(0)) == [Fraction(13, 9), Fraction(1, 9)]
    assert shifted.pairing() == 1, "the shift preserves the area"
    assert shifted.name == "chacon>>2"


def test_shift_bounds():
    bundle = chacon()
    assert shift_weighted(bundle, 0) is bundle
    with pytest.raises(ValueError):
        shift_weighted(bundle, -1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

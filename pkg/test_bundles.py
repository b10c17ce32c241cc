#!/usr/bin/env python3
"""
Tests for the built-in bundle catalog and the random diagram generator.
"""

from fractions import Fraction

import pytest

from src.bundles.catalog import (
    BUNDLES, CLOSED_FORM, Expected, bundle_names, build_bundle, chacon, fibonacci, get_example, truncated,
)
from src.bundles.random_diagrams import random_valid_diagram
from src.config.constants import MODE_EXACT, MODE_FLOAT
from src.core.errors import UnknownBundle
from src.weights.series import mpn_weight_series


def test_catalog_names():
    assert bundle_names() == sorted(BUNDLES)
    assert {"fibonacci", "chacon", "mpn-divergent", "odometer", "single-vertex-often"} <= set(bundle_names())
    with pytest.raises(UnknownBundle) as info:
        get_example("penrose")
    assert info.value.exit_code == 2


def test_expected_values_need_provenance():
    assert Expected(1, CLOSED_FORM).to_dict()["provenance"] == CLOSED_FORM
    with pytest.raises(ValueError):
        Expected(1, "folklore")
    doc = get_example("chacon").to_dict()
    assert doc["expected"]["nonAtomicRay"]["value"] == ["2/3", "1/3"]


def test_fibonacci_matches_its_table():
    spec = get_example("fibonacci")
    bundle = spec.build()
    expected = spec.expected["levelZeroWeights"]
    assert [float(x) for x in bundle.w_plus.at(0)] == pytest.approx(list(expected.value), abs=expected.tol)
    assert bundle.diagram.positive_side.path_counts(1) == spec.expected["stackHeightsAt1"].value
    assert float(bundle.pairing()) == pytest.approx(1.0)


def test_chacon_matches_its_table():
    spec = get_example("chacon")
    bundle = spec.build()
    assert bundle.mode == MODE_EXACT
    assert tuple(bundle.w_plus.at(0)) == spec.expected["nonAtomicRay"].value
    assert bundle.diagram.positive_side.path_counts(1) == spec.expected["stackHeightsAt1"].value
    assert bundle.pairing() == 1


def test_build_modes():
    assert chacon(MODE_FLOAT).mode == MODE_FLOAT
    assert fibonacci(MODE_EXACT).mode == MODE_FLOAT, "irrational PF data cannot stay exact"
    assert build_bundle("odometer").w_plus.at(1)[0] == Fraction(1, 2)


def test_mpn_bounded_series_entry():
    spec = get_example("mpn-bounded")
    report = mpn_weight_series(spec.params["p"], {"nRule": spec.params["n_rule"]}, 6)
    assert report.verdict == spec.expected["seriesVerdict"].value


def test_truncated_bundle_uses_identities():
    bundle = truncated(fibonacci(), 2)
    assert bundle.diagram.matrix_at(2).to_list() == [[1, 1], [1, 0]]
    assert bundle.diagram.matrix_at(3).to_list() == [[1, 0], [0, 1]]
    assert bundle.diagram.matrix_at(-3).to_list() == [[1, 0], [0, 1]]
    assert bundle.name == "fibonacci|2"


@pytest.mark.parametrize("seed", range(5))
def test_random_diagrams_are_valid(seed):
    bundle = random_valid_diagram(seed)
    assert bundle.diagram.validate(8).valid
    assert bundle.w_plus.total(0) == 1
    assert bundle.pairing() == 1
    reports = bundle.validate(6)
    assert reports["wPlus"].recursion_residual == 0
    assert reports["wMinus"].recursion_residual == 0


def test_random_diagrams_are_reproducible():
    assert random_valid_diagram(7).diagram == random_valid_diagram(7).diagram
    with pytest.raises(ValueError):
        random_valid_diagram(0, max_vertices=0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

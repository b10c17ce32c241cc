#!/usr/bin/env python3
"""
Tests for accumulation detection, limit data, the divergence quantities and the certifier routes.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from src.bundles.catalog import build_bundle, chacon, fibonacci, odometer_tower
from src.certifier.accumulation import centered_depth, detect_accumulation, limit_agreement, verify_witness
from src.certifier.certificate import (
    INCONCLUSIVE, LIMIT_UE_BUT_NO_FINITE_MEASURE, ROUTE_ACCUMULATION, ROUTE_SINGLE_VERTEX,
    UNIQUELY_ERGODIC, certify,
)
from src.certifier.limits import partition_G0_H0
from src.certifier.quantities import CriterionQuantities, divergence_check, divergence_term
from src.config.config_manager import RunConfig
from src.core.errors import EmptyG0
from src.diagram.bidiagram import BiInfiniteDiagram
from src.diagram.matrix import TransitionMatrix
from src.diagram.sources import ProgrammaticSource, StationarySource
from src.renormalization.schedule import renorm_times

PHI = (1 + math.sqrt(5)) / 2


def default_config(**overrides) -> RunConfig:
    return RunConfig.from_dict(overrides)


def mpn_diagram() -> BiInfiniteDiagram:
    positive = ProgrammaticSource("mpn-family", {"p": 3, "nRule": "p^((i+1)^2-1)"})
    return BiInfiniteDiagram(positive, StationarySource((TransitionMatrix.identity(2),)), 2)


def sample_quantities(epsilon: float = 0.1, subsequence=(1, 2, 3)) -> CriterionQuantities:
    return CriterionQuantities(
        delta_level=1, g0=(0, 1), h0=(), epsilon=epsilon, delta=0.05, diameter_bound=4.0, c=2,
        term_value=divergence_term(2, 4.0, epsilon, 0.05), subsequence=tuple(subsequence),
    )


def test_partition_G0_H0():
    heights = [np.array([1.0, 0.5]), np.array([1.2, 0.01]), np.array([1.3, 1e-14])]
    assert partition_G0_H0(heights, 1e-9) == ((0,), (1,))
    with pytest.raises(EmptyG0):
        partition_G0_H0([np.array([0.5, 0.5]), np.array([0.0, 0.0])], 1e-9)


def test_epsilon_part_scales_with_epsilon():
    q = sample_quantities()
    assert q.epsilon_part == pytest.approx(800.0)
    assert q.delta_part == pytest.approx(20.0)
    assert sample_quantities(epsilon=0.2).epsilon_part == pytest.approx(q.epsilon_part / 4)
    assert q.term_value == pytest.approx((800.0 + 20.0) ** -2)


def test_divergence_check_sums_and_interval_bound():
    bundle = fibonacci()
    schedule = renorm_times(bundle.diagram, bundle.w_plus, 3)
    q = sample_quantities()
    evidence = divergence_check(q, schedule, 100)
    assert evidence.diverges, evidence.reason
    assert evidence.partial_sums[-1] == pytest.approx(100 * q.term_value)
    assert evidence.min_gap == pytest.approx(math.log(PHI))
    mu = math.log(PHI) / 2
    assert evidence.mu == pytest.approx(mu)
    assert evidence.interval_lower_bound == pytest.approx(mu * math.exp(-3 * mu) * q.term_value)
    assert evidence.interval_term >= evidence.interval_lower_bound

    lonely = divergence_check(sample_quantities(subsequence=(1,)), schedule, 10)
    assert not lonely.diverges
    assert "fewer than two" in lonely.reason


def test_divergence_terms_follow_the_hit_data():
    bundle = fibonacci()
    schedule = renorm_times(bundle.diagram, bundle.w_plus, 3)
    q = replace(sample_quantities(), hit_diameters=(8.0, 4.0, 4.0), hit_deltas=(0.05, 0.05, 0.025))
    evidence = divergence_check(q, schedule, 5)
    assert evidence.measured == 3
    assert evidence.terms[0] == pytest.approx(divergence_term(2, 8.0, 0.1, 0.05))
    assert evidence.terms[1] == pytest.approx(q.term_value)
    assert evidence.terms[2] == pytest.approx(divergence_term(2, 4.0, 0.1, 0.025))
    assert evidence.terms[3:] == (q.term_value, q.term_value), "past the hits the limit summand is used"
    assert evidence.partial_sums[-1] == pytest.approx(sum(evidence.terms))
    assert evidence.term_spread > 0.5
    assert len(evidence.interval_terms) == 3
    scale = evidence.mu * math.exp(-3 * evidence.mu)
    assert all(i >= scale * t for i, t in zip(evidence.interval_terms, evidence.terms))
    assert evidence.interval_terms[0] < evidence.interval_terms[1], "a wider rectangle lowers its interval term"


def test_accumulation_on_the_mpn_family():
    witness = detect_accumulation(mpn_diagram(), 60, 3)
    assert witness is not None and not witness.exact
    assert witness.subsequence == (20, 30, 42, 56), f"hits {witness.subsequence}"
    assert witness.limit is not None
    assert witness.limit.matrix_at(1).to_list() == [[3, 1], [0, 1]]
    assert verify_witness(mpn_diagram(), witness)
    with pytest.raises(ValueError):
        detect_accumulation(mpn_diagram(), 2, 3)


def test_mpn_hits_sit_deepest_in_their_run():
    witness = detect_accumulation(mpn_diagram(), 60, 3)
    # jumps at levels 15 and 24 bound the run 18..20
    assert limit_agreement(mpn_diagram(), witness.limit, 20, 60) == (5, 3)
    assert limit_agreement(mpn_diagram(), witness.limit, 19, 60) == (4, 4)
    assert centered_depth(5, 3) == centered_depth(4, 4) == 3, "ties go to the later shift"
    # the run between jumps 8 and 15 is the single shift 11, too shallow to keep
    assert centered_depth(*limit_agreement(mpn_diagram(), witness.limit, 11, 60)) == 2
    assert 11 not in witness.subsequence
    assert all(k == i * (i + 1) for i, k in zip(range(4, 8), witness.subsequence))


def test_accumulation_is_exact_for_stationary_sides():
    witness = detect_accumulation(chacon().diagram, 60, 3)
    assert witness.exact
    assert witness.subsequence == tuple(range(3, 61)), "the identity levels leave the window after 3 shifts"
    assert witness.weld_size == 2


def test_certify_fibonacci():
    cert = certify(fibonacci(), default_config())
    assert cert.verdict == UNIQUELY_ERGODIC and cert.route == ROUTE_ACCUMULATION
    assert cert.oracle_agreement is True
    assert cert.witness.exact
    assert cert.quantities.delta_level == 1
    assert cert.quantities.g0 == (0, 1)
    assert cert.quantities.good_area >= 0.95
    assert cert.divergence.diverges
    assert set(cert.order_runs) == {"default-left-right", "right-left"}
    assert cert.to_dict()["partialSums"][-1] == pytest.approx(100 * cert.quantities.term_value)
    # terms evaluated at the hits agree with the limit summand
    assert len(cert.quantities.hit_diameters) == len(cert.limits.subsequence)
    assert cert.divergence.measured >= 2
    assert cert.divergence.term_spread < 1e-12
    measured = cert.divergence.terms[:cert.divergence.measured]
    assert measured == pytest.approx([cert.quantities.term_value] * len(measured), rel=1e-12)


def test_certify_chacon_is_inconclusive():
    cert = certify(chacon(), default_config())
    assert cert.verdict == INCONCLUSIVE
    assert cert.oracle_agreement is None
    assert cert.notes, "an inconclusive certificate should say why"


def test_certify_mpn_divergent():
    cert = certify(build_bundle("mpn-divergent"), default_config())
    assert cert.verdict == LIMIT_UE_BUT_NO_FINITE_MEASURE
    assert cert.witness.subsequence == (20, 30, 42, 56)


def test_certify_single_vertex_routes():
    cert = certify(odometer_tower(2), default_config())
    assert cert.verdict == UNIQUELY_ERGODIC and cert.route == ROUTE_SINGLE_VERTEX

    cert = certify(build_bundle("single-vertex-often"), default_config())
    assert cert.route == ROUTE_SINGLE_VERTEX
    assert set(cert.single_vertex_deltas) == {0}
    assert cert.to_dict()["singleVertex"]["levels"] == list(cert.single_vertex_levels)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

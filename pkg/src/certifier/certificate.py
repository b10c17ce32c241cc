"""
Unique-ergodicity certificates.

Routes, tried in order:

1. single vertex: ``|V_k| = 1`` recurs through the working depth and the side is
   minimal; ``Delta^+`` vanishes at those levels.
2. accumulation: a recurrent window whose periodic extension is minimal, convergent
   limit weights and a divergent sum of constant summands.
3. a uniquely ergodic limit (one non-atomic ray) while the weight oracle of the
   original diagram reports divergence: no finite non-atomic measure.

Anything else is inconclusive. The verdict is always compared with the cone oracle.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

from ..config.config_manager import RunConfig
from ..config.constants import SUPPORTED_POLICIES
from ..core.errors import BratteliKitError
from ..dynamics.components import MINIMAL, MinimalityEvidence, minimality_certificate
from ..dynamics.metamour import metamour_plus
from ..renormalization.schedule import renorm_times
from ..utils.logging_config import LOGGER
from ..weights import cone
from ..weights.cone import UniqueWeightReport, unique_weight_report
from ..weights.weighted_diagram import WeightedDiagram
from .accumulation import AccumulationWitness, detect_accumulation, verify_witness
from .limits import LimitWeights, limit_weights, partition_G0_H0
from .quantities import CriterionQuantities, DivergenceEvidence, criterion_quantities, divergence_check

UNIQUELY_ERGODIC = "UNIQUELY_ERGODIC"
LIMIT_UE_BUT_NO_FINITE_MEASURE = "LIMIT_UE_BUT_NO_FINITE_MEASURE"
INCONCLUSIVE = "INCONCLUSIVE"

ROUTE_SINGLE_VERTEX = "single-vertex"
ROUTE_ACCUMULATION = "accumulation"
ROUTE_DIVERGENT_ORIGINAL = "divergent-original"


@dataclass
class Certificate:
    verdict: str = INCONCLUSIVE
    route: str = ""
    config: Dict[str, Any] = field(default_factory=dict)
    single_vertex_levels: Tuple[int, ...] = ()
    single_vertex_deltas: Tuple[Any, ...] = ()
    minimality: Optional[MinimalityEvidence] = None
    witness: Optional[AccumulationWitness] = None
    limit_minimality: Optional[MinimalityEvidence] = None
    limit_oracle: Optional[UniqueWeightReport] = None
    limits: Optional[LimitWeights] = None
    quantities: Optional[CriterionQuantities] = None
    divergence: Optional[DivergenceEvidence] = None
    oracle: Optional[UniqueWeightReport] = None
    oracle_agreement: Optional[bool] = None
    order_runs: Dict[str, str] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def conclusive(self) -> bool:
        return self.verdict != INCONCLUSIVE

    def to_dict(self) -> Dict[str, Any]:
        def part(obj):
            return None if obj is None else obj.to_dict()

        return {
            "verdict": self.verdict,
            "route": self.route,
            "config": self.config,
            "singleVertex": {
                "levels": list(self.single_vertex_levels),
                "Delta": [d if isinstance(d, int) else d.to_dict() for d in self.single_vertex_deltas],
            },
            "minimality": part(self.minimality),
            "witness": part(self.witness),
            "limitMinimality": part(self.limit_minimality),
            "limitOracle": part(self.limit_oracle),
            "limits": part(self.limits),
            "quantities": part(self.quantities),
            "partialSums": None if self.divergence is None else list(self.divergence.partial_sums),
            "divergence": part(self.divergence),
            "oracle": part(self.oracle),
            "oracleAgreement": self.oracle_agreement,
            "orderRuns": dict(sorted(self.order_runs.items())),
            "depths": {
                "depth": self.config.get("depth"),
                "maxShift": self.config.get("max_shift"),
                "windowDepth": self.config.get("window_depth"),
                "coneDepth": self.config.get("cone_depth"),
            },
            "notes": list(self.notes),
        }


def single_vertex_levels(wd: WeightedDiagram, depth: int) -> List[int]:
    return [k for k in range(1, depth + 1) if wd.diagram.level_size(k) == 1]


def _single_vertex_route(wd: WeightedDiagram, config: RunConfig, cert: Certificate) -> bool:
    levels = single_vertex_levels(wd, config.depth)
    if len(levels) < 2 or levels[-1] <= config.depth // 2:
        return False
    evidence = minimality_certificate(wd.diagram, config.depth)
    cert.minimality = evidence
    if evidence.verdict != MINIMAL:
        cert.notes.append(f"single-vertex levels {levels} but minimality is {evidence.verdict}")
        return False
    cert.single_vertex_levels = tuple(levels)
    cert.single_vertex_deltas = tuple(metamour_plus(wd.diagram, k, config.metamour_cap) for k in levels)
    cert.verdict, cert.route = UNIQUELY_ERGODIC, ROUTE_SINGLE_VERTEX
    LOGGER.info(f"single-vertex route: |V_k| = 1 at {levels}")
    return True


def _accumulation_route(wd: WeightedDiagram, config: RunConfig, cert: Certificate) -> bool:
    witness = cert.witness
    cert.limit_minimality = minimality_certificate(witness.limit, config.depth)
    if cert.limit_minimality.verdict != MINIMAL:
        cert.notes.append(f"limit diagram minimality: {cert.limit_minimality.verdict}")
        return False
    try:
        limits = limit_weights(witness, wd.diagram, wd.w_plus, wd.w_minus)
        cert.limits = limits
        g0, h0 = partition_G0_H0(limits.height_sequence, config.geometry_tol)
        quantities = criterion_quantities(witness, limits, g0, h0, config.eta, config.epsilon,
                                          config.metamour_cap)
        schedule = renorm_times(wd.diagram, wd.w_plus, limits.subsequence[-1], config.tol)
        divergence = divergence_check(quantities, schedule, config.n_terms, config.mu)
    except BratteliKitError as e:
        cert.notes.append(f"{type(e).__name__}: {e.message}")
        LOGGER.warning(f"accumulation route stopped: {type(e).__name__}: {e.message}")
        return False
    cert.quantities = replace(quantities, mu=divergence.mu)
    cert.divergence = divergence
    if not divergence.diverges:
        cert.notes.append(divergence.reason)
        return False
    cert.verdict, cert.route = UNIQUELY_ERGODIC, ROUTE_ACCUMULATION
    return True


def _divergent_original_route(cert: Certificate, config: RunConfig) -> bool:
    witness = cert.witness
    if witness.limit is None or cert.oracle is None or not cert.oracle.divergent:
        return False
    cert.limit_oracle = unique_weight_report(witness.limit, config.cone_depth, config.tol, config.mode)
    if len(cert.limit_oracle.nonatomic_rays) != 1:
        return False
    cert.verdict, cert.route = LIMIT_UE_BUT_NO_FINITE_MEASURE, ROUTE_DIVERGENT_ORIGINAL
    return True


def oracle_agreement(verdict: str, oracle: UniqueWeightReport) -> Optional[bool]:
    """None when either side is inconclusive."""
    if verdict == INCONCLUSIVE or oracle.verdict == cone.INCONCLUSIVE:
        return None
    return (verdict == UNIQUELY_ERGODIC) == (oracle.verdict == cone.UNIQUE_NON_ATOMIC)


def _decide(wd: WeightedDiagram, config: RunConfig, oracle: UniqueWeightReport) -> Certificate:
    cert = Certificate(config=config.to_dict(), oracle=oracle)
    if _single_vertex_route(wd, config, cert):
        return cert
    witness = detect_accumulation(wd.diagram, config.max_shift, config.window_depth)
    if witness is None:
        cert.notes.append(f"no recurrent window of depth {config.window_depth} up to shift {config.max_shift}")
        return cert
    if not verify_witness(wd.diagram, witness):
        cert.notes.append("witness windows failed re-verification")
        return cert
    cert.witness = witness
    if witness.limit is None:
        cert.notes.append("the recurrent window has no periodic extension")
        return cert
    if _accumulation_route(wd, config, cert):
        return cert
    _divergent_original_route(cert, config)
    return cert


def certify(wd: WeightedDiagram, config: RunConfig, policies: Optional[Tuple[str, ...]] = None) -> Certificate:
    """Certificate for one weighted ordered diagram; ``policies`` are rerun for order independence."""
    LOGGER.info(f"certifying {wd.name or 'diagram'} (depth {config.depth}, max shift {config.max_shift})")
    oracle = unique_weight_report(wd.diagram, config.cone_depth, config.tol, config.mode)
    cert = _decide(wd, config, oracle)
    cert.oracle_agreement = oracle_agreement(cert.verdict, oracle)
    if cert.oracle_agreement is False:
        LOGGER.warning(f"verdict {cert.verdict} disagrees with the cone oracle ({oracle.verdict})")

    cert.order_runs[wd.orders.policy] = cert.verdict
    others = sorted(SUPPORTED_POLICIES) if policies is None else policies
    for policy in others:
        if policy not in cert.order_runs:
            cert.order_runs[policy] = _decide(wd.with_policy(policy), config, oracle).verdict
    if len(set(cert.order_runs.values())) > 1:
        LOGGER.warning(f"verdict depends on the edge order: {cert.order_runs}")
    LOGGER.info(f"certificate: {cert.verdict} via {cert.route or 'no route'}")
    return cert

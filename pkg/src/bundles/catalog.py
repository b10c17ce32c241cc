"""
Built-in weighted ordered diagrams with their expected-value tables.

Every expected value carries a provenance tag: ``closed-form`` for values stated in
closed form for the example, ``derived`` for values obtained by plugging the example
into the formulas, ``trivial`` for immediate consequences of the definitions.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from ..config.constants import MODE_EXACT, MODE_FLOAT
from ..core.errors import UnknownBundle
from ..diagram.bidiagram import BiInfiniteDiagram
from ..diagram.matrix import TransitionMatrix, mpn_matrix
from ..diagram.sources import ProgrammaticSource, StationarySource
from ..ordering.orders import default_orders
from ..surface import approximant
from ..utils.logging_config import LOGGER
from ..weights.cone import solve_weights
from ..weights.perron import pf_weights
from ..weights.weight_function import WeightFunction
from ..weights.weighted_diagram import WeightedDiagram

CLOSED_FORM = "closed-form"
DERIVED = "derived"
TRIVIAL = "trivial"
PROVENANCES = (CLOSED_FORM, DERIVED, TRIVIAL)

PHI = (1 + math.sqrt(5)) / 2
SOLVED_DEPTH = 8


@dataclass(frozen=True)
class Expected:
    value: Any
    provenance: str
    tol: float = 0.0

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"expected value without a known provenance tag: {self.provenance!r}")

    def to_dict(self) -> Dict[str, Any]:
        value = self.value
        if isinstance(value, tuple):
            value = [str(x) if isinstance(x, Fraction) else x for x in value]
        elif isinstance(value, Fraction):
            value = str(value)
        return {"value": value, "provenance": self.provenance, "tol": self.tol}


@dataclass(frozen=True)
class ExampleSpec:
    name: str
    builder: Callable[..., WeightedDiagram]
    description: str
    params: Dict[str, Any] = field(default_factory=dict)
    expected: Dict[str, Expected] = field(default_factory=dict)

    def build(self, mode: Optional[str] = None) -> WeightedDiagram:
        kwargs = dict(self.params)
        if mode is not None:
            kwargs["mode"] = mode
        return self.builder(**kwargs)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "params": dict(self.params),
            "expected": {key: e.to_dict() for key, e in sorted(self.expected.items())},
        }


def _identity_source(n: int) -> StationarySource:
    return StationarySource((TransitionMatrix.identity(n),))


def _constant_weights(values, mode: str) -> WeightFunction:
    """Weights of an identity side: the same vector on every level."""
    return WeightFunction.from_vectors([values], mode, period=1, ratio=1)


def _bundle(diagram: BiInfiniteDiagram, w_plus: WeightFunction, w_minus: WeightFunction,
            name: str) -> WeightedDiagram:
    mode = MODE_FLOAT if MODE_FLOAT in (w_plus.mode, w_minus.mode) else MODE_EXACT
    bundle = WeightedDiagram(diagram, w_plus.converted(mode), w_minus.converted(mode),
                             default_orders(diagram), name)
    return bundle.normalized()


def fibonacci(mode: str = MODE_FLOAT) -> WeightedDiagram:
    """``[[1, 1], [1, 0]]`` on both sides with Perron-Frobenius weights."""
    matrix = TransitionMatrix.of([[1, 1], [1, 0]])
    diagram = BiInfiniteDiagram(StationarySource((matrix,)), StationarySource((matrix,)), 2)
    return _bundle(diagram, pf_weights(diagram.positive_side, mode), pf_weights(diagram.negative_side, mode),
                   "fibonacci")


def chacon(mode: str = MODE_EXACT) -> WeightedDiagram:
    """``M(3, 1)`` on the positive side, ``Id_2`` on the negative side."""
    diagram = BiInfiniteDiagram(StationarySource((mpn_matrix(3, 1),)), _identity_source(2), 2)
    return _bundle(diagram, pf_weights(diagram.positive_side, mode), _constant_weights([1, 1], mode), "chacon")


def mpn_family(p: int = 3, n_rule: str = "p^((i+1)^2-1)", mode: str = MODE_EXACT,
               depth: int = SOLVED_DEPTH) -> WeightedDiagram:
    """``M(p, n_i)`` at levels ``(i + 1)^2 - 1``, ``M(p, 1)`` elsewhere, ``Id_2`` below level 0."""
    positive = ProgrammaticSource("mpn-family", {"p": p, "nRule": n_rule})
    diagram = BiInfiniteDiagram(positive, _identity_source(2), 2)
    w_plus = solve_weights(diagram.positive_side, depth, mode)
    return _bundle(diagram, w_plus, _constant_weights([1, 1], mode), f"mpn-p{p}")


def odometer_tower(p: int = 2, mode: str = MODE_EXACT) -> WeightedDiagram:
    """The ``p``-adic odometer: ``[[p]]`` on both sides."""
    source = StationarySource((TransitionMatrix(((p,),)),))
    diagram = BiInfiniteDiagram(source, source, 1)
    return _bundle(diagram, pf_weights(diagram.positive_side, mode), pf_weights(diagram.negative_side, mode),
                   f"odometer-{p}")


def single_vertex_often(mode: str = MODE_EXACT, depth: int = SOLVED_DEPTH) -> WeightedDiagram:
    """One vertex at levels ``2^m - 1`` and ``2^m``, the Fibonacci block in between."""
    diagram = BiInfiniteDiagram(ProgrammaticSource("single-vertex-often", {}),
                                StationarySource((TransitionMatrix(((2,),)),)), 1)
    w_plus = solve_weights(diagram.positive_side, depth, mode)
    return _bundle(diagram, w_plus, pf_weights(diagram.negative_side, mode), "single-vertex-often")


def truncated(bundle: WeightedDiagram, i: int) -> WeightedDiagram:
    """Identity matrices beyond level ``+-i``."""
    return approximant.truncated(bundle, i)


BUNDLES: Dict[str, ExampleSpec] = {
    "fibonacci": ExampleSpec(
        "fibonacci", fibonacci, "Fibonacci substitution on both sides",
        expected={
            "t1": Expected(math.log(PHI), CLOSED_FORM, 1e-12),
            "timeStep": Expected(math.log(PHI), CLOSED_FORM, 1e-12),
            "levelZeroWeights": Expected((1 / PHI, 1 / PHI ** 2), DERIVED, 1e-12),
            "edgeWeightsOutOfFirstVertex": Expected(((math.sqrt(5) - 1) / 2, (3 - math.sqrt(5)) / 2),
                                                    CLOSED_FORM, 1e-12),
            "stackHeightsAt1": Expected((2, 1), CLOSED_FORM),
            "expansionFactor": Expected(PHI, DERIVED, 1e-9),
            "period": Expected(1, TRIVIAL),
            "Delta": Expected(1, DERIVED),
            "verdict": Expected("UNIQUELY_ERGODIC", DERIVED),
        }),
    "chacon": ExampleSpec(
        "chacon", chacon, "Chacon's middle-third transformation (M(3, 1))",
        expected={
            "nonAtomicRay": Expected((Fraction(2, 3), Fraction(1, 3)), DERIVED),
            "atomicRay": Expected((0, 1), DERIVED),
            "periodicComponents": Expected(1, CLOSED_FORM),
            "timeStep": Expected(math.log(3), DERIVED, 1e-12),
            "stackHeightsAt1": Expected((4, 1), DERIVED),
            "expansionFactor": Expected(3, DERIVED, 1e-9),
            "verdict": Expected("INCONCLUSIVE", DERIVED),
        }),
    "mpn-divergent": ExampleSpec(
        "mpn-divergent", mpn_family, "M(3, n) family with n_i = 3^((i+1)^2-1)",
        params={"p": 3, "n_rule": "p^((i+1)^2-1)"},
        expected={
            "subsequence": Expected(tuple(i * (i + 1) for i in range(4, 8)), CLOSED_FORM),
            "seriesVerdict": Expected("unbounded", CLOSED_FORM),
            "verdict": Expected("LIMIT_UE_BUT_NO_FINITE_MEASURE", CLOSED_FORM),
        }),
    "mpn-bounded": ExampleSpec(
        "mpn-bounded", mpn_family, "M(3, 1) written as the programmatic family",
        params={"p": 3, "n_rule": "1"},
        expected={"seriesVerdict": Expected("bounded", TRIVIAL)}),
    "odometer": ExampleSpec(
        "odometer", odometer_tower, "2-adic odometer",
        params={"p": 2},
        expected={
            "timeStep": Expected(math.log(2), DERIVED, 1e-12),
            "verdict": Expected("UNIQUELY_ERGODIC", DERIVED),
        }),
    "single-vertex-often": ExampleSpec(
        "single-vertex-often", single_vertex_often, "one vertex at levels 2^m - 1 and 2^m",
        expected={
            "Delta": Expected(0, CLOSED_FORM),
            "verdict": Expected("UNIQUELY_ERGODIC", CLOSED_FORM),
        }),
}


def bundle_names() -> List[str]:
    return sorted(BUNDLES)


def get_example(name: str) -> ExampleSpec:
    try:
        return BUNDLES[name]
    except KeyError:
        raise UnknownBundle(f"unknown bundle {name!r}; known: {bundle_names()}", name=name) from None


def build_bundle(name: str, mode: Optional[str] = None) -> WeightedDiagram:
    bundle = get_example(name).build(mode)
    LOGGER.debug(f"built bundle {name} ({bundle.mode})")
    return bundle

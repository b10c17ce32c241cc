"""
Weighted ordered bi-infinite diagrams: the input of the surface construction.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional

from ..config.constants import DEFAULT_TOL
from ..diagram.bidiagram import BiInfiniteDiagram, diagram_from_document
from ..ordering.orders import EdgeOrders
from ..utils import numeric
from .weight_function import WeightFunction, WeightReport, biinfinite_normalize, validate_weight


@dataclass(frozen=True)
class WeightedDiagram:
    """``w_plus`` lives on the positive side, ``w_minus`` on the negative side (side levels)."""
    diagram: BiInfiniteDiagram
    w_plus: WeightFunction
    w_minus: WeightFunction
    orders: EdgeOrders
    name: str = ""

    @property
    def mode(self) -> str:
        return self.w_plus.mode

    def pairing(self):
        return numeric.dot(self.w_plus.at(0), self.w_minus.at(0))

    def normalized(self) -> "WeightedDiagram":
        """``w_minus`` rescaled so that the level-0 pairing is 1 (the surface has area 1)."""
        _, scaled = biinfinite_normalize(self.w_plus.at(0), self.w_minus.at(0))
        base = self.w_minus.at(0)
        index = next(i for i, x in enumerate(base) if x != 0)
        factor = scaled[index] / base[index]
        return WeightedDiagram(self.diagram, self.w_plus, self.w_minus.scaled(factor), self.orders, self.name)

    def converted(self, mode: str) -> "WeightedDiagram":
        return WeightedDiagram(self.diagram, self.w_plus.converted(mode), self.w_minus.converted(mode),
                               self.orders, self.name)

    def with_policy(self, policy: str) -> "WeightedDiagram":
        return WeightedDiagram(self.diagram, self.w_plus, self.w_minus, self.orders.with_policy(policy), self.name)

    def validate(self, depth: int, tol: float = DEFAULT_TOL) -> Dict[str, WeightReport]:
        return {
            "wPlus": validate_weight(self.w_plus, self.diagram.positive_side, depth, tol),
            "wMinus": validate_weight(self.w_minus, self.diagram.negative_side, depth, tol),
        }

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            "diagram": self.diagram.to_dict(),
            "orders": self.orders.to_dict(),
            "wPlus": self.w_plus.to_dict(),
            "wMinus": self.w_minus.to_dict(),
        }
        if self.name:
            doc["name"] = self.name
        return doc

    @classmethod
    def from_dict(cls, data: Dict[str, Any], mode: Optional[str] = None) -> "WeightedDiagram":
        diagram = diagram_from_document(data)
        bundle = cls(
            diagram=diagram,
            w_plus=WeightFunction.from_dict(data["wPlus"]),
            w_minus=WeightFunction.from_dict(data["wMinus"]),
            orders=EdgeOrders.from_dict(diagram, data.get("orders")),
            name=data.get("name", ""),
        )
        return bundle.converted(mode) if mode else bundle

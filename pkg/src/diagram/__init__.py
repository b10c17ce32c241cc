"""
Bi-infinite Bratteli diagrams: matrices, lazy sources, welding, shifting, telescoping.
"""

from .matrix import Edge, TransitionMatrix, Vertex
from .sources import MatrixSource, source_from_dict
from .bidiagram import BiInfiniteDiagram, BratteliSide, ValidationReport

__all__ = [
    "Edge", "TransitionMatrix", "Vertex", "MatrixSource", "source_from_dict",
    "BiInfiniteDiagram", "BratteliSide", "ValidationReport",
]

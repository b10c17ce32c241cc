"""
Edge orders, ordered path sets and maximal/minimal paths.
"""

from .orders import EdgeOrders, SideOrders, default_orders
from .paths import FinitePath, enumerate_S, is_maximal, is_minimal, maximal_path, minimal_path

__all__ = [
    "EdgeOrders", "SideOrders", "default_orders", "FinitePath", "enumerate_S",
    "is_maximal", "is_minimal", "maximal_path", "minimal_path",
]

"""
Bratteli Kit - bi-infinite ordered Bratteli diagrams, flat surfaces and
unique-ergodicity certificates.
"""

__version__ = "1.0.0"
__author__ = "Bratteli Kit Team"

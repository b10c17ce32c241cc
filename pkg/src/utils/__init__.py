"""
Utility functions and helpers: logging, JSON I/O, numeric modes and the venv bootstrap.
"""

"""
Cutting-and-stacking, the flat surface model, renormalization on surfaces, finite
approximants and exporters.
"""

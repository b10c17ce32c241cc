"""
Renormalization times, height vectors and the shift on weighted ordered diagrams.
"""

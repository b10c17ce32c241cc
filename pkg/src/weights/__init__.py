"""
Weight functions, Perron-Frobenius data, the cone oracle and the M(p, n) weight series.
"""

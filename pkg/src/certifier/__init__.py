"""
Unique-ergodicity certificates: shift-orbit accumulation, limit weights, the
geometric criterion quantities and the divergence sums.
"""

"""
Vershik dynamics on truncated paths, periodic components and the metamour function.
"""

"""
Built-in example bundles and seeded random diagrams.
"""

"""
Configuration and settings management.
"""

"""
Core application components: the command-line front end and the error family.
"""

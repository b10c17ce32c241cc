#!/usr/bin/env python3
"""
Bratteli Kit: bi-infinite ordered Bratteli diagrams, their flat surfaces and
renormalization, from the command line.

Virtual Environment Support:
  A virtual environment (.venv) will be automatically used if present in the script directory.
  Run setup.py to create the virtual environment and install dependencies.

Tested with Python 3.10+
"""

import sys
from src.utils.environment import setup_virtual_environment


def main():
    """Main entry point for the Bratteli Kit command line."""
    # Setup virtual environment before importing numpy / sympy / cv2
    setup_virtual_environment()

    from src.core.application import BratteliKitApp
    return BratteliKitApp().run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())

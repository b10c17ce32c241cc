"""
Virtual environment setup utilities.
"""

import os
import sys


def project_root() -> str:
    """Directory holding main.py, setup.py and the .venv."""
    return os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


def venv_python(venv_dir: str) -> str:
    if sys.platform == "win32":
        return os.path.join(venv_dir, "Scripts", "python.exe")
    return os.path.join(venv_dir, "bin", "python")


def in_virtual_environment() -> bool:
    return hasattr(sys, 'real_prefix') or (hasattr(sys, 'base_prefix') and sys.base_prefix != sys.prefix)


def setup_virtual_environment():
    """Re-execute main.py with the project's .venv interpreter when one exists."""
    venv_dir = os.path.join(project_root(), ".venv")
    if in_virtual_environment() or not os.path.exists(venv_dir):
        return

    python = venv_python(venv_dir)
    if not os.path.exists(python):
        return
    if os.path.samefile(sys.executable, python):
        return  # Already using virtual environment Python

    # stderr keeps stdout a clean JSON channel
    sys.stderr.write(f"Using virtual environment: {venv_dir}\n")
    os.execv(python, [python] + sys.argv)

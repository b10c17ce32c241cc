#!/usr/bin/env python3
"""
Create the Bratteli Kit virtual environment (.venv) and install requirements.txt into it.

Usage:
  python setup.py            create or update .venv
  python setup.py --fresh    delete .venv first
"""

import os
import shutil
import subprocess
import sys
import venv

from src.utils.environment import project_root, venv_python

FALLBACK_REQUIREMENTS = ["numpy", "sympy", "networkx", "opencv-python-headless", "pytest"]


def pip_install(python: str, *args: str) -> None:
    subprocess.run([python, "-m", "pip", "install", *args], check=True)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    root = project_root()
    venv_dir = os.path.join(root, ".venv")
    requirements = os.path.join(root, "requirements.txt")

    if "--fresh" in argv and os.path.isdir(venv_dir):
        print(f"Removing {venv_dir}")
        shutil.rmtree(venv_dir)

    if os.path.isdir(venv_dir):
        print(f"Reusing virtual environment at {venv_dir}")
    else:
        print(f"Creating virtual environment at {venv_dir}")
        venv.create(venv_dir, with_pip=True)

    python = venv_python(venv_dir)
    pip_install(python, "--upgrade", "pip")
    if os.path.exists(requirements):
        pip_install(python, "-r", requirements)
    else:
        print("requirements.txt missing; installing the core stack")
        pip_install(python, *FALLBACK_REQUIREMENTS)

    print("\nDone. Try:")
    print("  python main.py examples list")
    print("  python main.py certify fibonacci")
    print("  python -m pytest")
    return 0


SETUPTOOLS_COMMANDS = {
    "egg_info", "dist_info", "bdist_wheel", "sdist", "build", "build_py",
    "develop", "install", "editable_wheel", "bdist_egg",
}


def package_metadata() -> None:
    """Packaging manifest used when pip builds or installs the project."""
    from setuptools import find_packages, setup

    setup(
        name="bratteli-kit",
        version="0.1.0",
        packages=find_packages(include=["src", "src.*"]),
        py_modules=["main"],
        python_requires=">=3.10",
        install_requires=FALLBACK_REQUIREMENTS[:-1],
    )


if __name__ == "__main__":
    if SETUPTOOLS_COMMANDS.intersection(sys.argv[1:]):
        package_metadata()
    else:
        sys.exit(main())

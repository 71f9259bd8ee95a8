"""Polynomial-model-based blackbox optimization.

Thin wrapper over the compiled extension; see the project README for the
CLI and file formats.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"

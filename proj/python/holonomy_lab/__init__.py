"""Holonomy amplitudes of matrix-group connections and their curvature bounds."""

from ._core import *  # noqa: F401,F403
from ._core import ConfigError, HolonomyError

__all__ = [name for name in dir() if not name.startswith("_")]

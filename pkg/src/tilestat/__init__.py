"""Exact substitution-tiling vertex sets, planar Ulam sets, and their statistics."""

from .golden import GAMMA, ONE, PHI, ZERO, GoldenValue

__version__ = "0.1.0"

__all__ = ["GoldenValue", "GAMMA", "PHI", "ONE", "ZERO", "__version__"]

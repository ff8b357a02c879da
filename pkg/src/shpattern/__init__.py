"""Stochastic anisotropic Swift-Hohenberg patterns and their Ginzburg-Landau amplitude approximation."""

__version__ = "0.1.0"

from .errors import (
    BlowUp,
    ClockMismatch,
    ConfigError,
    GridMismatch,
    RealityViolation,
    ShPatternError,
    SingularOperator,
)
from .grid import Grid2D, d2_axis, lp_norm, wrap_index

__all__ = [
    "BlowUp",
    "ClockMismatch",
    "ConfigError",
    "GridMismatch",
    "Grid2D",
    "RealityViolation",
    "ShPatternError",
    "SingularOperator",
    "d2_axis",
    "lp_norm",
    "wrap_index",
]

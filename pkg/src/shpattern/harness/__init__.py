"""Experiment orchestration, metrics, configuration and the ``shpattern`` command line."""

from .config import RunConfig, load_config, parse_config
from .experiments import replay, run_experiment
from .metrics import approximation_error, dominant_x_wavenumber, energy_diagnostics

__all__ = [
    "RunConfig",
    "approximation_error",
    "dominant_x_wavenumber",
    "energy_diagnostics",
    "load_config",
    "parse_config",
    "replay",
    "run_experiment",
]

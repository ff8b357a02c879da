"""Comparison metrics between pattern fields."""

from dataclasses import dataclass

import numpy as np

from ..errors import GridMismatch
from ..grid import lp_norm
from ..spectral import sobolev_norm


def approximation_error(u_direct, u_ansatz, p=2.0):
    """Relative ``L^p`` distance ``||u_direct - u_ansatz|| / max(||u_ansatz||, 1e-30)``."""
    u_direct, u_ansatz = np.asarray(u_direct), np.asarray(u_ansatz)
    if u_direct.shape != u_ansatz.shape:
        raise GridMismatch(f"shapes differ: {u_direct.shape} vs {u_ansatz.shape}")
    return lp_norm(u_direct - u_ansatz, p) / max(lp_norm(u_ansatz, p), 1e-30)


def dominant_x_wavenumber(u, grid):
    """Physical x-wavenumber ``pi k* / Lx`` of the strongest nonzero mode of the
    y-averaged x power spectrum."""
    if grid.n_x < 4:
        raise ValueError("need at least 4 cells along x")
    power = np.mean(np.abs(np.fft.rfft(np.asarray(u), axis=-1)) ** 2, axis=0)
    k_star = 1 + int(np.argmax(power[1:]))
    return np.pi * k_star / grid.half_len_x


@dataclass
class EnergyRecord:
    l2sq: float
    w12sq: float
    l4quad: float


def energy_diagnostics(v, grid):
    """``||v||_{L^2}^2``, ``||v||_{W^{1,2}}^2`` and ``||v||_{L^4}^4``."""
    return EnergyRecord(
        lp_norm(v, 2) ** 2,
        sobolev_norm(v, grid, 1.0, 2) ** 2,
        lp_norm(v, 4) ** 4,
    )

"""Amplitude-to-pattern conversion ``u = eps A e^{ix} + c.c.`` and the step initial data."""

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch
from .grid import Grid2D, check_field


@dataclass(frozen=True)
class AnsatzMap:
    """Pairs the amplitude grid on ``[-L, L)^2`` with the pattern grid on ``[-L/eps, L/eps)^2``.

    Both grids have the same cell counts, so barycentre ``(p, q)`` of one
    maps exactly onto barycentre ``(p, q)`` of the other via ``X = eps x``.
    """

    eps: float
    a_grid: Grid2D
    u_grid: Grid2D

    def __post_init__(self):
        a, u = self.a_grid, self.u_grid
        if not (a.n_x == u.n_x and a.n_y == u.n_y):
            raise GridMismatch("amplitude and pattern grids need identical cell counts")
        if not a.scaled(1.0 / self.eps).same_geometry(u):
            raise GridMismatch("pattern grid half length must equal amplitude half length / eps")

    @classmethod
    def from_amplitude_grid(cls, a_grid, eps):
        return cls(eps, a_grid, a_grid.scaled(1.0 / eps))


def ansatz_to_u(a_real, a_imag, amap):
    """``u(x, y) = 2 eps (A^R(eps x, eps y) cos x - A^I(eps x, eps y) sin x)``."""
    a_real = check_field(amap.a_grid, a_real, "A^R")
    a_imag = check_field(amap.a_grid, a_imag, "A^I")
    x = amap.u_grid.x[None, :]
    return 2.0 * amap.eps * (a_real * np.cos(x) - a_imag * np.sin(x))


def build_initial_A(a_grid):
    """Step data: ``(A^R, A^I) = (1, 0)`` on the lower half ``Y < 0``, ``(0, 1)`` elsewhere."""
    _, yy = a_grid.mesh()
    lower = (yy > -a_grid.half_len_y) & (yy < 0.0)
    return lower.astype(float), (~lower).astype(float)


def build_initial_u(a0, amap):
    return ansatz_to_u(a0[0], a0[1], amap)

"""
Periodic cell-centred grids on a rectangle [-Lx, Lx) x [-Ly, Ly).

Fields are plain ``numpy`` arrays of shape ``(n_y, n_x)``: row ``q`` holds
the cells with barycentre ``Y_q``, column ``p`` the cells with barycentre
``X_p``.  This is the row-major (q outer, p inner) order used by the raw
dump format.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BlowUp, GridMismatch

X, Y = "x", "y"


@dataclass(frozen=True)
class Grid2D:
    """Uniform periodic grid with cell barycentres.

    Parameters
    ----------
    n_x, n_y : int
        Number of cells along x and y.
    half_len_x, half_len_y : float
        The domain is ``[-half_len_x, half_len_x) x [-half_len_y, half_len_y)``.
    """

    n_x: int
    n_y: int
    half_len_x: float
    half_len_y: float

    def __post_init__(self):
        if self.n_x < 1 or self.n_y < 1:
            raise ValueError("grid sizes must be positive")
        if not (self.half_len_x > 0 and self.half_len_y > 0):
            raise ValueError("half lengths must be positive")

    @classmethod
    def square(cls, n, half_len):
        return cls(n, n, half_len, half_len)

    @property
    def dx(self):
        return 2.0 * self.half_len_x / self.n_x

    @property
    def dy(self):
        return 2.0 * self.half_len_y / self.n_y

    @property
    def shape(self):
        return (self.n_y, self.n_x)

    @property
    def x(self):
        """Barycentre x-coordinates ``-Lx + (p + 0.5) dx``."""
        return -self.half_len_x + (np.arange(self.n_x) + 0.5) * self.dx

    @property
    def y(self):
        return -self.half_len_y + (np.arange(self.n_y) + 0.5) * self.dy

    def mesh(self):
        """Return ``(X, Y)`` barycentre arrays of shape ``(n_y, n_x)``."""
        return np.meshgrid(self.x, self.y, indexing="xy")

    def scaled(self, factor):
        """Same cell counts on a domain whose half lengths are multiplied by ``factor``."""
        return Grid2D(self.n_x, self.n_y, self.half_len_x * factor, self.half_len_y * factor)

    def zeros(self):
        return np.zeros(self.shape)

    def full(self, value):
        return np.full(self.shape, float(value))

    def same_geometry(self, other, rtol=1e-12):
        return (
            self.n_x == other.n_x
            and self.n_y == other.n_y
            and np.isclose(self.half_len_x, other.half_len_x, rtol=rtol, atol=0)
            and np.isclose(self.half_len_y, other.half_len_y, rtol=rtol, atol=0)
        )


def check_field(grid, f, name="field"):
    f = np.asarray(f)
    if f.shape != grid.shape:
        raise GridMismatch(f"{name} has shape {f.shape}, grid expects {grid.shape}")
    return f


def check_finite(f, limit=None, step=None, name="field"):
    """Raise :class:`BlowUp` on NaN/Inf or, if given, values beyond ``limit``."""
    if not np.all(np.isfinite(f)):
        raise BlowUp(f"{name} became non-finite at step {step}", step=step)
    if limit is not None:
        peak = np.max(np.abs(f))
        if peak > limit:
            raise BlowUp(f"{name} reached |value| = {peak:.3e} > {limit:g} at step {step}", step=step)


def wrap_index(i, n):
    """Periodic index: ``i mod n`` in ``{0, ..., n-1}``."""
    if n < 1:
        raise ValueError("n must be positive")
    return i % n


def d2_axis(f, grid, axis):
    """Centred second difference with periodic wrap along ``axis`` ('x' or 'y').

    ``(f[p-1] + f[p+1] - 2 f[p]) / h**2`` with ``h`` the cell width along the axis.
    """
    f = np.asarray(f)
    if axis == X:
        ax, h = -1, grid.dx
    elif axis == Y:
        ax, h = -2, grid.dy
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return (np.roll(f, 1, axis=ax) + np.roll(f, -1, axis=ax) - 2.0 * f) / h**2


def d2_symbol(n, h):
    """Eigenvalues ``2 (cos(2 pi k / n) - 1) / h**2`` of the periodic second difference.

    Returned in FFT order ``k = 0, 1, ..., -1``.
    """
    k = np.fft.fftfreq(n, 1.0 / n)
    return 2.0 * (np.cos(2.0 * np.pi * k / n) - 1.0) / h**2


def lp_norm(f, p=2.0):
    """Midpoint-rule ``L^p`` norm w.r.t. the normalised measure (area of the torus = 1)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    a = np.abs(np.asarray(f))
    peak = float(a.max()) if a.size else 0.0
    if np.isinf(p) or peak == 0.0:
        return peak
    # scale by the peak so a**p neither underflows nor overflows
    return peak * float(np.mean((a / peak) ** p) ** (1.0 / p))

"""
Fourier-side tools on the periodic grid.

Basis and normalisation
-----------------------
The basis functions are

    e_{k,l}(x, y) = exp(-i pi (k x / Lx + l y / Ly)) / (2 sqrt(Lx Ly))

(for a square torus the prefactor is ``1/(2L)``).  With ``<.,.>`` the
midpoint quadrature of the normalised inner product, ``forward`` returns

    c_{k,l} = <f, e_{k,l}> = mean(f * conj(e_{k,l}))

and ``inverse`` reconstructs ``f = W * sum_{k,l} c_{k,l} e_{k,l}`` with
``W = 4 Lx Ly``.  Discrete orthogonality of the sampled exponentials makes
the pair exact inverses, and Parseval reads

    ||f||_{L^2}^2 = W * sum |c_{k,l}|^2.

Mode numbers follow FFT order: ``k = 0, 1, ..., ceil(n/2)-1, -floor(n/2), ..., -1``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularOperator
from .grid import X, Grid2D, check_field, d2_axis, d2_symbol, lp_norm


def eigenvalue(k, l, eps, half_len):
    """Linear growth rate of mode ``(k, l)`` for the anisotropic Swift-Hohenberg operator.

    ``-((1 - (pi/L)^2 k^2)^2 + (pi/L)^2 l^2 - eps^2)``; works elementwise on arrays.
    """
    q2 = (np.pi / half_len) ** 2
    k = np.asarray(k, dtype=float)
    l = np.asarray(l, dtype=float)
    return -((1.0 - q2 * k**2) ** 2 + q2 * l**2 - eps**2)


def mode_numbers(n):
    return np.fft.fftfreq(n, 1.0 / n).astype(int)


@dataclass
class SpectralCoeffs:
    """Coefficients ``c[l, k]`` in FFT order on a given grid."""

    grid: Grid2D
    coeffs: np.ndarray

    @property
    def k(self):
        return mode_numbers(self.grid.n_x)

    @property
    def l(self):
        return mode_numbers(self.grid.n_y)

    def at(self, k, l):
        return self.coeffs[l % self.grid.n_y, k % self.grid.n_x]

    def weight(self):
        return 4.0 * self.grid.half_len_x * self.grid.half_len_y

    def is_hermitian(self, atol=1e-12):
        """``c_{-k,-l} = conj(c_{k,l})``, the coefficient test for a real field.

        For even ``n`` the stored Nyquist mode ``-n/2`` is its own mirror and,
        on cell-centred samples, aliases ``e_{+n/2}`` with a factor ``-1``;
        the sign is folded into the comparison.
        """
        c = self.coeffs
        sign = np.outer(_nyquist_sign(self.grid.n_y), _nyquist_sign(self.grid.n_x))
        mirrored = sign * np.conj(np.roll(np.flip(c, axis=(0, 1)), 1, axis=(0, 1)))
        return np.allclose(c, mirrored, rtol=0, atol=atol * max(1.0, np.abs(c).max()))


def _nyquist_sign(n):
    s = np.ones(n)
    if n % 2 == 0:
        s[n // 2] = -1.0
    return s


def _phases(grid):
    # exp(+i pi k X_0 / Lx) with X_0 the first barycentre; aligns FFT samples with barycentres
    kx, ly = mode_numbers(grid.n_x), mode_numbers(grid.n_y)
    px = np.exp(1j * np.pi * kx * grid.x[0] / grid.half_len_x)
    py = np.exp(1j * np.pi * ly * grid.y[0] / grid.half_len_y)
    return px, py


def basis_function(grid, k, l):
    """Sample ``e_{k,l}`` at the grid barycentres."""
    xx, yy = grid.mesh()
    norm = 2.0 * np.sqrt(grid.half_len_x * grid.half_len_y)
    return np.exp(-1j * np.pi * (k * xx / grid.half_len_x + l * yy / grid.half_len_y)) / norm


def forward(f, grid):
    f = check_field(grid, f)
    px, py = _phases(grid)
    # ifft2 = mean(f * exp(+2 pi i (k p / n_x + l q / n_y)))
    c = np.fft.ifft2(f) * py[:, None] * px[None, :]
    c /= 2.0 * np.sqrt(grid.half_len_x * grid.half_len_y)
    return SpectralCoeffs(grid, c)


def inverse(c):
    grid = c.grid
    px, py = _phases(grid)
    chat = c.coeffs * np.conj(py)[:, None] * np.conj(px)[None, :]
    return np.fft.fft2(chat) * (2.0 * np.sqrt(grid.half_len_x * grid.half_len_y))


def _real_if_input_real(f, g):
    return g.real if np.isrealobj(f) else g


def galerkin_project(f, grid, n):
    """Keep only the modes with ``|k| + |l| <= n``."""
    c = forward(f, grid)
    mask = (np.abs(c.l)[:, None] + np.abs(c.k)[None, :]) <= n
    c.coeffs = np.where(mask, c.coeffs, 0.0)
    return _real_if_input_real(f, inverse(c))


def sobolev_multiplier(grid, s):
    qx2 = (np.pi / grid.half_len_x) ** 2
    qy2 = (np.pi / grid.half_len_y) ** 2
    k = mode_numbers(grid.n_x)[None, :]
    l = mode_numbers(grid.n_y)[:, None]
    return ((1.0 - qx2 * k**2) ** 2 + qy2 * l**2 + 1.0) ** (s / 2.0)


def apply_sobolev(f, grid, s):
    c = forward(f, grid)
    c.coeffs = c.coeffs * sobolev_multiplier(grid, s)
    return _real_if_input_real(f, inverse(c))


def sobolev_norm(f, grid, s, p=2.0):
    """``||(1 - L_0)^{s/2} f||_{L^p}`` via the Fourier multiplier of ``1 - L_0``."""
    return lp_norm(apply_sobolev(f, grid, s), p)


def circulant_solve_x(a, b, c, rhs, grid):
    """Solve ``(a I + b d2_x + c d2_x d2_x) v = rhs`` on every row.

    The operator is circulant along x, so it is diagonalised by the FFT;
    its symbol is ``a + b s + c s^2`` with ``s`` the second-difference
    eigenvalue.
    """
    rhs = check_field(grid, rhs)
    sig = d2_symbol(grid.n_x, grid.dx)
    symbol = a + b * sig + c * sig**2
    mag = np.abs(symbol)
    if mag.min() < 1e-14 * mag.max() or mag.max() == 0:
        raise SingularOperator(f"x-operator symbol nearly vanishes (min |symbol| = {mag.min():.3e})")
    if np.isrealobj(rhs):
        sig_r = symbol[: grid.n_x // 2 + 1]
        return np.fft.irfft(np.fft.rfft(rhs, axis=-1) / sig_r, n=grid.n_x, axis=-1)
    return np.fft.ifft(np.fft.fft(rhs, axis=-1) / symbol, axis=-1)


def apply_x_operator(a, b, c, v, grid):
    """Explicit application of ``a I + b d2_x + c d2_x d2_x`` (stencil form)."""
    d2 = d2_axis(v, grid, X)
    return a * v + b * d2 + c * d2_axis(d2, grid, X)

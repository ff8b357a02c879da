"""
Truncated Fourier noise driven by a seeded family of Brownian paths.

A :class:`BrownianRegistry` owns one complex Brownian motion
``beta_k = beta^R_k + i beta^I_k`` per wave vector ``k = (k^R, k^I)`` with
``|k^R| <= m_R`` and ``|k^I| <= m_I``.  The paths live on the slow clock
``T``; a solver on the fast clock ``t = T / eps^2`` requests increments of
size ``eps^2 dt``.

Draw order is fixed: ``k^R`` ascending (outer), ``k^I`` ascending (inner),
real part before imaginary part.  A registry built from the same seed and
driven by the same sequence of :meth:`BrownianRegistry.advance` calls
reproduces its increments bit for bit.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch


def make_rng(seed):
    """Counter-based generator (Philox) keyed by ``seed``."""
    return np.random.Generator(np.random.Philox(int(seed)))


def derived_seed(seed, replica):
    return int(seed) ^ int(replica)


@dataclass
class NoiseIncrement:
    """Brownian increments over one step of length ``delta_slow``.

    ``gaussians[i, j, 0]`` is the increment of ``beta^R`` for
    ``(k_r[i], k_i[j])``, ``gaussians[i, j, 1]`` that of ``beta^I``.
    """

    delta_slow: float
    gaussians: np.ndarray
    k_r: np.ndarray
    k_i: np.ndarray

    def __add__(self, other):
        # concatenation in time of two consecutive increments
        return NoiseIncrement(
            self.delta_slow + other.delta_slow, self.gaussians + other.gaussians, self.k_r, self.k_i
        )

    def scaled(self, factor):
        return NoiseIncrement(self.delta_slow, self.gaussians * factor, self.k_r, self.k_i)

    @property
    def complex(self):
        return self.gaussians[..., 0] + 1j * self.gaussians[..., 1]


def zero_increment(delta_slow, m_r, m_i):
    k_r = np.arange(-m_r, m_r + 1)
    k_i = np.arange(-m_i, m_i + 1)
    return NoiseIncrement(delta_slow, np.zeros((k_r.size, k_i.size, 2)), k_r, k_i)


class BrownianRegistry:
    """Seeded Brownian paths for every truncated noise mode.

    Parameters
    ----------
    seed : int
        Key of the Philox stream.
    m_r, m_i : int
        Truncation numbers in the two wave-vector directions.
    """

    def __init__(self, seed, m_r=10, m_i=10):
        if m_r < 0 or m_i < 0:
            raise ValueError("truncation numbers must be non-negative")
        self.seed = int(seed)
        self.m_r = int(m_r)
        self.m_i = int(m_i)
        self.k_r = np.arange(-self.m_r, self.m_r + 1)
        self.k_i = np.arange(-self.m_i, self.m_i + 1)
        self.slow_time = 0.0
        self.values = np.zeros((self.k_r.size, self.k_i.size, 2))
        self._rng = make_rng(self.seed)

    @property
    def n_modes(self):
        return self.k_r.size * self.k_i.size

    def advance(self, delta_slow):
        """Draw N(0, delta_slow) increments for every mode and move the clock."""
        if not delta_slow > 0:
            raise ValueError("delta_slow must be positive")
        g = self._rng.standard_normal((self.k_r.size, self.k_i.size, 2)) * np.sqrt(delta_slow)
        self.values += g
        self.slow_time += delta_slow
        return NoiseIncrement(delta_slow, g, self.k_r, self.k_i)

    def advance_many(self, delta_slow, count):
        """``count`` successive sub-increments summed into one increment."""
        inc = self.advance(delta_slow)
        for _ in range(count - 1):
            inc = inc + self.advance(delta_slow)
        return inc


def _check_half_len(grid, hx, hy):
    if not (np.isclose(grid.half_len_x, hx, rtol=1e-12) and np.isclose(grid.half_len_y, hy, rtol=1e-12)):
        raise GridMismatch(
            f"grid covers half lengths ({grid.half_len_x}, {grid.half_len_y}), noise expects ({hx}, {hy})"
        )


def _mode_sum(coef, k_r, k_i, grid, period_half_len, sign):
    """``sum_{k} coef[kR, kI] exp(sign i pi (kR x + kI y) / period_half_len)`` at barycentres."""
    ex = np.exp(sign * 1j * np.pi * np.outer(k_r, grid.x) / period_half_len)
    ey = np.exp(sign * 1j * np.pi * np.outer(k_i, grid.y) / period_half_len)
    return ey.T @ (coef.T @ ex)


def assemble_xi_A(inc, grid, half_len):
    """Discretised noise ``(Xi^R, Xi^I)`` of the amplitude equation.

    ``Xi^R = C_L sum [dbR cos(theta) - dbI sin(theta)] / dT`` and
    ``Xi^I = C_L sum [dbR sin(theta) + dbI cos(theta)] / dT`` with
    ``theta = pi (kR X + kI Y) / L`` and ``C_L = 1 / (2L)``.  This is the
    real/imaginary split of ``C_L sum db_k exp(i theta) / dT``.
    """
    _check_half_len(grid, half_len, half_len)
    c_l = 1.0 / (2.0 * half_len)
    xi = _mode_sum(inc.complex, inc.k_r, inc.k_i, grid, half_len, +1) * (c_l / inc.delta_slow)
    return xi.real.copy(), xi.imag.copy()


def assemble_xi_u(inc, grid, eps, half_len):
    """Real noise field ``Xi_eps`` of the Swift-Hohenberg equation on ``[-L/eps, L/eps)^2``.

    ``Xi_eps = 2 C_L sum_{|kR| <= m_R, 0 <= kI <= m_I} [dbR cos(theta) + dbI sin(theta)] / dt``
    with ``theta = pi (kR x + kI y) / (L / eps)`` and ``dt = inc.delta_slow / eps^2``.
    The ``kI = 0`` row carries the same prefactor as the others, as displayed
    for the discretised noise; the scheme multiplies the result by ``eps``.
    """
    period = half_len / eps
    _check_half_len(grid, period, period)
    c_l = 1.0 / (2.0 * half_len)
    dt = inc.delta_slow / eps**2
    upper = inc.k_i >= 0
    field = _mode_sum(inc.complex[:, upper], inc.k_r, inc.k_i[upper], grid, period, -1)
    return 2.0 * c_l * field.real / dt

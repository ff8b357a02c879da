"""
Stochastic convolution of the linear Swift-Hohenberg operator, mode by mode.

Each Fourier mode of ``dZ = L_eps Z dt + dxi`` is a complex
Ornstein-Uhlenbeck process ``dy = lam y dt + dbeta`` and is advanced with
its exact Gaussian transition, so no time-discretisation error enters Z.

Reality is imposed by driving only the half-space of wave vectors
``H = {(kR, kI): |kR| <= m_R, 0 <= kI <= m_I}`` -- the same set that drives
the discretised Swift-Hohenberg noise -- and mirroring conjugates:

    Z = sum_{k in H} (y_k e_k + conj(y_k) e_{-k}),   e_k = exp(-i pi k.x / L) / (2L).
"""

from dataclasses import dataclass

import numpy as np

from .errors import RealityViolation
from .grid import Grid2D, lp_norm
from .noise import make_rng
from .spectral import eigenvalue

LAMBDA_ZERO = 1e-12


def ito_variance(k, l, t, eps=1.0, half_len=np.pi / 2):
    """``int_0^t exp(2 (t - s) lam) ds`` for ``lam = eigenvalue(k, l, eps, half_len)``.

    This is the variance of each real part of the mode's stochastic integral.
    """
    if np.any(np.asarray(t) < 0):
        raise ValueError("t must be non-negative")
    return rate_variance(eigenvalue(k, l, eps, half_len), t)


def rate_variance(lam, t):
    """``int_0^t exp(2 s lam) ds``, with the Brownian limit ``t`` for ``|lam| < 1e-12``."""
    lam = np.asarray(lam, dtype=float)
    safe = np.where(np.abs(lam) < LAMBDA_ZERO, 1.0, lam)
    return np.where(np.abs(lam) < LAMBDA_ZERO, t, np.expm1(2.0 * safe * t) / (2.0 * safe))


def _cov(lam, t):
    # int_0^t exp((t - s) lam) ds: covariance of the OU increment with the Brownian increment
    lam = np.asarray(lam, dtype=float)
    safe = np.where(np.abs(lam) < LAMBDA_ZERO, 1.0, lam)
    return np.where(np.abs(lam) < LAMBDA_ZERO, t, np.expm1(safe * t) / safe)


def discrete_eigenvalue(k, l, eps, grid):
    """Growth rate of mode ``(k, l)`` under the finite-difference operator
    ``-(1 + d2_x)^2 + d2_y + eps^2`` on ``grid``."""
    sx = 2.0 * (np.cos(np.pi * np.asarray(k) * grid.dx / grid.half_len_x) - 1.0) / grid.dx**2
    sy = 2.0 * (np.cos(np.pi * np.asarray(l) * grid.dy / grid.half_len_y) - 1.0) / grid.dy**2
    return -((1.0 + sx) ** 2) + sy + eps**2


@dataclass
class OUState:
    """Mode amplitudes of the stochastic convolution.

    Attributes
    ----------
    y : ndarray, complex, shape ``batch + (2 m_R + 1, n_kI)``
        Driver-mode amplitudes.  With ``real=True`` the driver set is the
        half-space ``kI >= 0``; otherwise all ``|kI| <= m_I``.
    lam : ndarray
        Growth rate per driver mode.
    """

    m_r: int
    m_i: int
    half_len: float
    eps: float
    y: np.ndarray
    lam: np.ndarray
    k_r: np.ndarray
    k_i: np.ndarray
    real: bool = True
    time: float = 0.0
    rng: np.random.Generator = None

    @property
    def batch_shape(self):
        return self.y.shape[:-2]

    def coefficients(self):
        """Full coefficient array over ``|kR| <= m_R, |kI| <= m_I`` (last two axes)."""
        if not self.real:
            return self.y.copy()
        n_r, n_i = 2 * self.m_r + 1, 2 * self.m_i + 1
        full = np.zeros(self.batch_shape + (n_r, n_i), dtype=complex)
        ir = self.k_r + self.m_r
        ii = self.k_i + self.m_i
        full[..., ir[:, None], ii[None, :]] += self.y
        # conjugate mirror: mode -k receives conj(y_k)
        full[..., (-self.k_r + self.m_r)[:, None], (-self.k_i + self.m_i)[None, :]] += np.conj(self.y)
        return full


def ou_state(m_r, m_i, half_len=np.pi / 2, eps=1.0, seed=0, batch=(), real=True, grid=None):
    """Fresh state with ``Z(0) = 0``.

    If ``grid`` is given the growth rates are those of the finite-difference
    operator on that grid instead of the continuum eigenvalues; this matches Z
    to a finite-difference solver driven by the same noise.
    """
    if isinstance(batch, int):
        batch = (batch,)
    k_r = np.arange(-m_r, m_r + 1)
    k_i = np.arange(0 if real else -m_i, m_i + 1)
    kk, ll = np.meshgrid(k_r, k_i, indexing="ij")
    if grid is None:
        lam = eigenvalue(kk, ll, eps, half_len)
    else:
        lam = discrete_eigenvalue(kk, ll, eps, grid)
    y = np.zeros(tuple(batch) + lam.shape, dtype=complex)
    return OUState(m_r, m_i, half_len, eps, y, lam, k_r, k_i, real, 0.0, make_rng(seed))


def _complex_normal(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def ou_step_exact(state, delta):
    """Advance every mode by its exact transition over ``delta``.

    ``y <- exp(lam delta) y + eta``, ``eta`` complex Gaussian with independent
    parts of variance ``(exp(2 lam delta) - 1) / (2 lam)`` (``delta`` if ``lam = 0``).
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    noise = _complex_normal(state.rng, state.y.shape)
    state.y = np.exp(state.lam * delta) * state.y + np.sqrt(rate_variance(state.lam, delta)) * noise
    state.time += delta
    return state


def ou_step_coupled(state, inc):
    """Exact transition over ``inc.delta_slow`` conditioned on the Brownian increments ``inc``.

    The OU increment ``eta = int exp(lam (delta - s)) dbeta(s)`` and the
    Brownian increment ``dbeta`` are jointly Gaussian; ``eta`` is drawn from
    its conditional law given ``dbeta``.  Refining the Brownian path and
    coarsening the result therefore leaves Z consistent across step sizes.
    """
    delta = inc.delta_slow
    sel = np.isin(inc.k_i, state.k_i)
    db = inc.complex[:, sel]
    if db.shape != state.lam.shape:
        raise ValueError("increment truncation does not match the OU state")
    c = _cov(state.lam, delta)
    resid = np.clip(rate_variance(state.lam, delta) - c**2 / delta, 0.0, None)
    eta = (c / delta) * db + np.sqrt(resid) * _complex_normal(state.rng, state.y.shape)
    state.y = np.exp(state.lam * delta) * state.y + eta
    state.time += delta
    return state


def z_field(state, grid, tol=1e-10):
    """Evaluate ``sum_k Z_k e_k`` at the barycentres of ``grid`` (which must cover ``[-L, L)^2``).

    Returns a real array of shape ``batch + grid.shape``; raises
    :class:`RealityViolation` if the imaginary residue exceeds ``tol``.
    """
    field = z_field_complex(state, grid)
    resid = np.max(np.abs(field.imag)) if field.size else 0.0
    if resid > tol:
        raise RealityViolation(f"Z has imaginary residue {resid:.3e}")
    return field.real.copy()


def z_field_complex(state, grid):
    L = state.half_len
    coef = state.coefficients()
    k_r = np.arange(-state.m_r, state.m_r + 1)
    k_i = np.arange(-state.m_i, state.m_i + 1)
    ex = np.exp(-1j * np.pi * np.outer(k_r, grid.x) / L)
    ey = np.exp(-1j * np.pi * np.outer(k_i, grid.y) / L)
    # field[..., q, p] = sum_{r, i} coef[..., r, i] ex[r, p] ey[i, q]
    return np.einsum("...ri,rp,iq->...qp", coef, ex, ey, optimize=True) / (2.0 * L)


def coefficient_l2sq(state):
    """``||Z||_{L^2}^2`` from the coefficients (valid when all modes are grid-resolved)."""
    return np.sum(np.abs(state.coefficients()) ** 2, axis=(-2, -1)) / (2.0 * state.half_len) ** 2


@dataclass
class MonteCarloSummary:
    mean: float
    stderr: float
    samples: np.ndarray


def sup_lp_statistic(
    p=4.0,
    replicas=200,
    horizon=1.0,
    step=0.01,
    m_r=10,
    m_i=10,
    half_len=np.pi / 2,
    eps=1.0,
    n_grid=64,
    seed=0,
    noise_scale=1.0,
):
    """Monte Carlo estimate of ``E sup_{t <= horizon} ||Z(t)||_{L^p}`` on a time grid.

    Replicas run as one vectorised batch; ``noise_scale = 0`` gives the
    degenerate (noise-free) process.
    """
    if replicas < 2:
        raise ValueError("need at least two replicas")
    grid = Grid2D.square(n_grid, half_len)
    state = ou_state(m_r, m_i, half_len, eps, seed=seed, batch=replicas)
    n_steps = int(round(horizon / step))
    sup = np.zeros(replicas)
    for _ in range(n_steps):
        ou_step_exact(state, step)
        z = z_field(state, grid) * noise_scale
        norms = np.mean(np.abs(z) ** p, axis=(-2, -1)) ** (1.0 / p)
        np.maximum(sup, norms, out=sup)
    return MonteCarloSummary(float(sup.mean()), float(sup.std(ddof=1) / np.sqrt(replicas)), sup)


def holder_quotient(snapshots, alpha, p=2.0):
    """``max_{s != t} ||Z(t) - Z(s)||_{L^p} / |t - s|^alpha`` over ``(time, field)`` pairs."""
    if len(snapshots) < 2:
        raise ValueError("need at least two snapshots")
    best = 0.0
    for i, (t, f) in enumerate(snapshots):
        for s, g in snapshots[i + 1 :]:
            q = lp_norm(np.asarray(f) - np.asarray(g), p) / abs(t - s) ** alpha
            best = max(best, q)
    return best

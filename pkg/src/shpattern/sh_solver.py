"""
Semi-implicit finite differences for the anisotropic Swift-Hohenberg equation

    du/dt = -(1 + d_x^2)^2 u + d_y^2 u + eps^2 u - u^3 + eps xi_eps'

in the split form ``du/dt = -u + d_x^2 mu + d_y^2 u + eps^2 u - u^3``,
``mu = -d_x^2 u - 2u``.  The discrete pair

    (u' - u) / dt = -u' + d2_x mu' + d2_y u + eps^2 u - u^3 + eps Xi
    mu' = -d2_x u' - u' - u

is solved exactly by substituting ``mu'``, which leaves the row-wise system

    ((1 + dt) I + dt d2_x + dt d2_x d2_x) u' = u + dt (-d2_x u + d2_y u + eps^2 u - u^3 + eps Xi).

The *shifted* variant advances ``v = u - Z`` with ``eps = 1``: the cubic
becomes ``(v + Z)^3`` and the noise term is dropped.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError
from .gl_solver import BLOWUP_LIMIT, steps_for
from .grid import Grid2D, X, Y, check_field, check_finite, d2_axis
from .noise import BrownianRegistry, assemble_xi_u
from .spectral import circulant_solve_x

DIRECT, SHIFTED = "direct", "shifted"


@dataclass
class SHConfig:
    """Solver settings.  ``grid`` covers ``[-L/eps, L/eps)^2``; ``half_len`` is ``L``."""

    grid: Grid2D = field(default_factory=lambda: Grid2D.square(100, 2 * np.pi))
    delta_t: float = 1e-3
    eps: float = 0.25
    half_len: float = np.pi / 2
    noise: bool = False
    m_r: int = 10
    m_i: int = 10
    seed: int = 0
    mode: str = DIRECT
    nonlinear: bool = True

    def __post_init__(self):
        if not self.delta_t > 0:
            raise ValueError("delta_t must be positive")
        if not 0 < self.eps <= 1:
            raise ValueError("eps must lie in (0, 1]")
        if self.mode not in (DIRECT, SHIFTED):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class SHState:
    u: np.ndarray
    mu: np.ndarray
    step: int = 0
    fast_time: float = 0.0

    def copy(self):
        return replace(self, u=self.u.copy(), mu=self.mu.copy())


def initial_mu(u, grid):
    """``mu = -d2_x u - 2u``, the constraint of the split form at t = 0."""
    return -d2_axis(u, grid, X) - 2.0 * u


def _advance(state, cfg, eps, cubic, forcing):
    g, dt = cfg.grid, cfg.delta_t
    u = check_field(g, state.u, "u")
    d2x = d2_axis(u, g, X)
    rhs = -d2x + d2_axis(u, g, Y) + eps**2 * u
    if cfg.nonlinear:
        rhs = rhs - cubic
    if forcing is not None:
        rhs = rhs + forcing
    u_new = circulant_solve_x(1.0 + dt, dt, dt, u + dt * rhs, g)
    mu_new = -d2_axis(u_new, g, X) - u_new - u
    n = state.step + 1
    check_finite(u_new, BLOWUP_LIMIT, step=n, name="u")
    return SHState(u_new, mu_new, n, n * dt)


def sh_step(state, cfg, xi_eps=None):
    """One step of the direct scheme; ``xi_eps`` is the real noise field when noise is on."""
    if (xi_eps is not None) != cfg.noise:
        raise ValueError("xi_eps must be given exactly when cfg.noise is on")
    forcing = None if xi_eps is None else cfg.eps * check_field(cfg.grid, xi_eps, "xi_eps")
    return _advance(state, cfg, cfg.eps, state.u**3, forcing)


def sh_step_shifted(state, cfg, z):
    """One step for ``v`` in ``dv/dt = L_1 v - (v + Z)^3`` with ``Z`` given at the current time."""
    z = check_field(cfg.grid, z, "Z")
    return _advance(state, cfg, 1.0, (state.u + z) ** 3, None)


def run_sh(cfg, initial_u, snapshots_at, registry=None, substeps=1, z_source=None, callback=None):
    """Iterate the scheme and return the states at ``snapshots_at`` (fast times).

    Direct mode with noise draws ``substeps`` registry increments of size
    ``eps^2 delta_t / substeps`` per step.  Shifted mode needs ``z_source(n)``
    returning Z at step ``n``.
    """
    targets = steps_for(snapshots_at, cfg.delta_t)
    if cfg.mode == SHIFTED and z_source is None:
        raise ConfigError("shifted mode requires a Z source")
    if cfg.mode == DIRECT and cfg.noise and registry is None:
        registry = BrownianRegistry(cfg.seed, cfg.m_r, cfg.m_i)
    u0 = np.array(initial_u, dtype=float)
    check_field(cfg.grid, u0, "u0")
    state = SHState(u0, initial_mu(u0, cfg.grid))
    wanted = {}
    for i, n in enumerate(targets):
        wanted.setdefault(n, []).append(i)
    out = [None] * len(targets)
    horizon = max(targets) if targets else 0
    if callback is not None:
        callback(state)
    for n in range(horizon + 1):
        for i in wanted.get(n, ()):
            out[i] = state.copy()
        if n == horizon:
            break
        if cfg.mode == SHIFTED:
            state = sh_step_shifted(state, cfg, z_source(n))
        else:
            xi = None
            if cfg.noise:
                inc = registry.advance_many(cfg.eps**2 * cfg.delta_t / substeps, substeps)
                xi = assemble_xi_u(inc, cfg.grid, cfg.eps, cfg.half_len)
            state = sh_step(state, cfg, xi)
        if callback is not None:
            callback(state)
    return out

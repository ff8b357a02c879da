"""
Semi-implicit finite differences for the (stochastic) Ginzburg-Landau system

    dA/dT = 4 d2_X A + d2_Y A + A - 3 |A|^2 A + xi',   A = A^R + i A^I,

written for the real and imaginary parts.  Per step, with everything at
level n except where marked,

    (A^{n+1} - A^n) / dT = 4 d2_X A^{n+1} + d2_Y A^n + A^{n+1} - 3 |A^n|^2 A^n + Xi,

so each row solves ``((1 - dT) I - 4 dT d2_X) A^{n+1} = A^n + dT (...)``.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ClockMismatch
from .grid import Grid2D, Y, check_field, check_finite, d2_axis
from .noise import BrownianRegistry, assemble_xi_A
from .spectral import circulant_solve_x

BLOWUP_LIMIT = 1e6


@dataclass
class GLConfig:
    grid: Grid2D = field(default_factory=lambda: Grid2D.square(100, np.pi / 2))
    delta_T: float = 1e-4
    noise: bool = False
    m_r: int = 10
    m_i: int = 10
    seed: int = 0
    noise_amplitude: float = 1.0
    nonlinear: bool = True

    def __post_init__(self):
        if not 0 < self.delta_T < 1:
            raise ValueError("delta_T must lie in (0, 1) so that 1 - delta_T > 0")


@dataclass
class GLState:
    a_real: np.ndarray
    a_imag: np.ndarray
    step: int = 0
    slow_time: float = 0.0

    def copy(self):
        return replace(self, a_real=self.a_real.copy(), a_imag=self.a_imag.copy())


def gl_step(state, cfg, xi=None):
    """One step of the semi-implicit scheme; ``xi = (Xi^R, Xi^I)`` when noise is on."""
    if (xi is not None) != cfg.noise:
        raise ValueError("xi must be given exactly when cfg.noise is on")
    g, dT = cfg.grid, cfg.delta_T
    ar = check_field(g, state.a_real, "A^R")
    ai = check_field(g, state.a_imag, "A^I")
    cubic = 3.0 * (ar**2 + ai**2) if cfg.nonlinear else 0.0
    out = []
    for c, comp in enumerate((ar, ai)):
        rhs = d2_axis(comp, g, Y) - cubic * comp
        if xi is not None:
            rhs = rhs + cfg.noise_amplitude * xi[c]
        out.append(circulant_solve_x(1.0 - dT, -4.0 * dT, 0.0, comp + dT * rhs, g))
    n = state.step + 1
    for name, f in zip(("A^R", "A^I"), out):
        check_finite(f, BLOWUP_LIMIT, step=n, name=name)
    return GLState(out[0], out[1], n, n * dT)


def steps_for(times, delta):
    """Convert clock times to integer step counts; raise if any is off-lattice."""
    steps = []
    for t in times:
        n = round(t / delta)
        if t < 0 or not np.isclose(n * delta, t, rtol=1e-9, atol=1e-12):
            raise ClockMismatch(f"time {t!r} is not a multiple of the step {delta!r}")
        steps.append(int(n))
    return steps


def run_gl(cfg, initial, snapshots_at, registry=None, substeps=1, callback=None):
    """Iterate :func:`gl_step` and return the states at ``snapshots_at`` (slow times).

    With noise on, each step consumes ``substeps`` registry increments of size
    ``delta_T / substeps`` and sums them; ``substeps > 1`` lets this run share a
    finer Brownian path with a fast-clock solver.  ``callback(state)`` is called
    after every step and on the initial state.
    """
    targets = steps_for(snapshots_at, cfg.delta_T)
    if cfg.noise and registry is None:
        registry = BrownianRegistry(cfg.seed, cfg.m_r, cfg.m_i)
    state = GLState(np.array(initial[0], dtype=float), np.array(initial[1], dtype=float))
    check_field(cfg.grid, state.a_real, "A^R")
    check_field(cfg.grid, state.a_imag, "A^I")
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
        xi = None
        if cfg.noise:
            inc = registry.advance_many(cfg.delta_T / substeps, substeps)
            xi = assemble_xi_A(inc, cfg.grid, cfg.grid.half_len_x)
        state = gl_step(state, cfg, xi)
        if callback is not None:
            callback(state)
    return out

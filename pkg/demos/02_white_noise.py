"""Truncated space-time white noise on the two clocks.

One Brownian registry holds a path for every Fourier mode.  The amplitude
equation reads it on the slow clock (Xi_A), the pattern equation on the fast
clock t = T / eps^2 (Xi_u).
"""

import numpy as np

from shpattern.grid import Grid2D
from shpattern.noise import BrownianRegistry, assemble_xi_A, assemble_xi_u

L, eps = np.pi / 2, 0.25
a_grid = Grid2D.square(100, L)
u_grid = a_grid.scaled(1 / eps)

reg = BrownianRegistry(seed=1, m_r=10, m_i=10)
print("modes per part:", reg.n_modes)

# Slow clock: one increment per amplitude step.
dT = 1e-4
inc = reg.advance(dT)
xr, xi = assemble_xi_A(inc, a_grid, L)
# Pointwise std of one realisation versus the ensemble value sqrt(#modes / dT) / (2L).
print("Xi_A spread:", xr.std(), "expected about", np.sqrt(inc.gaussians[..., 0].size / dT) / (2 * L))

# Fast clock: an increment over eps^2 dt of slow time.
dt = 1e-3
inc_u = reg.advance(eps**2 * dt)
xu = assemble_xi_u(inc_u, u_grid, eps, L)
print("Xi_u is real:", xu.dtype, " mean", xu.mean(), " std", xu.std())

# Reproducibility: the same seed gives the same path.
again = BrownianRegistry(seed=1, m_r=10, m_i=10)
again.advance(dT)
again.advance(eps**2 * dt)
print("same path:", np.array_equal(again.values, reg.values))

# Increments over a window are the sum of finer increments.
fine = BrownianRegistry(seed=2, m_r=2, m_i=2).advance_many(dT / 8, 8)
print("8 sub-increments cover", fine.delta_slow, "of slow time")

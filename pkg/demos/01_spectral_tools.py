"""Fourier tools on the periodic cell-centred grid.

Run with ``python demos/01_spectral_tools.py``.
"""

import numpy as np

from shpattern.grid import Grid2D, d2_axis, lp_norm
from shpattern.spectral import (
    apply_x_operator,
    circulant_solve_x,
    eigenvalue,
    forward,
    galerkin_project,
    inverse,
    sobolev_norm,
)

L = np.pi / 2
grid = Grid2D.square(64, L)
xx, yy = grid.mesh()

# A smooth field plus a little roughness.
rng = np.random.default_rng(0)
f = np.cos(2 * xx) * np.sin(yy) + 0.05 * rng.standard_normal(grid.shape)

# Forward and inverse transforms are exact inverses on the grid.
c = forward(f, grid)
print("roundtrip error      ", np.max(np.abs(inverse(c).real - f)))

# Parseval: the mean square equals the weighted coefficient sum.
print("Parseval mismatch    ", abs(lp_norm(f) ** 2 - c.weight() * np.sum(np.abs(c.coeffs) ** 2)))
print("real field Hermitian ", c.is_hermitian())

# Galerkin projection onto |k| + |l| <= n removes the roughness.
for n in (2, 4, 8, 16):
    p = galerkin_project(f, grid, n)
    print(f"  n = {n:2d}: ||P_n f|| = {lp_norm(p):.4f}  (||f|| = {lp_norm(f):.4f})")

# The linear growth rates: only |k| near L/pi grows when eps > 0.
k = np.arange(0, 4)
print("growth rates lambda(k, 0), eps = 1:", eigenvalue(k, 0, 1.0, L))

# Sobolev norms weight high modes through the linear operator's symbol.
print("||f||_H1 =", sobolev_norm(f, grid, 1.0), " ||f||_H2 =", sobolev_norm(f, grid, 2.0))

# The implicit x-solves of both schemes are circulant, so the FFT inverts them.
a, b, cc = 1.001, 0.001, 0.001
v = circulant_solve_x(a, b, cc, f, grid)
print("circulant residual   ", np.max(np.abs(apply_x_operator(a, b, cc, v, grid) - f)))
print("d2_x of cos(2x) / cos(2x) near the centre:", (d2_axis(np.cos(2 * xx), grid, "x") / np.cos(2 * xx))[0, 0])

"""The Ginzburg-Landau amplitude equation from step initial data.

Writes PGM snapshots of A^R and A^I to ``demo_out/gl``.
"""

import os

import numpy as np

from shpattern import io
from shpattern.ansatz import build_initial_A
from shpattern.gl_solver import GLConfig, run_gl

out = os.path.join("demo_out", "gl")
os.makedirs(out, exist_ok=True)

for noise in (False, True):
    cfg = GLConfig(noise=noise, seed=0)
    a0 = build_initial_A(cfg.grid)
    states = run_gl(cfg, a0, [0.0, 0.1, 0.2])
    for s in states:
        mod = np.hypot(s.a_real, s.a_imag)
        print(f"noise={noise!s:5}  T={s.slow_time:.1f}  mean|A|={mod.mean():.4f}  max|A|={mod.max():.4f}")
        tag = "sto" if noise else "det"
        io.write_pgm(os.path.join(out, f"{tag}_AR_T{s.slow_time:.1f}.pgm"), s.a_real)
        io.write_pgm(os.path.join(out, f"{tag}_AI_T{s.slow_time:.1f}.pgm"), s.a_imag)

# Without noise, |A| relaxes towards the stable modulus 1/sqrt(3) away from the step fronts.
print("1/sqrt(3) =", 1 / np.sqrt(3))

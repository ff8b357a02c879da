"""
Experiment drivers behind the command line.

Every run writes into ``cfg.out``:

* ``manifest.txt`` -- written first with ``status = running`` and rewritten
  at the end with file checksums, wall-clock time and any abort record.
  Non-config lines are comments, so the manifest is itself a config file.
* ``snap_<clock>_<time>_<field>.raw`` and ``.pgm`` (+ ``.pgm.txt`` scale)
  where ``clock`` is ``T`` (slow) or ``t`` (fast).
* CSV time series and reports.
"""

import math
import os
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .. import __version__
from .. import io
from ..ansatz import AnsatzMap, ansatz_to_u, build_initial_A
from ..errors import BlowUp, ClockMismatch, ConfigError, GridMismatch
from ..gl_solver import GLConfig, run_gl, steps_for
from ..grid import Grid2D, lp_norm
from ..noise import BrownianRegistry, derived_seed
from ..ou_process import ou_state, ou_step_coupled, ou_step_exact, rate_variance, z_field
from ..sh_solver import SHConfig, run_sh
from .config import dump_config, load_config
from .metrics import approximation_error, dominant_x_wavenumber, energy_diagnostics

OU_SEED_OFFSET = 0x9E3779B9


class RecordingRegistry(BrownianRegistry):
    """Registry that keeps every increment it hands out (for ``save_noise``)."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.tape = []

    def advance(self, delta_slow):
        inc = super().advance(delta_slow)
        self.tape.append(inc)
        return inc


def make_registry(cfg):
    cls = RecordingRegistry if cfg.save_noise else BrownianRegistry
    return cls(cfg.seed, cfg.m_R, cfg.m_I)


@dataclass
class RunRecord:
    cfg: object
    out_dir: str
    files: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    status: str = "running"
    wall_clock: float = 0.0

    def path(self, name):
        return os.path.join(self.out_dir, name)

    def register(self, name):
        self.files[name] = io.sha256(self.path(name))

    def write_manifest(self):
        lines = [
            "# shpattern run manifest",
            f"# version = {__version__}",
            f"# status = {self.status}",
            f"# wall_clock_s = {self.wall_clock:.3f}",
        ]
        lines += [f"# note: {n}" for n in self.notes]
        text = "\n".join(lines) + "\n" + dump_config(self.cfg)
        text += "".join(f"# file {name} sha256 {digest}\n" for name, digest in sorted(self.files.items()))
        tmp = self.path("manifest.txt.tmp")
        with open(tmp, "w") as fh:
            fh.write(text)
        os.replace(tmp, self.path("manifest.txt"))


def _fmt_time(t):
    return repr(float(t))


def _snapshot(rec, clock, t, name, values):
    stem = f"snap_{clock}_{_fmt_time(t)}_{name}"
    io.write_raw(rec.path(stem + ".raw"), values)
    io.write_pgm(rec.path(stem + ".pgm"), values)
    for suffix in (".raw", ".pgm", ".pgm.txt"):
        rec.register(stem + suffix)


def _csv(rec, name, header, rows):
    io.write_csv(rec.path(name), header, rows)
    rec.register(name)


def _save_tape(rec, registry, name="noise_bm.raw"):
    if isinstance(registry, RecordingRegistry):
        io.write_tape(rec.path(name), registry.tape, registry.m_r, registry.m_i)
        rec.register(name)


def amplitude_grid(cfg):
    return Grid2D(cfg.n_x, cfg.n_y, cfg.L, cfg.L)


def gl_config(cfg, noise=None):
    return GLConfig(
        grid=amplitude_grid(cfg),
        delta_T=cfg.delta_T,
        noise=cfg.noise if noise is None else noise,
        m_r=cfg.m_R,
        m_i=cfg.m_I,
        seed=cfg.seed,
        noise_amplitude=cfg.noise_amplitude,
    )


def sh_config(cfg, delta_t=None, mode="direct"):
    return SHConfig(
        grid=amplitude_grid(cfg).scaled(1.0 / cfg.eps),
        delta_t=cfg.delta_t if delta_t is None else delta_t,
        eps=cfg.eps,
        half_len=cfg.L,
        noise=cfg.noise,
        m_r=cfg.m_R,
        m_i=cfg.m_I,
        seed=cfg.seed,
        mode=mode,
    )


def _gl_series(cfg, rows):
    def cb(state):
        if state.step % cfg.series_every == 0:
            mod = np.sqrt(state.a_real**2 + state.a_imag**2)
            rows.append((state.step, state.slow_time, lp_norm(mod, 2), float(mod.max())))

    return cb


def _sh_series(cfg, rows, shift=None):
    def cb(state):
        if state.step % cfg.series_every == 0:
            u = state.u if shift is None else state.u + shift(state.step)
            rows.append((state.step, state.fast_time, lp_norm(u, 2), lp_norm(u, 4), float(np.abs(u).max())))

    return cb


GL_SERIES = ("step", "T", "l2_A", "max_A")
SH_SERIES = ("step", "t", "l2_u", "l4_u", "max_u")


def simulate_gl(cfg, rec):
    gcfg = gl_config(cfg)
    registry = make_registry(cfg) if cfg.noise else None
    rows = []
    try:
        states = run_gl(gcfg, build_initial_A(gcfg.grid), cfg.snapshots, registry=registry, callback=_gl_series(cfg, rows))
    finally:
        _csv(rec, "series.csv", GL_SERIES, rows)
    for s in states:
        _snapshot(rec, "T", s.slow_time, "AR", s.a_real)
        _snapshot(rec, "T", s.slow_time, "AI", s.a_imag)
    if registry is not None:
        _save_tape(rec, registry)
    return states


class CoupledZ:
    """Stochastic convolution driven by the same registry as a direct run.

    ``__call__(n)`` returns Z at fast step ``n``; steps must be requested in
    non-decreasing order.
    """

    def __init__(self, cfg, registry, grid, delta_t):
        self.grid = grid
        self.delta_t = delta_t
        self.registry = registry
        self.state = ou_state(cfg.m_R, cfg.m_I, cfg.L, 1.0, seed=derived_seed(cfg.seed, OU_SEED_OFFSET), grid=grid)
        self.step = 0
        self.current = z_field(self.state, grid)

    def __call__(self, n):
        if n < self.step:
            raise ValueError("Z requested out of order")
        while self.step < n:
            ou_step_coupled(self.state, self.registry.advance(self.delta_t))
            self.step += 1
            self.current = z_field(self.state, self.grid)
        return self.current


def simulate_sh(cfg, rec):
    amap = AnsatzMap.from_amplitude_grid(amplitude_grid(cfg), cfg.eps)
    u0 = ansatz_to_u(*build_initial_A(amap.a_grid), amap)
    rows = []
    if cfg.sh_mode == "shifted":
        if cfg.eps != 1.0:
            raise ConfigError("shifted mode solves the eps = 1 equation; set eps = 1")
        scfg = sh_config(cfg, mode="shifted")
        registry = make_registry(cfg) if cfg.noise else None
        zero = np.zeros(scfg.grid.shape)
        zsrc = CoupledZ(cfg, registry, scfg.grid, scfg.delta_t) if cfg.noise else (lambda n: zero)
        wanted = set(steps_for(cfg.snapshots, scfg.delta_t))
        zsnap = {0: zsrc(0)}
        series = _sh_series(cfg, rows, zsrc)

        def cb(state):
            z = zsrc(state.step)
            if state.step in wanted:
                zsnap[state.step] = z
            series(state)

        try:
            states = run_sh(scfg, u0, cfg.snapshots, z_source=zsrc, callback=cb)
        finally:
            _csv(rec, "series.csv", SH_SERIES, rows)
        energy = []
        for s in states:
            z = zsnap[s.step]
            _snapshot(rec, "t", s.fast_time, "v", s.u)
            _snapshot(rec, "t", s.fast_time, "Z", z)
            _snapshot(rec, "t", s.fast_time, "u", s.u + z)
            e = energy_diagnostics(s.u, scfg.grid)
            energy.append((s.fast_time, e.l2sq, e.w12sq, e.l4quad))
    else:
        scfg = sh_config(cfg)
        registry = make_registry(cfg) if cfg.noise else None
        try:
            states = run_sh(scfg, u0, cfg.snapshots, registry=registry, callback=_sh_series(cfg, rows))
        finally:
            _csv(rec, "series.csv", SH_SERIES, rows)
        energy = []
        for s in states:
            _snapshot(rec, "t", s.fast_time, "u", s.u)
            _snapshot(rec, "t", s.fast_time, "mu", s.mu)
            e = energy_diagnostics(s.u, scfg.grid)
            energy.append((s.fast_time, e.l2sq, e.w12sq, e.l4quad))
    _csv(rec, "energy.csv", ("t", "l2sq", "w12sq", "l4quad"), energy)
    if registry is not None:
        _save_tape(rec, registry)
    return states


def convert(cfg, rec):
    if not (cfg.a_real_file and cfg.a_imag_file):
        raise ConfigError("convert needs a_real_file and a_imag_file")
    a_real, a_imag = io.read_raw(cfg.a_real_file), io.read_raw(cfg.a_imag_file)
    amap = AnsatzMap.from_amplitude_grid(amplitude_grid(cfg), cfg.eps)
    if a_real.shape != amap.a_grid.shape or a_imag.shape != amap.a_grid.shape:
        raise GridMismatch(f"dumps have shapes {a_real.shape}, {a_imag.shape}; config expects {amap.a_grid.shape}")
    u = ansatz_to_u(a_real, a_imag, amap)
    io.write_raw(rec.path("u.raw"), u)
    io.write_pgm(rec.path("u.pgm"), u)
    for name in ("u.raw", "u.pgm", "u.pgm.txt"):
        rec.register(name)
    return u


def matched_delta_t(cfg):
    """Fast step for the comparison, adjusted downward when needed.

    Shared noise needs ``eps^2 dt`` to divide ``delta_T``; without noise it is
    enough that every ``T / eps^2`` is a multiple of ``dt``.
    """
    eps2 = cfg.eps**2
    steps_for(cfg.snapshots, cfg.delta_T)
    if not cfg.noise:
        try:
            steps_for([t / eps2 for t in cfg.snapshots], cfg.delta_t)
            return cfg.delta_t, 1
        except ClockMismatch:
            pass
    ratio = cfg.delta_T / (eps2 * cfg.delta_t)
    r = max(1, math.ceil(ratio - 1e-9))
    return cfg.delta_T / (eps2 * r), r


REPORT = (
    "T", "t", "abs_l2", "rel_l2", "max_abs", "k_direct", "k_ansatz",
    "l2sq_direct", "w12sq_direct", "l4quad_direct", "l2sq_ansatz", "w12sq_ansatz", "l4quad_ansatz",
)


def compare(cfg, rec):
    """Amplitude equation + ansatz versus direct simulation on one Brownian path."""
    dt, r = matched_delta_t(cfg)
    if dt != cfg.delta_t:
        rec.notes.append(f"delta_t adjusted from {cfg.delta_t!r} to {dt!r} for clock alignment")
        rec.cfg = replace(rec.cfg, delta_t=dt)
        rec.write_manifest()
    gcfg = gl_config(cfg)
    scfg = sh_config(cfg, delta_t=dt)
    amap = AnsatzMap.from_amplitude_grid(gcfg.grid, cfg.eps)
    a0 = build_initial_A(amap.a_grid)
    u0 = ansatz_to_u(*a0, amap)

    gl_rows, sh_rows = [], []
    reg_gl = make_registry(cfg) if cfg.noise else None
    reg_sh = BrownianRegistry(cfg.seed, cfg.m_R, cfg.m_I) if cfg.noise else None
    try:
        gl_states = run_gl(gcfg, a0, cfg.snapshots, registry=reg_gl, substeps=r, callback=_gl_series(cfg, gl_rows))
        fast_times = [t / cfg.eps**2 for t in cfg.snapshots]
        sh_states = run_sh(scfg, u0, [n * dt for n in steps_for(fast_times, dt)], registry=reg_sh, callback=_sh_series(cfg, sh_rows))
    finally:
        _csv(rec, "series_gl.csv", GL_SERIES, gl_rows)
        _csv(rec, "series_sh.csv", SH_SERIES, sh_rows)

    rows = []
    for T, g, s in zip(cfg.snapshots, gl_states, sh_states):
        ua = ansatz_to_u(g.a_real, g.a_imag, amap)
        ud = s.u
        ed, ea = energy_diagnostics(ud, scfg.grid), energy_diagnostics(ua, scfg.grid)
        rows.append((
            T, s.fast_time, lp_norm(ud - ua, 2), approximation_error(ud, ua, 2), float(np.abs(ud - ua).max()),
            dominant_x_wavenumber(ud, scfg.grid), dominant_x_wavenumber(ua, scfg.grid),
            ed.l2sq, ed.w12sq, ed.l4quad, ea.l2sq, ea.w12sq, ea.l4quad,
        ))
        _snapshot(rec, "T", T, "AR", g.a_real)
        _snapshot(rec, "T", T, "AI", g.a_imag)
        _snapshot(rec, "T", T, "u_ansatz", ua)
        _snapshot(rec, "T", T, "u_direct", ud)
    _csv(rec, "report.csv", REPORT, rows)
    if reg_gl is not None:
        _save_tape(rec, reg_gl)
    return rows


OU_COLUMNS = ("mode_k", "mode_l", "lambda", "t", "empirical_var", "exact_var", "z_score")


def ou_stats(cfg, rec):
    """Empirical versus exact per-mode variance of the stochastic convolution."""
    state = ou_state(cfg.m_R, cfg.m_I, cfg.L, cfg.ou_eps, seed=cfg.seed, batch=cfg.replicas)
    index = []
    for k, l in cfg.ou_modes:
        if abs(k) > cfg.m_R or not 0 <= l <= cfg.m_I:
            raise ConfigError(f"mode ({k}, {l}) is not a driver mode (need |k| <= m_R, 0 <= l <= m_I)")
        index.append((k, l, k + cfg.m_R, l))
    rows = []
    now = 0.0
    for t in sorted(cfg.snapshots):
        if t > now:
            ou_step_exact(state, t - now)
            now = t
        for k, l, i, j in index:
            lam = float(state.lam[i, j])
            parts = np.concatenate([state.y[:, i, j].real, state.y[:, i, j].imag])
            emp = float(np.mean(parts**2))
            exact = float(rate_variance(lam, t))
            se = exact * math.sqrt(2.0 / parts.size)
            z = (emp - exact) / se if se > 0 else 0.0
            rows.append((k, l, lam, t, emp, exact, z))
    _csv(rec, "ou_stats.csv", OU_COLUMNS, rows)
    return rows


RUNNERS = {
    "simulate-gl": simulate_gl,
    "simulate-sh": simulate_sh,
    "convert": convert,
    "compare": compare,
    "ou-stats": ou_stats,
}


def run_experiment(cfg):
    """Run ``cfg.experiment``, writing outputs and the manifest into ``cfg.out``.

    Returns the :class:`RunRecord`; solver errors propagate after the manifest
    has been annotated.
    """
    os.makedirs(cfg.out, exist_ok=True)
    rec = RunRecord(cfg, cfg.out)
    rec.write_manifest()
    start = time.perf_counter()
    try:
        rec.result = RUNNERS[cfg.experiment](cfg, rec)
        rec.status = "complete"
    except BlowUp as exc:
        rec.status = "blowup"
        rec.notes.append(f"abort: {exc}")
        raise
    except Exception as exc:
        rec.status = "failed"
        rec.notes.append(f"abort: {type(exc).__name__}: {exc}")
        raise
    finally:
        rec.wall_clock = time.perf_counter() - start
        rec.write_manifest()
    return rec


def read_manifest_files(path):
    files = {}
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if len(parts) == 5 and parts[:2] == ["#", "file"] and parts[3] == "sha256":
                files[parts[2]] = parts[4]
    return files


def replay(manifest_path, out_dir):
    """Rerun a manifest into ``out_dir``; return the names whose checksums differ."""
    cfg = load_config(manifest_path, out=out_dir)
    expected = read_manifest_files(manifest_path)
    rec = run_experiment(cfg)
    names = set(expected) | set(rec.files)
    return sorted(n for n in names if expected.get(n) != rec.files.get(n))

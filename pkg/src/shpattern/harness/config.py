"""
Flat ``key = value`` run configuration.

Lines starting with ``#`` are comments; keys must be :class:`RunConfig`
field names.  A run manifest is itself a valid config file, which is how a
run is replayed.
"""

import math
from dataclasses import dataclass, fields, replace

from ..errors import ConfigError

EXPERIMENTS = ("simulate-gl", "simulate-sh", "convert", "compare", "ou-stats")

DEFAULT_SNAPSHOTS = {
    "simulate-gl": (0.0, 0.1, 0.2),
    "simulate-sh": (0.0, 1.6, 3.2),
    "compare": (0.0, 0.1, 0.2),
    "ou-stats": (0.1, 1.0),
    "convert": (),
}


@dataclass
class RunConfig:
    experiment: str = "compare"
    L: float = math.pi / 2
    eps: float = 0.25
    n_x: int = 100
    n_y: int = 100
    delta_T: float = 1e-4
    delta_t: float = 1e-3
    m_R: int = 10
    m_I: int = 10
    seed: int = 0
    noise: bool = True
    snapshots: tuple = None
    out: str = "out"
    sh_mode: str = "direct"
    noise_amplitude: float = 1.0
    series_every: int = 1
    save_noise: bool = False
    replicas: int = 2000
    ou_eps: float = 1.0
    ou_modes: tuple = ((0, 0), (1, 0), (2, 1))
    a_real_file: str = ""
    a_imag_file: str = ""

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.snapshots is None:
            self.snapshots = DEFAULT_SNAPSHOTS[self.experiment]
        self.snapshots = tuple(float(t) for t in self.snapshots)
        checks = [
            (self.L > 0, "L must be positive"),
            (0 < self.eps <= 1, "eps must lie in (0, 1]"),
            (self.n_x >= 4 and self.n_y >= 4, "grid needs at least 4 cells per direction"),
            (0 < self.delta_T < 1, "delta_T must lie in (0, 1)"),
            (self.delta_t > 0, "delta_t must be positive"),
            (self.m_R >= 0 and self.m_I >= 0, "truncation numbers must be non-negative"),
            (self.sh_mode in ("direct", "shifted"), "sh_mode must be direct or shifted"),
            (self.series_every >= 1, "series_every must be >= 1"),
            (self.replicas >= 2, "replicas must be >= 2"),
            (all(t >= 0 for t in self.snapshots), "snapshot times must be non-negative"),
        ]
        for ok, msg in checks:
            if not ok:
                raise ConfigError(msg)


_FIELDS = {f.name: f for f in fields(RunConfig)}


def _parse_bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_value(key, text):
    text = text.strip()
    if key == "snapshots":
        return tuple(float(v) for v in text.split(",") if v.strip())
    if key == "ou_modes":
        return tuple(tuple(int(x) for x in item.split(":")) for item in text.split(",") if item.strip())
    kind = type(getattr(RunConfig(), key))
    if kind is bool:
        return _parse_bool(text)
    if kind is int:
        return int(text)
    if kind is float:
        return float(text)
    return text


def format_value(key, value):
    if key == "snapshots":
        return ",".join(repr(float(t)) for t in value)
    if key == "ou_modes":
        return ",".join(f"{k}:{l}" for k, l in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_config(text, **overrides):
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in _FIELDS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = _parse_value(key, val)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)


def load_config(path, **overrides):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, **overrides)


def dump_config(cfg):
    return "".join(f"{f} = {format_value(f, getattr(cfg, f))}\n" for f in _FIELDS)


def with_updates(cfg, **changes):
    return replace(cfg, **changes)

"""
Raw field dumps, Brownian-increment tapes, PGM renders and CSV series.

Raw field dump: a 32-byte ASCII header ``"SHPAT1 <n_x> <n_y>"`` padded with
spaces and terminated by ``"\\n"`` in byte 31, followed by ``n_x * n_y``
little-endian float64 values in row-major order (q outer, p inner).

Brownian tape: 32-byte header ``"SHPAT1-BM <m_R> <m_I> <count>"`` (same
padding), then per increment one float64 ``delta_slow`` followed by the
``(2 m_R + 1) * (2 m_I + 1) * 2`` Gaussian increments in draw order.
"""

import csv
import hashlib

import numpy as np

from .noise import NoiseIncrement

HEADER_LEN = 32
_F8 = np.dtype("<f8")


def _header(text):
    raw = text.encode("ascii")
    if len(raw) > HEADER_LEN - 1:
        raise ValueError(f"header {text!r} does not fit in {HEADER_LEN} bytes")
    return raw.ljust(HEADER_LEN - 1, b" ") + b"\n"


def _read_header(buf, magic):
    head = buf[:HEADER_LEN].decode("ascii").split()
    if not head or head[0] != magic:
        raise ValueError(f"not a {magic} file")
    return [int(v) for v in head[1:]]


def write_raw(path, field):
    field = np.asarray(field, dtype=float)
    n_y, n_x = field.shape
    with open(path, "wb") as fh:
        fh.write(_header(f"SHPAT1 {n_x} {n_y}"))
        fh.write(field.astype(_F8).tobytes(order="C"))


def read_raw(path):
    with open(path, "rb") as fh:
        buf = fh.read()
    n_x, n_y = _read_header(buf, "SHPAT1")
    data = np.frombuffer(buf, dtype=_F8, offset=HEADER_LEN)
    if data.size != n_x * n_y:
        raise ValueError(f"{path}: expected {n_x * n_y} values, found {data.size}")
    return data.reshape(n_y, n_x).astype(float)


def write_tape(path, increments, m_r, m_i):
    increments = list(increments)
    with open(path, "wb") as fh:
        fh.write(_header(f"SHPAT1-BM {m_r} {m_i} {len(increments)}"))
        for inc in increments:
            fh.write(np.asarray([inc.delta_slow], dtype=_F8).tobytes())
            fh.write(inc.gaussians.astype(_F8).tobytes(order="C"))


def read_tape(path):
    with open(path, "rb") as fh:
        buf = fh.read()
    m_r, m_i, count = _read_header(buf, "SHPAT1-BM")
    k_r, k_i = np.arange(-m_r, m_r + 1), np.arange(-m_i, m_i + 1)
    block = 1 + k_r.size * k_i.size * 2
    data = np.frombuffer(buf, dtype=_F8, offset=HEADER_LEN).reshape(count, block)
    return [NoiseIncrement(float(row[0]), row[1:].reshape(k_r.size, k_i.size, 2).copy(), k_r, k_i) for row in data]


def write_pgm(path, field):
    """8-bit grayscale render with linear min-max scaling; top row is the largest y.

    The scaling is written to ``<path>.txt``.
    """
    field = np.asarray(field, dtype=float)
    lo, hi = float(field.min()), float(field.max())
    span = hi - lo if hi > lo else 1.0
    img = np.round((field - lo) / span * 255.0).astype(np.uint8)[::-1]
    n_y, n_x = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{n_x} {n_y}\n255\n".encode("ascii"))
        fh.write(img.tobytes())
    with open(str(path) + ".txt", "w") as fh:
        fh.write(f"min = {lo!r}\nmax = {hi!r}\nscale = linear\ntop_row = max_y\n")


def write_csv(path, header, rows):
    """Rows of numbers; floats are written with ``repr`` so they parse back exactly."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])


def sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()

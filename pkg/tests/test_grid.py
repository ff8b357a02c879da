import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shpattern.errors import BlowUp, GridMismatch
from shpattern.grid import X, Y, Grid2D, check_field, check_finite, d2_axis, d2_symbol, lp_norm, wrap_index


@pytest.mark.parametrize("i, n, expected", [(-1, 100, 99), (100, 100, 0), (57, 100, 57)])
def test_wrap_index_examples(i, n, expected):
    assert wrap_index(i, n) == expected


@given(i=st.integers(-1000, 1000), n=st.sampled_from([1, 2, 7, 100]))
def test_wrap_index_periodic(i, n):
    assert wrap_index(i + n, n) == wrap_index(i, n)
    assert 0 <= wrap_index(i, n) < n


def test_grid_geometry():
    g = Grid2D(10, 4, 2.0, 1.0)
    assert g.dx == 0.4 and g.dy == 0.5
    assert g.x[0] == pytest.approx(-2.0 + 0.2)
    assert g.y[-1] == pytest.approx(1.0 - 0.25)
    xx, yy = g.mesh()
    assert xx.shape == g.shape == (4, 10)
    assert np.all(xx[0] == g.x) and np.all(yy[:, 0] == g.y)


def test_grid_rejects_bad_sizes():
    with pytest.raises(ValueError):
        Grid2D(0, 4, 1.0, 1.0)
    with pytest.raises(ValueError):
        Grid2D(4, 4, -1.0, 1.0)


def test_d2_constant_is_zero(grid):
    f = grid.full(0.7)
    for axis in (X, Y):
        assert np.max(np.abs(d2_axis(f, grid, axis))) <= 1e-13


def test_d2_cosine_eigenfield(default_grid):
    g = default_grid
    p = np.arange(g.n_x)
    f = np.tile(np.cos(2 * np.pi * p / g.n_x), (g.n_y, 1))
    factor = 2 * (np.cos(2 * np.pi / g.n_x) - 1) / g.dx**2
    out = d2_axis(f, g, X)
    # direct stencil summation at three points
    for q, pp in [(0, 0), (5, 37), (99, 99)]:
        left, right = f[q, (pp - 1) % g.n_x], f[q, (pp + 1) % g.n_x]
        expected = (left + right - 2 * f[q, pp]) / g.dx**2
        assert out[q, pp] == pytest.approx(expected, rel=1e-12, abs=1e-9)
        assert out[q, pp] == pytest.approx(factor * f[q, pp], rel=1e-9, abs=1e-9)


def test_d2_unit_spike(grid):
    f = grid.zeros()
    q0, p0 = 3, 0
    f[q0, p0] = 1.0
    out = d2_axis(f, grid, X)
    expected = grid.zeros()
    expected[q0, p0] = -2 / grid.dx**2
    expected[q0, 1] = 1 / grid.dx**2
    expected[q0, grid.n_x - 1] = 1 / grid.dx**2
    np.testing.assert_array_equal(out, expected)
    out_y = d2_axis(f, grid, Y)
    assert out_y[q0 - 1, p0] == out_y[q0 + 1, p0] == pytest.approx(1 / grid.dy**2)


def test_d2_symbol_matches_stencil(grid):
    sig = d2_symbol(grid.n_x, grid.dx)
    for k in range(grid.n_x):
        f = np.tile(np.exp(2j * np.pi * k * np.arange(grid.n_x) / grid.n_x), (grid.n_y, 1))
        np.testing.assert_allclose(d2_axis(f, grid, X), sig[k] * f, atol=1e-10)


def test_d2_linear_and_sums_to_zero(grid, rng):
    f, g = rng.standard_normal((2,) + grid.shape)
    a, b = 1.7, -0.4
    for axis in (X, Y):
        lhs = d2_axis(a * f + b * g, grid, axis)
        rhs = a * d2_axis(f, grid, axis) + b * d2_axis(g, grid, axis)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(rhs))
        assert abs(d2_axis(f, grid, axis).sum()) <= 1e-10 * np.abs(d2_axis(f, grid, axis)).sum()


def test_lp_norm_examples(default_grid):
    g = default_grid
    for p in (1, 2, 3.5, 4):
        assert lp_norm(g.full(1.0), p) == pytest.approx(1.0, rel=1e-14)
    f = np.tile(np.cos(2 * np.pi * np.arange(g.n_x) / g.n_x), (g.n_y, 1))
    assert lp_norm(f, 2) == pytest.approx(1 / np.sqrt(2), rel=1e-12)
    spike = g.zeros()
    spike[40, 7] = -3.0
    assert lp_norm(spike, 2) == pytest.approx(3.0 / 100, rel=1e-14)
    with pytest.raises(ValueError):
        lp_norm(f, 0.5)


@settings(max_examples=50)
@given(alpha=st.floats(-50, 50, allow_nan=False), p=st.sampled_from([1.0, 2.0, 3.0, 4.0]))
def test_lp_norm_homogeneous(alpha, p):
    f = np.random.default_rng(3).standard_normal((8, 9))
    assert lp_norm(alpha * f, p) == pytest.approx(abs(alpha) * lp_norm(f, p), rel=1e-13, abs=1e-300)


def test_check_helpers(grid):
    with pytest.raises(GridMismatch):
        check_field(grid, np.zeros((3, 3)))
    with pytest.raises(BlowUp):
        check_finite(np.array([1.0, np.nan]))
    with pytest.raises(BlowUp) as info:
        check_finite(np.array([2e6]), limit=1e6, step=17)
    assert info.value.step == 17

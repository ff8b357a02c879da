import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from shpattern.errors import SingularOperator
from shpattern.grid import X, Grid2D, d2_axis, lp_norm
from shpattern.spectral import (
    apply_x_operator,
    basis_function,
    circulant_solve_x,
    eigenvalue,
    forward,
    galerkin_project,
    inverse,
    sobolev_multiplier,
    sobolev_norm,
)


@pytest.mark.parametrize(
    "k, l, eps, L, expected",
    [(0, 0, 1.0, np.pi / 2, 0.0), (1, 0, 0.0, np.pi, 0.0), (2, 1, 1.0, np.pi / 2, -228.0)],
)
def test_eigenvalue_examples(k, l, eps, L, expected):
    assert eigenvalue(k, l, eps, L) == pytest.approx(expected, abs=1e-12)


@given(k=st.integers(-20, 20), l=st.integers(-20, 20), eps=st.floats(0, 1), L=st.floats(0.5, 10))
def test_eigenvalue_even(k, l, eps, L):
    v = eigenvalue(k, l, eps, L)
    assert eigenvalue(-k, l, eps, L) == v
    assert eigenvalue(k, -l, eps, L) == v


def test_eigenvalue_nonpositive_at_eps0():
    L = np.pi
    k, l = np.meshgrid(np.arange(-15, 16), np.arange(-15, 16))
    lam = eigenvalue(k, l, 0.0, L)
    assert np.all(lam <= 0)
    zero = np.isclose(lam, 0.0, atol=1e-14)
    crit = np.isclose((np.pi / L) ** 2 * k**2, 1.0) & (l == 0)
    np.testing.assert_array_equal(zero, crit)


def test_forward_single_mode(grid):
    for k0, l0 in [(0, 0), (2, -1), (-3, 4), (7, 5)]:
        c = forward(basis_function(grid, k0, l0), grid)
        # e_{k0,l0} has unit normalised norm squared 1/W, so <e, e> = 1/W
        expected = 1.0 / c.weight()
        assert c.at(k0, l0) == pytest.approx(expected, rel=1e-12)
        mask = np.ones(grid.shape, bool)
        mask[l0 % grid.n_y, k0 % grid.n_x] = False
        assert np.max(np.abs(c.coeffs[mask])) < 1e-14


def test_forward_matches_direct_quadrature(grid, rng):
    f = rng.standard_normal(grid.shape)
    c = forward(f, grid)
    for k, l in [(1, 2), (-4, 0), (3, -5)]:
        direct = np.mean(f * np.conj(basis_function(grid, k, l)))
        assert c.at(k, l) == pytest.approx(direct, rel=1e-12, abs=1e-14)


def test_roundtrip_and_parseval(grid, rng):
    f = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    c = forward(f, grid)
    back = inverse(c)
    assert np.max(np.abs(back - f)) <= 1e-10 * np.max(np.abs(f))
    lhs = np.mean(np.abs(f) ** 2)
    rhs = c.weight() * np.sum(np.abs(c.coeffs) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_inverse_is_weighted_basis_sum(rng):
    g = Grid2D(6, 5, 1.0, 2.0)
    f = rng.standard_normal(g.shape)
    c = forward(f, g)
    total = sum(
        c.weight() * c.at(k, l) * basis_function(g, k, l) for k in c.k for l in c.l
    )
    np.testing.assert_allclose(total, f, atol=1e-12)


def test_real_field_hermitian(grid, rng):
    c = forward(rng.standard_normal(grid.shape), grid)
    assert c.is_hermitian()
    c2 = forward(rng.standard_normal(grid.shape) + 0.3j, grid)
    assert not c2.is_hermitian()


def test_galerkin_projection(grid, rng):
    f = rng.standard_normal(grid.shape)
    p5 = galerkin_project(f, grid, 5)
    np.testing.assert_allclose(galerkin_project(p5, grid, 5), p5, atol=1e-12)
    full = galerkin_project(f, grid, grid.n_x // 2 + grid.n_y // 2)
    np.testing.assert_allclose(full, f, atol=1e-12)
    assert lp_norm(p5) <= lp_norm(f) + 1e-12
    e33 = basis_function(grid, 3, 3)
    assert np.max(np.abs(galerkin_project(e33, grid, 5))) < 1e-13
    np.testing.assert_allclose(galerkin_project(e33, grid, 6), e33, atol=1e-13)


def test_sobolev_s0_is_lp(grid, rng):
    f = rng.standard_normal(grid.shape)
    for p in (1, 2, 4):
        assert sobolev_norm(f, grid, 0.0, p) == pytest.approx(lp_norm(f, p), rel=1e-12)


def test_sobolev_single_real_mode():
    g = Grid2D.square(32, np.pi / 2)
    for k, l, s in [(1, 0, 1.0), (2, 3, 2 / 3), (0, 2, -1.0)]:
        f = basis_function(g, k, l).real
        mult = ((1 - (np.pi / g.half_len_x) ** 2 * k**2) ** 2 + (np.pi / g.half_len_y) ** 2 * l**2 + 1) ** (s / 2)
        assert sobolev_norm(f, g, s, 2) == pytest.approx(lp_norm(f, 2) * mult, rel=1e-12)


def test_sobolev_s1_coefficient_oracle(grid, rng):
    f = rng.standard_normal(grid.shape)
    c = forward(f, grid)
    # independent evaluation: sum |c|^2 W (1 - lambda_{k,l,0}) from the eigenvalue formula
    kk, ll = np.meshgrid(c.k, c.l)
    # non-square grid: evaluate the multiplier per axis
    qx2, qy2 = (np.pi / grid.half_len_x) ** 2, (np.pi / grid.half_len_y) ** 2
    weights = (1 - qx2 * kk**2) ** 2 + qy2 * ll**2 + 1
    oracle = np.sqrt(c.weight() * np.sum(np.abs(c.coeffs) ** 2 * weights))
    assert sobolev_norm(f, grid, 1.0, 2) == pytest.approx(oracle, rel=1e-12)
    sq = Grid2D.square(16, 1.1)
    f = rng.standard_normal(sq.shape)
    c = forward(f, sq)
    kk, ll = np.meshgrid(c.k, c.l)
    oracle = np.sqrt(c.weight() * np.sum(np.abs(c.coeffs) ** 2 * (1 - eigenvalue(kk, ll, 0.0, 1.1))))
    assert sobolev_norm(f, sq, 1.0, 2) == pytest.approx(oracle, rel=1e-12)


def test_sobolev_monotone_in_s(grid, rng):
    f = rng.standard_normal(grid.shape)
    vals = [sobolev_norm(f, grid, s, 2) for s in (-1, 0, 2 / 3, 1)]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
    assert np.all(sobolev_multiplier(grid, 1.0) >= 1.0)


def _dense_operator(n, h, a, b, c):
    d2 = (np.roll(np.eye(n), 1, axis=1) + np.roll(np.eye(n), -1, axis=1) - 2 * np.eye(n)) / h**2
    return a * np.eye(n) + b * d2 + c * d2 @ d2


def test_circulant_identity_and_constants(grid, rng):
    r = rng.standard_normal(grid.shape)
    np.testing.assert_allclose(circulant_solve_x(1.0, 0.0, 0.0, r, grid), r, atol=1e-14)
    const = grid.full(0.8)
    for a, b, c in [(2.0, -0.3, 0.05), (1.0, 5.0, 1.0), (-3.0, 0.0, 0.0)]:
        np.testing.assert_allclose(circulant_solve_x(a, b, c, const, grid), 0.8 / a, rtol=1e-13)


def test_circulant_dense_lu_oracle(rng):
    g = Grid2D(8, 1, 1.0, 1.0)
    rhs = rng.standard_normal(g.shape)
    a, b, c = 2.0, -0.3, 0.05
    lu = scipy.linalg.lu_factor(_dense_operator(8, g.dx, a, b, c))
    expected = scipy.linalg.lu_solve(lu, rhs[0])
    got = circulant_solve_x(a, b, c, rhs, g)[0]
    assert np.max(np.abs(got - expected)) <= 1e-10 * np.max(np.abs(expected))


def test_circulant_inverts_explicit_operator(grid, rng):
    v = rng.standard_normal(grid.shape)
    for a, b, c in [(1.001, 1e-3, 1e-3), (0.9999, -4e-4, 0.0), (3.0, 0.5, 0.2)]:
        back = circulant_solve_x(a, b, c, apply_x_operator(a, b, c, v, grid), grid)
        assert np.max(np.abs(back - v)) <= 1e-10 * np.max(np.abs(v))
    vc = v + 1j * rng.standard_normal(grid.shape)
    back = circulant_solve_x(2.0, 0.1, 0.1, apply_x_operator(2.0, 0.1, 0.1, vc, grid), grid)
    assert np.max(np.abs(back - vc)) <= 1e-10


def test_circulant_singular(grid):
    with pytest.raises(SingularOperator):
        circulant_solve_x(0.0, 1.0, 0.0, grid.zeros(), grid)
    with pytest.raises(SingularOperator):
        circulant_solve_x(0.0, 0.0, 0.0, grid.zeros(), grid)


def test_apply_x_operator_is_stencil(grid, rng):
    v = rng.standard_normal(grid.shape)
    d2 = d2_axis(v, grid, X)
    np.testing.assert_allclose(apply_x_operator(1.0, 2.0, 3.0, v, grid), v + 2 * d2 + 3 * d2_axis(d2, grid, X))

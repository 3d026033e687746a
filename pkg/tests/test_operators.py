"""Differential operators against closed forms and finite differences."""

import numpy as np
import pytest

from nullcone import (
    CompatibilityError,
    build_grid,
    curl_sphere,
    div_sphere,
    div_sym,
    grad_sphere,
    integrate,
    laplacian_sphere,
    poisson_solve_sphere,
    random_bandlimited,
    ylm_field,
)
from nullcone.fields import Covector, SymTensor
from nullcone.sphere import hessian, lie_metric, vec_synthesize

from oracles import fd_div_sym, fd_gradient, real_ylm_reference


def _mesh(grid):
    th = grid.theta[:, None] * np.ones(grid.nphi)[None, :]
    ph = np.ones(grid.ntheta)[:, None] * grid.phi[None, :]
    return th, ph


def test_grad_of_x3():
    grid = build_grid(16)
    g = grad_sphere(grid, grid.x3)
    assert np.max(np.abs(g.c1 + grid.sin_theta[:, None])) < 1e-12
    assert np.max(np.abs(g.c2)) < 1e-12


def test_grad_of_constant():
    grid = build_grid(8)
    g = grad_sphere(grid, np.full((grid.ntheta, grid.nphi), 2.5))
    assert g.max_norm() < 1e-13


def test_grad_matches_finite_differences():
    grid = build_grid(32)
    th, ph = _mesh(grid)
    field = ylm_field(grid, 5, 3)
    fn = lambda t, p: real_ylm_reference(5, 3, t, p)
    d1, d2 = fd_gradient(fn, th, ph)
    g = grad_sphere(grid, field)
    assert np.max(np.abs(g.c1 - d1)) < 1e-8
    assert np.max(np.abs(g.c2 - d2)) < 1e-8


def test_laplacian_eigenvalue():
    grid = build_grid(16)
    y = ylm_field(grid, 7, -4)
    lap = laplacian_sphere(grid, y)
    assert np.max(np.abs(lap + 56.0 * y)) <= 1e-10 * np.max(np.abs(y))


def test_curl_of_gradient_vanishes():
    grid = build_grid(24)
    f = random_bandlimited(grid, seed=9, lmax_source=10, amplitude=1.0)
    assert np.max(np.abs(curl_sphere(grid, grad_sphere(grid, f)))) < 1e-10


def test_div_of_grad_x3_is_laplacian():
    grid = build_grid(16)
    div = div_sphere(grid, grad_sphere(grid, grid.x3))
    assert np.max(np.abs(div + 2.0 * grid.x3)) < 1e-10
    th, ph = _mesh(grid)
    fd1, fd2 = fd_gradient(lambda t, p: -2.0 * np.cos(t) * np.ones_like(p), th, ph)
    spectral = grad_sphere(grid, div)
    assert np.max(np.abs(spectral.c1 - fd1)) < 1e-8


def test_curl_orientation_rotation_field():
    # About x3: omega = sin(theta) e2 has curl 2 cos(theta) with eps(e1,e2)=+1.
    grid = build_grid(16)
    omega = Covector(
        np.zeros((grid.ntheta, grid.nphi)),
        grid.sin_theta[:, None] * np.ones(grid.nphi)[None, :],
    )
    assert np.max(np.abs(curl_sphere(grid, omega) - 2.0 * grid.x3)) < 1e-12
    assert np.max(np.abs(div_sphere(grid, omega))) < 1e-12


def test_integration_by_parts_random_fields():
    grid = build_grid(24)
    rng_f = random_bandlimited(grid, seed=3, lmax_source=8, amplitude=1.0)
    e = np.zeros((25, 49))
    b = np.zeros((25, 49))
    rng = np.random.default_rng(11)
    for l in range(1, 9):
        for m in range(-l, l + 1):
            e[l, 24 + m] = rng.standard_normal()
            b[l, 24 + m] = rng.standard_normal()
    omega = vec_synthesize(grid, e, b)
    lhs = integrate(grid, rng_f * div_sphere(grid, omega))
    rhs = -integrate(grid, grad_sphere(grid, rng_f).dot(omega))
    assert abs(lhs - rhs) <= 1e-10 * max(abs(rhs), 1.0)


def test_curl_integrates_to_zero():
    grid = build_grid(16)
    e = np.zeros((17, 33))
    b = np.zeros((17, 33))
    b[4, 16 + 2] = 1.3
    e[3, 16 - 1] = -0.7
    omega = vec_synthesize(grid, e, b)
    assert abs(integrate(grid, curl_sphere(grid, omega))) < 1e-10


def test_div_sym_of_metric_vanishes():
    grid = build_grid(16)
    one = np.ones((grid.ntheta, grid.nphi))
    zero = np.zeros_like(one)
    metric = SymTensor(one, zero, one)
    assert div_sym(grid, metric).max_norm() < 1e-12


def test_div_sym_of_zero():
    grid = build_grid(8)
    zero = np.zeros((grid.ntheta, grid.nphi))
    T = SymTensor(zero, zero, zero)
    assert div_sym(grid, T).max_norm() == 0.0


def test_div_sym_matches_finite_differences():
    # T = sym(grad omega) for omega = grad f, f = sin(2 theta) cos(phi):
    # closed-form Hessian components, outer derivative by differences.
    grid = build_grid(32)
    th, ph = _mesh(grid)

    def f_theta(t, p):
        return 2.0 * np.cos(2.0 * t) * np.cos(p)

    def f_phi(t, p):
        return -np.sin(2.0 * t) * np.sin(p)

    def t11(t, p):
        return -4.0 * np.sin(2.0 * t) * np.cos(p)

    def t12(t, p):
        dthdph = -2.0 * np.cos(2.0 * t) * np.sin(p)
        return (dthdph - np.cos(t) / np.sin(t) * f_phi(t, p)) / np.sin(t)

    def t22(t, p):
        dphph = -np.sin(2.0 * t) * np.cos(p)
        return dphph / np.sin(t) ** 2 + np.cos(t) / np.sin(t) * f_theta(t, p)

    T = SymTensor(t11(th, ph), t12(th, ph), t22(th, ph))
    spectral = div_sym(grid, T)
    d1, d2 = fd_div_sym(t11, t12, t22, th, ph)
    assert np.max(np.abs(spectral.c1 - d1)) < 1e-8
    assert np.max(np.abs(spectral.c2 - d2)) < 1e-8


def test_hessian_of_coordinate_function():
    # Hess x_i = -x_i g on the unit sphere.
    grid = build_grid(16)
    H = hessian(grid, grid.x1)
    assert np.max(np.abs(H.t11 + grid.x1)) < 1e-11
    assert np.max(np.abs(H.t22 + grid.x1)) < 1e-11
    assert np.max(np.abs(H.t12)) < 1e-11


def test_lie_metric_trace_is_twice_divergence():
    grid = build_grid(16)
    f = random_bandlimited(grid, seed=6, lmax_source=6, amplitude=1.0)
    omega = grad_sphere(grid, f)
    D = lie_metric(grid, omega)
    target = 2.0 * div_sphere(grid, omega)
    assert np.max(np.abs(D.trace() - target)) < 1e-10


def test_poisson_eigenfunction():
    grid = build_grid(8)
    y = ylm_field(grid, 1, 0)
    u = poisson_solve_sphere(grid, -2.0 * y)
    assert np.max(np.abs(u - y)) < 1e-12


def test_poisson_zero():
    grid = build_grid(8)
    u = poisson_solve_sphere(grid, np.zeros((grid.ntheta, grid.nphi)))
    assert np.max(np.abs(u)) == 0.0


def test_poisson_roundtrip():
    grid = build_grid(24)
    u0 = random_bandlimited(grid, seed=13, lmax_source=12, amplitude=1.0)
    u0 = u0 - integrate(grid, u0) / (4.0 * np.pi)
    u = poisson_solve_sphere(grid, laplacian_sphere(grid, u0))
    assert np.max(np.abs(u - u0)) <= 1e-11


def test_poisson_rejects_incompatible_rhs():
    grid = build_grid(8)
    with pytest.raises(CompatibilityError):
        poisson_solve_sphere(grid, np.ones((grid.ntheta, grid.nphi)))


def test_poisson_inverts_laplacian_on_zero_mean():
    grid = build_grid(16)
    for seed in range(3):
        u0 = random_bandlimited(grid, seed=seed + 70, lmax_source=8, amplitude=0.8)
        u0 = u0 - integrate(grid, u0) / (4.0 * np.pi)
        back = poisson_solve_sphere(grid, laplacian_sphere(grid, u0))
        assert np.max(np.abs(back - u0)) <= 1e-11

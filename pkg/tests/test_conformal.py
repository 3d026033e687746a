"""Conformal metrics: curvature, volume, Killing structure."""

import numpy as np
import pytest

from nullcone import (
    ConformalMetric,
    NotConformalKillingError,
    build_grid,
    ckv_fields,
    conformal_killing_residual,
    deformation_scalar,
    gauss_curvature,
    grad_g,
    grad_sphere,
    integrate_g,
    random_bandlimited,
    rotation_fields,
    ylm_field,
)
from nullcone.fields import Vector

FOUR_PI = 4.0 * np.pi


def _zero_metric(grid):
    return ConformalMetric(grid, np.zeros((grid.ntheta, grid.nphi)))


def test_round_sphere_curvature_is_one():
    # Exact: the zero exponent transforms to exactly zero coefficients.
    grid = build_grid(8)
    K = gauss_curvature(_zero_metric(grid))
    assert np.all(K == 1.0)


def test_constant_exponent_scales_curvature():
    grid = build_grid(8)
    c = 0.37
    metric = ConformalMetric(grid, np.full((grid.ntheta, grid.nphi), c))
    K = gauss_curvature(metric)
    assert np.max(np.abs(K - np.exp(-2.0 * c))) < 1e-12


def test_gauss_bonnet_single_harmonic():
    grid = build_grid(24)
    metric = ConformalMetric(grid, 0.1 * ylm_field(grid, 2, 0))
    K = gauss_curvature(metric)
    assert abs(integrate_g(metric, K) - FOUR_PI) < 1e-10


@pytest.mark.parametrize("seed", range(5))
def test_gauss_bonnet_seeded_family(seed):
    grid = build_grid(32)
    f = random_bandlimited(grid, seed=seed + 40, lmax_source=8, amplitude=1.0)
    metric = ConformalMetric(grid, f)
    assert abs(integrate_g(metric, gauss_curvature(metric)) - FOUR_PI) < 1e-9


def test_integrate_g_area_scaling():
    grid = build_grid(8)
    one = np.ones((grid.ntheta, grid.nphi))
    assert abs(integrate_g(_zero_metric(grid), one) - FOUR_PI) < 1e-12
    c = 0.4
    metric = ConformalMetric(grid, np.full_like(one, c))
    assert abs(integrate_g(metric, one) - FOUR_PI * np.exp(2 * c)) < 1e-10


def test_grad_g_reduces_to_round_for_flat_exponent():
    grid = build_grid(8)
    u = ylm_field(grid, 3, 1)
    v = grad_g(_zero_metric(grid), u)
    w = grad_sphere(grid, u)
    assert np.max(np.abs(v.c1 - w.c1)) < 1e-13
    assert np.max(np.abs(v.c2 - w.c2)) < 1e-13


def test_grad_g_of_constant_vanishes():
    grid = build_grid(8)
    metric = ConformalMetric(grid, 0.3 * ylm_field(grid, 2, 1))
    v = grad_g(metric, np.full((grid.ntheta, grid.nphi), 1.7))
    assert v.max_norm() < 1e-13


def test_grad_g_pairing_identity():
    # <grad_g u, X>_g equals <grad u, X>_round pointwise.
    grid = build_grid(16)
    f = random_bandlimited(grid, seed=3, lmax_source=5, amplitude=0.8)
    u = random_bandlimited(grid, seed=4, lmax_source=5, amplitude=1.0)
    metric = ConformalMetric(grid, f)
    X = ckv_fields(grid)[1]
    lhs = metric.factor() * (
        grad_g(metric, u).c1 * X.c1 + grad_g(metric, u).c2 * X.c2
    )
    rhs = grad_sphere(grid, u).c1 * X.c1 + grad_sphere(grid, u).c2 * X.c2
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(np.max(np.abs(rhs)), 1.0)


def test_ckv_equator_value():
    grid = build_grid(16)
    X3 = ckv_fields(grid)[2]
    j = np.argmin(np.abs(grid.theta - np.pi / 2.0))
    assert abs(X3.c1[j, 0] + np.sin(grid.theta[j])) < 1e-14
    assert abs(X3.c2[j, 0]) < 1e-14


def test_ckv_gram_identity():
    # <grad x_i, grad x_j> + x_i x_j = delta_ij at every node.
    grid = build_grid(16)
    grads = ckv_fields(grid)
    coords = (grid.x1, grid.x2, grid.x3)
    for i in range(3):
        for j in range(3):
            inner = grads[i].c1 * grads[j].c1 + grads[i].c2 * grads[j].c2
            target = (1.0 if i == j else 0.0) - coords[i] * coords[j]
            assert np.max(np.abs(inner - target)) < 1e-12


def test_ckv_divergence_eigenvalue():
    from nullcone import div_sphere

    grid = build_grid(16)
    coords = (grid.x1, grid.x2, grid.x3)
    for X, x in zip(ckv_fields(grid), coords):
        div = div_sphere(grid, X.flat())
        assert np.max(np.abs(div + 2.0 * x)) < 1e-10


@pytest.mark.parametrize("seed", [None, 0, 1, 2])
def test_gradient_fields_are_conformal_killing(seed):
    grid = build_grid(32)
    if seed is None:
        f = np.zeros((grid.ntheta, grid.nphi))
    else:
        f = random_bandlimited(grid, seed=seed + 60, lmax_source=8, amplitude=1.0)
    metric = ConformalMetric(grid, f)
    for X in ckv_fields(grid):
        assert conformal_killing_residual(metric, X).max_norm() <= 1e-9


def test_rotations_are_killing():
    grid = build_grid(16)
    metric = ConformalMetric(grid, 0.2 * ylm_field(grid, 3, 2))
    for X in rotation_fields(grid):
        assert conformal_killing_residual(metric, X).max_norm() <= 1e-10


def test_negative_control_not_conformal_killing():
    grid = build_grid(16)
    X = Vector(
        -2.0 * grid.x3 * grid.sin_theta[:, None] * np.ones(grid.nphi)[None, :],
        np.zeros((grid.ntheta, grid.nphi)),
    )
    residual = conformal_killing_residual(_zero_metric(grid), X)
    assert residual.max_norm() > 0.1


def test_deformation_scalar_rotation_is_zero():
    # The x3 rotation is an isometry when the exponent is axisymmetric
    # about x3, so its deformation factor vanishes identically.
    grid = build_grid(16)
    metric = ConformalMetric(grid, 0.1 * ylm_field(grid, 2, 0))
    omega = deformation_scalar(metric, rotation_fields(grid)[2])
    assert np.max(np.abs(omega)) < 1e-10


def test_deformation_scalar_gradient_round():
    # L_X g = (div X) g with div grad x3 = -2 x3 on the round sphere.
    grid = build_grid(16)
    omega = deformation_scalar(_zero_metric(grid), ckv_fields(grid)[2])
    assert np.max(np.abs(omega + 2.0 * grid.x3)) < 1e-10


def test_deformation_scalar_linearity():
    grid = build_grid(16)
    metric = _zero_metric(grid)
    X = ckv_fields(grid)[2]
    doubled = Vector(2.0 * X.c1, 2.0 * X.c2)
    a = deformation_scalar(metric, X)
    b = deformation_scalar(metric, doubled)
    assert np.max(np.abs(b - 2.0 * a)) < 1e-10


def test_deformation_scalar_rejects_non_killing():
    grid = build_grid(16)
    X = Vector(
        -2.0 * grid.x3 * grid.sin_theta[:, None] * np.ones(grid.nphi)[None, :],
        np.zeros((grid.ntheta, grid.nphi)),
    )
    with pytest.raises(NotConformalKillingError):
        deformation_scalar(_zero_metric(grid), X)


def test_deformation_scalar_consistency_with_lie_derivative():
    # sym grad X = Omega g for conformal Killing X, checked componentwise.
    from nullcone.sphere import lie_metric

    grid = build_grid(24)
    f = random_bandlimited(grid, seed=8, lmax_source=4, amplitude=0.4)
    metric = ConformalMetric(grid, f)
    X = ckv_fields(grid)[0]
    omega_scalar = deformation_scalar(metric, X)
    # Round version: L_X g_round = (div_round X) g_round; conformal version
    # rescales both sides by e^{2f}, so compare the round components.
    D = lie_metric(grid, X.flat())
    from nullcone import div_sphere

    div_round = div_sphere(grid, X.flat())
    assert np.max(np.abs(D.t11 - div_round)) < 1e-10
    assert np.max(np.abs(D.t22 - div_round)) < 1e-10
    assert np.max(np.abs(D.t12)) < 1e-10
    # and Omega itself is div_round X + 2 <df, X>
    from nullcone import grad_sphere as gs

    df = gs(grid, f)
    assert np.max(
        np.abs(omega_scalar - div_round - 2.0 * (df.c1 * X.c1 + df.c2 * X.c2))
    ) < 1e-12

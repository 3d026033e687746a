"""Conformal metrics e^{2f} g_round: curvature, volume, Killing structure.

In two dimensions every operator needed here reduces to a round-sphere
operator times a power of the conformal factor, so the pole-free spectral
core does all the differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import ScalarField, SymTensor, Vector
from .sphere import (
    SphereGrid,
    div_sphere,
    grad_sphere,
    integrate,
    laplacian_sphere,
    lie_metric,
)

__all__ = [
    "ConformalMetric",
    "NotConformalKillingError",
    "gauss_curvature",
    "integrate_g",
    "grad_g",
    "ckv_fields",
    "rotation_fields",
    "conformal_killing_residual",
    "deformation_scalar",
]

#: Max-norm bound on the conformal Killing residual accepted by
#: deformation_scalar and the generalized curvature integrals.
CKV_TOLERANCE = 1e-6


class NotConformalKillingError(ValueError):
    """The supplied field fails the conformal Killing residual bound."""

    def __init__(self, residual: float, tolerance: float):
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"conformal Killing residual {residual:.3e} exceeds {tolerance:.1e}"
        )


@dataclass(frozen=True)
class ConformalMetric:
    """g = e^{2 exponent} g_round on the given grid."""

    grid: SphereGrid
    exponent: ScalarField

    def factor(self) -> np.ndarray:
        """The area weight e^{2 exponent}."""
        return np.exp(2.0 * np.asarray(self.exponent))


def gauss_curvature(metric: ConformalMetric) -> ScalarField:
    """Gauss curvature e^{-2f} (1 - Laplacian f) of e^{2f} g_round."""
    f = np.asarray(metric.exponent)
    return np.exp(-2.0 * f) * (1.0 - laplacian_sphere(metric.grid, f))


def integrate_g(metric: ConformalMetric, field: ScalarField) -> float:
    """Integral against the conformal volume form e^{2f} dvol_round."""
    return integrate(metric.grid, np.asarray(field) * metric.factor())


def grad_g(metric: ConformalMetric, field: ScalarField) -> Vector:
    """Gradient with the index raised by the conformal metric.

    Satisfies <grad_g u, X>_g = <grad_round u, X>_round pointwise for
    every vector field X, which is the identity that lets the curvature
    integrals be written with either metric.
    """
    omega = grad_sphere(metric.grid, field)
    w = np.exp(-2.0 * np.asarray(metric.exponent))
    return Vector(w * omega.c1, w * omega.c2)


def ckv_fields(grid: SphereGrid) -> tuple[Vector, Vector, Vector]:
    """Round gradients of the coordinate functions x1, x2, x3.

    Closed forms in the orthonormal frame; conformal Killing for every
    metric conformal to the round one.
    """
    ct = grid.mu[:, None] * np.ones(grid.nphi)[None, :]
    st = grid.sin_theta[:, None] * np.ones(grid.nphi)[None, :]
    cp = np.ones(grid.ntheta)[:, None] * np.cos(grid.phi)[None, :]
    sp = np.ones(grid.ntheta)[:, None] * np.sin(grid.phi)[None, :]
    return (
        Vector(ct * cp, -sp),
        Vector(ct * sp, cp),
        Vector(-st, np.zeros_like(st)),
    )


def rotation_fields(grid: SphereGrid) -> tuple[Vector, Vector, Vector]:
    """Killing generators of rotation about the three coordinate axes."""
    ct = grid.mu[:, None] * np.ones(grid.nphi)[None, :]
    st = grid.sin_theta[:, None] * np.ones(grid.nphi)[None, :]
    cp = np.ones(grid.ntheta)[:, None] * np.cos(grid.phi)[None, :]
    sp = np.ones(grid.ntheta)[:, None] * np.sin(grid.phi)[None, :]
    return (
        Vector(-sp, -ct * cp),
        Vector(cp, -ct * sp),
        Vector(np.zeros_like(st), st),
    )


def conformal_killing_residual(
    metric: ConformalMetric, X: Vector
) -> SymTensor:
    """Trace-free part of the metric deformation generated by X.

    Computed for the round metric; by conformal invariance it vanishes
    exactly when X is conformal Killing for the given metric too (the
    g-residual differs only by the positive factor e^{2f}).
    """
    return lie_metric(metric.grid, X.flat()).tf_part()


def deformation_scalar(
    metric: ConformalMetric, X: Vector, tolerance: float = CKV_TOLERANCE
) -> ScalarField:
    """The factor Omega with L_X g = Omega g, valid for conformal Killing X.

    Trace bookkeeping fixes Omega = div_g X.  Raises if the trace-free
    residual exceeds the tolerance.
    """
    residual = conformal_killing_residual(metric, X).max_norm()
    if residual > tolerance:
        raise NotConformalKillingError(residual, tolerance)
    div_round = div_sphere(metric.grid, X.flat())
    df = grad_sphere(metric.grid, np.asarray(metric.exponent))
    return div_round + 2.0 * (df.c1 * X.c1 + df.c2 * X.c2)

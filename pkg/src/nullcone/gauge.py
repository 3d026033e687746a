"""Boost gauge on the normal bundle: rescaling, gauge fixing, adjoint.

A positive function a sends the null frame {L, Lbar} to {aL, a^-1 Lbar}.
The extrinsic package transforms algebraically; the torsion shifts by the
exact form d log a, so its curl is invariant.  Solving one Poisson
equation makes the torsion divergence free, and on the sphere that kills
it outright; a final constant rescale normalizes trchi to 1.  In that
gauge the curvature differential is minus half the divergence of the
trace-free lower second fundamental form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conformal import ConformalMetric, gauss_curvature
from .cone import EmbeddedSurface, ExtrinsicData
from .fields import Covector, SymTensor, sym_outer
from .sphere import (
    SphereGrid,
    curl_sphere,
    div_sphere,
    div_tf,
    grad_sphere,
    integrate,
    lie_metric,
    poisson_solve_sphere,
)

__all__ = [
    "GaugeFunction",
    "rescale_frame",
    "curl_invariance_check",
    "divergence_free_gauge",
    "normalize_trchi",
    "integrability_residual",
    "adjoint_identity_check",
    "tf_deformation_induced",
]


@dataclass(frozen=True)
class GaugeFunction:
    """Positive boost parameter a on the surface."""

    values: np.ndarray

    def __post_init__(self):
        if np.min(self.values) <= 0.0:
            raise ValueError("gauge function must be strictly positive")

    @classmethod
    def constant(cls, grid: SphereGrid, value: float) -> "GaugeFunction":
        return cls(np.full((grid.ntheta, grid.nphi), float(value)))

    def log(self) -> np.ndarray:
        return np.log(self.values)


def rescale_frame(
    grid: SphereGrid, extr: ExtrinsicData, a: GaugeFunction
) -> ExtrinsicData:
    """Apply the boost {L, Lbar} -> {aL, a^-1 Lbar} to the whole package."""
    av = a.values
    inv = 1.0 / av
    dloga = grad_sphere(grid, a.log())
    return ExtrinsicData(
        L=extr.L * av,
        Lbar=extr.Lbar * inv,
        chi=extr.chi * av,
        chibar=extr.chibar * inv,
        trchi=extr.trchi * av,
        trchibar=extr.trchibar * inv,
        chihat=extr.chihat * av,
        chibarhat=extr.chibarhat * inv,
        zeta=extr.zeta - dloga,
    )


def curl_invariance_check(
    surface: EmbeddedSurface, extr: ExtrinsicData, a: GaugeFunction
) -> float:
    """Max |curl zeta_a - curl zeta| over nodes (induced metric curl)."""
    grid = surface.grid
    transformed = rescale_frame(grid, extr, a)
    w2 = np.exp(-2.0 * np.asarray(surface.h))
    diff = w2 * (
        curl_sphere(grid, transformed.zeta) - curl_sphere(grid, extr.zeta)
    )
    return float(np.max(np.abs(diff)))


def divergence_free_gauge(
    surface: EmbeddedSurface, extr: ExtrinsicData
) -> GaugeFunction:
    """The boost making the torsion divergence free (zero-mean log a).

    The induced-metric condition div zeta_a = 0 reduces to the round
    equation Laplacian(log a) = div zeta because the conformal weights of
    the two sides cancel.  A nonzero mean of div zeta would signal an
    upstream bug, since a divergence integrates to zero on a closed
    surface; poisson_solve_sphere rejects it.
    """
    rhs = div_sphere(surface.grid, extr.zeta)
    log_a = poisson_solve_sphere(surface.grid, rhs)
    return GaugeFunction(np.exp(log_a))


def normalize_trchi(
    surface: EmbeddedSurface, extr: ExtrinsicData
) -> tuple[ExtrinsicData, float]:
    """Constant boost making trchi identically 1; returns (package, constant).

    Requires the divergence-free gauge to have run first: zeta must be
    negligible and trchi constant.  The constant is reported because the
    normalization convention trchi = 1 hides a scale that downstream
    consumers may want.
    """
    if extr.zeta.max_norm() > 1e-8:
        raise ValueError(
            f"torsion max norm {extr.zeta.max_norm():.3e} > 1e-8; "
            "run divergence_free_gauge first"
        )
    grid = surface.grid
    w = surface.area_factor()
    area = integrate(grid, w)
    mean_trchi = integrate(grid, extr.trchi * w) / area
    if np.max(np.abs(extr.trchi - mean_trchi)) > 1e-6:
        raise ValueError("trchi is not constant; gauge fixing incomplete")
    c = 1.0 / mean_trchi
    return rescale_frame(grid, extr, GaugeFunction.constant(grid, c)), c


def integrability_residual(
    surface: EmbeddedSurface, extr: ExtrinsicData
) -> Covector:
    """dK + (1/2) div chibar-hat in the zeta = 0, trchi = 1 gauge."""
    grid = surface.grid
    w2 = np.exp(-2.0 * np.asarray(surface.h))
    K = gauss_curvature(ConformalMetric(grid, surface.h))
    return grad_sphere(grid, K) + 0.5 * (w2 * div_tf(grid, extr.chibarhat))


def tf_deformation_induced(
    surface: EmbeddedSurface, omega: Covector
) -> SymTensor:
    """Trace-free part of L_{omega-sharp} g_induced, omega-sharp raised
    with the induced metric.

    In round components: tracefree(sym grad omega) minus twice the
    trace-free symmetrized dh (x) omega; the pure-trace terms drop.
    """
    grid = surface.grid
    full = lie_metric(grid, omega) - 2.0 * sym_outer(surface.dh, omega)
    return full.tf_part()


def adjoint_identity_check(
    surface: EmbeddedSurface, xi: SymTensor, omega: Covector
) -> tuple[float, float]:
    """Both sides of the duality pairing for div on trace-free tensors.

    Returns (int <div xi, omega>, int <xi, -1/2 tracefree L_{omega#} g>)
    with all metric operations taken in the induced metric.  Equality to
    quadrature accuracy certifies the conformally weighted divergence.
    """
    tr = np.max(np.abs(xi.trace()))
    if tr > 1e-12 * max(xi.max_norm(), 1e-300):
        raise ValueError(f"tensor argument is not trace free (|tr| = {tr:.3e})")
    grid = surface.grid
    w2 = np.exp(-2.0 * np.asarray(surface.h))
    lhs = integrate(grid, (w2 * div_tf(grid, xi)).dot(omega))
    kappa = tf_deformation_induced(surface, omega)
    rhs = -0.5 * integrate(grid, w2 * xi.dot_tensor(kappa))
    return lhs, rhs

"""Spacelike graph surfaces in the future lightcone of the origin.

A surface is the graph v = e^{h} over the sphere inside the cone t = r
of Minkowski space.  Its position is P = (e^h, e^h n) with n the unit
normal of the round sphere, so the cone constraint t = r holds exactly by
construction and the pullback metric is e^{2h} times the round metric.

Tensor components on the surface are taken against the pushed-forward
frame {E1, E2} (the images of e1, e2), which makes them round-frame
covariant components of the pulled-back tensors.  With that convention
the induced-metric operators are conformal reweightings of the round
ones: on scalars, 1-forms, and trace-free symmetric tensors the
divergence / curl / Laplacian pick up a single factor e^{-2h}, and traces
pick up e^{-2h} per contracted pair.  The ambient connection is flat, so
differentiating a field along the surface is the spectral frame
derivative of its rectangular components.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conformal import ConformalMetric, gauss_curvature
from .fields import AmbientVector, Covector, ScalarField, SymTensor
from .sphere import (
    SphereGrid,
    curl_sphere,
    div_tf,
    grad_sphere,
)

__all__ = [
    "EmbeddedSurface",
    "ExtrinsicData",
    "GaussCodazziResiduals",
    "embed",
    "null_frame",
    "frame_derivatives",
    "extrinsic_package",
    "gauss_codazzi_residuals",
    "trchibar_from_gauss",
]


@dataclass(frozen=True)
class EmbeddedSurface:
    """Graph surface v = e^h with cached position and tangent frame."""

    grid: SphereGrid
    h: ScalarField
    position: AmbientVector
    e1: AmbientVector
    e2: AmbientVector
    dh: Covector  # round gradient of h, reused throughout

    def radius(self) -> np.ndarray:
        return np.exp(np.asarray(self.h))

    def area_factor(self) -> np.ndarray:
        """Conformal weight e^{2h} of the induced metric."""
        return np.exp(2.0 * np.asarray(self.h))

    def induced_metric(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Numeric components (G11, G12, G22) = eta(E_A, E_B)."""
        return (
            self.e1.dot(self.e1),
            self.e1.dot(self.e2),
            self.e2.dot(self.e2),
        )

    def metric_residual(self) -> float:
        """Max deviation of eta(E_A, E_B) from e^{2h} delta_AB."""
        g11, g12, g22 = self.induced_metric()
        w = self.area_factor()
        return float(
            max(
                np.max(np.abs(g11 - w)),
                np.max(np.abs(g12)),
                np.max(np.abs(g22 - w)),
            )
        )

    def cone_residual(self) -> float:
        """Max |t - r| along the surface; zero up to round-off."""
        p = self.position
        r = np.sqrt(p.x**2 + p.y**2 + p.z**2)
        return float(np.max(np.abs(p.t - r)))


@dataclass(frozen=True)
class ExtrinsicData:
    """Null frame and second-fundamental package of a cone surface.

    chi, chibar and zeta are components against {E1, E2}; traces are taken
    with the numeric induced metric inverse.
    """

    L: AmbientVector
    Lbar: AmbientVector
    chi: SymTensor
    chibar: SymTensor
    trchi: ScalarField
    trchibar: ScalarField
    chihat: SymTensor
    chibarhat: SymTensor
    zeta: Covector

    def frame_residual(self, surface: EmbeddedSurface) -> float:
        """Max violation of the null-frame constraints."""
        vals = [
            np.max(np.abs(self.L.dot(self.L))),
            np.max(np.abs(self.Lbar.dot(self.Lbar))),
            np.max(np.abs(self.L.dot(self.Lbar) + 2.0)),
            np.max(np.abs(self.L.dot(surface.e1))),
            np.max(np.abs(self.L.dot(surface.e2))),
            np.max(np.abs(self.Lbar.dot(surface.e1))),
            np.max(np.abs(self.Lbar.dot(surface.e2))),
        ]
        return float(max(vals))


def embed(grid: SphereGrid, h: ScalarField) -> EmbeddedSurface:
    """Embed the graph v = e^h; tangents by spectral differentiation."""
    h = np.asarray(h, dtype=float)
    if h.shape != grid.weights.shape:
        raise ValueError("exponent field shape does not match grid")
    r = np.exp(h)
    dh = grad_sphere(grid, h)
    n, n_th, n_ph = grid.normal_triad()

    position = AmbientVector(r, r * n[0], r * n[1], r * n[2])
    # E_A = e_A(e^h) (1, n) + e^h (0, e_A n)
    e1 = AmbientVector(
        r * dh.c1,
        r * (dh.c1 * n[0] + n_th[0]),
        r * (dh.c1 * n[1] + n_th[1]),
        r * (dh.c1 * n[2] + n_th[2]),
    )
    e2 = AmbientVector(
        r * dh.c2,
        r * (dh.c2 * n[0] + n_ph[0]),
        r * (dh.c2 * n[1] + n_ph[1]),
        r * (dh.c2 * n[2] + n_ph[2]),
    )
    surface = EmbeddedSurface(grid, h, position, e1, e2, dh)
    for tangent in (e1, e2):
        if np.min(tangent.dot(tangent)) <= 0.0:
            raise ValueError("tangent plane degenerated; surface not spacelike")
    return surface


def null_frame(surface: EmbeddedSurface) -> tuple[AmbientVector, AmbientVector]:
    """The frame {L = d/dv, Lbar} normal to the surface.

    L is the cone generator (1, n).  Lbar is the unique future null
    partner orthogonal to the tangents with eta(L, Lbar) = -2; in closed
    form Lbar = (1 + |dh|^2, (|dh|^2 - 1) n + 2 grad h).
    """
    grid, dh = surface.grid, surface.dh
    n, n_th, n_ph = grid.normal_triad()
    one = np.ones_like(np.asarray(surface.h))
    L = AmbientVector(one, n[0], n[1], n[2])

    s = dh.c1**2 + dh.c2**2
    gh = [dh.c1 * n_th[i] + dh.c2 * n_ph[i] for i in range(3)]
    Lbar = AmbientVector(
        1.0 + s,
        (s - 1.0) * n[0] + 2.0 * gh[0],
        (s - 1.0) * n[1] + 2.0 * gh[1],
        (s - 1.0) * n[2] + 2.0 * gh[2],
    )
    if np.min(Lbar.t) <= 0.0 or np.min(L.t) <= 0.0:
        raise ValueError("null frame not future-directed")
    return L, Lbar


def frame_derivatives(
    grid: SphereGrid, field: AmbientVector
) -> tuple[AmbientVector, AmbientVector]:
    """(e_1(V), e_2(V)) componentwise in rectangular coordinates.

    Exact covariant derivative along the surface because the ambient
    connection is flat.
    """
    grads = [grad_sphere(grid, comp) for comp in field.components()]
    d1 = AmbientVector(*(gr.c1 for gr in grads))
    d2 = AmbientVector(*(gr.c2 for gr in grads))
    return d1, d2


def _second_fundamental(
    surface: EmbeddedSurface, field: AmbientVector
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """All four slots eta(e_A(V), E_B); symmetry is a numerical check."""
    d1, d2 = frame_derivatives(surface.grid, field)
    return (
        d1.dot(surface.e1),
        d1.dot(surface.e2),
        d2.dot(surface.e1),
        d2.dot(surface.e2),
    )


def extrinsic_package(
    surface: EmbeddedSurface,
    frame: tuple[AmbientVector, AmbientVector],
) -> ExtrinsicData:
    """Second fundamental forms and torsion for the given null frame."""
    L, Lbar = frame
    g11, g12, g22 = surface.induced_metric()
    det = g11 * g22 - g12 * g12
    inv11, inv12, inv22 = g22 / det, -g12 / det, g11 / det

    def _package(field: AmbientVector) -> tuple[SymTensor, np.ndarray, SymTensor]:
        k11, k12, k21, k22 = _second_fundamental(surface, field)
        sym12 = 0.5 * (k12 + k21)
        tensor = SymTensor(k11, sym12, k22)
        tr = inv11 * k11 + 2.0 * inv12 * sym12 + inv22 * k22
        hat = SymTensor(
            k11 - 0.5 * tr * g11,
            sym12 - 0.5 * tr * g12,
            k22 - 0.5 * tr * g22,
            traceless=True,
        )
        return tensor, tr, hat

    chi, trchi, chihat = _package(L)
    chibar, trchibar, chibarhat = _package(Lbar)

    d1L, d2L = frame_derivatives(surface.grid, L)
    zeta = Covector(0.5 * d1L.dot(Lbar), 0.5 * d2L.dot(Lbar))

    return ExtrinsicData(
        L=L,
        Lbar=Lbar,
        chi=chi,
        chibar=chibar,
        trchi=trchi,
        trchibar=trchibar,
        chihat=chihat,
        chibarhat=chibarhat,
        zeta=zeta,
    )


def _wedge(S: SymTensor, T: SymTensor) -> np.ndarray:
    """eps^{AB} S_A^C T_CB in round components (indices raised outside)."""
    return S.t11 * T.t12 + S.t12 * T.t22 - S.t12 * T.t11 - S.t22 * T.t12


@dataclass(frozen=True)
class GaussCodazziResiduals:
    """Left-hand sides of the four structure equations on the surface."""

    gauss_scalar: ScalarField
    gauss_curl: ScalarField
    codazzi: Covector
    codazzi_bar: Covector

    def max_norms(self) -> dict[str, float]:
        return {
            "gauss_scalar": float(np.max(np.abs(self.gauss_scalar))),
            "gauss_curl": float(np.max(np.abs(self.gauss_curl))),
            "codazzi": self.codazzi.max_norm(),
            "codazzi_bar": self.codazzi_bar.max_norm(),
        }


def gauss_codazzi_residuals(
    surface: EmbeddedSurface, extr: ExtrinsicData
) -> GaussCodazziResiduals:
    """Evaluate the general-form Gauss and Codazzi equations.

    K is computed intrinsically from the conformal exponent; every
    induced-metric operation is the round one with its conformal weight.
    The hatted-chi terms vanish identically on cone graphs but are kept
    so the residuals apply to any null frame.
    """
    grid = surface.grid
    w2 = np.exp(-2.0 * np.asarray(surface.h))
    w4 = w2 * w2
    K = gauss_curvature(ConformalMetric(grid, surface.h))

    gauss_scalar = (
        K
        + 0.25 * extr.trchi * extr.trchibar
        - 0.5 * w4 * extr.chihat.dot_tensor(extr.chibarhat)
    )
    gauss_curl = w2 * curl_sphere(grid, extr.zeta) + 0.5 * w4 * _wedge(
        extr.chibarhat, extr.chihat
    )

    def _codazzi(hat: SymTensor, tr: np.ndarray, sign: float) -> Covector:
        div_term = w2 * div_tf(grid, hat)
        dtr = grad_sphere(grid, tr)
        coupling = w2 * hat.dot_covector(extr.zeta)
        return (
            div_term
            - 0.5 * dtr
            + sign * coupling
            - sign * 0.5 * tr * extr.zeta
        )

    codazzi = _codazzi(extr.chihat, extr.trchi, +1.0)
    codazzi_bar = _codazzi(extr.chibarhat, extr.trchibar, -1.0)
    return GaussCodazziResiduals(gauss_scalar, gauss_curl, codazzi, codazzi_bar)


def trchibar_from_gauss(
    surface: EmbeddedSurface, extr: ExtrinsicData
) -> np.ndarray:
    """Solve the scalar Gauss equation for trchibar (cross-check value)."""
    grid = surface.grid
    w4 = np.exp(-4.0 * np.asarray(surface.h))
    K = gauss_curvature(ConformalMetric(grid, surface.h))
    coupling = 0.5 * w4 * extr.chihat.dot_tensor(extr.chibarhat)
    return (coupling - K) * 4.0 / extr.trchi

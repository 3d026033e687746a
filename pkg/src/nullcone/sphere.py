"""Spectral discretization of the unit round sphere.

Grid: Gauss-Legendre colatitudes (never touching the poles) crossed with
equispaced longitudes, so quadrature of two band-limited factors is exact
and all differentiation is spectral.  Band limit L gives ntheta = L + 1
nodes and nphi = 2L + 1 longitudes; products of harmonics up to total
degree 2L integrate to round-off.

Real harmonic basis: Y_{l,0} = P~_{l0}, Y_{l,m>0} = sqrt(2) P~_{lm} cos(m phi),
Y_{l,-m} = sqrt(2) P~_{lm} sin(m phi), orthonormal under the full-sphere
integral.  Coefficient tables are dense (L+1, 2L+1) arrays indexed
[l, L + m].

Covector and trace-free symmetric tensor fields are handled in the
matching vector / spin-2 bases (gradient+rotated-gradient, trace-free
Hessian+its star).  Storing frame components and transforming through
these bases keeps every operator (div, curl, div on tensors, Lie
derivative of the metric) a pure coefficient recombination, so the
integration-by-parts identities hold to quadrature accuracy by
construction.  The frame {e1, e2} has the single connection coefficient
cot(theta); it never appears explicitly here because the basis profiles
absorb it, but it is the reason plain term-by-term differentiation of
frame components would not be spectrally accurate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .fields import Covector, ScalarField, SymTensor
from .legendre import HarmonicTables

__all__ = [
    "SphereGrid",
    "ShCoeffs",
    "CompatibilityError",
    "build_grid",
    "integrate",
    "l2_norm",
    "sh_analyze",
    "sh_synthesize",
    "ylm_field",
    "random_bandlimited",
    "grad_sphere",
    "div_sphere",
    "curl_sphere",
    "laplacian_sphere",
    "poisson_solve_sphere",
    "vec_analyze",
    "vec_synthesize",
    "tensor_analyze",
    "tensor_synthesize",
    "div_sym",
    "div_tf",
    "lie_metric",
    "hessian",
]


class CompatibilityError(ValueError):
    """Poisson right-hand side has a non-negligible mean."""


class SphereGrid:
    """Quadrature nodes, weights, and harmonic tables for band limit L.

    Attributes of shape (ntheta,): theta, mu, sin_theta, wgl.
    Attributes of shape (ntheta, nphi): weights and the coordinate fields
    x1, x2, x3 of the unit normal.
    """

    def __init__(self, band_limit: int):
        if band_limit < 4:
            raise ValueError(
                f"band limit {band_limit} too coarse; need L >= 4"
            )
        L = int(band_limit)
        self.L = L
        self.ntheta = L + 1
        self.nphi = 2 * L + 1

        mu, wgl = roots_legendre(self.ntheta)
        order = np.argsort(np.arccos(mu))  # theta ascending
        self.mu = mu[order]
        self.wgl = wgl[order]
        self.theta = np.arccos(self.mu)
        self.sin_theta = np.sqrt(1.0 - self.mu**2)
        self.phi = 2.0 * np.pi * np.arange(self.nphi) / self.nphi
        self.weights = np.outer(
            self.wgl, np.full(self.nphi, 2.0 * np.pi / self.nphi)
        )

        ct, st = self.mu[:, None], self.sin_theta[:, None]
        cp, sp = np.cos(self.phi)[None, :], np.sin(self.phi)[None, :]
        self.x1 = st * cp
        self.x2 = st * sp
        self.x3 = ct * np.ones_like(cp)

        self.tables = HarmonicTables(L, self.mu)

    def __repr__(self) -> str:
        return f"SphereGrid(L={self.L}, ntheta={self.ntheta}, nphi={self.nphi})"

    def normal_triad(self):
        """Orthonormal Euclidean triad (n, d_theta n, (1/sin) d_phi n).

        Each entry is a tuple of three (ntheta, nphi) arrays.
        """
        ct, st = self.mu[:, None], self.sin_theta[:, None]
        cp, sp = np.cos(self.phi)[None, :], np.sin(self.phi)[None, :]
        one = np.ones((self.ntheta, self.nphi))
        n = (st * cp, st * sp, ct * one)
        n_th = (ct * cp, ct * sp, -st * one)
        n_ph = (-sp * one, cp * one, np.zeros_like(one))
        return n, n_th, n_ph


@lru_cache(maxsize=32)
def build_grid(band_limit: int) -> SphereGrid:
    """Construct (and cache) the grid for a band limit L >= 4."""
    return SphereGrid(band_limit)


def integrate(grid: SphereGrid, field: ScalarField) -> float:
    """Quadrature integral over the round sphere."""
    field = np.asarray(field)
    if field.shape != grid.weights.shape:
        raise ValueError(
            f"field shape {field.shape} does not match grid {grid.weights.shape}"
        )
    return float(np.sum(grid.weights * field))


def l2_norm(grid: SphereGrid, field: ScalarField) -> float:
    return float(np.sqrt(integrate(grid, np.asarray(field) ** 2)))


@dataclass(frozen=True)
class ShCoeffs:
    """Real harmonic coefficients, data[l, lmax + m] for |m| <= l <= lmax."""

    lmax: int
    data: np.ndarray

    def _check(self, l: int, m: int) -> None:
        if not (0 <= l <= self.lmax and abs(m) <= l):
            raise IndexError(
                f"coefficient index (l={l}, m={m}) outside band limit {self.lmax}"
            )

    def get(self, l: int, m: int) -> float:
        self._check(l, m)
        return float(self.data[l, self.lmax + m])

    def set(self, l: int, m: int, value: float) -> None:
        self._check(l, m)
        self.data[l, self.lmax + m] = value

    @classmethod
    def zeros(cls, lmax: int) -> "ShCoeffs":
        return cls(lmax, np.zeros((lmax + 1, 2 * lmax + 1)))


# -- phi helpers -------------------------------------------------------------
#
# With F = rfft(f, axis=1) and nphi odd, bin m holds exactly the frequency-m
# content: int f cos(m phi) dphi = (2 pi / nphi) Re F_m and
# int f sin(m phi) dphi = -(2 pi / nphi) Im F_m.


def _phi_fft(field: np.ndarray) -> np.ndarray:
    return np.fft.rfft(np.asarray(field, dtype=float), axis=1)


def _scalar_analyze(grid: SphereGrid, field: ScalarField) -> np.ndarray:
    L, tab = grid.L, grid.tables
    F = _phi_fft(field) * (2.0 * np.pi / grid.nphi)
    coeffs = np.zeros((L + 1, 2 * L + 1))
    coeffs[:, L] = tab.leg[0] @ (grid.wgl * F[:, 0].real)
    for m in range(1, L + 1):
        wc = grid.wgl * F[:, m].real
        ws = grid.wgl * (-F[:, m].imag)
        coeffs[m:, L + m] = tab.leg[m] @ wc
        coeffs[m:, L - m] = tab.leg[m] @ ws
    return coeffs


def _scalar_synthesize(grid: SphereGrid, coeffs: np.ndarray) -> ScalarField:
    L, tab, n = grid.L, grid.tables, grid.nphi
    F = np.zeros((grid.ntheta, L + 1), dtype=complex)
    F[:, 0] = n * (tab.leg[0].T @ coeffs[:, L])
    for m in range(1, L + 1):
        gc = tab.leg[m].T @ coeffs[m:, L + m]
        gs = tab.leg[m].T @ coeffs[m:, L - m]
        F[:, m] = 0.5 * n * (gc - 1j * gs)
    return np.fft.irfft(F, n=n, axis=1)


def sh_analyze(grid: SphereGrid, field: ScalarField) -> ShCoeffs:
    """Project a scalar field onto the real harmonic basis."""
    if np.asarray(field).shape != grid.weights.shape:
        raise ValueError("field shape does not match grid")
    return ShCoeffs(grid.L, _scalar_analyze(grid, field))


def sh_synthesize(grid: SphereGrid, coeffs: ShCoeffs) -> ScalarField:
    """Evaluate a coefficient table on the grid."""
    if coeffs.lmax != grid.L:
        raise ValueError(
            f"coefficient band limit {coeffs.lmax} does not match grid L={grid.L}"
        )
    return _scalar_synthesize(grid, coeffs.data)


def ylm_field(grid: SphereGrid, l: int, m: int, amplitude: float = 1.0) -> ScalarField:
    """The real basis harmonic of degree l and order m (sin branch for m < 0)."""
    c = ShCoeffs.zeros(grid.L)
    c.set(l, m, amplitude)
    return _scalar_synthesize(grid, c.data)


def random_bandlimited(
    grid: SphereGrid, seed: int, lmax_source: int, amplitude: float
) -> ScalarField:
    """Seeded random field with degrees <= lmax_source, max |f| = amplitude."""
    if lmax_source > grid.L:
        raise ValueError("source band limit exceeds grid band limit")
    rng = np.random.default_rng(seed)
    coeffs = np.zeros((grid.L + 1, 2 * grid.L + 1))
    for l in range(lmax_source + 1):
        for m in range(-l, l + 1):
            coeffs[l, grid.L + m] = rng.standard_normal()
    field = _scalar_synthesize(grid, coeffs)
    peak = np.max(np.abs(field))
    if peak == 0.0:
        return field
    return field * (amplitude / peak)


# -- paired (vector / spin-2) transform engine -------------------------------
#
# Both non-scalar bases share one structure.  An "A type" basis element of
# order m has components (P cos(m phi), -Q sin(m phi)) and its star partner
# ("B type") has (Q sin(m phi), P cos(m phi)); the sin branch swaps
# cos <-> sin with matching signs.  For covectors (P, Q) = (dleg, sleg)
# normalized by sqrt(l(l+1)) and the components mean (omega_1, omega_2);
# for trace-free tensors (P, Q) = (wleg, xleg) normalized by tensor_norm,
# the components mean (T_11, T_12), and the pointwise pairing carries a
# factor 2 because <T, S> = 2 (T11 S11 + T12 S12) on trace-free tensors.


def _pair_analyze(grid, f1, f2, tabP, tabQ, norm, minl, weight):
    L = grid.L
    F1 = _phi_fft(f1) * (2.0 * np.pi / grid.nphi)
    F2 = _phi_fft(f2) * (2.0 * np.pi / grid.nphi)
    cA = np.zeros((L + 1, 2 * L + 1))
    cB = np.zeros((L + 1, 2 * L + 1))
    for m in range(0, L + 1):
        lo = max(m, minl)
        if lo > L:
            break
        sl = slice(lo - m, L + 1 - m)  # rows of the per-m tables
        P, Q = tabP[m][sl], tabQ[m][sl]
        inv = weight / norm[lo : L + 1]
        c1 = grid.wgl * F1[:, m].real
        s1 = grid.wgl * (-F1[:, m].imag)
        c2 = grid.wgl * F2[:, m].real
        s2 = grid.wgl * (-F2[:, m].imag)
        if m == 0:
            cA[lo:, L] = (P @ c1) * inv
            cB[lo:, L] = (P @ c2) * inv
        else:
            cA[lo:, L + m] = (P @ c1 - Q @ s2) * inv
            cA[lo:, L - m] = (P @ s1 + Q @ c2) * inv
            cB[lo:, L + m] = (Q @ s1 + P @ c2) * inv
            cB[lo:, L - m] = (-Q @ c1 + P @ s2) * inv
    return cA, cB


def _pair_synthesize(grid, cA, cB, tabP, tabQ, norm, minl):
    L, n = grid.L, grid.nphi
    F1 = np.zeros((grid.ntheta, L + 1), dtype=complex)
    F2 = np.zeros((grid.ntheta, L + 1), dtype=complex)
    for m in range(0, L + 1):
        lo = max(m, minl)
        if lo > L:
            break
        sl = slice(lo - m, L + 1 - m)
        P, Q = tabP[m][sl].T, tabQ[m][sl].T
        inv = 1.0 / norm[lo : L + 1]
        aP = cA[lo:, L + m] * inv
        bP = cB[lo:, L + m] * inv
        if m == 0:
            F1[:, 0] += n * (P @ aP)
            F2[:, 0] += n * (P @ bP)
            continue
        aM = cA[lo:, L - m] * inv
        bM = cB[lo:, L - m] * inv
        gc1 = P @ aP - Q @ bM
        gs1 = P @ aM + Q @ bP
        gc2 = Q @ aM + P @ bP
        gs2 = -(Q @ aP) + P @ bM
        F1[:, m] = 0.5 * n * (gc1 - 1j * gs1)
        F2[:, m] = 0.5 * n * (gc2 - 1j * gs2)
    out1 = np.fft.irfft(F1, n=n, axis=1)
    out2 = np.fft.irfft(F2, n=n, axis=1)
    return out1, out2


def vec_analyze(grid: SphereGrid, omega: Covector) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of a 1-form in the (gradient, star-gradient) basis."""
    t = grid.tables
    return _pair_analyze(
        grid, omega.c1, omega.c2, t.dleg, t.sleg, t.grad_norm, 1, 1.0
    )


def vec_synthesize(grid: SphereGrid, e: np.ndarray, b: np.ndarray) -> Covector:
    t = grid.tables
    c1, c2 = _pair_synthesize(grid, e, b, t.dleg, t.sleg, t.grad_norm, 1)
    return Covector(c1, c2)


def tensor_analyze(grid: SphereGrid, T: SymTensor) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of a trace-free symmetric tensor in the spin-2 basis."""
    t = grid.tables
    return _pair_analyze(
        grid, T.t11, T.t12, t.wleg, t.xleg, t.tensor_norm, 2, 2.0
    )


def tensor_synthesize(grid: SphereGrid, tE: np.ndarray, tB: np.ndarray) -> SymTensor:
    t = grid.tables
    t11, t12 = _pair_synthesize(grid, tE, tB, t.wleg, t.xleg, t.tensor_norm, 2)
    return SymTensor(t11, t12, -t11, traceless=True)


# -- differential operators --------------------------------------------------


def grad_sphere(grid: SphereGrid, field: ScalarField) -> Covector:
    """Round gradient as a 1-form (components equal the vector's)."""
    a = _scalar_analyze(grid, field)
    e = a * grid.tables.grad_norm[:, None]
    return vec_synthesize(grid, e, np.zeros_like(e))


def div_sphere(grid: SphereGrid, omega: Covector) -> ScalarField:
    """Round divergence of a 1-form."""
    e, _ = vec_analyze(grid, omega)
    return _scalar_synthesize(grid, -e * grid.tables.grad_norm[:, None])


def curl_sphere(grid: SphereGrid, omega: Covector) -> ScalarField:
    """curl omega = eps^{AB} grad_A omega_B with eps(e1, e2) = +1."""
    _, b = vec_analyze(grid, omega)
    return _scalar_synthesize(grid, -b * grid.tables.grad_norm[:, None])


def laplacian_sphere(grid: SphereGrid, field: ScalarField) -> ScalarField:
    a = _scalar_analyze(grid, field)
    return _scalar_synthesize(grid, -a * grid.tables.ll1[:, None])


def poisson_solve_sphere(grid: SphereGrid, rhs: ScalarField) -> ScalarField:
    """Zero-mean u with Laplacian u = rhs; rhs must have negligible mean."""
    mean = integrate(grid, rhs)
    scale = l2_norm(grid, rhs)
    if abs(mean) > 1e-10 * max(scale, 1e-300):
        raise CompatibilityError(
            f"right-hand side mean {mean:.3e} exceeds 1e-10 of its norm {scale:.3e}"
        )
    a = _scalar_analyze(grid, rhs)
    inv = np.zeros(grid.L + 1)
    inv[1:] = -1.0 / grid.tables.ll1[1:]
    return _scalar_synthesize(grid, a * inv[:, None])


def div_sym(grid: SphereGrid, T: SymTensor) -> Covector:
    """(div T)_A = grad^B T_BA for a symmetric tensor, round metric.

    Splits into the trace-free part (spin-2 coefficient recombination)
    plus half the gradient of the trace.
    """
    tf = T.tf_part()
    tE, tB = tensor_analyze(grid, tf)
    d = grid.tables.div_tensor[:, None]
    out = vec_synthesize(grid, -d * tE, -d * tB)
    tr = T.trace()
    if np.max(np.abs(tr)) > 0.0:
        out = out + 0.5 * grad_sphere(grid, tr)
    return out


def div_tf(grid: SphereGrid, T: SymTensor) -> Covector:
    """Divergence of a trace-free symmetric tensor (round metric)."""
    tE, tB = tensor_analyze(grid, T)
    d = grid.tables.div_tensor[:, None]
    return vec_synthesize(grid, -d * tE, -d * tB)


def lie_metric(grid: SphereGrid, omega: Covector) -> SymTensor:
    """L_{omega-sharp} g for the round metric: grad_A w_B + grad_B w_A."""
    e, b = vec_analyze(grid, omega)
    d = grid.tables.div_tensor[:, None]
    tf = tensor_synthesize(grid, 2.0 * d * e, 2.0 * d * b)
    div = _scalar_synthesize(grid, -e * grid.tables.grad_norm[:, None])
    return SymTensor(tf.t11 + div, tf.t12, tf.t22 + div)


def hessian(grid: SphereGrid, field: ScalarField) -> SymTensor:
    """Covariant Hessian grad_A grad_B f (round metric)."""
    a = _scalar_analyze(grid, field)
    tE = a * (grid.tables.grad_norm * grid.tables.div_tensor)[:, None]
    tf = tensor_synthesize(grid, tE, np.zeros_like(tE))
    half_lap = 0.5 * _scalar_synthesize(grid, -a * grid.tables.ll1[:, None])
    return SymTensor(tf.t11 + half_lap, tf.t12, tf.t22 + half_lap)

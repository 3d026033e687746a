"""Normalized associated Legendre profiles for the real harmonic basis.

Everything on the sphere factorizes into a colatitude profile times
cos(m phi) or sin(m phi).  This module builds, per zonal wavenumber m,
the theta-profile matrices needed by the scalar, covector, and symmetric
trace-free tensor transforms:

    leg[m][i, j]    real-basis profile of degree l = m + i at node j,
                    i.e. sqrt(2 - delta_{m0}) * Ntilde_{lm} * P_l^m(mu_j)
    dleg[m]         d/dtheta of leg[m]
    sleg[m]         m * leg[m] / sin(theta)   (phi-derivative profile)
    wleg[m]         (m^2/sin^2 - l(l+1)/2) * leg - cot(theta) * dleg
    xleg[m]         m * (dleg - cot(theta) * leg) / sin(theta)

leg/dleg/sleg assemble gradients of harmonics; wleg/xleg are the two
independent components of the trace-free Hessian of a harmonic, which is
all that is needed for the tensor (spin-2) basis.

Normalization: the profiles make the real basis orthonormal under the
full sphere integral, so analysis is plain quadrature projection.  No
Condon-Shortley phase is used; the basis is internal and self-consistent.

The three-term recurrence in l for fixed m is the standard one for fully
normalized functions and is stable for the band limits used here (L <= 128
is far below any overflow or accuracy cliff).
"""

from __future__ import annotations

import numpy as np

_INV_SQRT_4PI = 0.5 / np.sqrt(np.pi)


def normalized_plm_table(lmax: int, mu: np.ndarray) -> list[np.ndarray]:
    """Fully normalized P~_{lm}(mu) for all 0 <= m <= l <= lmax.

    Returns a list indexed by m; entry m is an array of shape
    (lmax + 1 - m, len(mu)) whose row i holds degree l = m + i.
    Normalization: int P~_{lm}^2 dOmega = 1 when paired with the
    corresponding unit-amplitude e^{i m phi}; i.e. P~_{l0} = Y_l0.
    """
    mu = np.asarray(mu, dtype=float)
    sin_t = np.sqrt(1.0 - mu * mu)
    tables: list[np.ndarray] = []
    # Diagonal seed P~_mm built up m by m.
    pmm = np.full_like(mu, _INV_SQRT_4PI)
    for m in range(lmax + 1):
        nrows = lmax + 1 - m
        table = np.empty((nrows, mu.size))
        table[0] = pmm
        if nrows > 1:
            table[1] = np.sqrt(2 * m + 3.0) * mu * pmm
        for l in range(m + 2, lmax + 1):
            a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = np.sqrt(
                (2.0 * l + 1.0)
                * ((l - 1.0) ** 2 - m * m)
                / ((2.0 * l - 3.0) * (l * l - m * m))
            )
            table[l - m] = a * mu * table[l - m - 1] - b * table[l - m - 2]
        tables.append(table)
        pmm = np.sqrt((2 * m + 3.0) / (2 * m + 2.0)) * sin_t * pmm
    return tables


def dtheta_plm_table(
    plm: list[np.ndarray], mu: np.ndarray
) -> list[np.ndarray]:
    """d/dtheta of the normalized profiles, same layout as the input.

    Uses d P~_{lm}/dtheta = (l mu P~_{lm} - c_{lm} P~_{l-1,m}) / sin(theta)
    with c_{lm} = sqrt((2l+1)/(2l-1) * (l^2 - m^2)); valid off the poles,
    which Gauss-Legendre nodes never touch.
    """
    mu = np.asarray(mu, dtype=float)
    sin_t = np.sqrt(1.0 - mu * mu)
    lmax = len(plm) - 1
    out: list[np.ndarray] = []
    for m in range(lmax + 1):
        table = plm[m]
        dtable = np.empty_like(table)
        for i in range(table.shape[0]):
            l = m + i
            acc = l * mu * table[i]
            if i > 0:
                c = np.sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) * (l * l - m * m))
                acc = acc - c * table[i - 1]
            dtable[i] = acc / sin_t
        out.append(dtable)
    return out


class HarmonicTables:
    """Per-m profile matrices for one grid (band limit and nodes fixed).

    The real-basis sqrt(2) factor for m >= 1 is folded into every table so
    the transforms treat all m uniformly.
    """

    def __init__(self, lmax: int, mu: np.ndarray):
        self.lmax = lmax
        mu = np.asarray(mu, dtype=float)
        sin_t = np.sqrt(1.0 - mu * mu)
        cot_t = mu / sin_t

        leg = normalized_plm_table(lmax, mu)
        dleg = dtheta_plm_table(leg, mu)
        for m in range(1, lmax + 1):
            leg[m] = np.sqrt(2.0) * leg[m]
            dleg[m] = np.sqrt(2.0) * dleg[m]

        sleg = [m * leg[m] / sin_t for m in range(lmax + 1)]
        wleg = []
        xleg = []
        for m in range(lmax + 1):
            ll1 = np.array(
                [l * (l + 1.0) for l in range(m, lmax + 1)]
            )[:, None]
            wleg.append(
                (m * m / sin_t**2 - 0.5 * ll1) * leg[m] - cot_t * dleg[m]
            )
            xleg.append(m * (dleg[m] - cot_t * leg[m]) / sin_t)

        self.leg = leg
        self.dleg = dleg
        self.sleg = sleg
        self.wleg = wleg
        self.xleg = xleg

        ls = np.arange(lmax + 1, dtype=float)
        # Eigen-scale factors shared by the covector / tensor transforms.
        self.ll1 = ls * (ls + 1.0)                       # -Laplacian eigenvalue
        self.grad_norm = np.sqrt(self.ll1)               # |dY_lm|_{L^2}
        dl = 0.5 * (ls - 1.0) * (ls + 2.0)               # div strength on spin-2
        self.div_tensor = np.sqrt(np.maximum(dl, 0.0))
        # |trace-free Hessian of Y_lm|_{L^2}^2 = l(l+1)(l-1)(l+2)/2
        self.tensor_norm = np.sqrt(np.maximum(self.ll1 * dl, 0.0))

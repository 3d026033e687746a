"""Field containers: components in the fixed orthonormal round frame.

Scalar fields are bare (ntheta, nphi) float arrays.  Multi-component
fields get thin frozen dataclasses so the component bookkeeping (and the
traceless flag on symmetric tensors) travels with the data.  Frame
convention everywhere: e1 = d/dtheta, e2 = (1/sin theta) d/dphi, with
orientation eps(e1, e2) = +1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ScalarField = np.ndarray


@dataclass(frozen=True)
class Covector:
    """1-form with components (c1, c2) = (omega(e1), omega(e2))."""

    c1: np.ndarray
    c2: np.ndarray

    # Make ndarray * Covector defer to __rmul__ instead of broadcasting.
    __array_ufunc__ = None

    def __add__(self, other: "Covector") -> "Covector":
        return Covector(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "Covector") -> "Covector":
        return Covector(self.c1 - other.c1, self.c2 - other.c2)

    def __mul__(self, factor) -> "Covector":
        return Covector(self.c1 * factor, self.c2 * factor)

    __rmul__ = __mul__

    def __neg__(self) -> "Covector":
        return Covector(-self.c1, -self.c2)

    def dot(self, other: "Covector") -> np.ndarray:
        """Pointwise round-frame pairing c1*c1' + c2*c2'."""
        return self.c1 * other.c1 + self.c2 * other.c2

    def norm_pointwise(self) -> np.ndarray:
        return np.sqrt(self.c1**2 + self.c2**2)

    def max_norm(self) -> float:
        return float(np.max(self.norm_pointwise()))

    def star(self) -> "Covector":
        """Hodge star on 1-forms: (c1, c2) -> (-c2, c1)."""
        return Covector(-self.c2, self.c1)


@dataclass(frozen=True)
class Vector:
    """Tangent vector field, components (v1, v2) along (e1, e2).

    In the orthonormal round frame a vector and its round-lowered 1-form
    share components; `flat` makes the type change explicit.
    """

    c1: np.ndarray
    c2: np.ndarray

    __array_ufunc__ = None

    def __add__(self, other: "Vector") -> "Vector":
        return Vector(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "Vector") -> "Vector":
        return Vector(self.c1 - other.c1, self.c2 - other.c2)

    def __mul__(self, factor) -> "Vector":
        return Vector(self.c1 * factor, self.c2 * factor)

    __rmul__ = __mul__

    def flat(self) -> Covector:
        """Lower the index with the round metric."""
        return Covector(self.c1, self.c2)

    def max_norm(self) -> float:
        return float(np.max(np.sqrt(self.c1**2 + self.c2**2)))


@dataclass(frozen=True)
class SymTensor:
    """Symmetric 2-tensor, covariant round-frame components.

    The traceless flag records that t11 + t22 == 0 up to round-off;
    trace-freeness with respect to any conformal rescaling of the round
    metric is the same condition.
    """

    t11: np.ndarray
    t12: np.ndarray
    t22: np.ndarray
    traceless: bool = False

    __array_ufunc__ = None

    def __add__(self, other: "SymTensor") -> "SymTensor":
        return SymTensor(
            self.t11 + other.t11,
            self.t12 + other.t12,
            self.t22 + other.t22,
            traceless=self.traceless and other.traceless,
        )

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return SymTensor(
            self.t11 - other.t11,
            self.t12 - other.t12,
            self.t22 - other.t22,
            traceless=self.traceless and other.traceless,
        )

    def __mul__(self, factor) -> "SymTensor":
        return SymTensor(
            self.t11 * factor,
            self.t12 * factor,
            self.t22 * factor,
            traceless=self.traceless,
        )

    __rmul__ = __mul__

    def trace(self) -> np.ndarray:
        """Round-frame trace t11 + t22."""
        return self.t11 + self.t22

    def tf_part(self) -> "SymTensor":
        """Subtract half the round trace from the diagonal."""
        half_tr = 0.5 * self.trace()
        return SymTensor(
            self.t11 - half_tr, self.t12, self.t22 - half_tr, traceless=True
        )

    def dot_tensor(self, other: "SymTensor") -> np.ndarray:
        """Pointwise full contraction sum_AB T_AB S_AB (round frame)."""
        return (
            self.t11 * other.t11
            + 2.0 * self.t12 * other.t12
            + self.t22 * other.t22
        )

    def dot_covector(self, omega: Covector) -> Covector:
        """Contract the second slot: (T . omega)_A = sum_B T_AB omega_B."""
        return Covector(
            self.t11 * omega.c1 + self.t12 * omega.c2,
            self.t12 * omega.c1 + self.t22 * omega.c2,
        )

    def max_norm(self) -> float:
        return float(
            max(
                np.max(np.abs(self.t11)),
                np.max(np.abs(self.t12)),
                np.max(np.abs(self.t22)),
            )
        )


def sym_outer(alpha: Covector, beta: Covector) -> SymTensor:
    """Symmetric outer product alpha_A beta_B + beta_A alpha_B."""
    return SymTensor(
        2.0 * alpha.c1 * beta.c1,
        alpha.c1 * beta.c2 + alpha.c2 * beta.c1,
        2.0 * alpha.c2 * beta.c2,
    )


@dataclass(frozen=True)
class AmbientVector:
    """Vector field along the surface, rectangular Minkowski components.

    Signature (-,+,+,+): dot() is -t*t' + x*x' + y*y' + z*z'.
    """

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray

    __array_ufunc__ = None

    def __add__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(
            self.t + other.t, self.x + other.x, self.y + other.y, self.z + other.z
        )

    def __sub__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(
            self.t - other.t, self.x - other.x, self.y - other.y, self.z - other.z
        )

    def __mul__(self, factor) -> "AmbientVector":
        return AmbientVector(
            self.t * factor, self.x * factor, self.y * factor, self.z * factor
        )

    __rmul__ = __mul__

    def dot(self, other: "AmbientVector") -> np.ndarray:
        return (
            -self.t * other.t
            + self.x * other.x
            + self.y * other.y
            + self.z * other.z
        )

    def components(self) -> tuple[np.ndarray, ...]:
        return (self.t, self.x, self.y, self.z)

"""Compact string grammar for the scalar fields fed to the suites.

Forms:
    zero
    constant:C
    ylm:l,m,amp
    sum:l,m,amp;l,m,amp;...
    random:seed,lmax,amp

Deterministic given the string (random uses the library's seeded
generator).  Degrees above a quarter of the working band limit trigger a
warning: identity checks on marginally resolved inputs stop being sharp.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .sphere import ScalarField, SphereGrid, random_bandlimited, ylm_field

__all__ = ["FunctionSpec", "parse_function_spec", "build_field"]


@dataclass(frozen=True)
class FunctionSpec:
    """Parsed field specification; exactly one kind is active."""

    kind: str
    constant: float = 0.0
    terms: tuple[tuple[int, int, float], ...] = ()
    seed: int = 0
    lmax: int = 0
    amplitude: float = 0.0

    def __str__(self) -> str:
        if self.kind == "zero":
            return "zero"
        if self.kind == "constant":
            return f"constant:{self.constant:g}"
        if self.kind == "ylm":
            l, m, amp = self.terms[0]
            return f"ylm:{l},{m},{amp:g}"
        if self.kind == "sum":
            body = ";".join(f"{l},{m},{amp:g}" for l, m, amp in self.terms)
            return f"sum:{body}"
        return f"random:{self.seed},{self.lmax},{self.amplitude:g}"

    def max_degree(self) -> int:
        if self.kind in ("zero", "constant"):
            return 0
        if self.kind == "random":
            return self.lmax
        return max(l for l, _, _ in self.terms)


def _parse_ylm_term(text: str) -> tuple[int, int, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected l,m,amplitude but got {text!r}")
    l, m, amp = int(parts[0]), int(parts[1]), float(parts[2])
    if l < 0 or abs(m) > l:
        raise ValueError(f"invalid harmonic indices l={l}, m={m}")
    return l, m, amp


def parse_function_spec(text: str) -> FunctionSpec:
    """Parse the compact grammar; raises ValueError on malformed input."""
    text = text.strip()
    if text == "zero":
        return FunctionSpec(kind="zero")
    head, sep, body = text.partition(":")
    if not sep:
        raise ValueError(f"unrecognized function spec {text!r}")
    if head == "constant":
        return FunctionSpec(kind="constant", constant=float(body))
    if head == "ylm":
        return FunctionSpec(kind="ylm", terms=(_parse_ylm_term(body),))
    if head == "sum":
        terms = tuple(_parse_ylm_term(t) for t in body.split(";") if t)
        if not terms:
            raise ValueError("sum spec needs at least one term")
        return FunctionSpec(kind="sum", terms=terms)
    if head == "random":
        parts = body.split(",")
        if len(parts) != 3:
            raise ValueError(f"expected seed,lmax,amplitude but got {body!r}")
        seed, lmax, amp = int(parts[0]), int(parts[1]), float(parts[2])
        if lmax < 0:
            raise ValueError("lmax must be nonnegative")
        return FunctionSpec(kind="random", seed=seed, lmax=lmax, amplitude=amp)
    raise ValueError(f"unknown function spec kind {head!r}")


def build_field(grid: SphereGrid, spec: FunctionSpec) -> ScalarField:
    """Evaluate the specification on the grid."""
    if spec.max_degree() > grid.L // 4:
        warnings.warn(
            f"source degree {spec.max_degree()} exceeds L/4 = {grid.L // 4}; "
            "residual checks may be limited by resolution",
            stacklevel=2,
        )
    shape = (grid.ntheta, grid.nphi)
    if spec.kind == "zero":
        return np.zeros(shape)
    if spec.kind == "constant":
        return np.full(shape, spec.constant)
    if spec.kind in ("ylm", "sum"):
        out = np.zeros(shape)
        for l, m, amp in spec.terms:
            out = out + ylm_field(grid, l, m, amp)
        return out
    return random_bandlimited(grid, spec.seed, spec.lmax, spec.amplitude)

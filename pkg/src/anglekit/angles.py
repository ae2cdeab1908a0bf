"""Two angle functions on an inner product space and their triangle certificates.

theta(u, v)      = arccos(|<u, v>| / (|u| |v|))   in [0, pi/2]
cap_theta(u, v)  = arccos(Re<u, v> / (|u| |v|))   in [0, pi]

The absolute-value angle is the phase minimum of the real-part angle:
theta(u, v) = min over |p| = 1 of cap_theta(p u, v), which this module checks
both with the exact unit-modulus minimizer and with an independent phase grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .certificates import Certificate, DEFAULT_TOL
from .linalg import Vector, inner_product

__all__ = [
    "AngleKind",
    "AngleTriple",
    "theta",
    "cap_theta",
    "exact_phase_minimizer",
    "phase_min_theta",
    "angle_triple",
    "check_triangle_inequalities",
]


class AngleKind(str, Enum):
    THETA = "theta"
    CAP_THETA = "cap_theta"


def _require_nonzero(*vectors: Vector) -> None:
    for v in vectors:
        if v.is_zero():
            raise ValueError("angle is undefined for the zero vector")


def _clamped_arccos(x: float, lo: float = -1.0) -> float:
    # Rounding can push |cos| marginally past 1; clamp before arccos.
    return math.acos(min(1.0, max(lo, x)))


def theta(u: Vector, v: Vector) -> float:
    """Absolute-value angle, in [0, pi/2]."""
    _require_nonzero(u, v)
    z = inner_product(u, v)
    return _clamped_arccos(abs(z) / (u.norm() * v.norm()), lo=0.0)


def cap_theta(u: Vector, v: Vector) -> float:
    """Real-part angle, in [0, pi]; always >= theta(u, v)."""
    _require_nonzero(u, v)
    z = inner_product(u, v)
    return _clamped_arccos(z.real / (u.norm() * v.norm()))


def exact_phase_minimizer(u: Vector, v: Vector) -> complex:
    """Unit scalar p with cap_theta(p u, v) == theta(u, v).

    p = <v, u> / |<v, u>|. When <u, v> = 0 every phase already attains
    theta = pi/2, so 1 is returned.
    """
    _require_nonzero(u, v)
    z = inner_product(v, u)
    if abs(z) == 0.0:
        return 1.0 + 0.0j
    return z / abs(z)


def phase_min_theta(u: Vector, v: Vector, grid_size: int) -> float:
    """Minimum of cap_theta(p u, v) over the grid p = exp(2 pi i m / grid_size).

    Converges to theta(u, v) from above with error at most pi / grid_size.
    """
    _require_nonzero(u, v)
    if grid_size < 4:
        raise ValueError("grid_size must be at least 4")
    phases = np.exp(2j * math.pi * np.arange(grid_size) / grid_size)
    scaled = phases[:, None] * u.entries[None, :]
    inner = scaled @ v.entries.conj()
    cos_vals = np.clip(inner.real / (u.norm() * v.norm()), -1.0, 1.0)
    return float(np.arccos(cos_vals).min())


@dataclass(frozen=True)
class AngleTriple:
    """Angles (alpha, beta, gamma) = (angle(u,v), angle(v,w), angle(w,u))."""

    alpha: float
    beta: float
    gamma: float
    kind: AngleKind
    source: tuple[Vector, Vector, Vector] | None = None

    def __post_init__(self) -> None:
        hi = math.pi / 2 if self.kind is AngleKind.THETA else math.pi
        for value in (self.alpha, self.beta, self.gamma):
            if not math.isfinite(value) or value < -1e-12 or value > hi + 1e-12:
                raise ValueError(f"angle {value} outside [0, {hi}] for kind {self.kind.value}")

    def angles(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


def angle_triple(u: Vector, v: Vector, w: Vector, kind: AngleKind = AngleKind.THETA) -> AngleTriple:
    _require_nonzero(u, v, w)
    fn = theta if kind is AngleKind.THETA else cap_theta
    return AngleTriple(fn(u, v), fn(v, w), fn(w, u), kind, source=(u, v, w))


def check_triangle_inequalities(t: AngleTriple, tol: float = DEFAULT_TOL) -> Certificate:
    """One certificate covering all three cyclic inequalities x <= y + z.

    lhs is the worst cyclic violation, rhs is 0, so the certificate passes iff
    every angle is bounded by the sum of the other two within tol.
    """
    a, b, c = t.angles()
    worst = max(a - b - c, b - c - a, c - a - b)
    return Certificate(
        f"triangle.{t.kind.value}",
        lhs=worst,
        rhs=0.0,
        tol=tol,
        context={"alpha": a, "beta": b, "gamma": c},
    )

"""Triangle triplets and the function classes that preserve them.

A nonnegative triple (a, b, c) is *triangle* when |a - b| <= c <= a + b. The
angle triples of the angles module are triangle triplets, and so are their
images under nondecreasing subadditive functions vanishing at zero (the
sufficient condition checked here for triangle preservation). The module also
verifies the decreasing functions f with the cosine addition law

    f(p + q) = f(p) f(q) - sqrt(1 - f(p)^2) sqrt(1 - f(q)^2)

whose inverses map a PSD unit-diagonal triple to a triangle triplet, and the
derived k-th-root inequalities for unit vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .certificates import Certificate, DEFAULT_TOL
from .angles import AngleKind, angle_triple
from .linalg import Sym3, Vector, inner_product, require_psd

__all__ = [
    "TriangleTriplet",
    "is_triangle",
    "Func1D",
    "GridSpec",
    "FunctionVerdict",
    "PROPERTIES",
    "cosine_scaled",
    "root_power",
    "arccos_function",
    "affine_function",
    "sampled_function",
    "function_from_spec",
    "check_function",
    "ConcavityMonotoneResult",
    "concavity_implies_monotone_check",
    "inverse_triplet",
    "transform_triplet",
    "kth_root_certificates",
    "angle_trig_certificates",
    "cos_sum_certificate",
    "counterexample_vectors",
    "obtuse_cos_sin_witness",
]


@dataclass(frozen=True)
class TriangleTriplet:
    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"triplet entry {name}={value} must be a finite nonnegative real")
            object.__setattr__(self, name, value)

    def entries(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


def is_triangle(t: TriangleTriplet, tol: float = DEFAULT_TOL) -> bool:
    """True iff every entry is at most the sum of the other two, within tol."""
    a, b, c = t.entries()
    return max(a - b - c, b - c - a, c - a - b) <= tol


@dataclass(frozen=True, eq=False)
class Func1D:
    """Scalar function on a finite interval, evaluated elementwise on arrays."""

    name: str
    lo: float
    hi: float
    fn: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ValueError("need a finite nonempty domain")

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        if arr.size and (arr.min() < self.lo - 1e-9 or arr.max() > self.hi + 1e-9):
            raise ValueError(f"argument outside domain [{self.lo}, {self.hi}] of {self.name}")
        out = np.asarray(self.fn(np.clip(arr, self.lo, self.hi)), dtype=float)
        return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def cosine_scaled(r: float) -> Func1D:
    """f(t) = cos(r t) on [0, pi/r]; strictly decreasing with range [-1, 1]."""
    if r <= 0.0:
        raise ValueError("need r > 0")
    return Func1D(f"cos_r(r={r})", 0.0, math.pi / r, lambda t: np.cos(r * t))


def root_power(k: float, hi: float = math.pi) -> Func1D:
    """p(t) = (1 - cos^k t)^(1/k) on [0, pi/2], constant 1 beyond."""
    if k < 2.0:
        raise ValueError("need k >= 2")

    def _eval(t: np.ndarray) -> np.ndarray:
        capped = np.minimum(t, math.pi / 2)
        return np.where(t > math.pi / 2, 1.0, (1.0 - np.cos(capped) ** k) ** (1.0 / k))

    return Func1D(f"p_k(k={k})", 0.0, hi, _eval)


def arccos_function() -> Func1D:
    return Func1D("arccos", -1.0, 1.0, lambda x: np.arccos(np.clip(x, -1.0, 1.0)))


def affine_function(slope: float, intercept: float, lo: float = 0.0, hi: float = 10.0) -> Func1D:
    return Func1D(f"affine({slope}, {intercept})", lo, hi, lambda t: slope * t + intercept)


def sampled_function(points) -> Func1D:
    """Piecewise-linear interpolant of [[t, f(t)], ...] samples."""
    pts = sorted((float(t), float(ft)) for t, ft in points)
    if len(pts) < 2:
        raise ValueError("need at least two sample points")
    ts = np.array([p[0] for p in pts])
    fs = np.array([p[1] for p in pts])
    if np.any(np.diff(ts) <= 0.0):
        raise ValueError("sample abscissae must be strictly increasing")
    return Func1D("user_sampled", float(ts[0]), float(ts[-1]), lambda x: np.interp(x, ts, fs))


def function_from_spec(spec: dict) -> Func1D:
    """Build a catalog function from its JSON addressing form."""
    kind = spec.get("fn")
    if kind == "cos_r":
        return cosine_scaled(float(spec["r"]))
    if kind == "p_k":
        return root_power(float(spec["k"]))
    if kind == "arccos_inv":
        return arccos_function()
    if kind == "affine":
        return affine_function(
            float(spec["slope"]),
            float(spec["intercept"]),
            float(spec.get("lo", 0.0)),
            float(spec.get("hi", 10.0)),
        )
    if kind == "user_sampled":
        return sampled_function(spec["points"])
    raise ValueError(f"unknown function spec: {spec!r}")


@dataclass(frozen=True)
class GridSpec:
    count: int = 1000
    spacing: str = "uniform"

    def points(self, lo: float, hi: float) -> np.ndarray:
        if self.count < 2:
            raise ValueError("grid needs at least two points")
        if self.spacing == "uniform":
            return np.linspace(lo, hi, self.count)
        if self.spacing == "chebyshev":
            k = np.arange(self.count)
            return lo + (hi - lo) * 0.5 * (1.0 - np.cos(math.pi * k / (self.count - 1)))
        raise ValueError(f"unknown spacing {self.spacing!r}")


PROPERTIES = (
    "subadditive",
    "midpoint_concave",
    "nondecreasing",
    "cosine_addition",
    "triangle_preserving",
)


@dataclass(frozen=True)
class FunctionVerdict:
    property_name: str
    passed: bool
    witness: tuple[float, ...] | None
    residual: float


def _pair_grids(xs: np.ndarray):
    return xs[:, None], xs[None, :]


def check_function(
    f: Func1D, property_name: str, grid: GridSpec = GridSpec(), tol: float = DEFAULT_TOL
) -> FunctionVerdict:
    """Grid-exhaustive test of one named property of f.

    Inequality properties report the worst slack and pass when it stays above
    -tol; the cosine addition law reports the largest absolute residual and
    passes when it stays below tol. A failing verdict always carries a witness
    that re-evaluates to a genuine violation.
    """
    if property_name not in PROPERTIES:
        raise ValueError(f"unknown property {property_name!r}")
    xs = grid.points(f.lo, f.hi)
    fs = f(xs)

    if property_name == "nondecreasing":
        slacks = fs[1:] - fs[:-1]
        idx = int(np.argmin(slacks))
        worst = float(slacks[idx])
        return FunctionVerdict(
            property_name, worst >= -tol, None if worst >= -tol else (float(xs[idx]), float(xs[idx + 1])), worst
        )

    if property_name == "midpoint_concave":
        x, y = _pair_grids(xs)
        mids = f((x + y) / 2.0)
        slacks = mids - 0.5 * (fs[:, None] + fs[None, :])
        i, j = np.unravel_index(int(np.argmin(slacks)), slacks.shape)
        worst = float(slacks[i, j])
        return FunctionVerdict(
            property_name, worst >= -tol, None if worst >= -tol else (float(xs[i]), float(xs[j])), worst
        )

    if property_name in ("subadditive", "cosine_addition"):
        x, y = _pair_grids(xs)
        sums = x + y
        mask = sums <= f.hi + 1e-12
        if not mask.any():
            raise ValueError("no grid pair has s + t inside the domain")
        f_sum = f(np.where(mask, np.minimum(sums, f.hi), f.lo))
        if property_name == "subadditive":
            slacks = np.where(mask, fs[:, None] + fs[None, :] - f_sum, np.inf)
            i, j = np.unravel_index(int(np.argmin(slacks)), slacks.shape)
            worst = float(slacks[i, j])
            return FunctionVerdict(
                property_name, worst >= -tol, None if worst >= -tol else (float(xs[i]), float(xs[j])), worst
            )
        sines = np.sqrt(np.clip(1.0 - fs * fs, 0.0, None))
        law = fs[:, None] * fs[None, :] - sines[:, None] * sines[None, :]
        residuals = np.where(mask, np.abs(f_sum - law), 0.0)
        i, j = np.unravel_index(int(np.argmax(residuals)), residuals.shape)
        worst = float(residuals[i, j])
        return FunctionVerdict(
            property_name, worst <= tol, None if worst <= tol else (float(xs[i]), float(xs[j])), worst
        )

    # triangle_preserving: cubic in the grid size, so decimate to <= 96 points.
    if f.lo < -1e-12:
        raise ValueError("triangle preservation needs a domain inside [0, inf)")
    stride = max(1, -(-len(xs) // 96))
    sub = xs[::stride]
    fsub = f(sub)
    x = sub[:, None, None]
    y = sub[None, :, None]
    z = sub[None, None, :]
    base_triangle = (np.abs(x - y) <= z) & (z <= x + y)
    fx = fsub[:, None, None]
    fy = fsub[None, :, None]
    fz = fsub[None, None, :]
    out_slack = np.minimum(np.minimum(fy + fz - fx, fz + fx - fy), fx + fy - fz)
    slacks = np.where(base_triangle, out_slack, np.inf)
    i, j, k = np.unravel_index(int(np.argmin(slacks)), slacks.shape)
    worst = float(slacks[i, j, k])
    witness = None if worst >= -tol else (float(sub[i]), float(sub[j]), float(sub[k]))
    return FunctionVerdict(property_name, worst >= -tol, witness, worst)


@dataclass(frozen=True)
class ConcavityMonotoneResult:
    concavity: FunctionVerdict
    monotonicity: FunctionVerdict | None
    applicable: bool
    holds: bool


def concavity_implies_monotone_check(
    f: Func1D, grid: GridSpec = GridSpec(), tol: float = DEFAULT_TOL
) -> ConcavityMonotoneResult:
    """Nonnegative midpoint-concave functions must be nondecreasing.

    When the concavity grid check passes, the monotonicity check must pass as
    well; a concave-pass with a monotone-fail is a build-breaking defect. A
    negative value of f anywhere on the grid violates the precondition and is
    an error, not a failing verdict.
    """
    xs = grid.points(f.lo, f.hi)
    values = f(xs)
    if values.min() < -tol:
        raise ValueError("function is negative on the grid; nonnegativity is a precondition")
    concavity = check_function(f, "midpoint_concave", grid, tol)
    if not concavity.passed:
        return ConcavityMonotoneResult(concavity, None, applicable=False, holds=True)
    monotonicity = check_function(f, "nondecreasing", grid, tol)
    return ConcavityMonotoneResult(concavity, monotonicity, applicable=True, holds=monotonicity.passed)


@lru_cache(maxsize=64)
def _inverse_gate(f: Func1D) -> None:
    """Admission check for inverse_triplet: strictly decreasing, range [-1, 1],
    and the cosine addition law within 1e-9 on a coarse grid."""
    grid = GridSpec(count=257)
    xs = grid.points(f.lo, f.hi)
    values = f(xs)
    if np.any(np.diff(values) >= 0.0):
        raise ValueError(f"{f.name} is not strictly decreasing")
    if abs(values[0] - 1.0) > 1e-9 or abs(values[-1] + 1.0) > 1e-9:
        raise ValueError(f"{f.name} does not have range [-1, 1]")
    verdict = check_function(f, "cosine_addition", grid, tol=1e-9)
    if not verdict.passed:
        raise ValueError(
            f"{f.name} violates the cosine addition law (residual {verdict.residual:.3e} at {verdict.witness})"
        )


def _invert_decreasing(f: Func1D, target: float, tol: float = 1e-12) -> float:
    if target > 1.0 + 1e-9 or target < -1.0 - 1e-9:
        raise ValueError(f"value {target} outside the range of {f.name}")
    target = min(1.0, max(-1.0, target))
    lo, hi = f.lo, f.hi
    if f(lo) <= target:
        return lo
    if f(hi) >= target:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) >= target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def inverse_triplet(s: Sym3, f: Func1D) -> TriangleTriplet:
    """(f^-1(a), f^-1(b), f^-1(c)) for a PSD triple; a triangle triplet.

    f must be strictly decreasing with range [-1, 1] and satisfy the cosine
    addition law (checked once per function and cached). Inverses are found by
    bisection to 1e-12 and clamped into [f^-1(1), f^-1(-1)].
    """
    require_psd(s)
    _inverse_gate(f)
    values = tuple(_invert_decreasing(f, x) for x in s.entries_tuple())
    triplet = TriangleTriplet(*(min(f.hi, max(f.lo, v)) for v in values))
    if not is_triangle(triplet, tol=1e-9):
        raise AssertionError(f"inverse triplet {triplet} is not triangle; this is a bug")
    return triplet


@lru_cache(maxsize=64)
def _preserver_gate(g: Func1D) -> None:
    """Sufficient condition for triangle preservation: nondecreasing,
    subadditive, and g(0) = 0, each checked on a covering grid.

    Sampling cannot certify full metric preservation, so this is an admission
    gate for the documented sufficient condition, not an oracle.
    """
    if abs(g.lo) > 1e-12:
        raise ValueError(f"{g.name} must be defined from 0 to gate triangle preservation")
    if abs(g(0.0)) > 1e-9:
        raise ValueError(f"{g.name}(0) = {g(0.0)} but must vanish at 0")
    for prop in ("nondecreasing", "subadditive"):
        verdict = check_function(g, prop, GridSpec(count=513), tol=1e-9)
        if not verdict.passed:
            raise ValueError(f"{g.name} fails the {prop} check at {verdict.witness}")


def transform_triplet(t: TriangleTriplet, g: Func1D) -> TriangleTriplet:
    """(g(a), g(b), g(c)) for a triangle triplet and an admissible g."""
    if not is_triangle(t, tol=1e-9):
        raise ValueError(f"input {t} is not a triangle triplet")
    _preserver_gate(g)
    if max(t.entries()) > g.hi + 1e-12:
        raise ValueError(f"triplet entries exceed the domain of {g.name}")
    out = TriangleTriplet(*(g(x) for x in t.entries()))
    if not is_triangle(out, tol=1e-9):
        raise ValueError(f"{g.name} mapped {t} outside the triangle set; the grid gate missed a violation")
    return out


def _normalized_products(u: Vector, v: Vector, w: Vector) -> tuple[complex, complex, complex]:
    for x in (u, v, w):
        if x.is_zero():
            raise ValueError("inner-product bounds are undefined for the zero vector")
    nu, nv, nw = u.norm(), v.norm(), w.norm()
    return (
        inner_product(u, v) / (nu * nv),
        inner_product(u, w) / (nu * nw),
        inner_product(w, v) / (nw * nv),
    )


def kth_root_certificates(u: Vector, v: Vector, w: Vector, k: float, tol: float = DEFAULT_TOL) -> list[Certificate]:
    """k-th-root triangle inequality for unit vectors, k >= 2:

        (1 - |<u,v>|^k)^(1/k) <= (1 - |<u,w>|^k)^(1/k) + (1 - |<w,v>|^k)^(1/k)

    emitted for the modulus and for |Re .| of the normalized inner products.
    """
    if k < 2.0:
        raise ValueError("k-th-root bound needs k >= 2")
    zuv, zuw, zwv = _normalized_products(u, v, w)
    certs = []
    for variant, convert in (("abs", abs), ("re", lambda z: abs(z.real))):
        muv = min(convert(zuv), 1.0)
        muw = min(convert(zuw), 1.0)
        mwv = min(convert(zwv), 1.0)
        root = lambda m: (1.0 - m**k) ** (1.0 / k)
        certs.append(
            Certificate(
                f"kth_root.{variant}",
                lhs=root(muv),
                rhs=root(muw) + root(mwv),
                tol=tol,
                context={"k": k, "uv": muv, "uw": muw, "wv": mwv},
            )
        )
    return certs


def angle_trig_certificates(
    u: Vector, v: Vector, w: Vector, kind: AngleKind = AngleKind.THETA, tol: float = DEFAULT_TOL
) -> list[Certificate]:
    """Triangle, sine, and mixed cosine/sine certificates for an angle triple.

    With (alpha, beta, gamma) = (angle(u,v), angle(v,w), angle(w,u)):

        alpha <= beta + gamma
        sin(alpha) <= sin(beta) + sin(gamma)
        cos(alpha) <= cos(beta) + sin(gamma)

    The mixed bound is a theorem only when the cosines involved are
    nonnegative; that always holds for the absolute-value angle (values in
    [0, pi/2]) but can fail for the real-part angle with obtuse pairs, so
    sweeps gate it accordingly.
    """
    triple = angle_triple(u, v, w, kind)
    a, b, c = triple.angles()
    ctx = {"alpha": a, "beta": b, "gamma": c, "kind": kind.value}
    return [
        Certificate("angle.triangle", lhs=a, rhs=b + c, tol=tol, context=ctx),
        Certificate("angle.sin", lhs=math.sin(a), rhs=math.sin(b) + math.sin(c), tol=tol, context=ctx),
        Certificate("angle.cos_sin", lhs=math.cos(a), rhs=math.cos(b) + math.sin(c), tol=tol, context=ctx),
    ]


def cos_sum_certificate(
    u: Vector, v: Vector, w: Vector, kind: AngleKind = AngleKind.THETA, tol: float = DEFAULT_TOL
) -> Certificate:
    """cos(alpha) against cos(beta) + cos(gamma): NOT a theorem.

    Kept as a dedicated regression input; u = (0,0,1), v = (1,0,1)/sqrt(2),
    w = (0,1,0) violates it by 1/sqrt(2).
    """
    triple = angle_triple(u, v, w, kind)
    a, b, c = triple.angles()
    return Certificate(
        "angle.cos_sum",
        lhs=math.cos(a),
        rhs=math.cos(b) + math.cos(c),
        tol=tol,
        context={"alpha": a, "beta": b, "gamma": c, "kind": kind.value},
    )


def counterexample_vectors() -> tuple[Vector, Vector, Vector]:
    """The real triple breaking the cosine-sum comparison (margin 1/sqrt(2))."""
    return (
        Vector(np.array([0.0, 0.0, 1.0])),
        Vector(np.array([1.0, 0.0, 1.0]) / math.sqrt(2.0)),
        Vector(np.array([0.0, 1.0, 0.0])),
    )


def obtuse_cos_sin_witness() -> tuple[Vector, Vector, Vector]:
    """Unit vectors breaking the mixed cos/sin bound for the real-part angle.

    Their Gram entries are (<u,v>, <u,w>, <v,w>) = (0.6, -0.9, -0.55), a PSD
    interior triple; cos(alpha) - cos(beta) - sin(gamma) = +0.714..., which is
    why the mixed bound is only claimed for nonnegative cosines.
    """
    u = Vector(np.array([1.0, 0.0, 0.0]))
    v = Vector(np.array([0.6, 0.8, 0.0]))
    w = Vector(np.array([-0.9, -0.0125, math.sqrt(0.18984375)]))
    return (u, v, w)

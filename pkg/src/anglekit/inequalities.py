"""Entrywise inequalities of correlation matrices and their certificates.

For a unit-diagonal PSD matrix [[1, a, b], [a, 1, c], [b, c, 1]] the third
entry is confined to the completion interval

    c in [c_minus, c_plus],  c_{-+} = a b -+ sqrt((1 - a^2)(1 - b^2))

and every certificate emitted here is a consequence: the |a^2 - b^2| and
|a - b| bounds, their arrangement-symmetric and sqrt(2) variants, the
entrywise-power bounds for nonnegative entries, the per-index-triple bounds
on an n x n correlation matrix, and the supremum of the cosine-power ratio
|cos^k(alpha) - cos^k(beta)| / sin(gamma) over triangle triples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .certificates import Certificate, DEFAULT_TOL
from .linalg import CorrelationMatrix, Sym3, Vector, inner_product, require_psd

__all__ = [
    "CompletionInterval",
    "DeltaBounds",
    "completion_interval",
    "delta_bounds",
    "pair_difference_certificates",
    "sin_bound_power_certificate",
    "interval_bound_no_sqrt2_certificate",
    "gram_triple_certificates",
    "hadamard_certificates",
    "entry_certificates",
    "general_index_violations",
    "cos_power_ratio",
    "cos_power_ratio_diagonal",
    "cos_power_ratio_sup",
    "cos_power_ratio_sup_grid",
    "cos_power_ratio_grid_scan",
    "RkGridScan",
]


def _sqrt_clamped(x: float) -> float:
    return math.sqrt(max(0.0, x))


def _sin_from_cos(c: float) -> float:
    # sqrt(1 - c^2) with c clamped into [-1, 1] to absorb boundary rounding.
    c = min(1.0, max(-1.0, c))
    return math.sqrt(1.0 - c * c)


@dataclass(frozen=True)
class CompletionInterval:
    c_minus: float
    c_plus: float

    def __post_init__(self) -> None:
        if not (self.c_minus <= self.c_plus + 1e-15):
            raise ValueError("empty completion interval")

    def contains(self, c: float, tol: float = 0.0) -> bool:
        return self.c_minus - tol <= c <= self.c_plus + tol


@dataclass(frozen=True)
class DeltaBounds:
    big_delta: float
    small_delta: float


def completion_interval(a: float, b: float) -> CompletionInterval:
    """Exact range of c keeping [[1,a,b],[a,1,c],[b,c,1]] positive semidefinite."""
    if abs(a) > 1.0 or abs(b) > 1.0:
        raise ValueError("completion interval needs |a| <= 1 and |b| <= 1")
    root = _sqrt_clamped((1.0 - a * a) * (1.0 - b * b))
    return CompletionInterval(a * b - root, a * b + root)


def delta_bounds(a: float, b: float) -> DeltaBounds:
    interval = completion_interval(a, b)
    lo = _sin_from_cos(interval.c_minus)
    hi = _sin_from_cos(interval.c_plus)
    return DeltaBounds(big_delta=max(lo, hi), small_delta=min(lo, hi))


_ARRANGEMENTS = (("ab|c", 0, 1, 2), ("ac|b", 0, 2, 1), ("bc|a", 1, 2, 0))


def pair_difference_certificates(s: Sym3, tol: float = DEFAULT_TOL) -> list[Certificate]:
    """Certificates for the entry-difference bounds of a PSD unit-diagonal triple.

    Emitted: |a^2 - b^2| <= Delta_{a,b} sqrt(1 - c^2); |a - b| <=
    sqrt(1 - c_minus) sqrt(1 - c); |a - b| <= sqrt(1 - c^2) when all entries
    are nonnegative; and for every arrangement (x, y | z) the symmetric forms
    |x^2 - y^2| <= sqrt(1 - z^2) and |x - y| <= sqrt(2) sqrt(1 - z).
    """
    require_psd(s)
    a, b, c = s.entries_tuple()
    bounds = delta_bounds(a, b)
    interval = completion_interval(a, b)
    certs = [
        Certificate(
            "pair.sq_diff_delta",
            lhs=abs(a * a - b * b),
            rhs=bounds.big_delta * _sin_from_cos(c),
            tol=tol,
            context={"a": a, "b": b, "c": c, "big_delta": bounds.big_delta},
        ),
        Certificate(
            "pair.diff_interval",
            lhs=abs(a - b),
            rhs=_sqrt_clamped(1.0 - interval.c_minus) * _sqrt_clamped(1.0 - c),
            tol=tol,
            context={"a": a, "b": b, "c": c, "c_minus": interval.c_minus},
        ),
    ]
    if min(a, b, c) >= 0.0:
        certs.append(
            Certificate(
                "pair.diff_nonneg",
                lhs=abs(a - b),
                rhs=_sin_from_cos(c),
                tol=tol,
                context={"a": a, "b": b, "c": c},
            )
        )
    entries = s.entries_tuple()
    for label, i, j, k in _ARRANGEMENTS:
        x, y, z = entries[i], entries[j], entries[k]
        certs.append(
            Certificate(
                "pair.sq_diff_any",
                lhs=abs(x * x - y * y),
                rhs=_sin_from_cos(z),
                tol=tol,
                context={"arrangement": label, "x": x, "y": y, "z": z},
            )
        )
        certs.append(
            Certificate(
                "pair.diff_sqrt2_any",
                lhs=abs(x - y),
                rhs=math.sqrt(2.0) * _sqrt_clamped(1.0 - z),
                tol=tol,
                context={"arrangement": label, "x": x, "y": y, "z": z},
            )
        )
    return certs


def sin_bound_power_certificate(s: Sym3, k: float, tol: float = DEFAULT_TOL) -> Certificate:
    """|a^k - b^k| against sqrt(1 - c^2) on nonnegative entries.

    Valid for k in {1, 2}; for k >= 3 it is known to fail (negative regression:
    a = 1, b = c = 0.1 gives 0.999 > 0.99499 at k = 3), which guards the suite
    against being accidentally lenient.
    """
    require_psd(s)
    if min(s.a, s.b, s.c) < 0.0:
        raise ValueError("power comparison needs nonnegative entries")
    return Certificate(
        "pair.power_diff_vs_sin",
        lhs=abs(s.a**k - s.b**k),
        rhs=_sin_from_cos(s.c),
        tol=tol,
        context={"a": s.a, "b": s.b, "c": s.c, "k": k},
    )


def interval_bound_no_sqrt2_certificate(s: Sym3, tol: float = DEFAULT_TOL) -> Certificate:
    """|a - b| against plain sqrt(1 - c); the sqrt(2) factor cannot be dropped.

    Negative regression: a = 0, b = 0.4, c = 0.91 gives 0.4 > 0.3.
    """
    require_psd(s)
    return Certificate(
        "pair.diff_no_sqrt2",
        lhs=abs(s.a - s.b),
        rhs=_sqrt_clamped(1.0 - s.c),
        tol=tol,
        context={"a": s.a, "b": s.b, "c": s.c},
    )


def gram_triple_certificates(u: Vector, v: Vector, w: Vector, tol: float = DEFAULT_TOL) -> list[Certificate]:
    """Cubic inequalities for the pairwise inner products of three unit vectors.

    abs form: 1 + 2 |zuv| |zvw| |zwu| >= |zuv|^2 + |zvw|^2 + |zwu|^2
    re form:  1 + 2 Re(zuv zvw zwu)  >= same right-hand side (the stronger one)
    """
    for x in (u, v, w):
        if x.is_zero():
            raise ValueError("unit normalization is undefined for the zero vector")
    norms = (u.norm(), v.norm(), w.norm())
    zuv = inner_product(u, v) / (norms[0] * norms[1])
    zvw = inner_product(v, w) / (norms[1] * norms[2])
    zwu = inner_product(w, u) / (norms[2] * norms[0])
    sq_sum = abs(zuv) ** 2 + abs(zvw) ** 2 + abs(zwu) ** 2
    context = {"norms": norms}
    return [
        Certificate(
            "gram_triple.abs",
            lhs=sq_sum,
            rhs=1.0 + 2.0 * abs(zuv) * abs(zvw) * abs(zwu),
            tol=tol,
            context=context,
        ),
        Certificate(
            "gram_triple.re",
            lhs=sq_sum,
            rhs=1.0 + 2.0 * (zuv * zvw * zwu).real,
            tol=tol,
            context=context,
        ),
    ]


def _abs_diff_certificates(
    x: float,
    y: float,
    z: float,
    k: float | None,
    tol: float,
    prefix: str,
    context: dict,
) -> list[Certificate]:
    """Shared kernel: ||x|-|y|| <= sqrt(1-|z|^2) <= sqrt(2) sqrt(1-|z|), plus
    the entrywise-power form ||x|^k - |y|^k| <= sqrt(1-|z|^k) when k is given."""
    ax, ay, az = abs(x), abs(y), min(abs(z), 1.0)
    certs = [
        Certificate(
            f"{prefix}.abs_diff",
            lhs=abs(ax - ay),
            rhs=_sin_from_cos(az),
            tol=tol,
            context=context,
        ),
        Certificate(
            f"{prefix}.sqrt2_chain",
            lhs=_sin_from_cos(az),
            rhs=math.sqrt(2.0) * _sqrt_clamped(1.0 - az),
            tol=tol,
            context=context,
        ),
    ]
    if k is not None:
        certs.append(
            Certificate(
                f"{prefix}.power_diff",
                lhs=abs(ax**k - ay**k),
                rhs=_sqrt_clamped(1.0 - az**k),
                tol=tol,
                context={**context, "k": k},
            )
        )
    return certs


def hadamard_certificates(s: Sym3, k: float, tol: float = DEFAULT_TOL) -> list[Certificate]:
    """Entrywise-power certificates for one PSD unit-diagonal triple.

    Base: ||a|-|b|| <= sqrt(1-|c|^2) <= sqrt(2) sqrt(1-|c|).
    Power (real k >= 2): ||a|^k - |b|^k| <= sqrt(1-|c|^k).
    Integer k >= 1: |cos^k(alpha) - cos^k(beta)| <= sqrt(k) sin(gamma) for
    (alpha, beta, gamma) = arccos(|a|, |b|, |c|).
    """
    if k < 1.0:
        raise ValueError("power bound needs k >= 1")
    require_psd(s)
    a, b, c = s.entries_tuple()
    ctx = {"a": a, "b": b, "c": c}
    certs = _abs_diff_certificates(a, b, c, k if k >= 2.0 else None, tol, "hadamard", ctx)
    if float(k).is_integer() and k >= 1.0:
        kk = int(k)
        alpha = math.acos(min(abs(a), 1.0))
        beta = math.acos(min(abs(b), 1.0))
        gamma = math.acos(min(abs(c), 1.0))
        certs.append(
            Certificate(
                "hadamard.cos_power_sin",
                lhs=abs(math.cos(alpha) ** kk - math.cos(beta) ** kk),
                rhs=math.sqrt(kk) * math.sin(gamma),
                tol=tol,
                context={**ctx, "k": kk, "alpha": alpha, "beta": beta, "gamma": gamma},
            )
        )
    return certs


def _index_triples(n: int):
    for i in range(n - 2):
        for p in range(i + 1, n - 1):
            for q in range(p + 1, n):
                yield i, p, q


def entry_certificates(a: CorrelationMatrix, k: float, tol: float = DEFAULT_TOL) -> list[Certificate]:
    """Per-index-triple bounds on the entries of an n x n correlation matrix.

    For every i < p < q the 3x3 principal submatrix on (i, p, q) yields, with
    x = a_ip, y = a_iq, z = a_pq, both for moduli and for real parts:

        ||x| - |y|| <= sqrt(1 - |z|^2) <= sqrt(2) sqrt(1 - |z|)
        ||x|^k - |y|^k| <= sqrt(1 - |z|^k)       (real k >= 2)
    """
    if k < 2.0:
        raise ValueError("entry bounds need k >= 2")
    certs: list[Certificate] = []
    arr = a.to_array()
    for i, p, q in _index_triples(a.n):
        for variant, convert in (("abs", abs), ("re", lambda z: z.real)):
            x = convert(arr[i, p])
            y = convert(arr[i, q])
            z = convert(arr[p, q])
            ctx = {"i": i, "p": p, "q": q, "variant": variant}
            certs.extend(_abs_diff_certificates(x, y, z, k, tol, "entry", ctx))
    return certs


def general_index_violations(a: CorrelationMatrix, k: float, tol: float = DEFAULT_TOL) -> list[Certificate]:
    """Exploratory scan of the four-index variant with j decoupled from p.

    The bound ||a_ip| - |a_iq|| <= sqrt(1 - |a_jq|^2) with independent j
    (i < p < q, i < j < q, j != p) admits counterexamples — for instance the
    Gram matrix of (e1, e2, e1, e1) with (i, p, q, j) = (0, 1, 3, 2) gives
    1 > 0 — so violations are reported for inspection instead of failing.
    """
    violations: list[Certificate] = []
    arr = a.to_array()
    for i, p, q in _index_triples(a.n):
        for j in range(i + 1, q):
            if j == p:
                continue
            lhs = abs(abs(arr[i, p]) - abs(arr[i, q]))
            az = min(abs(arr[j, q]), 1.0)
            cert = Certificate(
                "exploratory.general_index",
                lhs=lhs,
                rhs=_sin_from_cos(az),
                tol=tol,
                context={"i": i, "p": p, "q": q, "j": j, "k": k},
            )
            if not cert.passed:
                violations.append(cert)
    return violations


def _require_triangle_angles(alpha: float, beta: float, gamma: float) -> None:
    half_pi = math.pi / 2
    for name, val in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not 0.0 <= val <= half_pi + 1e-12:
            raise ValueError(f"{name} must lie in [0, pi/2]")
    if not abs(alpha - beta) - 1e-12 <= gamma <= alpha + beta + 1e-12:
        raise ValueError("(alpha, beta, gamma) is not a triangle triple")


def cos_power_ratio(alpha: float, beta: float, gamma: float, k: int) -> float:
    """|cos^k(alpha) - cos^k(beta)| / sin(gamma) over triangle triples, gamma != 0."""
    if k < 1:
        raise ValueError("power must satisfy k >= 1")
    _require_triangle_angles(alpha, beta, gamma)
    if gamma == 0.0:
        raise ValueError("ratio undefined at gamma = 0")
    if alpha == beta:
        return 0.0
    return abs(math.cos(alpha) ** k - math.cos(beta) ** k) / math.sin(gamma)


def cos_power_ratio_diagonal(t: float, k: int) -> float:
    """Limit value k sin(t) cos^(k-1)(t) of the ratio as alpha, beta -> t."""
    return k * math.sin(t) * math.cos(t) ** (k - 1)


def cos_power_ratio_sup(k: int) -> float:
    """Exact supremum k / sqrt(k-1) * (1 - 1/k)^(k/2); ~ sqrt(k/e) for large k."""
    if k < 2:
        raise ValueError("supremum formula needs k >= 2")
    return k / math.sqrt(k - 1.0) * (1.0 - 1.0 / k) ** (k / 2.0)


@dataclass(frozen=True)
class RkGridScan:
    k: int
    grid_n: int
    max_value: float
    argmax_alpha: float
    argmax_beta: float
    diagonal_argmax: float


def cos_power_ratio_grid_scan(k: int, grid_n: int) -> RkGridScan:
    """Maximize (cos^k(beta) - cos^k(alpha)) / sin(alpha - beta) on a grid.

    The grid covers the triangle pi/2 >= alpha >= beta >= 0 with grid_n points
    per axis; on the diagonal the analytic limit k sin(t) cos^(k-1)(t) is used.
    Approaches the closed-form supremum from below as grid_n grows.
    """
    if k < 2:
        raise ValueError("grid scan needs k >= 2")
    if grid_n < 10:
        raise ValueError("grid scan needs grid_n >= 10")
    ts = np.linspace(0.0, math.pi / 2, grid_n)
    cos_k = np.cos(ts) ** k
    # numerator[i, j] = cos^k(beta_j) - cos^k(alpha_i), meaningful for i > j
    numerator = cos_k[None, :] - cos_k[:, None]
    denominator = np.sin(ts[:, None] - ts[None, :])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = numerator / denominator
    diag = k * np.sin(ts) * np.cos(ts) ** (k - 1)
    ratio[~np.tril(np.ones((grid_n, grid_n), dtype=bool), -1)] = -np.inf
    np.fill_diagonal(ratio, diag)
    flat_idx = int(np.argmax(ratio))
    ai, bj = divmod(flat_idx, grid_n)
    diag_idx = int(np.argmax(diag))
    return RkGridScan(
        k=k,
        grid_n=grid_n,
        max_value=float(ratio[ai, bj]),
        argmax_alpha=float(ts[ai]),
        argmax_beta=float(ts[bj]),
        diagonal_argmax=float(ts[diag_idx]),
    )


def cos_power_ratio_sup_grid(k: int, grid_n: int) -> float:
    return cos_power_ratio_grid_scan(k, grid_n).max_value

"""Vectorized randomized sweeps over the certificate families.

Each family draws its own seeded sample batch, evaluates one group of
inequality certificates over the whole batch with numpy, and reports an
aggregate: counts, worst slack, and a handful of materialized failures. The
scalar certificate functions in `inequalities` / `metric_functions` remain the
reference semantics; tests re-run sub-batches through them to pin the kernels
down.

Sampling uses one child stream per family, derived from (seed, family index),
so reports do not depend on how families are scheduled across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .certificates import Certificate
from .eigen import eig3_hermitian

__all__ = [
    "SweepConfig",
    "FamilyResult",
    "family_names",
    "run_family",
    "run_all_families",
    "sample_unit_rows",
    "sample_sym3_batch",
    "sample_correlation_batch",
    "phase_grid_check",
    "psd_triangle_equivalence",
    "completion_oracle_check",
    "exploratory_general_index",
    "GENERAL_INDEX_CANDIDATE",
]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SweepConfig:
    samples: int = 100_000
    tol: float = 1e-9
    k_list: tuple[float, ...] = (2.0, 3.0, 5.5, 7.0)
    dims: tuple[int, ...] = (3,)

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if any(k < 1.0 for k in self.k_list):
            raise ValueError("power values must be >= 1")
        if any(d < 1 for d in self.dims):
            raise ValueError("dimensions must be >= 1")

    @property
    def power_ks(self) -> tuple[float, ...]:
        return tuple(k for k in self.k_list if k >= 2.0)

    @property
    def integer_ks(self) -> tuple[int, ...]:
        return tuple(int(k) for k in self.k_list if float(k).is_integer() and k >= 1.0)


@dataclass
class FamilyResult:
    name: str
    samples: int
    certificates: int = 0
    failures: int = 0
    worst_slack: float = math.inf
    worst_id: str = ""
    worst_context: dict = field(default_factory=dict)
    failure_examples: list[Certificate] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "samples": self.samples,
            "certificates": self.certificates,
            "failures": self.failures,
            "worst_slack": float(self.worst_slack),
            "worst_id": self.worst_id,
            "worst_context": self.worst_context,
            "failure_examples": [c.to_dict() for c in self.failure_examples],
        }


class _Accumulator:
    """Streams (lhs, rhs) arrays into a FamilyResult."""

    MAX_EXAMPLES = 3

    def __init__(self, name: str, samples: int, tol: float) -> None:
        self.result = FamilyResult(name=name, samples=samples)
        self.tol = tol

    def add(
        self,
        ineq_id: str,
        lhs: np.ndarray,
        rhs: np.ndarray,
        *,
        tol: float | None = None,
        sample_idx: np.ndarray | None = None,
        extra: dict | None = None,
    ) -> None:
        lhs = np.atleast_1d(np.asarray(lhs, dtype=float))
        rhs = np.atleast_1d(np.asarray(rhs, dtype=float))
        slack = rhs - lhs
        band = self.tol if tol is None else tol
        res = self.result
        res.certificates += slack.size
        if slack.size == 0:
            return
        worst_pos = int(np.argmin(slack))
        worst_val = float(slack[worst_pos])
        if worst_val < res.worst_slack:
            res.worst_slack = worst_val
            res.worst_id = ineq_id
            res.worst_context = {
                "sample": int(sample_idx[worst_pos]) if sample_idx is not None else worst_pos,
                **(extra or {}),
            }
        failing = np.nonzero(slack < -band)[0]
        res.failures += int(failing.size)
        for pos in failing[: max(0, self.MAX_EXAMPLES - len(res.failure_examples))]:
            res.failure_examples.append(
                Certificate(
                    ineq_id,
                    lhs=float(lhs[pos]),
                    rhs=float(rhs[pos]),
                    tol=band,
                    context={
                        "sample": int(sample_idx[pos]) if sample_idx is not None else int(pos),
                        **(extra or {}),
                    },
                )
            )


# ---------------------------------------------------------------------------
# samplers


def sample_unit_rows(rng: np.random.Generator, count: int, dim: int, complex_field: bool) -> np.ndarray:
    rows = rng.standard_normal((count, dim))
    if complex_field:
        rows = rows + 1j * rng.standard_normal((count, dim))
    norms = np.sqrt(np.einsum("ij,ij->i", rows.conj(), rows).real)
    return rows / norms[:, None]


def _pairwise_products(u: np.ndarray, v: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    zuv = np.einsum("ij,ij->i", u, v.conj())
    zvw = np.einsum("ij,ij->i", v, w.conj())
    zwu = np.einsum("ij,ij->i", w, u.conj())
    return zuv, zvw, zwu


def sample_sym3_batch(rng: np.random.Generator, count: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Off-diagonal entries (a, b, c) of random 3x3 real correlation matrices."""
    u = sample_unit_rows(rng, count, 3, False)
    v = sample_unit_rows(rng, count, 3, False)
    w = sample_unit_rows(rng, count, 3, False)
    a = np.einsum("ij,ij->i", u, v)
    b = np.einsum("ij,ij->i", u, w)
    c = np.einsum("ij,ij->i", v, w)
    return a, b, c


def sample_correlation_batch(
    rng: np.random.Generator, count: int, n: int, dim: int, complex_field: bool
) -> np.ndarray:
    """Batched Gram matrices of n unit vectors each; exact unit diagonals."""
    rows = rng.standard_normal((count, n, dim))
    if complex_field:
        rows = rows + 1j * rng.standard_normal((count, n, dim))
    norms = np.sqrt(np.einsum("cnd,cnd->cn", rows.conj(), rows).real)
    rows = rows / norms[:, :, None]
    grams = np.einsum("cid,cjd->cij", rows, rows.conj())
    idx = np.arange(n)
    grams[:, idx, idx] = 1.0
    return grams


def _batched_orthonormal(mats: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt (two passes) over the last two axes."""
    q = np.array(mats, dtype=complex, copy=True)
    cols = q.shape[-1]
    for j in range(cols):
        v = q[..., :, j].copy()
        for _ in range(2):
            for i in range(j):
                qi = q[..., :, i]
                coeff = np.einsum("...r,...r->...", qi.conj(), v)
                v = v - coeff[..., None] * qi
        nrm = np.sqrt(np.einsum("...r,...r->...", v.conj(), v).real)
        q[..., :, j] = v / nrm[..., None]
    return q


def _min_eig3_batch(mats: np.ndarray) -> np.ndarray:
    return eig3_hermitian(mats)[..., 0]


# ---------------------------------------------------------------------------
# certificate kernels


def _clip01(x: np.ndarray) -> np.ndarray:
    return np.clip(x, 0.0, 1.0)


def _sin_from_cos_arr(c: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 - np.clip(c, -1.0, 1.0) ** 2)


def _triangle_family(rng: np.random.Generator, cfg: SweepConfig, dim: int, complex_field: bool) -> FamilyResult:
    tag = "complex" if complex_field else "real"
    acc = _Accumulator(f"triangle.{tag}.d{dim}", cfg.samples, cfg.tol)
    u = sample_unit_rows(rng, cfg.samples, dim, complex_field)
    v = sample_unit_rows(rng, cfg.samples, dim, complex_field)
    w = sample_unit_rows(rng, cfg.samples, dim, complex_field)
    zuv, zvw, zwu = _pairwise_products(u, v, w)
    for kind, convert in (("theta", np.abs), ("cap_theta", np.real)):
        alpha = np.arccos(np.clip(convert(zuv), -1.0, 1.0))
        beta = np.arccos(np.clip(convert(zvw), -1.0, 1.0))
        gamma = np.arccos(np.clip(convert(zwu), -1.0, 1.0))
        worst = np.maximum(
            np.maximum(alpha - beta - gamma, beta - gamma - alpha), gamma - alpha - beta
        )
        acc.add(f"triangle.{kind}", worst, np.zeros_like(worst), extra={"dim": dim, "field": tag})
    return acc.result


def _gram_triple_family(rng: np.random.Generator, cfg: SweepConfig, dim: int, complex_field: bool) -> FamilyResult:
    tag = "complex" if complex_field else "real"
    acc = _Accumulator(f"gram_triple.{tag}.d{dim}", cfg.samples, cfg.tol)
    u = sample_unit_rows(rng, cfg.samples, dim, complex_field)
    v = sample_unit_rows(rng, cfg.samples, dim, complex_field)
    w = sample_unit_rows(rng, cfg.samples, dim, complex_field)
    zuv, zvw, zwu = _pairwise_products(u, v, w)
    sq_sum = np.abs(zuv) ** 2 + np.abs(zvw) ** 2 + np.abs(zwu) ** 2
    triple = zuv * zvw * zwu
    acc.add("gram_triple.abs", sq_sum, 1.0 + 2.0 * np.abs(triple), extra={"dim": dim, "field": tag})
    acc.add("gram_triple.re", sq_sum, 1.0 + 2.0 * triple.real, extra={"dim": dim, "field": tag})
    # Re(T) <= |T| makes the re-form imply the abs-form; keep that auditable.
    acc.add("gram_triple.re_le_abs", triple.real, np.abs(triple), extra={"dim": dim, "field": tag})
    return acc.result


def _kth_root_family(rng: np.random.Generator, cfg: SweepConfig, dim: int, complex_field: bool) -> FamilyResult:
    tag = "complex" if complex_field else "real"
    acc = _Accumulator(f"kth_root.{tag}.d{dim}", cfg.samples, cfg.tol)
    u = sample_unit_rows(rng, cfg.samples, dim, complex_field)
    v = sample_unit_rows(rng, cfg.samples, dim, complex_field)
    w = sample_unit_rows(rng, cfg.samples, dim, complex_field)
    zuv = np.einsum("ij,ij->i", u, v.conj())
    zuw = np.einsum("ij,ij->i", u, w.conj())
    zwv = np.einsum("ij,ij->i", w, v.conj())
    for variant, convert in (("abs", np.abs), ("re", lambda z: np.abs(z.real))):
        muv = _clip01(convert(zuv))
        muw = _clip01(convert(zuw))
        mwv = _clip01(convert(zwv))
        for k in cfg.power_ks:
            root = lambda m: (1.0 - m**k) ** (1.0 / k)
            acc.add(
                f"kth_root.{variant}",
                root(muv),
                root(muw) + root(mwv),
                extra={"k": k, "dim": dim, "field": tag},
            )
    return acc.result


def _completion_arrays(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    root = np.sqrt(np.clip((1.0 - a * a) * (1.0 - b * b), 0.0, None))
    return a * b - root, a * b + root


def _pair_bounds_family(rng: np.random.Generator, cfg: SweepConfig) -> FamilyResult:
    acc = _Accumulator("sym3.pair_bounds", cfg.samples, cfg.tol)
    a, b, c = sample_sym3_batch(rng, cfg.samples)
    c_minus, c_plus = _completion_arrays(a, b)
    big_delta = np.maximum(_sin_from_cos_arr(c_minus), _sin_from_cos_arr(c_plus))
    acc.add("pair.sq_diff_delta", np.abs(a * a - b * b), big_delta * _sin_from_cos_arr(c))
    acc.add(
        "pair.diff_interval",
        np.abs(a - b),
        np.sqrt(np.clip(1.0 - c_minus, 0.0, None)) * np.sqrt(np.clip(1.0 - c, 0.0, None)),
    )
    nonneg = np.nonzero((a >= 0.0) & (b >= 0.0) & (c >= 0.0))[0]
    acc.add(
        "pair.diff_nonneg",
        np.abs(a[nonneg] - b[nonneg]),
        _sin_from_cos_arr(c[nonneg]),
        sample_idx=nonneg,
    )
    for label, x, y, z in (("ab|c", a, b, c), ("ac|b", a, c, b), ("bc|a", b, c, a)):
        acc.add("pair.sq_diff_any", np.abs(x * x - y * y), _sin_from_cos_arr(z), extra={"arrangement": label})
        acc.add(
            "pair.diff_sqrt2_any",
            np.abs(x - y),
            SQRT2 * np.sqrt(np.clip(1.0 - z, 0.0, None)),
            extra={"arrangement": label},
        )
    return acc.result


def _hadamard_family(rng: np.random.Generator, cfg: SweepConfig) -> FamilyResult:
    acc = _Accumulator("sym3.hadamard", cfg.samples, cfg.tol)
    a, b, c = sample_sym3_batch(rng, cfg.samples)
    aa, ab, ac = np.abs(a), np.abs(b), _clip01(np.abs(c))
    sin_c = _sin_from_cos_arr(ac)
    acc.add("hadamard.abs_diff", np.abs(aa - ab), sin_c)
    acc.add("hadamard.sqrt2_chain", sin_c, SQRT2 * np.sqrt(np.clip(1.0 - ac, 0.0, None)))
    for k in cfg.power_ks:
        acc.add("hadamard.power_diff", np.abs(aa**k - ab**k), np.sqrt(np.clip(1.0 - ac**k, 0.0, None)), extra={"k": k})
    for k in cfg.integer_ks:
        acc.add("hadamard.cos_power_sin", np.abs(aa**k - ab**k), math.sqrt(k) * sin_c, extra={"k": k})
    return acc.result


_ENTRY_N = 6


def _entry_kernel(acc: _Accumulator, grams: np.ndarray, ks: Sequence[float], extra: dict) -> None:
    n = grams.shape[-1]
    for i in range(n - 2):
        for p in range(i + 1, n - 1):
            for q in range(p + 1, n):
                for variant, convert in (("abs", np.abs), ("re", np.real)):
                    x = convert(grams[:, i, p])
                    y = convert(grams[:, i, q])
                    z = convert(grams[:, p, q])
                    ax, ay, az = np.abs(x), np.abs(y), _clip01(np.abs(z))
                    ctx = {"i": i, "p": p, "q": q, "variant": variant, **extra}
                    sin_z = _sin_from_cos_arr(az)
                    acc.add("entry.abs_diff", np.abs(ax - ay), sin_z, extra=ctx)
                    acc.add("entry.sqrt2_chain", sin_z, SQRT2 * np.sqrt(np.clip(1.0 - az, 0.0, None)), extra=ctx)
                    for k in ks:
                        acc.add(
                            "entry.power_diff",
                            np.abs(ax**k - ay**k),
                            np.sqrt(np.clip(1.0 - az**k, 0.0, None)),
                            extra={**ctx, "k": k},
                        )


def _entry_family(rng: np.random.Generator, cfg: SweepConfig, complex_field: bool) -> FamilyResult:
    tag = "complex" if complex_field else "real"
    acc = _Accumulator(f"entry.{tag}.n{_ENTRY_N}", cfg.samples, cfg.tol)
    grams = sample_correlation_batch(rng, cfg.samples, _ENTRY_N, _ENTRY_N, complex_field)
    _entry_kernel(acc, grams, cfg.power_ks, {"field": tag})
    return acc.result


def _angle_trig_family(rng: np.random.Generator, cfg: SweepConfig, dim: int, cap: bool) -> FamilyResult:
    tag = "cap" if cap else "theta"
    acc = _Accumulator(f"angle_trig.{tag}.d{dim}", cfg.samples, cfg.tol)
    u = sample_unit_rows(rng, cfg.samples, dim, False)
    v = sample_unit_rows(rng, cfg.samples, dim, False)
    w = sample_unit_rows(rng, cfg.samples, dim, False)
    zuv, zvw, zwu = _pairwise_products(u, v, w)
    convert = np.real if cap else np.abs
    cos_a = np.clip(convert(zuv), -1.0, 1.0)
    cos_b = np.clip(convert(zvw), -1.0, 1.0)
    cos_c = np.clip(convert(zwu), -1.0, 1.0)
    alpha, beta, gamma = np.arccos(cos_a), np.arccos(cos_b), np.arccos(cos_c)
    acc.add("angle.triangle", alpha, beta + gamma, extra={"kind": tag})
    acc.add("angle.sin", np.sin(alpha), np.sin(beta) + np.sin(gamma), extra={"kind": tag})
    if cap:
        # The mixed bound needs nonnegative cosines; obtuse real-part angles
        # genuinely violate it, so only the acute-cosine samples are claimed.
        sel = np.nonzero((cos_a >= 0.0) & (cos_b >= 0.0) & (cos_c >= 0.0))[0]
    else:
        sel = np.arange(cfg.samples)
    acc.add(
        "angle.cos_sin",
        cos_a[sel],
        cos_b[sel] + np.sin(gamma[sel]),
        sample_idx=sel,
        extra={"kind": tag},
    )
    return acc.result


_CONSTRUCTOR_COUNT = 3
_CONSTRUCTOR_DIM = 3
_CONSTRUCTOR_PSD_TOL = 1e-8


def _constructor_entry_checks(acc: _Accumulator, entries: np.ndarray, cfg: SweepConfig, label: str) -> None:
    min_eig = _min_eig3_batch(entries)
    acc.add(
        "constructor.psd_min_eig",
        np.zeros(entries.shape[0]),
        min_eig,
        tol=_CONSTRUCTOR_PSD_TOL * entries.shape[-1],
        extra={"constructor": label},
    )
    ks = tuple(k for k in cfg.power_ks) or (2.0,)
    _entry_kernel(acc, entries, ks, {"constructor": label})


def _trace_gram_family(rng: np.random.Generator, cfg: SweepConfig) -> FamilyResult:
    acc = _Accumulator("constructor.trace", cfg.samples, cfg.tol)
    f = rng.standard_normal((cfg.samples, _CONSTRUCTOR_COUNT, _CONSTRUCTOR_DIM, _CONSTRUCTOR_DIM))
    f = f + 1j * rng.standard_normal(f.shape)
    scale = np.sqrt(np.einsum("csab,csab->cs", f.conj(), f).real)
    f = f / scale[:, :, None, None]
    entries = np.einsum("csab,ctab->cst", f.conj(), f)
    idx = np.arange(_CONSTRUCTOR_COUNT)
    entries[:, idx, idx] = 1.0
    _constructor_entry_checks(acc, entries, cfg, "trace")
    return acc.result


def _abs_trace_gram_family(rng: np.random.Generator, cfg: SweepConfig) -> FamilyResult:
    acc = _Accumulator("constructor.abs_trace", cfg.samples, cfg.tol)
    f = rng.standard_normal((cfg.samples, _CONSTRUCTOR_COUNT, _CONSTRUCTOR_DIM, _CONSTRUCTOR_DIM))
    f = f + 1j * rng.standard_normal(f.shape)
    scale = np.sqrt(np.einsum("csab,csab->cs", f.conj(), f).real)
    f = f / scale[:, :, None, None]
    products = np.einsum("nsba,ntbc->nstac", f.conj(), f)
    gram_of_products = np.einsum("nstba,nstbc->nstac", products.conj(), products)
    eigs = np.clip(eig3_hermitian(gram_of_products), 0.0, None)
    entries = np.sqrt(eigs).sum(axis=-1)
    idx = np.arange(_CONSTRUCTOR_COUNT)
    entries[:, idx, idx] = 1.0
    entries = 0.5 * (entries + np.swapaxes(entries, 1, 2))
    _constructor_entry_checks(acc, entries.astype(complex), cfg, "abs_trace")
    return acc.result


def _det_gram_family(rng: np.random.Generator, cfg: SweepConfig) -> FamilyResult:
    acc = _Accumulator("constructor.det", cfg.samples, cfg.tol)
    mats = rng.standard_normal((cfg.samples, _CONSTRUCTOR_COUNT, 4, 2))
    mats = mats + 1j * rng.standard_normal(mats.shape)
    isos = _batched_orthonormal(mats)
    products = np.einsum("nsba,ntbc->nstac", isos.conj(), isos)
    dets = products[..., 0, 0] * products[..., 1, 1] - products[..., 0, 1] * products[..., 1, 0]
    idx = np.arange(_CONSTRUCTOR_COUNT)
    dets[:, idx, idx] = 1.0
    _constructor_entry_checks(acc, dets, cfg, "det")
    return acc.result


# ---------------------------------------------------------------------------
# family registry


def _families(cfg: SweepConfig) -> list[tuple[str, Callable[[np.random.Generator], FamilyResult]]]:
    fams: list[tuple[str, Callable[[np.random.Generator], FamilyResult]]] = []
    for dim in cfg.dims:
        fams.append((f"triangle.real.d{dim}", lambda rng, d=dim: _triangle_family(rng, cfg, d, False)))
        fams.append((f"triangle.complex.d{dim}", lambda rng, d=dim: _triangle_family(rng, cfg, d, True)))
        fams.append((f"gram_triple.real.d{dim}", lambda rng, d=dim: _gram_triple_family(rng, cfg, d, False)))
        fams.append((f"gram_triple.complex.d{dim}", lambda rng, d=dim: _gram_triple_family(rng, cfg, d, True)))
        fams.append((f"kth_root.real.d{dim}", lambda rng, d=dim: _kth_root_family(rng, cfg, d, False)))
        fams.append((f"kth_root.complex.d{dim}", lambda rng, d=dim: _kth_root_family(rng, cfg, d, True)))
        fams.append((f"angle_trig.theta.d{dim}", lambda rng, d=dim: _angle_trig_family(rng, cfg, d, False)))
        fams.append((f"angle_trig.cap.d{dim}", lambda rng, d=dim: _angle_trig_family(rng, cfg, d, True)))
    fams.append(("sym3.pair_bounds", lambda rng: _pair_bounds_family(rng, cfg)))
    fams.append(("sym3.hadamard", lambda rng: _hadamard_family(rng, cfg)))
    fams.append((f"entry.real.n{_ENTRY_N}", lambda rng: _entry_family(rng, cfg, False)))
    fams.append((f"entry.complex.n{_ENTRY_N}", lambda rng: _entry_family(rng, cfg, True)))
    fams.append(("constructor.trace", lambda rng: _trace_gram_family(rng, cfg)))
    fams.append(("constructor.abs_trace", lambda rng: _abs_trace_gram_family(rng, cfg)))
    fams.append(("constructor.det", lambda rng: _det_gram_family(rng, cfg)))
    return fams


def family_names(cfg: SweepConfig) -> list[str]:
    return [name for name, _ in _families(cfg)]


def _family_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=[int(seed), int(index)]))


def run_family(name: str, seed: int, cfg: SweepConfig) -> FamilyResult:
    for index, (fam_name, fn) in enumerate(_families(cfg)):
        if fam_name == name:
            return fn(_family_rng(seed, index))
    raise ValueError(f"unknown family {name!r}")


def run_all_families(seed: int, cfg: SweepConfig, *, max_workers: int = 1) -> list[FamilyResult]:
    """Run every family; results are ordered by the registry regardless of threads."""
    fams = _families(cfg)
    rngs = [_family_rng(seed, i) for i in range(len(fams))]
    if max_workers <= 1:
        return [fn(rng) for (name, fn), rng in zip(fams, rngs)]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        futures = [pool.submit(fn, rng) for (name, fn), rng in zip(fams, rngs)]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# oracle-style crosschecks used by the acceptance suite


def phase_grid_check(seed: int, pairs: int, dim: int, grid_size: int) -> dict:
    """Phase-minimum identity: grid minimum vs closed-form angle per pair.

    Returns the largest |grid_min - theta| (bounded by pi / grid_size) and the
    largest deviation of the exact-minimizer evaluation from theta.
    """
    rng = _family_rng(seed, 101)
    u = sample_unit_rows(rng, pairs, dim, True)
    v = sample_unit_rows(rng, pairs, dim, True)
    z = np.einsum("ij,ij->i", u, v.conj())
    theta = np.arccos(_clip01(np.abs(z)))
    phases = np.exp(2j * math.pi * np.arange(grid_size) / grid_size)
    # cap_theta(p u, v) = arccos(Re(p z)); evaluate the full grid per pair.
    grid_cos = np.real(phases[None, :] * z[:, None])
    grid_min = np.arccos(np.clip(grid_cos, -1.0, 1.0)).min(axis=1)
    # exact minimizer p = <v, u> / |<v, u>|
    zbar = np.conj(z)
    safe = np.abs(zbar) > 0.0
    p = np.where(safe, zbar / np.where(safe, np.abs(zbar), 1.0), 1.0)
    exact = np.arccos(np.clip(np.real(p * z), -1.0, 1.0))
    return {
        "pairs": pairs,
        "grid_size": grid_size,
        "max_grid_gap": float(np.max(grid_min - theta)),
        "min_grid_gap": float(np.min(grid_min - theta)),
        "max_exact_gap": float(np.max(np.abs(exact - theta))),
    }


def psd_triangle_equivalence(seed: int, samples: int, band: float = 1e-9) -> dict:
    """PSD verdict vs arccos-triplet triangle verdict on uniform [0, 1]^3 triples.

    The spectral route (closed-form eigenvalues) and the arccos route must
    agree outside a band around each boundary.
    """
    rng = _family_rng(seed, 102)
    a, b, c = rng.uniform(0.0, 1.0, size=(3, samples))
    mats = np.empty((samples, 3, 3))
    mats[:, 0, 0] = mats[:, 1, 1] = mats[:, 2, 2] = 1.0
    mats[:, 0, 1] = mats[:, 1, 0] = a
    mats[:, 0, 2] = mats[:, 2, 0] = b
    mats[:, 1, 2] = mats[:, 2, 1] = c
    min_eig = _min_eig3_batch(mats)
    psd = min_eig >= -1e-10 * 3.0
    alpha, beta, gamma = np.arccos(a), np.arccos(b), np.arccos(c)
    tri_slack = np.minimum(
        np.minimum(beta + gamma - alpha, gamma + alpha - beta), alpha + beta - gamma
    )
    triangle = tri_slack >= -1e-9
    disagree = psd != triangle
    excused = (np.abs(min_eig) <= band) | (np.abs(tri_slack) <= band)
    genuine = disagree & ~excused
    return {
        "samples": samples,
        "disagreements": int(disagree.sum()),
        "outside_band": int(genuine.sum()),
        "agreements": int((~disagree).sum()),
    }


def completion_oracle_check(seed: int, trials: int, step: float = 1e-4, psd_tol: float = 1e-10) -> dict:
    """Completion-interval formula vs a spectral grid scan over c in [-1, 1]."""
    rng = _family_rng(seed, 103)
    grid = np.linspace(-1.0, 1.0, int(round(2.0 / step)) + 1)
    mats = np.empty((grid.size, 3, 3))
    mats[:, 0, 0] = mats[:, 1, 1] = mats[:, 2, 2] = 1.0
    mats[:, 1, 2] = mats[:, 2, 1] = grid
    worst = 0.0
    for _ in range(trials):
        a, b = rng.uniform(-1.0, 1.0, size=2)
        mats[:, 0, 1] = mats[:, 1, 0] = a
        mats[:, 0, 2] = mats[:, 2, 0] = b
        feasible = grid[_min_eig3_batch(mats) >= -psd_tol * 3.0]
        root = math.sqrt(max(0.0, (1.0 - a * a) * (1.0 - b * b)))
        c_minus, c_plus = a * b - root, a * b + root
        if feasible.size == 0:
            # formula interval is nonempty for |a|,|b| <= 1; that is a failure
            worst = math.inf
            continue
        worst = max(worst, abs(feasible.min() - c_minus), abs(feasible.max() - c_plus))
    return {"trials": trials, "step": step, "max_endpoint_gap": float(worst)}


GENERAL_INDEX_CANDIDATE = {
    "description": "Gram matrix of (e1, e2, e1, e1); indices (i, p, q, j) = (0, 1, 3, 2)",
    "rows": [
        [1.0, 0.0, 1.0, 1.0],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 1.0, 1.0],
        [1.0, 0.0, 1.0, 1.0],
    ],
}


def exploratory_general_index(seed: int, samples: int, tol: float = 1e-9) -> dict:
    """Scan the four-index entry bound with j decoupled from p; log violations.

    Always includes the canonical rank-two candidate, which violates the
    literal reading (LHS 1 vs RHS 0), plus randomized complex matrices.
    """
    from .inequalities import general_index_violations
    from .linalg import correlation_from_array

    checked = 0
    total_violations = 0
    examples: list[dict] = []
    candidate = correlation_from_array(GENERAL_INDEX_CANDIDATE["rows"])
    checked += 1
    for cert in general_index_violations(candidate, 2.0, tol):
        total_violations += 1
        if len(examples) < 8:
            examples.append({**cert.to_dict(), "source": "canonical_candidate"})
    rng = _family_rng(seed, 104)
    count = min(samples, 500)
    grams = sample_correlation_batch(rng, count, 5, 5, True)
    for idx in range(count):
        checked += 1
        matrix = correlation_from_array(grams[idx])
        found = general_index_violations(matrix, 2.0, tol)
        total_violations += len(found)
        for cert in found:
            if len(examples) < 8:
                examples.append({**cert.to_dict(), "source": f"random_{idx}"})
    return {"matrices_checked": checked, "violations": total_violations, "examples": examples}

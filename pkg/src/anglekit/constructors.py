"""Correlation matrices built from structured factors.

Three constructors produce unit-diagonal PSD matrices by design:

- trace_gram:     entry(i, j) = tr(H_i* H_j) for trace-one Gram factors
- abs_trace_gram: entry(i, j) = tr|H_i* H_j| (sum of singular values)
- det_gram:       entry(i, j) = det(H_i* H_j) for partial isometries

plus the seeded random sampler behind every randomized sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .certificates import Certificate
from .eigen import determinant, orthonormal_columns, singular_values
from .linalg import CorrelationMatrix, Field, HermitianMatrix, Vector, gram, is_psd, to_correlation

TRACE_TOL = 1e-9
ISOMETRY_TOL = 1e-9

__all__ = [
    "DensityFactor",
    "PartialIsometry",
    "trace_gram",
    "abs_trace_gram",
    "AbsTraceGram",
    "det_gram",
    "random_correlation",
    "random_density_factor",
    "random_partial_isometry",
    "random_unit_vectors",
]


@dataclass(frozen=True, eq=False)
class DensityFactor:
    """Matrix H whose Gram product H* H is a density matrix (PSD, trace 1)."""

    h: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.h, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"density factor must be square, got shape {arr.shape}")
        trace = float(np.einsum("ij,ij->", arr.conj(), arr).real)
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"trace(H* H) = {trace}, expected 1")
        arr.setflags(write=False)
        object.__setattr__(self, "h", arr)

    @property
    def n(self) -> int:
        return int(self.h.shape[0])


@dataclass(frozen=True, eq=False)
class PartialIsometry:
    """Tall matrix H with H* H = I on its n columns."""

    h: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.h, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] < arr.shape[1]:
            raise ValueError(f"partial isometry must have at least as many rows as columns, got {arr.shape}")
        deviation = np.abs(arr.conj().T @ arr - np.eye(arr.shape[1])).max()
        if deviation > ISOMETRY_TOL:
            raise ValueError(f"H* H deviates from identity by {deviation}")
        arr.setflags(write=False)
        object.__setattr__(self, "h", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return (int(self.h.shape[0]), int(self.h.shape[1]))


def _check_uniform(shapes: Sequence[tuple[int, ...]], what: str) -> None:
    if len(set(shapes)) > 1:
        raise ValueError(f"{what} must share one shape, got {sorted(set(shapes))}")


def trace_gram(factors: Sequence[DensityFactor]) -> CorrelationMatrix:
    """Correlation matrix with entry(i, j) = tr(H_i* H_j)."""
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    _check_uniform([f.h.shape for f in factors], "density factors")
    stack = np.stack([f.h for f in factors])
    entries = np.einsum("iab,jab->ij", stack.conj(), stack)
    np.fill_diagonal(entries, 1.0)
    return CorrelationMatrix(HermitianMatrix(entries), psd_tol=1e-8)


class AbsTraceGram(NamedTuple):
    matrix: CorrelationMatrix
    psd_certificate: Certificate


def abs_trace_gram(factors: Sequence[DensityFactor]) -> AbsTraceGram:
    """Correlation matrix with entry(i, j) = tr|H_i* H_j|, |X| = (X* X)^(1/2).

    Positivity here is a theorem about trace compressions rather than a Gram
    construction, so the spectral certificate is checked and returned rather
    than assumed.
    """
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    _check_uniform([f.h.shape for f in factors], "density factors")
    count = len(factors)
    entries = np.eye(count, dtype=complex)
    for i in range(count):
        for j in range(i + 1, count):
            product = factors[i].h.conj().T @ factors[j].h
            value = float(singular_values(product).sum())
            entries[i, j] = value
            entries[j, i] = value
    herm = HermitianMatrix(entries)
    cert = is_psd(herm, 1e-8)
    matrix = CorrelationMatrix(herm, psd_tol=1e-8)
    return AbsTraceGram(matrix, cert)


def det_gram(isos: Sequence[PartialIsometry]) -> CorrelationMatrix:
    """Correlation matrix with entry(i, j) = det(H_i* H_j)."""
    isos = list(isos)
    if not isos:
        raise ValueError("need at least one isometry")
    _check_uniform([iso.shape for iso in isos], "partial isometries")
    count = len(isos)
    entries = np.eye(count, dtype=complex)
    for i in range(count):
        for j in range(count):
            if i == j:
                continue
            entries[i, j] = determinant(isos[i].h.conj().T @ isos[j].h)
    # det(H* H) = det(I) = 1; force the diagonal exactly.
    np.fill_diagonal(entries, 1.0)
    return CorrelationMatrix(HermitianMatrix.from_rows(entries, atol=1e-9), psd_tol=1e-8)


def random_unit_vectors(rng: np.random.Generator, count: int, dim: int, field: Field) -> list[Vector]:
    rows = rng.standard_normal((count, dim))
    if field is Field.COMPLEX:
        rows = rows + 1j * rng.standard_normal((count, dim))
    rows = rows / np.sqrt(np.einsum("ij,ij->i", rows.conj(), rows).real)[:, None]
    return [Vector(row, field) for row in rows]


def random_density_factor(rng: np.random.Generator, n: int, field: Field = Field.COMPLEX) -> DensityFactor:
    a = rng.standard_normal((n, n))
    if field is Field.COMPLEX:
        a = a + 1j * rng.standard_normal((n, n))
    scale = np.sqrt(np.einsum("ij,ij->", a.conj(), a).real)
    return DensityFactor(a / scale)


def random_partial_isometry(
    rng: np.random.Generator, rows: int, cols: int, field: Field = Field.COMPLEX
) -> PartialIsometry:
    a = rng.standard_normal((rows, cols))
    if field is Field.COMPLEX:
        a = a + 1j * rng.standard_normal((rows, cols))
    return PartialIsometry(orthonormal_columns(a))


def random_correlation(n: int, d: int, field: Field = Field.REAL, seed: int = 0) -> CorrelationMatrix:
    """Gram matrix of n seeded i.i.d. unit vectors in dimension d."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    vectors = random_unit_vectors(rng, n, d, field)
    return to_correlation(gram(vectors))

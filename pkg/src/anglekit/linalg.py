"""Vectors, Hermitian/correlation matrices, and positivity tests.

Scalars are complex throughout; the real field is the ``imag == 0`` subcase
rather than a separate code path. All values are immutable after construction
and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .certificates import Certificate
from .eigen import hermitian_eigenvalues

PSD_TOL = 1e-10
SYM3_TOL = 1e-12


class Field(str, Enum):
    REAL = "real"
    COMPLEX = "complex"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Vector:
    """Element of R^n or C^n under the inner product <u, v> = sum u_j conj(v_j)."""

    entries: np.ndarray
    field: Field = Field.REAL

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=complex).reshape(-1)
        if arr.size < 1:
            raise ValueError("vector needs at least one entry")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("vector has non-finite entries")
        if self.field is Field.REAL and np.abs(arr.imag).max(initial=0.0) != 0.0:
            raise ValueError("real-field vector has nonzero imaginary parts")
        object.__setattr__(self, "entries", _freeze(arr))

    @property
    def dim(self) -> int:
        return int(self.entries.size)

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.entries, self.entries).real))

    def is_zero(self) -> bool:
        return bool(np.all(self.entries == 0.0))

    def scaled(self, factor: complex) -> "Vector":
        field = self.field
        if field is Field.REAL and complex(factor).imag != 0.0:
            field = Field.COMPLEX
        return Vector(self.entries * complex(factor), field)


def vector(values: Sequence[complex] | np.ndarray, field: Field | str | None = None) -> Vector:
    """Convenience constructor; infers the field from the values when omitted."""
    arr = np.asarray(values, dtype=complex).reshape(-1)
    if field is None:
        field = Field.COMPLEX if arr.size and np.abs(arr.imag).max(initial=0.0) != 0.0 else Field.REAL
    return Vector(arr, Field(field))


def inner_product(u: Vector, v: Vector) -> complex:
    """<u, v> = sum_j u_j * conj(v_j); linear in the first argument."""
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")
    if u.field is not v.field:
        raise ValueError(f"field mismatch: {u.field.value} vs {v.field.value}")
    return complex(np.vdot(v.entries, u.entries))


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Square matrix with entry(i, j) == conj(entry(j, i)) exactly.

    Construction mirrors the lower triangle onto the upper one, so the
    symmetry is exact by construction rather than approximate.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("matrix has non-finite entries")
        mirrored = np.tril(arr, -1)
        mirrored = mirrored + mirrored.conj().T + np.diag(arr.diagonal().real)
        object.__setattr__(self, "entries", _freeze(mirrored))

    @classmethod
    def from_rows(cls, rows, *, atol: float = 1e-9) -> "HermitianMatrix":
        """Validate approximate Hermitian symmetry, then mirror exactly."""
        arr = np.asarray(rows, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        scale = max(1.0, float(np.abs(arr).max(initial=0.0)))
        if np.abs(arr - arr.conj().T).max(initial=0.0) > atol * scale:
            raise ValueError("matrix is not Hermitian within tolerance")
        return cls(arr)

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def entry(self, i: int, j: int) -> complex:
        return complex(self.entries[i, j])

    def to_array(self) -> np.ndarray:
        return self.entries.copy()

    def max_abs_entry(self) -> float:
        return float(np.abs(self.entries).max())


@dataclass(frozen=True)
class Sym3:
    """Unit-diagonal symmetric 3x3 matrix stored as its off-diagonal triple.

    Layout: [[1, a, b], [a, 1, c], [b, c, 1]].
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"entry {name} is not finite")
            object.__setattr__(self, name, value)

    def embed(self) -> HermitianMatrix:
        return HermitianMatrix(
            np.array([[1.0, self.a, self.b], [self.a, 1.0, self.c], [self.b, self.c, 1.0]])
        )

    @classmethod
    def from_matrix(cls, m: HermitianMatrix) -> "Sym3":
        if m.n != 3:
            raise ValueError("need a 3x3 matrix")
        arr = m.entries
        if np.abs(arr.imag).max() != 0.0:
            raise ValueError("matrix has complex entries; take abs or real parts first")
        if np.abs(arr.diagonal().real - 1.0).max() > 1e-12:
            raise ValueError("matrix does not have a unit diagonal")
        return cls(float(arr[0, 1].real), float(arr[0, 2].real), float(arr[1, 2].real))

    def entries_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


def is_psd_3x3(s: Sym3, tol: float = SYM3_TOL) -> bool:
    """Closed-form PSD test: entries in [-1, 1] and 1 + 2abc >= a^2 + b^2 + c^2."""
    a, b, c = s.a, s.b, s.c
    if max(abs(a), abs(b), abs(c)) > 1.0 + tol:
        return False
    return 1.0 + 2.0 * a * b * c >= a * a + b * b + c * c - tol


def psd_residual_3x3(s: Sym3) -> float:
    """Signed slack of the cubic PSD condition (equals det of the embedding)."""
    a, b, c = s.a, s.b, s.c
    return 1.0 + 2.0 * a * b * c - (a * a + b * b + c * c)


def require_psd(s: Sym3, tol: float = SYM3_TOL) -> None:
    if not is_psd_3x3(s, tol):
        raise ValueError(f"triple {s.entries_tuple()} is not positive semidefinite")


def gram(vs: Sequence[Vector]) -> HermitianMatrix:
    """Matrix of pairwise inner products <v_i, v_j>; PSD by construction."""
    vs = list(vs)
    if not vs:
        raise ValueError("need at least one vector")
    dim = vs[0].dim
    fld = vs[0].field
    for v in vs[1:]:
        if v.dim != dim:
            raise ValueError("mixed vector dimensions")
        if v.field is not fld:
            raise ValueError("mixed vector fields")
    stack = np.stack([v.entries for v in vs])
    g = stack @ stack.conj().T
    return HermitianMatrix(g)


def is_psd(m: HermitianMatrix, tol: float = PSD_TOL) -> Certificate:
    """Spectral PSD test: passes iff min eigenvalue >= -tol * n * max|entry|.

    The certificate's slack is the minimum eigenvalue itself; the scaled band
    is carried as the certificate tolerance so the decision is auditable.
    """
    eigs = hermitian_eigenvalues(m.entries)
    min_eig = float(eigs[0])
    band = tol * m.n * max(m.max_abs_entry(), 1e-300)
    return Certificate(
        "psd.min_eigenvalue",
        lhs=0.0,
        rhs=min_eig,
        tol=band,
        context={"n": m.n, "min_eigenvalue": min_eig, "max_abs_entry": m.max_abs_entry()},
    )


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Hermitian PSD matrix with every diagonal entry exactly 1."""

    base: HermitianMatrix
    psd_tol: float = PSD_TOL

    def __post_init__(self) -> None:
        arr = self.base.entries
        if np.abs(arr.diagonal().real - 1.0).max() != 0.0 or np.abs(arr.diagonal().imag).max() != 0.0:
            raise ValueError("diagonal entries must equal 1 exactly")
        cert = is_psd(self.base, self.psd_tol)
        if not cert.passed:
            raise ValueError(f"matrix is not PSD: min eigenvalue {cert.rhs}")
        if np.abs(arr).max() > 1.0 + self.psd_tol * self.base.n:
            raise ValueError("off-diagonal entry exceeds 1 in modulus")

    @property
    def n(self) -> int:
        return self.base.n

    def entry(self, i: int, j: int) -> complex:
        return self.base.entry(i, j)

    def to_array(self) -> np.ndarray:
        return self.base.to_array()


def to_correlation(m: HermitianMatrix, tol: float = PSD_TOL) -> CorrelationMatrix:
    """Scale a PSD matrix with positive diagonal to unit diagonal."""
    diag = m.entries.diagonal().real
    if diag.min() <= 0.0:
        raise ValueError("diagonal entries must be positive to normalize")
    cert = is_psd(m, tol)
    if not cert.passed:
        raise ValueError(f"matrix is not PSD: min eigenvalue {cert.rhs}")
    scale = 1.0 / np.sqrt(diag)
    arr = m.entries * np.outer(scale, scale)
    np.fill_diagonal(arr, 1.0)
    return CorrelationMatrix(HermitianMatrix(arr), psd_tol=max(tol, PSD_TOL))


def correlation_from_array(rows, *, atol: float = 1e-9, psd_tol: float = PSD_TOL) -> CorrelationMatrix:
    """Build a correlation matrix from raw rows, forcing the exact unit diagonal."""
    arr = np.asarray(rows, dtype=complex)
    herm = HermitianMatrix.from_rows(arr, atol=atol)
    entries = herm.to_array()
    if np.abs(entries.diagonal() - 1.0).max() > atol:
        raise ValueError("diagonal entries must equal 1")
    np.fill_diagonal(entries, 1.0)
    return CorrelationMatrix(HermitianMatrix(entries), psd_tol=psd_tol)


def entrywise_abs3(s: Sym3, tol: float = SYM3_TOL) -> Sym3:
    """Entrywise absolute value; preserves positivity at size 3."""
    require_psd(s, tol)
    out = Sym3(abs(s.a), abs(s.b), abs(s.c))
    # |abc| >= abc, so the cubic slack cannot decrease; assert rather than trust.
    if not is_psd_3x3(out, tol):
        raise AssertionError("entrywise abs broke positivity; this is a bug")
    return out


def hadamard_power3(s: Sym3, r: float, tol: float = SYM3_TOL) -> Sym3:
    """Entrywise power of a nonnegative PSD triple, r >= 1 (FitzGerald-Horn range)."""
    if r < 1.0:
        raise ValueError("entrywise power requires r >= 1")
    if min(s.a, s.b, s.c) < 0.0:
        raise ValueError("entrywise power requires nonnegative entries")
    require_psd(s, tol)
    out = Sym3(s.a**r, s.b**r, s.c**r)
    if not is_psd_3x3(out, max(tol, 1e-10)):
        raise AssertionError("entrywise power broke positivity; this is a bug")
    return out


def principal_submatrix(m: HermitianMatrix, idx: Iterable[int]) -> HermitianMatrix:
    """Restrict rows and columns to idx (order preserved); PSD is inherited."""
    indices = list(idx)
    if len(set(indices)) != len(indices):
        raise ValueError("duplicate index")
    for i in indices:
        if not 0 <= i < m.n:
            raise ValueError(f"index {i} out of range for n={m.n}")
    sel = np.asarray(indices, dtype=int)
    return HermitianMatrix(m.entries[np.ix_(sel, sel)])

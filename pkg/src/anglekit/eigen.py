"""Dense Hermitian eigenvalue and factorization kernels for small matrices.

Everything in this package works on matrices of single-digit dimension, so the
solvers here favour closed forms and Jacobi-style iterations over a LAPACK
dependency: n <= 3 uses the trigonometric solution of the characteristic
polynomial (which also vectorizes over leading batch axes for the randomized
sweeps), larger Hermitian matrices go through cyclic Jacobi rotations.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "eig2_hermitian",
    "eig3_hermitian",
    "hermitian_eigenvalues",
    "min_eigenvalue",
    "jacobi_symmetric_eigenvalues",
    "singular_values",
    "orthonormal_columns",
    "determinant",
]

_TWO_PI_THIRDS = 2.0 * math.pi / 3.0


def _as_square(matrix) -> np.ndarray:
    a = np.asarray(matrix)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float) if np.iscomplexobj(a) else a)):
        raise ValueError("matrix has non-finite entries")
    return a


def eig2_hermitian(matrix) -> np.ndarray:
    """Eigenvalues of Hermitian 2x2 matrices, ascending; batches over leading axes."""
    a = _as_square(matrix)
    d0 = a[..., 0, 0].real
    d1 = a[..., 1, 1].real
    mean = 0.5 * (d0 + d1)
    radius = np.hypot(0.5 * (d0 - d1), np.abs(a[..., 0, 1]))
    return np.stack([mean - radius, mean + radius], axis=-1)


def _det3(a: np.ndarray) -> np.ndarray:
    return (
        a[..., 0, 0] * (a[..., 1, 1] * a[..., 2, 2] - a[..., 1, 2] * a[..., 2, 1])
        - a[..., 0, 1] * (a[..., 1, 0] * a[..., 2, 2] - a[..., 1, 2] * a[..., 2, 0])
        + a[..., 0, 2] * (a[..., 1, 0] * a[..., 2, 1] - a[..., 1, 1] * a[..., 2, 0])
    )


def eig3_hermitian(matrix) -> np.ndarray:
    """Eigenvalues of Hermitian 3x3 matrices via the trigonometric closed form.

    Accepts real-symmetric or complex-Hermitian input with arbitrary leading
    batch axes; returns eigenvalues sorted ascending along the last axis.
    """
    a = np.asarray(_as_square(matrix), dtype=complex)
    d = np.stack([a[..., 0, 0].real, a[..., 1, 1].real, a[..., 2, 2].real], axis=-1)
    p1 = (
        np.abs(a[..., 0, 1]) ** 2
        + np.abs(a[..., 0, 2]) ** 2
        + np.abs(a[..., 1, 2]) ** 2
    )
    q = d.mean(axis=-1)
    p2 = ((d - q[..., None]) ** 2).sum(axis=-1) + 2.0 * p1
    p = np.sqrt(p2 / 6.0)
    # Diagonal (p == 0) batches would divide by zero; substitute 1 and select later.
    safe_p = np.where(p > 0.0, p, 1.0)
    b = (a - q[..., None, None] * np.eye(3)) / safe_p[..., None, None]
    r = np.clip(_det3(b).real / 2.0, -1.0, 1.0)
    phi = np.arccos(r) / 3.0
    hi = q + 2.0 * p * np.cos(phi)
    lo = q + 2.0 * p * np.cos(phi + _TWO_PI_THIRDS)
    mid = 3.0 * q - hi - lo
    eigs = np.sort(np.stack([lo, mid, hi], axis=-1), axis=-1)
    diag = np.sort(d, axis=-1)
    return np.where((p > 0.0)[..., None], eigs, diag)


def jacobi_symmetric_eigenvalues(matrix, *, max_sweeps: int = 40) -> np.ndarray:
    """Eigenvalues of one real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    scale = np.sqrt((a * a).sum())
    if scale == 0.0:
        return np.zeros(n)
    stop = 1e-15 * scale
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(a.diagonal())).max()
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= stop * 1e-2:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.sort(a.diagonal())


def _real_embedding(h: np.ndarray) -> np.ndarray:
    # [[Re H, -Im H], [Im H, Re H]] is symmetric and carries each eigenvalue twice.
    re = h.real
    im = h.imag
    top = np.hstack([re, -im])
    bottom = np.hstack([im, re])
    return np.vstack([top, bottom])


def hermitian_eigenvalues(matrix) -> np.ndarray:
    """Eigenvalues of one Hermitian matrix, ascending.

    Closed form for n <= 3, cyclic Jacobi beyond; complex matrices of size
    n > 3 go through the doubled real-symmetric embedding.
    """
    a = _as_square(matrix)
    if a.ndim != 2:
        raise ValueError("hermitian_eigenvalues takes a single matrix; use the eig2/eig3 kernels for batches")
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    if n == 2:
        return eig2_hermitian(a)
    if n == 3:
        return eig3_hermitian(a)
    if np.iscomplexobj(a) and np.abs(a.imag).max() > 0.0:
        doubled = jacobi_symmetric_eigenvalues(_real_embedding(np.asarray(a, dtype=complex)))
        return 0.5 * (doubled[0::2] + doubled[1::2])
    return jacobi_symmetric_eigenvalues(np.asarray(a, dtype=float) if not np.iscomplexobj(a) else a.real)


def min_eigenvalue(matrix) -> float:
    return float(hermitian_eigenvalues(matrix)[0])


def singular_values(matrix, *, max_sweeps: int = 40) -> np.ndarray:
    """Singular values by one-sided Jacobi column orthogonalization, descending."""
    a = np.array(matrix, dtype=complex, copy=True)
    if a.ndim != 2:
        raise ValueError("singular_values takes a single matrix")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix has non-finite entries")
    if a.shape[0] < a.shape[1]:
        a = a.conj().T.copy()
    n = a.shape[1]
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = np.vdot(a[:, p], a[:, p]).real
                aqq = np.vdot(a[:, q], a[:, q]).real
                apq = np.vdot(a[:, p], a[:, q])
                if abs(apq) <= 1e-15 * math.sqrt(app * aqq) or abs(apq) == 0.0:
                    continue
                rotated = True
                phase = apq / abs(apq)
                col_q = np.conj(phase) * a[:, q]
                tau = (aqq - app) / (2.0 * abs(apq))
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
        if not rotated:
            break
    sigma = np.sqrt(np.einsum("ij,ij->j", a.conj(), a).real)
    return np.sort(sigma)[::-1]


def orthonormal_columns(matrix, *, rank_tol: float = 1e-12) -> np.ndarray:
    """Orthonormalize the columns (modified Gram-Schmidt, two passes).

    Raises ValueError when a column is numerically dependent on the earlier ones.
    """
    a = np.array(matrix, dtype=complex, copy=True)
    if a.ndim != 2 or a.shape[0] < a.shape[1]:
        raise ValueError(f"need a tall matrix to orthonormalize, got shape {a.shape}")
    scale = float(np.abs(a).max()) or 1.0
    for j in range(a.shape[1]):
        for _ in range(2):
            for i in range(j):
                a[:, j] -= np.vdot(a[:, i], a[:, j]) * a[:, i]
        nrm = float(np.sqrt(np.vdot(a[:, j], a[:, j]).real))
        if nrm <= rank_tol * scale:
            raise ValueError(f"column {j} is numerically rank deficient")
        a[:, j] /= nrm
    return a


def determinant(matrix) -> complex:
    """Determinant by partially pivoted LU; fine for the tiny matrices used here."""
    a = np.array(matrix, dtype=complex, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("determinant needs one square matrix")
    n = a.shape[0]
    det = 1.0 + 0.0j
    for k in range(n):
        pivot = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[pivot, k]) == 0.0:
            return 0.0 + 0.0j
        if pivot != k:
            a[[k, pivot], :] = a[[pivot, k], :]
            det = -det
        det *= a[k, k]
        a[k + 1 :, k:] -= np.outer(a[k + 1 :, k] / a[k, k], a[k, k:])
    return complex(det)

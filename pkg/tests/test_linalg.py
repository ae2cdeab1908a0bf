import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anglekit.eigen import eig3_hermitian
from anglekit.linalg import (
    CorrelationMatrix,
    Field,
    HermitianMatrix,
    Sym3,
    Vector,
    entrywise_abs3,
    gram,
    hadamard_power3,
    inner_product,
    is_psd,
    is_psd_3x3,
    principal_submatrix,
    psd_residual_3x3,
    to_correlation,
    vector,
)

from conftest import MATRIX_C_ROWS


# --- vectors and inner products ---


def test_vector_validation():
    with pytest.raises(ValueError):
        Vector(np.array([]))
    with pytest.raises(ValueError):
        Vector(np.array([np.inf, 1.0]))
    with pytest.raises(ValueError):
        Vector(np.array([1.0 + 1j, 0.0]), Field.REAL)


def test_inner_product_identity_and_orthogonality():
    assert inner_product(vector([1, 0]), vector([1, 0])) == 1
    assert inner_product(vector([1, 0]), vector([0, 1])) == 0


def test_inner_product_conjugates_second_argument():
    u = vector([1, 0], "complex")
    v = vector([1j, 0], "complex")
    assert inner_product(u, v) == -1j


def test_inner_product_rejects_mismatches():
    with pytest.raises(ValueError, match="dimension"):
        inner_product(vector([1, 0]), vector([1, 0, 0]))
    with pytest.raises(ValueError, match="field"):
        inner_product(vector([1, 0]), vector([1, 0], "complex"))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=2, max_size=4), st.lists(st.floats(-5, 5), min_size=2, max_size=4))
def test_inner_product_conjugate_symmetry(a, b):
    n = min(len(a), len(b)) // 2
    if n < 1:
        return
    u = vector([complex(a[i], a[n + i] if n + i < len(a) else 0.0) for i in range(n)], "complex")
    v = vector([complex(b[i], b[n + i] if n + i < len(b) else 0.0) for i in range(n)], "complex")
    lhs = inner_product(u, v)
    rhs = inner_product(v, u).conjugate()
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


# --- gram matrices ---


def test_gram_of_orthonormal_basis_is_identity():
    vs = [vector([1, 0, 0]), vector([0, 1, 0]), vector([0, 0, 1])]
    np.testing.assert_allclose(gram(vs).to_array(), np.eye(3))


def test_gram_of_repeated_unit_vector_is_all_ones():
    u = vector([1, 0])
    np.testing.assert_allclose(gram([u, u]).to_array(), np.ones((2, 2)))


def test_gram_of_cos_sum_vectors():
    u = vector([0, 0, 1])
    v = vector(np.array([1, 0, 1]) / math.sqrt(2))
    w = vector([0, 1, 0])
    g = gram([u, v, w]).to_array()
    np.testing.assert_allclose(np.diag(g), 1.0)
    assert abs(g[0, 1] - 1 / math.sqrt(2)) < 1e-15
    assert abs(g[1, 2]) < 1e-15 and abs(g[2, 0]) < 1e-15


def test_gram_rejects_mixed_dimensions():
    with pytest.raises(ValueError):
        gram([vector([1, 0]), vector([1, 0, 0])])


def test_gram_outputs_are_psd_in_bulk():
    rng = np.random.default_rng(42)
    for d in (2, 3, 5):
        rows = rng.standard_normal((100_000, 3, d)) + 1j * rng.standard_normal((100_000, 3, d))
        grams = np.einsum("cid,cjd->cij", rows, rows.conj())
        min_eig = eig3_hermitian(grams)[..., 0]
        scale = np.abs(grams).reshape(len(grams), -1).max(axis=1)
        assert (min_eig >= -1e-10 * 3 * scale).all()


# --- spectral PSD certificates ---


def test_is_psd_identity():
    cert = is_psd(HermitianMatrix(np.eye(3)))
    assert cert.passed and abs(cert.context["min_eigenvalue"] - 1.0) < 1e-14


def test_is_psd_rejects_all_minus_ones_triple():
    cert = is_psd(Sym3(-1.0, -1.0, -1.0).embed())
    assert not cert.passed
    assert cert.context["min_eigenvalue"] < -0.5


def test_is_psd_matrix_c_is_singular_pass(matrix_c):
    cert = is_psd(matrix_c)
    assert cert.passed
    assert abs(cert.context["min_eigenvalue"]) < 1e-12


# --- closed-form 3x3 test ---


def test_is_psd_3x3_examples():
    assert is_psd_3x3(Sym3(1.0, 1.0, 1.0))
    assert not is_psd_3x3(Sym3(-1.0, -1.0, -1.0))
    assert is_psd_3x3(Sym3(1.0, 0.1, 0.1))  # boundary: 1.02 >= 1.02


def test_is_psd_3x3_agrees_with_spectral_test():
    rng = np.random.default_rng(3)
    triples = rng.uniform(-1.2, 1.2, size=(100_000, 3))
    a, b, c = triples.T
    residual = 1.0 + 2.0 * a * b * c - (a * a + b * b + c * c)
    entries_ok = np.abs(triples).max(axis=1) <= 1.0 + 1e-12
    closed = entries_ok & (residual >= -1e-12)
    mats = np.empty((len(triples), 3, 3))
    mats[:, 0, 0] = mats[:, 1, 1] = mats[:, 2, 2] = 1.0
    mats[:, 0, 1] = mats[:, 1, 0] = a
    mats[:, 0, 2] = mats[:, 2, 0] = b
    mats[:, 1, 2] = mats[:, 2, 1] = c
    scale = np.maximum(np.abs(triples).max(axis=1), 1.0)
    spectral = eig3_hermitian(mats)[:, 0] >= -1e-10 * 3 * scale
    disagree = closed != spectral
    near_boundary = (np.abs(residual) <= 1e-9) | (np.abs(eig3_hermitian(mats)[:, 0]) <= 1e-9)
    assert not np.any(disagree & ~near_boundary)


# --- correlation normalization ---


def test_to_correlation_identity():
    out = to_correlation(HermitianMatrix(np.eye(3)))
    np.testing.assert_allclose(out.to_array(), np.eye(3))


def test_to_correlation_rank_one():
    out = to_correlation(HermitianMatrix(np.array([[4.0, 2.0], [2.0, 1.0]])))
    np.testing.assert_allclose(out.to_array(), np.ones((2, 2)))


def test_to_correlation_diagonal():
    out = to_correlation(HermitianMatrix(np.diag([2.0, 3.0])))
    np.testing.assert_allclose(out.to_array(), np.eye(2))


def test_to_correlation_rejects_zero_diagonal():
    with pytest.raises(ValueError, match="diagonal"):
        to_correlation(HermitianMatrix(np.diag([1.0, 0.0])))


def test_to_correlation_rejects_indefinite():
    with pytest.raises(ValueError, match="PSD"):
        to_correlation(HermitianMatrix(np.array([[1.0, 2.0], [2.0, 1.0]])))


def test_to_correlation_has_exact_unit_diagonal_and_psd():
    rng = np.random.default_rng(8)
    for _ in range(200):
        rows = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        g = HermitianMatrix(rows @ rows.conj().T + 0.1 * np.eye(4))
        out = to_correlation(g)
        assert np.all(out.to_array().diagonal() == 1.0)
        assert is_psd(out.base).passed


def test_correlation_matrix_rejects_loose_diagonal():
    arr = np.eye(3)
    arr[1, 1] = 1.0 + 1e-12
    with pytest.raises(ValueError, match="diagonal"):
        CorrelationMatrix(HermitianMatrix(arr))


# --- entrywise maps ---


def test_entrywise_abs3_examples():
    assert entrywise_abs3(Sym3(-0.5, 0.5, -0.5)) == Sym3(0.5, 0.5, 0.5)
    assert entrywise_abs3(Sym3(0.0, 0.0, 0.0)) == Sym3(0.0, 0.0, 0.0)
    assert entrywise_abs3(Sym3(1.0, -1.0, -1.0)) == Sym3(1.0, 1.0, 1.0)


def test_entrywise_abs3_requires_psd_input():
    with pytest.raises(ValueError, match="not positive semidefinite"):
        entrywise_abs3(Sym3(-1.0, -1.0, -1.0))


def test_hadamard_power3_examples():
    assert hadamard_power3(Sym3(0.5, 0.5, 0.5), 2.0) == Sym3(0.25, 0.25, 0.25)
    s = Sym3(0.3, 0.2, 0.6)
    assert hadamard_power3(s, 1.0) == s
    out = hadamard_power3(Sym3(1.0, 0.1, 0.1), 1.5)
    assert out.a == 1.0 and abs(out.b - 0.1**1.5) < 1e-16
    assert is_psd_3x3(out, 1e-10)


def test_hadamard_power3_rejects_bad_inputs():
    with pytest.raises(ValueError, match="r >= 1"):
        hadamard_power3(Sym3(0.5, 0.5, 0.5), 0.5)
    with pytest.raises(ValueError, match="nonnegative"):
        hadamard_power3(Sym3(-0.5, 0.5, 0.5), 2.0)


def test_entrywise_maps_preserve_positivity_in_bulk():
    rng = np.random.default_rng(5)
    u = rng.standard_normal((100_000, 3))
    v = rng.standard_normal((100_000, 3))
    w = rng.standard_normal((100_000, 3))
    for m in (u, v, w):
        m /= np.linalg.norm(m, axis=1, keepdims=True)
    a = np.einsum("ij,ij->i", u, v)
    b = np.einsum("ij,ij->i", u, w)
    c = np.einsum("ij,ij->i", v, w)

    def residual(x, y, z):
        return 1.0 + 2.0 * x * y * z - (x * x + y * y + z * z)

    base = residual(a, b, c)
    assert (base >= -1e-12).all()
    # entrywise absolute value
    assert (residual(np.abs(a), np.abs(b), np.abs(c)) >= -1e-12).all()
    # entrywise powers r >= 1 on the nonnegative triple
    for r in (1.0, 1.5, 2.0, 3.0):
        assert (residual(np.abs(a) ** r, np.abs(b) ** r, np.abs(c) ** r) >= -1e-10).all()


@settings(max_examples=80, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_psd_residual_is_permutation_invariant(a, b, c):
    base = psd_residual_3x3(Sym3(a, b, c))
    for arrangement in ((a, c, b), (b, a, c), (c, b, a)):
        assert abs(psd_residual_3x3(Sym3(*arrangement)) - base) < 1e-12


# --- principal submatrices ---


def test_principal_submatrix_examples(matrix_c):
    np.testing.assert_allclose(
        principal_submatrix(HermitianMatrix(np.eye(4)), [0, 2]).to_array(), np.eye(2)
    )
    np.testing.assert_allclose(
        principal_submatrix(matrix_c, [0, 1, 2]).to_array(), MATRIX_C_ROWS
    )
    np.testing.assert_allclose(
        principal_submatrix(matrix_c, [0, 2]).to_array(),
        np.array([[1.0, 0.1], [0.1, 1.0]]),
    )


def test_principal_submatrix_rejects_bad_indices(matrix_c):
    with pytest.raises(ValueError, match="duplicate"):
        principal_submatrix(matrix_c, [0, 0])
    with pytest.raises(ValueError, match="range"):
        principal_submatrix(matrix_c, [0, 3])


def test_hermitian_from_rows_rejects_asymmetric():
    with pytest.raises(ValueError, match="Hermitian"):
        HermitianMatrix.from_rows(np.array([[1.0, 0.5], [0.2, 1.0]]))

import math

import numpy as np
import pytest

from anglekit.constructors import (
    DensityFactor,
    PartialIsometry,
    abs_trace_gram,
    det_gram,
    random_correlation,
    random_density_factor,
    random_partial_isometry,
    trace_gram,
)
from anglekit.inequalities import entry_certificates
from anglekit.linalg import Field, is_psd


def test_density_factor_validates_trace():
    with pytest.raises(ValueError, match="trace"):
        DensityFactor(np.eye(2))
    DensityFactor(np.diag([1.0, 0.0]))


def test_partial_isometry_validates_columns():
    with pytest.raises(ValueError, match="identity"):
        PartialIsometry(np.array([[1.0, 0.0], [0.0, 0.5]]))
    with pytest.raises(ValueError, match="rows"):
        PartialIsometry(np.ones((1, 2)))


def test_trace_gram_orthogonal_supports():
    h1 = DensityFactor(np.diag([1.0, 0.0]))
    h2 = DensityFactor(np.diag([0.0, 1.0]))
    np.testing.assert_allclose(trace_gram([h1, h2]).to_array(), np.eye(2))


def test_trace_gram_repeated_factor():
    h = DensityFactor(np.diag([1.0, 0.0]))
    np.testing.assert_allclose(trace_gram([h, h]).to_array(), np.ones((2, 2)))


def test_trace_gram_half_overlap():
    h1 = DensityFactor(np.diag([1.0, 0.0]))
    h2 = DensityFactor(np.eye(2) / math.sqrt(2.0))
    out = trace_gram([h1, h2]).to_array()
    assert abs(out[0, 1] - 1.0 / math.sqrt(2.0)) < 1e-15


def test_trace_gram_rejects_mixed_shapes():
    h1 = DensityFactor(np.diag([1.0, 0.0]))
    h2 = DensityFactor(np.diag([1.0, 0.0, 0.0]))
    with pytest.raises(ValueError, match="share one shape"):
        trace_gram([h1, h2])


def test_abs_trace_gram_examples():
    h1 = DensityFactor(np.diag([1.0, 0.0]))
    h2 = DensityFactor(np.diag([0.0, 1.0]))
    result = abs_trace_gram([h1, h2])
    np.testing.assert_allclose(result.matrix.to_array(), np.eye(2))
    assert result.psd_certificate.passed
    same = abs_trace_gram([h1, h1])
    np.testing.assert_allclose(same.matrix.to_array(), np.ones((2, 2)))


def test_abs_trace_gram_randomized_psd():
    rng = np.random.default_rng(80)
    for _ in range(300):
        factors = [random_density_factor(rng, 3) for _ in range(3)]
        result = abs_trace_gram(factors)
        assert result.psd_certificate.passed
        assert np.all(result.matrix.to_array().diagonal() == 1.0)


def test_det_gram_identity_pair():
    h = PartialIsometry(np.eye(2))
    np.testing.assert_allclose(det_gram([h, h]).to_array(), np.ones((2, 2)))


def test_det_gram_sign_flip():
    h1 = PartialIsometry(np.eye(2))
    h2 = PartialIsometry(np.diag([-1.0, 1.0]))
    out = det_gram([h1, h2]).to_array()
    np.testing.assert_allclose(out, np.array([[1.0, -1.0], [-1.0, 1.0]]))


def test_constructors_feed_entry_certificates():
    rng = np.random.default_rng(81)
    for n in (2, 3, 4):
        for _ in range(40):
            factors = [random_density_factor(rng, min(n, 4)) for _ in range(n)]
            matrix = trace_gram(factors)
            assert is_psd(matrix.base, 1e-8).passed
            isos = [random_partial_isometry(rng, 4, 2) for _ in range(n)]
            det_matrix = det_gram(isos)
            assert is_psd(det_matrix.base, 1e-8).passed
            if n >= 3:
                for k in (2.0, 3.0):
                    assert all(c.passed for c in entry_certificates(matrix, k, tol=1e-8))
                    assert all(c.passed for c in entry_certificates(det_matrix, k, tol=1e-8))


def test_random_correlation_trivial_sizes():
    np.testing.assert_allclose(random_correlation(1, 3, seed=1).to_array(), [[1.0]])
    rank_one = random_correlation(3, 1, Field.REAL, seed=2).to_array()
    np.testing.assert_allclose(np.abs(rank_one), np.ones((3, 3)), atol=1e-12)


def test_random_correlation_is_deterministic():
    first = random_correlation(4, 3, Field.COMPLEX, seed=99).to_array()
    second = random_correlation(4, 3, Field.COMPLEX, seed=99).to_array()
    assert np.array_equal(first, second)
    third = random_correlation(4, 3, Field.COMPLEX, seed=100).to_array()
    assert not np.array_equal(first, third)


def test_random_correlation_validates_arguments():
    with pytest.raises(ValueError):
        random_correlation(0, 3)

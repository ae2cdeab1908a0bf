import math

import numpy as np
import pytest

from anglekit.linalg import HermitianMatrix, Sym3, Vector


MATRIX_C_ROWS = np.array(
    [
        [1.0, 1.0, 0.1],
        [1.0, 1.0, 0.1],
        [0.1, 0.1, 1.0],
    ]
)

MATRIX_D_ROWS = np.array(
    [
        [1.0, 0.0, 0.4],
        [0.0, 1.0, 0.91],
        [0.4, 0.91, 1.0],
    ]
)


@pytest.fixture
def matrix_c() -> HermitianMatrix:
    return HermitianMatrix(MATRIX_C_ROWS)


@pytest.fixture
def sym3_c() -> Sym3:
    return Sym3(1.0, 0.1, 0.1)


@pytest.fixture
def sym3_d() -> Sym3:
    return Sym3(0.0, 0.4, 0.91)


@pytest.fixture
def cos_sum_vectors() -> tuple[Vector, Vector, Vector]:
    return (
        Vector(np.array([0.0, 0.0, 1.0])),
        Vector(np.array([1.0, 0.0, 1.0]) / math.sqrt(2.0)),
        Vector(np.array([0.0, 1.0, 0.0])),
    )


def random_hermitian(rng: np.random.Generator, n: int, complex_field: bool) -> np.ndarray:
    a = rng.standard_normal((n, n))
    if complex_field:
        a = a + 1j * rng.standard_normal((n, n))
    return a + a.conj().T

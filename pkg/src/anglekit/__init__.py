"""anglekit: angle metrics, correlation-matrix entry inequalities, certificates.

Core layers:

- linalg:           vectors, Gram/Hermitian/correlation matrices, PSD tests
- angles:           the absolute-value and real-part angles and their triangles
- inequalities:     completion intervals and the entrywise certificate suites
- constructors:     trace/abs-trace/determinant Gram correlation builders
- metric_functions: triangle triplets and triangle-preserving function checks
- sweeps/report:    seeded randomized verification and deterministic reports
- service/cli:      FastAPI wrapper and the thin command-line client
"""

from .certificates import Certificate
from .linalg import (
    CorrelationMatrix,
    Field,
    HermitianMatrix,
    Sym3,
    Vector,
    gram,
    inner_product,
    is_psd,
    is_psd_3x3,
    to_correlation,
)
from .angles import AngleKind, AngleTriple, cap_theta, phase_min_theta, theta

__all__ = [
    "Certificate",
    "CorrelationMatrix",
    "Field",
    "HermitianMatrix",
    "Sym3",
    "Vector",
    "gram",
    "inner_product",
    "is_psd",
    "is_psd_3x3",
    "to_correlation",
    "AngleKind",
    "AngleTriple",
    "cap_theta",
    "phase_min_theta",
    "theta",
]

__version__ = "0.1.0"

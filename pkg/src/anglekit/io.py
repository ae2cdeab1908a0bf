"""Strict JSON formats for matrices, vectors, and structured factor lists.

Matrix: {"n": int, "field": "real" | "complex", "entries": [[re, im], ...]}
with exactly n*n row-major [re, im] pairs; vectors are analogous with n
entries. Factor and isometry lists arrive under {"factors": [...]} and
{"isometries": [...]}; vector lists under {"vectors": [...]}. Wrong lengths,
non-finite values, or imaginary parts in a real-field payload are errors.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np

from .constructors import DensityFactor, PartialIsometry
from .linalg import Field, Vector

__all__ = [
    "parse_matrix",
    "parse_vector",
    "parse_vectors",
    "parse_density_factors",
    "parse_partial_isometries",
    "matrix_to_json",
    "vector_to_json",
]


def _parse_pairs(entries: Any, expected: int, field: Field, what: str) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != expected:
        raise ValueError(f"{what} needs exactly {expected} [re, im] entries")
    out = np.empty(expected, dtype=complex)
    for idx, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError(f"{what} entry {idx} is not a [re, im] pair")
        re, im = pair
        if not isinstance(re, (int, float)) or not isinstance(im, (int, float)) or isinstance(re, bool) or isinstance(im, bool):
            raise ValueError(f"{what} entry {idx} has non-numeric parts")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError(f"{what} entry {idx} is not finite")
        if field is Field.REAL and im != 0.0:
            raise ValueError(f"{what} entry {idx} has imaginary part {im} in a real-field payload")
        out[idx] = complex(re, im)
    return out


def _parse_header(obj: Any, what: str) -> tuple[int, Field]:
    if not isinstance(obj, dict):
        raise ValueError(f"{what} payload must be a JSON object")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"{what} needs a positive integer 'n'")
    field_tag = obj.get("field")
    try:
        field = Field(field_tag)
    except ValueError:
        raise ValueError(f"{what} field must be 'real' or 'complex', got {field_tag!r}") from None
    return n, field


def parse_matrix(obj: Any) -> tuple[np.ndarray, Field]:
    """Square matrix payload -> (n x n complex array, field)."""
    n, field = _parse_header(obj, "matrix")
    flat = _parse_pairs(obj.get("entries"), n * n, field, "matrix")
    return flat.reshape(n, n), field


def parse_vector(obj: Any) -> Vector:
    n, field = _parse_header(obj, "vector")
    return Vector(_parse_pairs(obj.get("entries"), n, field, "vector"), field)


def parse_vectors(obj: Any) -> list[Vector]:
    if not isinstance(obj, dict) or not isinstance(obj.get("vectors"), list):
        raise ValueError("payload must be an object with a 'vectors' list")
    vectors = [parse_vector(item) for item in obj["vectors"]]
    if not vectors:
        raise ValueError("'vectors' list is empty")
    return vectors


def parse_density_factors(obj: Any) -> list[DensityFactor]:
    if not isinstance(obj, dict) or not isinstance(obj.get("factors"), list):
        raise ValueError("payload must be an object with a 'factors' list")
    factors = []
    for item in obj["factors"]:
        arr, _ = parse_matrix(item)
        factors.append(DensityFactor(arr))
    if not factors:
        raise ValueError("'factors' list is empty")
    return factors


def parse_partial_isometries(obj: Any) -> list[PartialIsometry]:
    if not isinstance(obj, dict) or not isinstance(obj.get("isometries"), list):
        raise ValueError("payload must be an object with an 'isometries' list")
    isos = []
    for item in obj["isometries"]:
        arr, _ = parse_matrix(item)
        isos.append(PartialIsometry(arr))
    if not isos:
        raise ValueError("'isometries' list is empty")
    return isos


def matrix_to_json(arr: np.ndarray, field: Field) -> dict:
    arr = np.asarray(arr, dtype=complex)
    return {
        "n": int(arr.shape[0]),
        "field": field.value,
        "entries": [[float(z.real), float(z.imag)] for z in arr.reshape(-1)],
    }


def vector_to_json(v: Vector) -> dict:
    return {
        "n": v.dim,
        "field": v.field.value,
        "entries": [[float(z.real), float(z.imag)] for z in v.entries],
    }

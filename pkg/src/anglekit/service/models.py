"""Request and response schemas for the verification service."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator

from ..certificates import Certificate


class MatrixPayload(BaseModel):
    """Square matrix: n*n row-major [re, im] pairs."""

    n: int = Field(ge=1)
    field: Literal["real", "complex"]
    entries: list[tuple[float, float]]

    @field_validator("entries")
    @classmethod
    def _length(cls, v, info):
        n = info.data.get("n")
        if n is not None and len(v) != n * n:
            raise ValueError(f"matrix needs exactly {n * n} entries, got {len(v)}")
        return v

    def to_json_obj(self) -> dict:
        return {"n": self.n, "field": self.field, "entries": [list(p) for p in self.entries]}


class VectorPayload(BaseModel):
    n: int = Field(ge=1)
    field: Literal["real", "complex"]
    entries: list[tuple[float, float]]

    @field_validator("entries")
    @classmethod
    def _length(cls, v, info):
        n = info.data.get("n")
        if n is not None and len(v) != n:
            raise ValueError(f"vector needs exactly {n} entries, got {len(v)}")
        return v

    def to_json_obj(self) -> dict:
        return {"n": self.n, "field": self.field, "entries": [list(p) for p in self.entries]}


class CertificateModel(BaseModel):
    id: str
    lhs: float
    rhs: float
    slack: float
    tol: float
    passed: bool = Field(alias="pass")
    context: dict[str, Any] = Field(default_factory=dict)

    model_config = {"populate_by_name": True}

    @classmethod
    def from_certificate(cls, cert: Certificate) -> "CertificateModel":
        return cls.model_validate(cert.to_dict())


class CheckPsdRequest(BaseModel):
    matrix: MatrixPayload
    tol: float = Field(default=1e-10, gt=0.0)


class CheckPsdResponse(BaseModel):
    passed: bool
    certificate: CertificateModel


class AnglesRequest(BaseModel):
    vectors: list[VectorPayload] = Field(min_length=2)
    kind: Literal["theta", "cap", "both"] = "theta"
    tol: float = Field(default=1e-9, gt=0.0)


class AngleTable(BaseModel):
    kind: Literal["theta", "cap_theta"]
    pairwise: list[list[float]]
    triples: list[CertificateModel]


class AnglesResponse(BaseModel):
    tables: list[AngleTable]
    all_triangle_pass: bool


class CompleteRequest(BaseModel):
    a: float = Field(ge=-1.0, le=1.0)
    b: float = Field(ge=-1.0, le=1.0)


class CompleteResponse(BaseModel):
    c_minus: float
    c_plus: float
    big_delta: float
    small_delta: float


class RkRequest(BaseModel):
    k: list[int] = Field(min_length=1)
    grid_n: int = Field(default=2000, ge=10)

    @field_validator("k")
    @classmethod
    def _k_range(cls, v):
        if any(k < 2 for k in v):
            raise ValueError("every k must be >= 2")
        return v


class RkRow(BaseModel):
    k: int
    closed_form: float
    grid_max: float
    sqrt_k_over_e: float
    ratio: float
    diagonal_argmax: float
    diagonal_argmax_expected: float


class RkResponse(BaseModel):
    rows: list[RkRow]


class VerifyRequest(BaseModel):
    seed: int = Field(default=42, ge=0, lt=2**64)
    samples: int = Field(default=100_000, ge=1)
    tol: float = Field(default=1e-9, gt=0.0)
    k_list: list[float] = Field(default=[2.0, 3.0, 5.5, 7.0], min_length=1)
    dims: list[int] = Field(default=[3], min_length=1)

    @field_validator("k_list")
    @classmethod
    def _k_range(cls, v):
        if any(k < 1.0 for k in v):
            raise ValueError("every k must be >= 1")
        return v

    @field_validator("dims")
    @classmethod
    def _dims_range(cls, v):
        if any(d < 1 for d in v):
            raise ValueError("every dimension must be >= 1")
        return v

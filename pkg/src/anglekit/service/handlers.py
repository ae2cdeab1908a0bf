"""Request handlers shared by the HTTP endpoints and the in-process CLI."""

from __future__ import annotations

import itertools
import math

from .. import io as akio
from ..angles import AngleKind, angle_triple, check_triangle_inequalities, cap_theta, theta
from ..inequalities import (
    completion_interval,
    cos_power_ratio_grid_scan,
    cos_power_ratio_sup,
    delta_bounds,
)
from ..linalg import HermitianMatrix, Vector, is_psd
from ..report import RunConfig, VerifyReport, run_verification
from .models import (
    AngleTable,
    AnglesRequest,
    AnglesResponse,
    CertificateModel,
    CheckPsdRequest,
    CheckPsdResponse,
    CompleteRequest,
    CompleteResponse,
    RkRequest,
    RkResponse,
    RkRow,
    VerifyRequest,
)

_KIND_TAGS = {"theta": (AngleKind.THETA,), "cap": (AngleKind.CAP_THETA,), "both": (AngleKind.THETA, AngleKind.CAP_THETA)}


def handle_check_psd(request: CheckPsdRequest) -> CheckPsdResponse:
    arr, _ = akio.parse_matrix(request.matrix.to_json_obj())
    matrix = HermitianMatrix.from_rows(arr)
    cert = is_psd(matrix, request.tol)
    return CheckPsdResponse(passed=cert.passed, certificate=CertificateModel.from_certificate(cert))


def _pairwise_angles(vectors: list[Vector], kind: AngleKind) -> list[list[float]]:
    fn = theta if kind is AngleKind.THETA else cap_theta
    table = [[0.0] * len(vectors) for _ in vectors]
    for i, u in enumerate(vectors):
        for j, v in enumerate(vectors):
            if i < j:
                value = fn(u, v)
                table[i][j] = value
                table[j][i] = value
            elif i == j:
                table[i][j] = 0.0
    return table


def handle_angles(request: AnglesRequest) -> AnglesResponse:
    vectors = [akio.parse_vector(p.to_json_obj()) for p in request.vectors]
    tables = []
    all_pass = True
    for kind in _KIND_TAGS[request.kind]:
        triples = []
        for i, j, k in itertools.combinations(range(len(vectors)), 3):
            triple = angle_triple(vectors[i], vectors[j], vectors[k], kind)
            cert = check_triangle_inequalities(triple, request.tol)
            cert = type(cert)(
                cert.inequality_id, cert.lhs, cert.rhs, cert.tol, {**cert.context, "indices": [i, j, k]}
            )
            all_pass = all_pass and cert.passed
            triples.append(CertificateModel.from_certificate(cert))
        tables.append(
            AngleTable(kind=kind.value, pairwise=_pairwise_angles(vectors, kind), triples=triples)
        )
    return AnglesResponse(tables=tables, all_triangle_pass=all_pass)


def handle_complete(request: CompleteRequest) -> CompleteResponse:
    interval = completion_interval(request.a, request.b)
    bounds = delta_bounds(request.a, request.b)
    return CompleteResponse(
        c_minus=interval.c_minus,
        c_plus=interval.c_plus,
        big_delta=bounds.big_delta,
        small_delta=bounds.small_delta,
    )


def handle_rk(request: RkRequest) -> RkResponse:
    rows = []
    for k in request.k:
        scan = cos_power_ratio_grid_scan(k, request.grid_n)
        closed = cos_power_ratio_sup(k)
        asymptote = math.sqrt(k / math.e)
        rows.append(
            RkRow(
                k=k,
                closed_form=closed,
                grid_max=scan.max_value,
                sqrt_k_over_e=asymptote,
                ratio=closed / asymptote,
                diagonal_argmax=scan.diagonal_argmax,
                diagonal_argmax_expected=math.atan(1.0 / math.sqrt(k - 1.0)),
            )
        )
    return RkResponse(rows=rows)


def handle_verify(request: VerifyRequest) -> VerifyReport:
    config = RunConfig(
        seed=request.seed,
        samples=request.samples,
        tol=request.tol,
        k_list=tuple(request.k_list),
        dims=tuple(request.dims),
    )
    return run_verification(config)

"""Command-line frontend.

Each subcommand builds the same request model the HTTP service accepts and
either dispatches it in-process (default) or posts it to a running service
(`--server URL`). Exit codes: 0 all checks passed, 1 a verified check failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from .report import thread_cap
from .service import handlers
from .service.models import (
    AnglesRequest,
    CheckPsdRequest,
    CompleteRequest,
    MatrixPayload,
    RkRequest,
    VectorPayload,
    VerifyRequest,
)

_CERT_COLUMNS = ("id", "lhs", "rhs", "slack", "pass")


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anglekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
        p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
        p.add_argument("--server", default=None, help="URL of a running anglekit service")

    p = sub.add_parser("check-psd", help="spectral positive-semidefiniteness check of a JSON matrix")
    p.add_argument("matrix", type=Path, help="matrix JSON file")
    p.add_argument("--tol", type=float, default=1e-10)
    common(p)

    p = sub.add_parser("angles", help="pairwise angle tables and triangle certificates")
    p.add_argument("vectors", type=Path, help="JSON file with a 'vectors' list")
    p.add_argument("--kind", choices=("theta", "cap", "both"), default="theta")
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)

    p = sub.add_parser("complete", help="completion interval [c-, c+] and the Delta/delta bounds")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    common(p)

    p = sub.add_parser("verify", help="run every randomized certificate sweep and the named regressions")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--k", type=_float_list, default=[2.0, 3.0, 5.5, 7.0], help="comma-separated powers")
    p.add_argument("--dims", type=_int_list, default=[3], help="comma-separated vector dimensions")
    common(p)

    p = sub.add_parser("rk", help="supremum of the cosine-power ratio: closed form vs grid")
    p.add_argument("--k", type=_int_list, required=True, help="comma-separated integer powers >= 2")
    p.add_argument("--grid", type=int, default=2000, help="grid resolution per axis")
    common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _load_json(path: Path):
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from None


def _post(server: str, path: str, payload: dict) -> dict:
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=None)
    if response.status_code >= 400:
        detail = response.text
        try:
            detail = response.json().get("detail", detail)
        except Exception:
            pass
        raise ValueError(f"service rejected the request ({response.status_code}): {detail}")
    return response.json()


def _dispatch(args, path: str, request_model, handler) -> dict:
    if args.server:
        return _post(args.server, path, request_model.model_dump(mode="json"))
    response = handler(request_model)
    if hasattr(response, "to_dict"):
        return response.to_dict()
    return response.model_dump(mode="json", by_alias=True)


def _certs_csv(certs: list[dict]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CERT_COLUMNS)
    for cert in certs:
        writer.writerow(
            [cert["id"], repr(cert["lhs"]), repr(cert["rhs"]), repr(cert["slack"]), str(cert["pass"]).lower()]
        )
    return buf.getvalue()


def _rows_csv(header: tuple[str, ...], rows: list[list]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _cmd_check_psd(args) -> int:
    payload = MatrixPayload.model_validate(_load_json(args.matrix))
    request = CheckPsdRequest(matrix=payload, tol=args.tol)
    result = _dispatch(args, "/check-psd", request, handlers.handle_check_psd)
    if args.format == "csv":
        _emit(_certs_csv([result["certificate"]]), args.out)
    else:
        _emit(_canonical_json(result), args.out)
    return 0 if result["passed"] else 1


def _cmd_angles(args) -> int:
    raw = _load_json(args.vectors)
    if not isinstance(raw, dict) or not isinstance(raw.get("vectors"), list):
        raise ValueError("vectors file must be an object with a 'vectors' list")
    vectors = [VectorPayload.model_validate(item) for item in raw["vectors"]]
    request = AnglesRequest(vectors=vectors, kind=args.kind, tol=args.tol)
    result = _dispatch(args, "/angles", request, handlers.handle_angles)
    if args.format == "csv":
        rows = []
        for table in result["tables"]:
            pairwise = table["pairwise"]
            for i in range(len(pairwise)):
                for j in range(i + 1, len(pairwise)):
                    rows.append([table["kind"], i, j, repr(pairwise[i][j])])
        _emit(_rows_csv(("kind", "i", "j", "radians"), rows), args.out)
    else:
        _emit(_canonical_json(result), args.out)
    return 0 if result["all_triangle_pass"] else 1


def _cmd_complete(args) -> int:
    request = CompleteRequest(a=args.a, b=args.b)
    result = _dispatch(args, "/complete", request, handlers.handle_complete)
    if args.format == "csv":
        _emit(
            _rows_csv(
                ("c_minus", "c_plus", "big_delta", "small_delta"),
                [[repr(result[k]) for k in ("c_minus", "c_plus", "big_delta", "small_delta")]],
            ),
            args.out,
        )
    else:
        _emit(_canonical_json(result), args.out)
    return 0


def _cmd_verify(args) -> int:
    request = VerifyRequest(seed=args.seed, samples=args.samples, tol=args.tol, k_list=args.k, dims=args.dims)
    result = _dispatch(args, "/verify", request, handlers.handle_verify)
    if args.format == "csv":
        certs = [r["certificate"] for r in result["regressions"]]
        for family in result["families"]:
            certs.extend(family["failure_examples"])
        _emit(_certs_csv(certs), args.out)
    else:
        _emit(_canonical_json(result), args.out)
    summary = result["summary"]
    print(
        f"verify: {summary['passed']}/{summary['total']} checks passed, "
        f"{summary['failed']} failed, worst slack {summary['worst_slack']:.3e} "
        f"(threads={thread_cap()})",
        file=sys.stderr,
    )
    return 0 if summary["failed"] == 0 else 1


def _cmd_rk(args) -> int:
    request = RkRequest(k=args.k, grid_n=args.grid)
    result = _dispatch(args, "/rk", request, handlers.handle_rk)
    if args.format == "csv":
        rows = [
            [row["k"], repr(row["closed_form"]), repr(row["grid_max"]), repr(row["sqrt_k_over_e"]), repr(row["ratio"])]
            for row in result["rows"]
        ]
        _emit(_rows_csv(("k", "closed_form", "grid_max", "sqrt_k_over_e", "ratio"), rows), args.out)
    else:
        _emit(_canonical_json(result), args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("anglekit.service.app:app", host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "check-psd": _cmd_check_psd,
    "angles": _cmd_angles,
    "complete": _cmd_complete,
    "verify": _cmd_verify,
    "rk": _cmd_rk,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: invalid request: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

"""Pass/fail records for individual inequality checks.

A certificate freezes one instance of an inequality LHS <= RHS together with
the tolerance it was judged at, so downstream consumers (reports, the CLI, the
service) can audit the slack instead of trusting a bare boolean.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

DEFAULT_TOL = 1e-9

CSV_COLUMNS = ("id", "lhs", "rhs", "slack", "pass")


@dataclass(frozen=True)
class Certificate:
    """Outcome of checking `lhs <= rhs` within an absolute tolerance."""

    inequality_id: str
    lhs: float
    rhs: float
    tol: float = DEFAULT_TOL
    context: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("lhs", "rhs", "tol"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tol

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.inequality_id,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "slack": float(self.slack),
            "tol": float(self.tol),
            "pass": self.passed,
            "context": {k: _plain(v) for k, v in self.context.items()},
        }


def _plain(value: Any) -> Any:
    """Coerce numpy scalars so serialized reports stay backend-independent."""
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return value.item()
    return value


def worst_certificate(certs: Iterable[Certificate]) -> Certificate | None:
    worst = None
    for cert in certs:
        if worst is None or cert.slack < worst.slack:
            worst = cert
    return worst


def certificates_to_csv(certs: Iterable[Certificate]) -> str:
    """One certificate per row, stable column order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for cert in certs:
        writer.writerow(
            [
                cert.inequality_id,
                repr(float(cert.lhs)),
                repr(float(cert.rhs)),
                repr(float(cert.slack)),
                str(cert.passed).lower(),
            ]
        )
    return buf.getvalue()

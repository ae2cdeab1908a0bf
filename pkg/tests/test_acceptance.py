"""Acceptance gate: every criterion at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL line per
criterion. The randomized criteria use fixed seeds, so outcomes are
reproducible bit for bit.
"""

import json
import math
import time

from anglekit.cli import main
from anglekit.inequalities import (
    cos_power_ratio_grid_scan,
    cos_power_ratio_sup,
    interval_bound_no_sqrt2_certificate,
    pair_difference_certificates,
    sin_bound_power_certificate,
)
from anglekit.linalg import Sym3
from anglekit.metric_functions import angle_trig_certificates, cos_sum_certificate, counterexample_vectors
from anglekit.sweeps import (
    SweepConfig,
    completion_oracle_check,
    phase_grid_check,
    psd_triangle_equivalence,
    run_all_families,
    run_family,
)

SEED = 42
TOL = 1e-9


def _report(name: str, ok: bool, **values) -> None:
    parts = "  ".join(f"{k}={v}" for k, v in values.items())
    print(f"{'PASS' if ok else 'FAIL'}  {name:34s} {parts}")


def test_criterion_1_matrix_c_regression():
    start = time.perf_counter()
    s = Sym3(1.0, 0.1, 0.1)
    a, b, c = s.entries_tuple()
    diff1 = abs(a - b)
    diff2 = abs(a * a - b * b)
    diff3 = abs(a**3 - b**3)
    sin_c = math.sqrt(1.0 - c * c)
    k2 = sin_bound_power_certificate(s, 2.0, TOL)
    k3 = sin_bound_power_certificate(s, 3.0, TOL)
    elapsed = time.perf_counter() - start
    ok = (
        abs(diff1 - 0.9) <= 1e-9
        and abs(diff2 - 0.99) <= 1e-9
        and abs(diff3 - 0.999) <= 1e-9
        and abs(sin_c - math.sqrt(0.99)) <= 1e-9
        and round(sin_c, 5) == 0.99499
        and k2.passed
        and not k3.passed
        and elapsed < 1.0
    )
    _report(
        "1 matrix C regression",
        ok,
        diff1=diff1,
        diff2=diff2,
        diff3=diff3,
        sqrt_1_c2=round(sin_c, 6),
        k2="pass" if k2.passed else "fail",
        k3="fail" if not k3.passed else "pass",
        seconds=round(elapsed, 4),
    )
    assert ok


def test_criterion_2_matrix_d_regression():
    s = Sym3(0.0, 0.4, 0.91)
    plain = interval_bound_no_sqrt2_certificate(s, TOL)
    strengthened = next(
        c
        for c in pair_difference_certificates(s, TOL)
        if c.inequality_id == "pair.diff_sqrt2_any" and c.context["arrangement"] == "ab|c"
    )
    ok = (
        abs(plain.rhs - 0.3) <= 1e-9
        and abs(plain.lhs - 0.4) <= 1e-9
        and not plain.passed
        and abs(strengthened.rhs - math.sqrt(2.0) * 0.3) <= 1e-9
        and strengthened.passed
    )
    _report(
        "2 matrix D regression",
        ok,
        sqrt_1_c=plain.rhs,
        diff=plain.lhs,
        sqrt2_bound=round(strengthened.rhs, 6),
    )
    assert ok


def test_criterion_3_cosine_sum_counterexample():
    u, v, w = counterexample_vectors()
    bad = cos_sum_certificate(u, v, w, tol=TOL)
    margin = bad.lhs - bad.rhs
    others = {c.inequality_id: c for c in angle_trig_certificates(u, v, w, tol=TOL)}
    ok = (
        abs(margin - 1.0 / math.sqrt(2.0)) <= 1e-9
        and not bad.passed
        and others["angle.triangle"].passed
        and others["angle.sin"].passed
        and others["angle.cos_sin"].passed
    )
    _report(
        "3 cosine-sum counterexample",
        ok,
        margin=round(margin, 6),
        triangle="pass" if others["angle.triangle"].passed else "fail",
        sin="pass" if others["angle.sin"].passed else "fail",
        cos_sin="pass" if others["angle.cos_sin"].passed else "fail",
    )
    assert ok


def test_criterion_4_randomized_universal_sweep():
    start = time.perf_counter()
    cfg = SweepConfig(samples=100_000, tol=TOL, k_list=(2.0, 3.0, 5.5, 7.0), dims=(3,))
    families = run_all_families(SEED, cfg)
    # the integer-power sine bound additionally at k = 1..6
    cfg_int = SweepConfig(samples=100_000, tol=TOL, k_list=(1.0, 2.0, 3.0, 4.0, 5.0, 6.0), dims=(3,))
    families.append(run_family("sym3.hadamard", SEED, cfg_int))
    elapsed = time.perf_counter() - start
    failures = sum(f.failures for f in families)
    certificates = sum(f.certificates for f in families)
    worst = min(f.worst_slack for f in families)
    ok = failures == 0 and elapsed < 120.0
    _report(
        "4 randomized universal sweep",
        ok,
        families=len(families),
        certificates=certificates,
        failures=failures,
        worst_slack=f"{worst:.3e}",
        seconds=round(elapsed, 1),
    )
    assert ok


def test_criterion_5_completion_interval_oracle():
    result = completion_oracle_check(SEED, trials=1000, step=1e-4)
    ok = result["max_endpoint_gap"] <= 1e-4
    _report(
        "5 completion oracle agreement",
        ok,
        trials=result["trials"],
        max_endpoint_gap=f"{result['max_endpoint_gap']:.3e}",
    )
    assert ok


def test_criterion_6_cos_power_ratio_supremum():
    grid_ok = True
    details = {}
    for k in (2, 10, 100):
        scan = cos_power_ratio_grid_scan(k, 2000)
        closed = cos_power_ratio_sup(k)
        details[f"gap_k{k}"] = f"{abs(scan.max_value - closed):.2e}"
        grid_ok = grid_ok and abs(scan.max_value - closed) <= 1e-3
        expected_argmax = math.atan(1.0 / math.sqrt(k - 1.0))
        grid_ok = grid_ok and abs(scan.diagonal_argmax - expected_argmax) <= 2.0 * math.pi / 2000
    ratio_100 = cos_power_ratio_sup(100) / math.sqrt(100 / math.e)
    ratio_1000 = cos_power_ratio_sup(1000) / math.sqrt(1000 / math.e)
    ok = grid_ok and 1.0 <= ratio_100 <= 1.01 and 1.0 <= ratio_1000 <= 1.001
    _report(
        "6 ratio supremum grid vs closed",
        ok,
        ratio_100=round(ratio_100, 6),
        ratio_1000=round(ratio_1000, 6),
        **details,
    )
    assert ok


def test_criterion_7_phase_minimum_identity():
    result = phase_grid_check(SEED, pairs=1000, dim=3, grid_size=10_000)
    ok = (
        result["max_grid_gap"] <= 1e-4
        and result["min_grid_gap"] >= -1e-12
        and result["max_exact_gap"] <= 1e-12
    )
    _report(
        "7 phase-minimum identity",
        ok,
        max_grid_gap=f"{result['max_grid_gap']:.3e}",
        max_exact_gap=f"{result['max_exact_gap']:.3e}",
    )
    assert ok


def test_criterion_8_psd_triangle_equivalence():
    result = psd_triangle_equivalence(SEED, samples=100_000, band=1e-9)
    ok = result["outside_band"] == 0
    _report(
        "8 PSD <-> arccos-triangle equivalence",
        ok,
        samples=result["samples"],
        disagreements_outside_band=result["outside_band"],
    )
    assert ok


def test_criterion_9_deterministic_reports(tmp_path, monkeypatch, capsys):
    args = ["verify", "--samples", "5000", "--seed", "777"]
    paths = [tmp_path / f"report{i}.json" for i in range(3)]
    monkeypatch.setenv("ANGLEKIT_THREADS", "1")
    assert main(args + ["--out", str(paths[0])]) == 0
    assert main(args + ["--out", str(paths[1])]) == 0
    monkeypatch.setenv("ANGLEKIT_THREADS", "4")
    assert main(args + ["--out", str(paths[2])]) == 0
    capsys.readouterr()
    blobs = [p.read_bytes() for p in paths]
    identical = blobs[0] == blobs[1] == blobs[2]
    report = json.loads(blobs[0])
    ok = identical and report["summary"]["failed"] == 0 and report["summary"]["regressions_ok"]
    _report(
        "9 byte-identical verify reports",
        ok,
        bytes=len(blobs[0]),
        identical=identical,
        thread_counts="1,1,4",
    )
    assert ok

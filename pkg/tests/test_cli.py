import json
import socket
import threading
import time

import numpy as np
import pytest

from anglekit.cli import main

from conftest import MATRIX_C_ROWS


def _matrix_payload(rows) -> dict:
    arr = np.asarray(rows, dtype=float)
    return {
        "n": arr.shape[0],
        "field": "real",
        "entries": [[float(x), 0.0] for x in arr.reshape(-1)],
    }


@pytest.fixture
def matrix_c_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(_matrix_payload(MATRIX_C_ROWS)))
    return path


@pytest.fixture
def indefinite_file(tmp_path):
    rows = [[1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
    path = tmp_path / "neg.json"
    path.write_text(json.dumps(_matrix_payload(rows)))
    return path


@pytest.fixture
def vectors_file(tmp_path):
    payload = {
        "vectors": [
            {"n": 3, "field": "real", "entries": [[0, 0], [0, 0], [1, 0]]},
            {
                "n": 3,
                "field": "real",
                "entries": [[0.7071067811865475, 0], [0, 0], [0.7071067811865475, 0]],
            },
            {"n": 3, "field": "real", "entries": [[0, 0], [1, 0], [0, 0]]},
        ]
    }
    path = tmp_path / "vecs.json"
    path.write_text(json.dumps(payload))
    return path


def test_check_psd_exit_codes(matrix_c_file, indefinite_file, tmp_path, capsys):
    assert main(["check-psd", str(matrix_c_file)]) == 0
    assert main(["check-psd", str(indefinite_file)]) == 1
    truncated = tmp_path / "trunc.json"
    truncated.write_text('{"n": 3, "field"')
    assert main(["check-psd", str(truncated)]) == 2
    missing = tmp_path / "missing.json"
    assert main(["check-psd", str(missing)]) == 2
    capsys.readouterr()


def test_check_psd_json_output(matrix_c_file, capsys):
    assert main(["check-psd", str(matrix_c_file)]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["passed"] is True
    assert body["certificate"]["id"] == "psd.min_eigenvalue"


def test_angles_both_kinds(vectors_file, capsys):
    assert main(["angles", str(vectors_file), "--kind", "both"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert [t["kind"] for t in body["tables"]] == ["theta", "cap_theta"]
    assert abs(body["tables"][0]["pairwise"][0][1] - 0.7853981633974483) < 1e-15


def test_angles_csv(vectors_file, capsys):
    assert main(["angles", str(vectors_file), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "kind,i,j,radians"
    assert len(lines) == 4  # header + three pairs


def test_angles_zero_vector_is_input_error(tmp_path, capsys):
    payload = {
        "vectors": [
            {"n": 2, "field": "real", "entries": [[0, 0], [0, 0]]},
            {"n": 2, "field": "real", "entries": [[1, 0], [0, 0]]},
            {"n": 2, "field": "real", "entries": [[0, 0], [1, 0]]},
        ]
    }
    path = tmp_path / "zero.json"
    path.write_text(json.dumps(payload))
    assert main(["angles", str(path)]) == 2
    capsys.readouterr()


def test_complete_output(capsys):
    assert main(["complete", "--a", "0.5", "--b", "0.5"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body == {
        "big_delta": 0.8660254037844386,
        "c_minus": -0.5,
        "c_plus": 1.0,
        "small_delta": 0.0,
    }


def test_complete_rejects_out_of_range(capsys):
    assert main(["complete", "--a", "1.5", "--b", "0.0"]) == 2
    capsys.readouterr()


def test_rk_csv(capsys):
    assert main(["rk", "--k", "2,10", "--grid", "200", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "k,closed_form,grid_max,sqrt_k_over_e,ratio"
    assert lines[1].startswith("2,1.0,")


def test_rk_rejects_small_k(capsys):
    assert main(["rk", "--k", "1"]) == 2
    capsys.readouterr()


def test_verify_small_run_passes(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "--samples", "400", "--seed", "5", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["summary"]["failed"] == 0
    assert report["schema"] == 1
    capsys.readouterr()


def test_verify_rejects_zero_samples(capsys):
    assert main(["verify", "--samples", "0"]) == 2
    capsys.readouterr()


def test_verify_reports_are_byte_identical(tmp_path, capsys, monkeypatch):
    first = tmp_path / "r1.json"
    second = tmp_path / "r2.json"
    third = tmp_path / "r3.json"
    args = ["verify", "--samples", "500", "--seed", "21"]
    monkeypatch.setenv("ANGLEKIT_THREADS", "1")
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second)]) == 0
    monkeypatch.setenv("ANGLEKIT_THREADS", "4")
    assert main(args + ["--out", str(third)]) == 0
    assert first.read_bytes() == second.read_bytes() == third.read_bytes()
    capsys.readouterr()


def test_verify_csv_lists_regressions(capsys):
    assert main(["verify", "--samples", "300", "--seed", "9", "--format", "csv"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "id,lhs,rhs,slack,pass"
    ids = [line.split(",")[0] for line in out[1:]]
    assert "pair.power_diff_vs_sin" in ids
    assert "angle.cos_sum" in ids


# --- remote mode: the CLI as a thin client of a live server ---


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture(scope="module")
def live_server():
    import uvicorn

    from anglekit.service import app

    port = _free_port()
    config = uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 15.0
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("test server failed to start")
        time.sleep(0.02)
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5.0)


def test_remote_complete_matches_local(live_server, capsys):
    assert main(["complete", "--a", "0.25", "--b", "-0.5"]) == 0
    local = capsys.readouterr().out
    assert main(["complete", "--a", "0.25", "--b", "-0.5", "--server", live_server]) == 0
    remote = capsys.readouterr().out
    assert local == remote


def test_remote_check_psd_exit_codes(live_server, matrix_c_file, indefinite_file, capsys):
    assert main(["check-psd", str(matrix_c_file), "--server", live_server]) == 0
    assert main(["check-psd", str(indefinite_file), "--server", live_server]) == 1
    capsys.readouterr()


def test_remote_verify_matches_local_bytes(live_server, tmp_path, capsys):
    local = tmp_path / "local.json"
    remote = tmp_path / "remote.json"
    args = ["verify", "--samples", "300", "--seed", "33"]
    assert main(args + ["--out", str(local)]) == 0
    assert main(args + ["--out", str(remote), "--server", live_server]) == 0
    assert local.read_bytes() == remote.read_bytes()
    capsys.readouterr()


def test_remote_input_error_maps_to_exit_2(live_server, capsys):
    assert main(["complete", "--a", "1.5", "--b", "0.0", "--server", live_server]) == 2
    capsys.readouterr()

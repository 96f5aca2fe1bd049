import csv
import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tspectral import build_grid, make_geometry, pullback, wft
from tspectral.cli import main
from tspectral.io import fmt, read_csv, read_signal_csv, write_csv, write_signal_csv, write_spectrum_csv


def run(*argv, env=None, cwd=None):
    return subprocess.run([sys.executable, "-m", "tspectral", *argv], capture_output=True, text=True,
                          env=env, cwd=cwd)


@pytest.fixture
def hadamard_file(tmp_path):
    p = tmp_path / "hadamard.json"
    p.write_text(json.dumps({"kind": "hadamard", "params": {"t_shift": 0}, "weight": {"kind": "poly", "p": 1}}))
    return p


# io

@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trips(x):
    assert float(fmt(x)) == x


def test_fmt_types():
    assert fmt(True) == "true"
    assert fmt(np.int64(3)) == "3"
    assert fmt(0.1) == "0.10000000000000001"


def test_csv_round_trip(tmp_path):
    rows = [(1, 0.1, -2.5e-300), (2, np.pi, 1e300)]
    p = write_csv(tmp_path / "sub" / "x.csv", ["a", "b", "c"], rows)
    cols = read_csv(p)
    assert cols["b"][1] == np.pi and cols["c"][0] == -2.5e-300


def test_read_csv_requires_header(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("")
    with pytest.raises(ValueError):
        read_csv(p)


def test_signal_csv_round_trip(tmp_path):
    g = make_geometry({"kind": "hadamard"})
    gr = build_grid(g, 20.0, 512)
    f = pullback(gr, lambda y: np.exp(-y ** 2) * (1 + 1j * y))
    back = read_signal_csv(write_signal_csv(tmp_path / "f.csv", f), gr)
    assert np.array_equal(back.samples, f.samples)


def test_signal_csv_grid_mismatch(tmp_path):
    gr = build_grid(make_geometry({}), 20.0, 512)
    p = write_signal_csv(tmp_path / "f.csv", gr.zeros())
    with pytest.raises(ValueError, match="grid"):
        read_signal_csv(p, build_grid(make_geometry({}), 10.0, 512))


def test_spectrum_csv(tmp_path):
    gr = build_grid(make_geometry({}), 20.0, 256)
    p = write_spectrum_csv(tmp_path / "F.csv", wft(gr.sample(lambda t: np.exp(-t ** 2))))
    cols = read_csv(p)
    assert list(cols) == ["xi", "re", "im"] and cols["xi"].size == 256


# cli

def test_parseval_writes_report(tmp_path, capsys):
    assert main(["parseval", "--N", "1024", "--signals", "3", "--out", str(tmp_path)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["pass"] and summary["max_residual"] <= 1e-9
    assert len(json.loads((tmp_path / "parseval.json").read_text())["signals"]) == 3


def test_validate_geometry(tmp_path, hadamard_file, capsys):
    assert main(["validate-geometry", "--geometry", str(hadamard_file), "--out", str(tmp_path)]) == 0
    d = json.loads((tmp_path / "validate_geometry.json").read_text())
    assert d["geometry"]["kind"] == "hadamard"


def test_hermite_gram_pass_and_fail(tmp_path, hadamard_file, capsys):
    assert main(["hermite-gram", "--geometry", str(hadamard_file), "--modes", "8", "--out", str(tmp_path)]) == 0
    assert main(["hermite-gram", "--modes", "8", "--tol", "0", "--N", "512", "--out", str(tmp_path)]) == 1


def test_delta_scaling_table(tmp_path, capsys):
    assert main(["delta-scaling", "--out", str(tmp_path)]) == 0
    with (tmp_path / "delta_scaling.csv").open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["eps", "abs_error", "est_order"] and len(rows) == 5
    assert main(["delta-scaling", "--order-min", "3", "--out", str(tmp_path)]) == 1


def test_solve_from_csv(tmp_path, hadamard_file, capsys):
    gr = build_grid(make_geometry(json.loads(hadamard_file.read_text())), 20.0, 1024)
    write_signal_csv(tmp_path / "f.csv", pullback(gr, lambda y: np.exp(-y ** 2 / 2)))
    rc = main(["solve", "--geometry", str(hadamard_file), "--N", "1024", "--alpha", "0.7",
               "--input", str(tmp_path / "f.csv"), "--out", str(tmp_path)])
    assert rc == 0
    rep = json.loads((tmp_path / "solve_report.json").read_text())
    assert rep["bound_holds"] and rep["residual"] <= 1e-9
    assert read_csv(tmp_path / "solution.csv")["y"].size == 1024


def test_solve_rejects_wrong_grid(tmp_path, capsys):
    gr = build_grid(make_geometry({}), 20.0, 512)
    write_signal_csv(tmp_path / "f.csv", gr.zeros())
    assert main(["solve", "--alpha", "1", "--input", str(tmp_path / "f.csv"), "--out", str(tmp_path)]) == 2
    assert "grid" in capsys.readouterr().err


def test_green_sweep_csv(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"weight": {"kind": "poly", "p": 1}}))
    assert main(["green", "--geometry", str(g), "--alpha", "1.5", "--t0=-2,0,2", "--out", str(tmp_path)]) == 0
    cols = read_csv(tmp_path / "green_sweep.csv")
    assert list(cols) == ["t0", "alpha", "sup_envelope"]
    assert np.all(np.isfinite(cols["sup_envelope"])) and cols["t0"].tolist() == [-2, 0, 2]


@pytest.mark.parametrize("argv", [
    ["green", "--alpha", "1.0"],
    ["green", "--alpha", "1.5", "--eps", "0.1,0.05"],
    ["solve", "--alpha", "2.5", "--input", "x.csv"],
    ["solve", "--alpha", "0.5"],
    ["embedding", "--s", "0.5"],
    ["embedding", "--seeds", "0"],
    ["parseval", "--N", "1000"],
    ["delta-scaling", "--eps", "0.1,0.001"],
])
def test_usage_errors_exit_2(tmp_path, argv, capsys):
    assert main([*argv, "--out", str(tmp_path)]) == 2
    assert "error" in capsys.readouterr().err


def test_bad_geometry_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "affine", "params": {"a": -1}}))
    assert main(["parseval", "--geometry", str(bad), "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "geometry file" in err


def test_envelope_csv(tmp_path, capsys):
    assert main(["envelope-csv", "--N", "1024", "--out", str(tmp_path)]) == 0
    cols = read_csv(tmp_path / "envelope.csv")
    assert list(cols) == ["t", "u", "plus_env", "minus_env"]
    assert np.all(np.abs(cols["u"]) <= cols["plus_env"])
    assert np.array_equal(cols["minus_env"], -cols["plus_env"])


def test_subprocess_exit_codes(tmp_path):
    ok = run("embedding", "--s", "1", "--seeds", "3", "--N", "512", "--out", str(tmp_path))
    assert ok.returncode == 0, ok.stderr
    assert json.loads(ok.stdout)["violations"] == 0
    assert run("hermite-gram", "--modes", "4", "--tol", "0", "--N", "256", "--out", str(tmp_path)).returncode == 1
    assert run("solve", "--alpha", "2.5", "--out", str(tmp_path)).returncode == 2
    assert run("no-such-command").returncode == 2


def test_default_out_from_env(tmp_path):
    env = {**os.environ, "TS_DEFAULT_OUT": str(tmp_path / "envout")}
    r = run("hermite-gram", "--modes", "4", "--N", "256", env=env, cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    assert (tmp_path / "envout" / "hermite_gram.json").exists()
    env.pop("TS_DEFAULT_OUT")
    r = run("hermite-gram", "--modes", "4", "--N", "256", env=env, cwd=tmp_path)
    assert (tmp_path / "ts_out" / "hermite_gram.json").exists()

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from sigmasum import analysis, cli
from sigmasum.kernels import DeKernel, de_tail_bound


def run_cli(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_factors_table(capsys):
    status, out, _ = run_cli(capsys, "factors", "--method", "sigma", "--r", "2", "--alpha", repr(math.pi / 4), "--N", "8")
    assert status == 0
    table = rows(out)
    assert table[0] == ["k", "mu_k"]
    assert len(table) == 1 + 9
    assert float(table[1][1]) == 1.0


def test_factors_poisson_and_lanczos(capsys):
    status, out, _ = run_cli(capsys, "factors", "--method", "poisson", "--r", "0.5", "--N", "3")
    assert status == 0
    assert [float(r[1]) for r in rows(out)[1:]] == [1, 0.5, 0.25, 0.125]
    status, out, _ = run_cli(capsys, "factors", "--method", "lanczos", "--n", "3", "--N", "5")
    assert status == 0
    assert [float(r[1]) for r in rows(out)[-2:]] == [0.0, 0.0]


def test_kernel_diff_within_tail_bound(capsys):
    alpha = math.pi / 4
    status, out, _ = run_cli(capsys, "kernel", "--r", "3", "--alpha", repr(alpha), "--M", "64", "--N", "2048")
    assert status == 0
    table = rows(out)
    assert table[0] == ["t", "De_closed", "De_spectral", "abs_diff"]
    worst = max(float(r[3]) for r in table[1:])
    assert worst <= de_tail_bound(DeKernel(3, alpha), 2048) + 1e-12


def test_sum_from_series_json(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"a0": 1.0, "a": [0.5], "b": [0.0, 0.25]}))
    status, out, _ = run_cli(capsys, "sum", "--series", str(spec), "--N", "4", "--M", "8")
    assert status == 0
    for t, v in rows(out)[1:]:
        t = float(t)
        assert float(v) == pytest.approx(0.5 + 0.5 * math.cos(t) + 0.25 * math.sin(2 * t), abs=1e-14)


def test_convolve_json_format(capsys):
    status, out, _ = run_cli(
        capsys, "convolve", "--builtin", "square", "--r", "1", "--alpha", repr(math.pi / 4), "--M", "16", "--format", "json"
    )
    assert status == 0
    data = json.loads(out)
    assert len(data) == 16
    assert all(set(d) == {"t", "value"} for d in data)


def test_gibbs_command(capsys):
    status, out, _ = run_cli(capsys, "gibbs", "--builtin", "square", "--method", "identity", "--N", "127", "--M", "4096")
    assert status == 0
    ov = float(rows(out)[1][3])
    assert ov == pytest.approx(analysis.wilbraham_gibbs_overshoot(), abs=0.01)


@pytest.mark.parametrize(
    "argv",
    [
        ["factors", "--method", "sigma", "--r", "2", "--N", "4"],  # missing alpha
        ["factors", "--method", "sigma", "--r", "2.5", "--alpha", "0.5", "--N", "4"],
        ["factors", "--method", "poisson", "--r", "1.5", "--N", "4"],
        ["factors", "--method", "sigma", "--r", "x", "--alpha", "0.5", "--N", "4"],
        ["sum", "--N", "4"],  # no function
        ["sum", "--builtin", "square", "--series", "x.json", "--N", "4"],
        ["kernel", "--r", "2", "--alpha", "0.5", "--M", "1"],
        ["convolve", "--builtin", "square", "--kernel", "poisson", "--r", "1.0", "--M", "8"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    status, out, err = run_cli(capsys, *argv)
    assert status == 2
    assert out == ""
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["factors", "--method", "bogus", "--N", "3"])
    assert exc.value.code == 2


def test_io_errors_exit_2(capsys, tmp_path):
    status, _, err = run_cli(capsys, "sum", "--series", str(tmp_path / "missing.json"), "--N", "4")
    assert status == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    status, _, _ = run_cli(capsys, "sum", "--series", str(bad), "--N", "4")
    assert status == 2
    status, _, _ = run_cli(capsys, "factors", "--N", "3", "--output", str(tmp_path / "no" / "dir" / "f.csv"))
    assert status == 2


def test_output_file(capsys, tmp_path):
    dest = tmp_path / "f.csv"
    status, out, _ = run_cli(capsys, "factors", "--N", "3", "--output", str(dest))
    assert status == 0 and out == ""
    assert dest.read_text().splitlines()[0] == "k,mu_k"


def test_verify_small_suite(capsys):
    status, out, _ = run_cli(capsys, "verify", "--suite", "delta")
    assert status == 0
    data = json.loads(out)
    assert data and all(d["passed"] for d in data)
    assert all("runtime_ms" not in d for d in data)
    status, out, _ = run_cli(capsys, "verify", "--suite", "delta", "--timings")
    assert all("runtime_ms" in d for d in json.loads(out))


def test_verify_failure_exit_1(capsys, monkeypatch):
    failing = lambda: [analysis.VerificationReport("forced", {}, 2.0, 1.0)]
    monkeypatch.setitem(analysis.SUITES, "delta", failing)
    status, out, _ = run_cli(capsys, "verify", "--suite", "delta")
    assert status == 1
    assert json.loads(out)[0]["passed"] is False


def test_byte_determinism(capsys):
    argv = ["sum", "--builtin", "sawtooth", "--method", "sigma", "--r", "2", "--alpha", "0.3", "--N", "64", "--M", "64"]
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sigmasum", "factors", "--N", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == "k,mu_k\n0,1\n1,1\n2,1\n"

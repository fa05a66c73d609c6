import json
import subprocess
import sys

import pytest

from hmobius.cli import main

LOG_1_PLUS_SQRT2 = 0.88137358701954302523


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_example(capsys):
    code, out, _ = run(capsys, "eval", "ball:2", "--c", "2", "--x", "0,0", "--y", "0.5,0")
    assert code == 0
    assert abs(float(out) - LOG_1_PLUS_SQRT2) <= 1e-9
    assert len(out.strip().replace(".", "").lstrip("0")) == 17


def test_map_example(capsys):
    assert run(capsys, "map", "--f", "sigma:0.5,0", "--x", "0.5,0")[1] == "0,0\n"
    assert run(capsys, "map", "--f", "sigma:0.5,0", "--x", "2,0")[1] == "inf\n"
    assert run(capsys, "map", "--f", "b2h", "--x", "inf", "--n", "2")[1] == "0,-1\n"
    assert run(capsys, "map", "--f", "b2h", "--x", "0,0")[1] == "0,1\n"


def test_ratio_json(capsys):
    code, out, _ = run(capsys, "ratio", "--f", "sigma:0.5,0", "--src", "ball:2", "--dst", "ball:2",
                       "--x", "0.1,0", "--y=-0.1,0")
    d = json.loads(out)
    assert code == 0 and set(d) == {"x", "y", "h_source", "h_image", "ratio"}
    assert 1 < d["ratio"] < 1.5


def test_estimate_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "estimate", "--f", "b2h", "--src", "ball:2", "--dst", "half:2", "--budget", "2000",
                     "--refine-steps", "20", "--upper", "2", "--lower", "1", "--out", str(out))
    d = json.loads(out.read_text())
    assert code == 0 and d["verdict"] == "pass" and d["n_samples"] == 2000


def test_sharpness_csv(capsys):
    code, out, _ = run(capsys, "sharpness", "--kind", "b2b", "--a", "0.5,0", "--t-grid", "1e-6")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "t,ratio"
    t, r = map(float, lines[1].split(","))
    assert t == 1e-6 and abs(r - 1.5) <= 1e-4
    _, out, _ = run(capsys, "sharpness", "--kind", "b2b", "--a", "0.5,0", "--t-grid", "1e-6", "--inverse")
    assert abs(float(out.splitlines()[1].split(",")[1]) - 1 / 1.5) <= 1e-4
    _, out, _ = run(capsys, "sharpness", "--kind", "b2h")
    assert len(out.splitlines()) == 9


@pytest.mark.parametrize("argv", [
    ["eval", "disk:2", "--x", "0,0", "--y", "0.1,0"],
    ["eval", "ball:2", "--x", "0,a", "--y", "0.1,0"],
    ["eval", "ball:2", "--c", "-1", "--x", "0,0", "--y", "0.1,0"],
    ["eval", "ball:3", "--x", "0,0", "--y", "0.1,0"],
    ["map", "--f", "nope", "--x", "0,0"],
    ["sharpness", "--kind", "b2b"],
    ["estimate", "--f", "b2h", "--src", "ball:2", "--dst", "half:2", "--budget", "0"],
])
def test_parse_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["eval", "ball:2", "--x", "0,0"])
    assert e.value.code == 2


@pytest.mark.parametrize("argv", [
    ["eval", "ball:2", "--x", "1,0", "--y", "0,0"],
    ["eval", "pball:2:0.5,0", "--x", "0.5,0", "--y", "0,0"],
    ["ratio", "--f", "sigma:0.5,0", "--src", "ball:2", "--dst", "ball:2", "--x", "0.1,0", "--y", "0.1,0"],
    ["ratio", "--f", "b2h", "--src", "ball:2", "--dst", "ball:2", "--x", "0.1,0", "--y", "0.2,0"],
])
def test_domain_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and "error" in err


def test_selftest_small_budget(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "42", "--budget", "2000")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("checks passed")
    assert "FAIL" not in out


def test_selftest_reports_failure(capsys, monkeypatch):
    import hmobius.cli as cli
    from hmobius.lipverify import CheckResult

    monkeypatch.setattr(cli, "run_selftest", lambda seed, budget: [CheckResult("x", False, "forced")])
    assert run(capsys, "selftest")[0] == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hmobius", "map", "--f", "sigma:0.5,0", "--x", "0.5,0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "0,0\n"

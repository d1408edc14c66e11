import json
import subprocess
import sys

import pytest

from fjl.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "fjl", *args],
                          capture_output=True, text=True)


def test_verify_small_writes_report(tmp_path):
    out = tmp_path / "r.json"
    res = run("verify", "--jmax", "2", "--lattice", "2", "--series-n", "4",
              "--report", str(out))
    assert res.returncode == 0, res.stderr
    doc = json.loads(out.read_text())
    assert doc["summary"]["fail"] == 0
    assert {"id", "params", "statement", "margin", "verdict"} <= set(doc["checks"][0])


def test_report_precision_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FJL_REPORT_PRECISION", "5")
    out = tmp_path / "r.json"
    assert main(["verify", "--jmax", "1", "--lattice", "1", "--series-n", "1",
                 "--report", str(out), "--quiet"]) == 0
    approx = json.loads(out.read_text())["checks"][0]["margin_approx"]
    assert approx == "0.00096130"


def test_measure_complement(capsys):
    assert main(["measure", "complement", "--n", "64"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["closed_form"] == "299/9"


def test_measure_lower_bound_and_root(capsys):
    main(["measure", "lower-bound", "--depth", "1"])
    assert json.loads(capsys.readouterr().out)["lower_bound"] == "1/4096"
    main(["measure", "root"])
    assert json.loads(capsys.readouterr().out)["gap"] == "1/4096"


def test_tree_lines(capsys):
    assert main(["tree", "--depth", "3", "--enumerate"]) == 0
    lines = [json.loads(s) for s in capsys.readouterr().out.splitlines()]
    assert [d["count"] for d in lines] == [1, 16, 256]
    assert lines[0]["loss"] == "17/36864"
    assert all(d["enumerated_measure"] == d["measure"] for d in lines)
    assert set(lines[0]) >= {"depth", "count", "half_side", "measure", "loss", "bound",
                             "lower_bound_so_far"}


def test_orbit_lines(capsys):
    assert main(["orbit", "--x", "29/32", "--y", "3/32", "--steps", "3"]) == 0
    lines = [json.loads(s) for s in capsys.readouterr().out.splitlines()]
    assert lines[1]["x"] == "2" and lines[1]["contraction"] == "21/8"


def test_render_zoom(tmp_path):
    out = tmp_path / "fig2.svg"
    res = run("render", "zoom", "--j", "1", "--out", str(out), "--exaggerate", "8")
    assert res.returncode == 0, res.stderr
    assert out.read_text().startswith("<?xml")
    assert json.loads(res.stdout)["exaggerate_effective"] == 2


def test_render_overview_ppm(tmp_path):
    out = tmp_path / "fig1.ppm"
    assert main(["render", "overview", "--out", str(out), "--ppu", "10"]) == 0
    assert out.read_bytes().startswith(b"P6\n120 80\n255\n")


def test_render_tree_refusal(tmp_path):
    assert main(["render", "tree", "--depth", "8", "--out", str(tmp_path / "t.svg")]) == 2


@pytest.mark.parametrize("argv", [["verify", "--bogus"], ["nope"], ["render"],
                                  ["orbit", "--x", "1/0", "--y", "0"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_verify_failure_exit_code(monkeypatch, capsys):
    import fjl.verify as v
    from fjl.geometry import Construction
    real = v.VerifyConfig
    monkeypatch.setattr(v, "VerifyConfig",
                        lambda **kw: real(cons=Construction(r1_inset=1), **kw))
    assert main(["verify", "--jmax", "2", "--lattice", "1", "--series-n", "1"]) == 1
    assert "FAIL derivative" in capsys.readouterr().out

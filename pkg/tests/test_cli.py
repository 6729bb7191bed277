import json
import subprocess
import sys

import pytest

from wmrr import formats
from wmrr.cli import main
from wmrr.datasets import table1, table1_clean


@pytest.fixture
def workdir(tmp_path):
    formats.save_csv(table1(), tmp_path / "dirty.csv", id_column="id")
    formats.save_csv(table1_clean(), tmp_path / "clean.csv", id_column="id")
    (tmp_path / "res.fd").write_text("Nation -> Capital\n")
    return tmp_path


def test_full_pipeline(workdir, capsys):
    w = workdir
    common = ["--id-column", "id"]
    assert main(["discover", str(w / "dirty.csv"), "--fds", str(w / "res.fd"), "--out", str(w / "rules.json")]
                + common) == 0
    assert main(["check", "--rules", str(w / "rules.json"), "--out", str(w / "ok.json"),
                 "--log", str(w / "log.json")]) == 0
    assert json.loads((w / "log.json").read_text())["removals"] == []
    assert main(["repair", str(w / "dirty.csv"), "--rules", str(w / "ok.json"), "--fds", str(w / "res.fd"),
                 "--out", str(w / "repaired.csv"), "--report", str(w / "report.json")] + common) == 0
    assert formats.load_csv(w / "repaired.csv", id_column="id") == table1_clean()
    capsys.readouterr()
    assert main(["evaluate", str(w / "repaired.csv"), str(w / "dirty.csv"), str(w / "clean.csv")] + common) == 0
    assert "precision=1.000 recall=1.000" in capsys.readouterr().out


def test_inject_noise_and_experiment(workdir):
    w = workdir
    assert main(["inject-noise", str(w / "clean.csv"), "--fds", str(w / "res.fd"), "--noise-rate", "0.25",
                 "--seed", "3", "--out", str(w / "noisy.csv"), "--log", str(w / "errors.csv"),
                 "--id-column", "id"]) == 0
    assert len((w / "errors.csv").read_text().splitlines()) == 1 + 4
    cfg = {"generator": {"n_tuples": 300, "seed": 1}, "thetas": [0.8, 0.6], "typo_rates": [0.5]}
    (w / "exp.json").write_text(json.dumps(cfg))
    assert main(["experiment", str(w / "exp.json"), "--out", str(w / "report.csv"), "--timings"]) == 0
    lines = (w / "report.csv").read_text().splitlines()
    assert len(lines) == 3 and "t_discover" in lines[0]


def test_errors_exit_nonzero(workdir, capsys):
    w = workdir
    (w / "bad.fd").write_text("ZIP -> Capital\n")
    assert main(["discover", str(w / "dirty.csv"), "--fds", str(w / "bad.fd")]) != 0
    assert "error" in capsys.readouterr().err
    assert main(["discover", str(w / "missing.csv"), "--fds", str(w / "res.fd")]) != 0
    assert main(["discover", str(w / "dirty.csv"), "--fds", str(w / "res.fd"), "--theta", "2"]) != 0
    (w / "cfg.json").write_text("{}")
    assert main(["experiment", str(w / "cfg.json")]) != 0


def test_module_entry_point(workdir):
    out = subprocess.run([sys.executable, "-m", "wmrr", "discover", str(workdir / "dirty.csv"),
                          "--fds", str(workdir / "res.fd")], capture_output=True, text=True)
    assert out.returncode == 0
    assert len(formats.deserialize_rules(out.stdout)) == 1

import subprocess
import sys

import pytest

from biphoton.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "biphoton", *args], capture_output=True, text=True)


def test_preset_prints_config(capsys):
    assert main(["preset", "fig2"]) == 0
    out = capsys.readouterr().out
    assert 'w0 = "100um"' in out and 'L = "2mm"' in out


def test_coeffs_and_schmidt(capsys):
    assert main(["coeffs", "fig2"]) == 0
    assert "A = 9848.48484848 um^2" in capsys.readouterr().out
    assert main(["schmidt", "fig4"]) == 0
    assert "K = 6.31632110579" in capsys.readouterr().out


def test_symmetry(capsys):
    assert main(["symmetry", "fig2"]) == 0
    assert "L* = 69.6310623823 um" in capsys.readouterr().out


def test_oam(tmp_path, capsys):
    out_path = tmp_path / "spec.csv"
    assert main(["oam", "fig3", "--mmax", "20", "--spectrum-out", str(out_path)]) == 0
    out = capsys.readouterr().out
    assert "0,0.649741859323" in out
    assert out_path.read_text().startswith("variable_value,m,P\n90,-40,")


def test_sweep_with_units(tmp_path):
    out = tmp_path / "len.csv"
    assert main(["sweep", "fig3", "--var", "length", "--from", "0.5mm", "--to", "4mm",
                 "--steps", "8", "--out", str(out), "--workers", "2"]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 9 and lines[1].startswith("500,") and lines[-1].startswith("4000,")


def test_config_error_exit_status(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text('phii = "0deg"\n')
    assert main(["schmidt", str(bad)]) == 2
    assert "unknown key 'phii'" in capsys.readouterr().err
    assert main(["schmidt", str(tmp_path / "absent.cfg")]) == 2
    assert main(["sweep", "fig2", "--var", "angle", "--from", "0", "--to", "120",
                 "--steps", "3", "--out", str(tmp_path / "x.csv")]) == 2


def test_failed_rows_exit_one(tmp_path, capsys):
    out = tmp_path / "w0.csv"
    assert main(["sweep", "fig2", "--var", "w0", "--from", "0", "--to", "100",
                 "--steps", "3", "--out", str(out), "--outputs", "schmidt"]) == 1
    assert "pump_waist" in capsys.readouterr().err
    assert len(out.read_text().splitlines()) == 3


def test_oracle_exit_status(capsys):
    assert main(["oracle", "fig2"]) == 0
    assert main(["oracle", "fig4", "--grid", "10000000"]) == 1
    out = capsys.readouterr().out
    assert "FAIL  schmidt_svd" in out and "PASS  normalization" in out


def test_workers_env(tmp_path, monkeypatch):
    monkeypatch.setenv("BIPHOTON_WORKERS", "0")
    assert main(["sweep", "fig4", "--var", "angle", "--from", "0", "--to", "90",
                 "--steps", "3", "--out", str(tmp_path / "a.csv")]) == 2


def test_module_entry_point(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        res = run("sweep", "fig4", "--var", "angle", "--from", "0", "--to", "90", "--steps", "10",
                  "--out", str(path))
        assert res.returncode == 0, res.stderr
    assert a.read_bytes() == b.read_bytes()


def test_usage_error_exit_status():
    assert run("sweep", "fig4").returncode == 2

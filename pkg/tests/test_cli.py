import hashlib
import json

import numpy as np
import pytest

from bicons import cli
from bicons.errors import IntegrationError
from bicons.family import FamilyParams, K_of_f, f_max
from bicons.odeflow import integrate_f_ode

REF = ["--c", "1", "--C", repr(80 / 9)]


def _csv(path):
    lines = [ln for ln in open(path) if not ln.startswith("#")]
    header = lines[0].strip().split(",")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    footer = dict(ln[2:].strip().split("=", 1) for ln in open(path) if ln.startswith("# "))
    return header, data, footer


# ---------------------------------------------------------------- family-info

def test_family_info_reference(capsys):
    assert cli.main(["family-info", "--c", "1", "--C", "8.8889", "--json"]) == 0
    info = json.loads(capsys.readouterr().out)
    fm = f_max(FamilyParams(1.0, 8.8889))
    assert info["f_max"] == pytest.approx(1.1393, abs=1e-3)
    assert info["f_max"] == fm
    assert info["K_range"][0] == pytest.approx(K_of_f(1.1393, 1.0), rel=1e-3)


def test_family_info_zero_c(capsys):
    assert cli.main(["family-info", "--c", "0", "--C", "1"]) == 2
    assert "c must be nonzero" in capsys.readouterr().err


def test_family_info_negative_c_same_output(capsys):
    cli.main(["family-info", "--c", "1", "--C", "2"])
    pos = capsys.readouterr()
    cli.main(["family-info", "--c", "-1", "--C", "2"])
    neg = capsys.readouterr()
    assert pos.out == neg.out
    assert "identified" in neg.err


# ---------------------------------------------------------------- solve-f

def test_solve_f_reference_row(tmp_path):
    out = tmp_path / "f.csv"
    assert cli.main(["solve-f", *REF, "--f0", "1", "--u-span", "0.5", "--u-back", "0.5",
                     "--tol", "1e-10", "--out", str(out)]) == 0
    header, data, footer = _csv(out)
    assert header == ["u", "f", "f_prime", "f_double_prime", "K", "kappa", "first_integral_C"]
    row = data[data[:, 0] == 0.0][0]
    assert row[1:] == pytest.approx([1.0, 4 / 3, -32 / 9, -5.0, 1.0, 80 / 9], abs=1e-12)
    assert np.all(np.diff(data[:, 0]) > 0)


def test_solve_f_zero_span(tmp_path):
    out = tmp_path / "f.csv"
    assert cli.main(["solve-f", *REF, "--u-span", "0", "--out", str(out)]) == 0
    _, data, _ = _csv(out)
    assert data.shape == (1, 7)


def test_solve_f_conservation(tmp_path):
    out = tmp_path / "f.csv"
    assert cli.main(["solve-f", *REF, "--u-span", "5", "--tol", "1e-10", "--out", str(out)]) == 0
    _, data, footer = _csv(out)
    assert footer["event"] == "turning_point"
    assert np.max(np.abs(data[:, 6] - 80 / 9)) <= 1e-8 * 80 / 9


def test_solve_f_partial_output_on_failure(tmp_path, monkeypatch):
    def failing(p, f0, span, tol):
        raise IntegrationError("step size underflow", partial=integrate_f_ode(p, f0, 0.1, tol))
    monkeypatch.setattr(cli, "integrate_f_ode", failing)
    out = tmp_path / "f.csv"
    assert cli.main(["solve-f", *REF, "--u-span", "1", "--out", str(out)]) == 3
    _, data, _ = _csv(out)
    assert data[-1, 0] == pytest.approx(0.1)


def test_solve_f_bad_f0(capsys):
    assert cli.main(["solve-f", *REF, "--f0", "2"]) == 2


# ---------------------------------------------------------------- solve-kappa

def test_solve_kappa_reference(tmp_path):
    out = tmp_path / "k.csv"
    assert cli.main(["solve-kappa", "--kappa", "1", "--kappa-p", "-4", "--kappa-pp", "-20",
                     "--u-span", "0.5", "--u-back", "2", "--tol", "1e-12", "--out", str(out)]) == 0
    header, data, footer = _csv(out)
    assert header == ["u", "kappa", "kappa_p", "kappa_pp", "kappa_ppp", "frakA", "frakB", "K"]
    assert np.max(np.abs(data[:, 5] - 1.0)) <= 1e-7
    assert float(footer["c_squared"]) == pytest.approx(1.0, abs=1e-7)
    assert float(footer["C"]) == pytest.approx(80 / 9, abs=1e-4)
    # frakB is f^2, and K must equal the cubic at f = sqrt(frakB)
    assert np.max(np.abs(K_of_f(np.sqrt(data[:, 6]), 1.0) - data[:, 7])) <= 1e-7


def test_solve_kappa_inadmissible(capsys):
    assert cli.main(["solve-kappa", "--kappa", "1", "--kappa-p", "0", "--kappa-pp", "0"]) == 2
    assert "kappa' < -1" in capsys.readouterr().err


# ---------------------------------------------------------------- verify

def test_verify_reference(tmp_path):
    out = tmp_path / "v.json"
    assert cli.main(["verify", *REF, "--out", str(out)]) == 0
    text = out.read_text()
    doc = json.loads(text)
    assert doc["pass"] is True
    assert all(v["pass"] for v in doc["residuals"].values())
    assert text == json.dumps(doc, sort_keys=True, indent=2) + "\n"


@pytest.mark.parametrize("kind, entry", [("gauss", "gauss"), ("codazzi", "codazzi E4"), ("pde", "pde")])
def test_verify_negative_controls(tmp_path, kind, entry):
    out = tmp_path / "v.json"
    assert cli.main(["verify", *REF, "--n-samples", "20", "--perturb", kind, "1e-3",
                     "--out", str(out)]) == 1
    doc = json.loads(out.read_text())
    assert doc["residuals"][entry]["pass"] is False
    assert doc["perturb"] == {"kind": kind, "eps": 1e-3}


def test_verify_other_member(tmp_path):
    out = tmp_path / "v.json"
    assert cli.main(["verify", "--c", "2", "--C", "1", "--f0", "0.2", "--n-samples", "30",
                     "--out", str(out)]) == 0


def test_verify_bad_perturb_kind():
    assert cli.main(["verify", *REF, "--perturb", "ricci", "1"]) == 2


# ---------------------------------------------------------------- isometry

@pytest.mark.parametrize("args, code, text", [
    (["--c1", "1", "--C1", "2", "--c2", "-1", "--C2", "2"], 0, "ISOMETRIC (v -> ±v + b)"),
    (["--c1", "1", "--C1", "2", "--c2", "1", "--C2", "3"], 1, "NOT ISOMETRIC"),
])
def test_isometry_verdicts(capsys, args, code, text):
    assert cli.main(["isometry", *args]) == code
    assert capsys.readouterr().out.splitlines()[0] == text


def test_isometry_guard():
    assert cli.main(["isometry", "--c1", "0", "--C1", "2", "--c2", "1", "--C2", "2"]) == 2


def test_isometry_numeric(capsys):
    assert cli.main(["isometry", "--c1", "1", "--C1", "2", "--c2", "-1", "--C2", "2", "--numeric"]) == 0
    assert "numeric kappa(K) comparison: True" in capsys.readouterr().out


# ---------------------------------------------------------------- sweep

def test_sweep_grid(tmp_path, capsys):
    args = ["sweep", "--c-values", "2", "1", "0.5", "--C-values", repr(80 / 9), "1", "3",
            "--out-dir", str(tmp_path)]
    assert cli.main(args) == 0
    atlas = tmp_path / "atlas.csv"
    header, data, _ = _csv(atlas)
    assert header == ["c", "C", "f_max", "K_min"]
    assert data.shape == (9, 4)
    keys = [tuple(r[:2]) for r in data]
    assert keys == sorted(keys)
    row = data[(data[:, 0] == 1.0) & (data[:, 1] == 80 / 9)][0]
    assert row[2] == pytest.approx(1.1393, abs=1e-3)
    first = hashlib.md5(atlas.read_bytes()).hexdigest()
    assert cli.main(args + ["--jobs", "2"]) == 0
    assert hashlib.md5(atlas.read_bytes()).hexdigest() == first


def test_sweep_range_and_guards(tmp_path):
    assert cli.main(["sweep", "--c-range", "0.5", "2", "4", "--C-range", "1", "3", "3",
                     "--out-dir", str(tmp_path)]) == 0
    assert cli.main(["sweep", "--c-range", "0.5", "2", "0", "--C-values", "1",
                     "--out-dir", str(tmp_path)]) == 2
    assert cli.main(["sweep", "--c-values", "0", "1", "--C-values", "1",
                     "--out-dir", str(tmp_path)]) == 2


def test_sweep_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"c-values": [1.0], "C-values": [1.0, 2.0], "out_dir": str(tmp_path / "a")}))
    assert cli.main(["sweep", "--config", str(cfg)]) == 0
    assert (tmp_path / "a" / "atlas.csv").exists()
    # flags win over the file
    assert cli.main(["sweep", "--config", str(cfg), "--out-dir", str(tmp_path / "b")]) == 0
    assert (tmp_path / "b" / "atlas.csv").exists()
    cfg.write_text(json.dumps({"bogus": 1}))
    assert cli.main(["sweep", "--config", str(cfg)]) == 2


# ---------------------------------------------------------------- plot

def _polyline(svg):
    pts = svg.split('<polyline')[1].split('points="')[1].split('"')[0]
    return np.array([[float(a) for a in p.split(",")] for p in pts.split()])


def test_plot_profile(tmp_path):
    csv_path = tmp_path / "f.csv"
    cli.main(["solve-f", *REF, "--u-span", "0.1", "--u-back", "2", "--tol", "1e-10",
              "--out", str(csv_path)])
    svg_path = tmp_path / "f.svg"
    assert cli.main(["plot", str(csv_path), "--x", "u", "--y", "f", "--out", str(svg_path)]) == 0
    svg = svg_path.read_text()
    assert svg.startswith("<svg") and 'version="1.1"' in svg
    pts = _polyline(svg)
    # SVG y grows downward: increasing f means decreasing pixel y
    assert np.all(np.diff(pts[:, 0]) > 0) and np.all(np.diff(pts[:, 1]) < 0)

    assert cli.main(["plot", str(csv_path), "--x", "u", "--y", "first_integral_C",
                     "--out", str(svg_path)]) == 0
    pts = _polyline(svg_path.read_text())
    assert np.ptp(pts[:, 1]) < 1.0


def test_plot_guards(tmp_path):
    empty = tmp_path / "e.csv"
    empty.write_text("")
    assert cli.main(["plot", str(empty), "--out", str(tmp_path / "e.svg")]) == 2
    csv_path = tmp_path / "f.csv"
    cli.main(["solve-f", *REF, "--u-span", "0.1", "--out", str(csv_path)])
    assert cli.main(["plot", str(csv_path), "--y", "nope", "--out", str(tmp_path / "x.svg")]) == 2

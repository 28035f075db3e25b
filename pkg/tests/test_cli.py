import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from nupph import cli
from nupph.datasets import DATASETS, FIG1_POINTS, JUMP_LOCATION, SINE_NODES
from nupph.errors import ConfigError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _cell(v):
    if v in ("true", "false"):
        return v == "true"
    try:
        return float(v)
    except ValueError:
        return v


def table(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], [[_cell(v) for v in r] for r in rows[1:]]


@pytest.fixture
def stencil_file(tmp_path):
    path = tmp_path / "fig1.csv"
    path.write_text("x,f\n" + "".join(f"{x},{f}\n" for x, f in FIG1_POINTS))
    return path


def test_builtin_datasets_match_inputs():
    fig1 = DATASETS["fig1"].grid()
    assert list(zip(fig1.x, fig1.f)) == list(FIG1_POINTS)
    np.testing.assert_array_equal(DATASETS["sine-nonuniform"].abscissas, np.array([0, 3, 8, 11, 17, 23, 25, 30, 37, 40]) * np.pi / 20)
    assert DATASETS["jump"].jump == JUMP_LOCATION == 1.2 * np.pi
    np.testing.assert_array_equal(DATASETS["jump"].abscissas, SINE_NODES)


def test_reconstruct_fig1_inflections(capsys):
    code, out, _ = run(capsys, "reconstruct", "--dataset", "fig1", "--samples", "4001")
    assert code == 0
    header, rows = table(out)
    assert header == ["x", "lagrange", "pph"]
    x = np.array([r[0] for r in rows])
    d2 = {col: np.diff([r[col] for r in rows], 2) for col in (1, 2)}
    flip = np.nonzero(np.sign(d2[1][:-1]) != np.sign(d2[1][1:]))[0]
    assert len(flip) == 1
    assert x[flip[0] + 1] == pytest.approx(10.16, abs=0.02)
    # the PPH inflection sits left of the central interval, so its curve stays convex there
    assert np.all(d2[2] > 0)


def test_reconstruct_round_trip(tmp_path, capsys):
    out_path = tmp_path / "curve.csv"
    code, _, _ = run(capsys, "reconstruct", "--dataset", "sine-nonuniform", "--operators", "lagrange,pph,translated", "--epsilon", "0.5,0.05", "--output", str(out_path))
    assert code == 0
    header, rows = table(out_path.read_text())
    assert header == ["x", "f_true", "lagrange", "pph", "translated(eps=0.5)", "translated(eps=0.05)"]
    assert all(len(r) == len(header) for r in rows)
    x = [r[0] for r in rows]
    assert x == sorted(x) and len(set(x)) == len(x)
    assert x[0] == pytest.approx(SINE_NODES[1]) and x[-1] == pytest.approx(SINE_NODES[-2])


def test_reconstruct_point_file_single_cubic(stencil_file, capsys):
    code, out, _ = run(capsys, "reconstruct", "--input", str(stencil_file), "--operators", "lagrange")
    header, rows = table(out)
    assert code == 0 and header == ["x", "lagrange"]
    assert rows[0][0] == 8 and rows[-1][0] == 25
    assert rows[0][1] == pytest.approx(9) and rows[-1][1] == pytest.approx(12)


def test_determinism(tmp_path, capsys):
    outs = []
    for n in range(2):
        path = tmp_path / f"run{n}.csv"
        assert cli.main(["singularity", "--output", str(path)]) == 0
        outs.append((path.read_bytes(), (tmp_path / f"run{n}.intervals.csv").read_bytes()))
    assert outs[0] == outs[1]
    a = run(capsys, "order-study", "--levels", "2", "--format", "json")[1]
    b = run(capsys, "order-study", "--levels", "2", "--format", "json")[1]
    assert a == b


def test_unknown_operator(capsys):
    code, _, err = run(capsys, "reconstruct", "--operators", "lagrange,spline")
    assert code == 2 and "'spline'" in err
    with pytest.raises(ConfigError, match="spline"):
        cli.ExperimentConfig("reconstruct", operators=("spline",))


def test_config_invariants():
    with pytest.raises(ConfigError):
        cli.ExperimentConfig("order-study", levels=0)
    with pytest.raises(ConfigError):
        cli.ExperimentConfig("reconstruct", epsilons=(-1.0,))
    with pytest.raises(ConfigError):
        cli.ExperimentConfig("reconstruct", input="a.csv", dataset="fig1")
    cfg = cli.ExperimentConfig("order-study")
    assert cfg.levels == 5 and cfg.epsilons == (0.5, 0.05) and len(cfg.kinds) == 4


def test_order_study_defaults_table(capsys, tmp_path):
    path = tmp_path / "orders.csv"
    code, _, _ = run(capsys, "order-study", "--output", str(path))
    assert code == 0
    header, rows = table(path.read_text())
    assert header == ["s", "lagrange", "pph", "translated(eps=0.5)", "translated(eps=0.05)"]
    assert [r[0] for r in rows] == [1, 2, 3, 4, 5]
    assert rows[-1][1] == pytest.approx(3.9938, abs=0.15)
    assert rows[-1][2] == pytest.approx(2.9997, abs=0.15)
    eh, erows = table((tmp_path / "orders.errors.csv").read_text())
    assert eh[:2] == ["s", "h_max"] and len(erows) == 6


def test_order_study_single_level(capsys):
    code, out, _ = run(capsys, "order-study", "--levels", "1", "--operators", "lagrange")
    header, rows = table(out.split("\n\n")[0])
    assert code == 0 and len(rows) == 1


def test_order_study_exact_data_flagged(capsys):
    code, out, err = run(capsys, "order-study", "--dataset", "quadratic", "--levels", "2", "--operators", "pph", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["flagged"] and "nan" in err
    assert rec["studies"][0]["orders"] == [None, None]


def test_order_study_needs_sampler(stencil_file, capsys):
    assert run(capsys, "order-study", "--input", str(stencil_file))[0] == 2
    assert run(capsys, "order-study", "--dataset", "fig1")[0] == 2


def test_convexity_fig1(capsys):
    code, out, _ = run(capsys, "convexity", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    (rep,) = rec["reports"]
    assert rep["gap"] == 4.5 and rep["case"] == "replace-right"
    assert rep["x_pph"] == pytest.approx(5.66, abs=0.01) and rep["x_pl"] == pytest.approx(10.16, abs=0.01)
    assert rec["samples"]["columns"] == ["x", "d2_lagrange", "d2_pph"]


def test_convexity_concave_mirror(tmp_path, capsys):
    path = tmp_path / "neg.json"
    path.write_text(json.dumps({"x": [p[0] for p in FIG1_POINTS], "f": [-p[1] for p in FIG1_POINTS]}))
    rep = json.loads(run(capsys, "convexity", "--input", str(path), "--format", "json")[1])["reports"][0]
    assert rep["orientation"] == "concave" and rep["gap"] == 4.5
    assert rep["x_pph"] == pytest.approx(5.66, abs=0.01)


def test_convexity_csv_sidecar(tmp_path, capsys):
    path = tmp_path / "cx.csv"
    assert run(capsys, "convexity", "--operators", "pph,translated", "--output", str(path))[0] == 0
    header, rows = table((tmp_path / "cx.report.csv").read_text())
    assert header[:3] == ["operator", "case", "orientation"] and len(rows) == 2


def test_convexity_rejects_bad_input(tmp_path, capsys):
    wavy = tmp_path / "wavy.csv"
    wavy.write_text("0,0\n1,1\n2,0\n3,1\n")
    code, _, err = run(capsys, "convexity", "--input", str(wavy))
    assert code == 2 and "convex" in err
    five = tmp_path / "five.csv"
    five.write_text("0,0\n1,1\n2,4\n3,9\n4,16\n")
    assert run(capsys, "convexity", "--input", str(five))[0] == 2
    comma = tmp_path / "comma.csv"
    comma.write_text('x,f\n"0,5",1\n1,2\n2,3\n3,4\n')
    assert run(capsys, "reconstruct", "--input", str(comma))[0] == 2
    assert run(capsys, "reconstruct", "--input", str(tmp_path / "missing.csv"))[0] == 2


def test_numeric_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "huge.csv"
    path.write_text("0,0\n1e-300,1e300\n2e-300,-1e300\n3e-300,1e300\n")
    code, _, err = run(capsys, "reconstruct", "--input", str(path))
    assert code == 3 and "numerical" in err


def test_singularity_outputs(capsys):
    rec = json.loads(run(capsys, "singularity", "--format", "json")[1])
    assert rec["jump_interval"] == 5 and rec["adjacent_intervals"] == [4, 6]
    flags = {r[0]: (r[3], r[4]) for r in rec["intervals"]["rows"]}
    assert flags[5] == (True, False) and flags[4] == flags[6] == (False, True)
    dist = rec["distance_to_pph_on_adjacent"]
    assert dist["translated(eps=0.05)"] < dist["translated(eps=0.5)"] < dist["lagrange"]


def test_singularity_pph_bounded(capsys):
    rec = json.loads(run(capsys, "singularity", "--operators", "lagrange,pph", "--format", "json", "--samples", "50")[1])
    cols = rec["curves"]["columns"]
    rows = np.array(rec["curves"]["rows"])
    grid = DATASETS["jump"].grid()
    for j in rec["adjacent_intervals"]:
        lo, hi = grid.x[j], grid.x[j + 1]
        band = (min(grid.f[j], grid.f[j + 1]) - 0.1, max(grid.f[j], grid.f[j + 1]) + 0.1)
        seg = rows[(rows[:, 0] >= lo) & (rows[:, 0] <= hi)]
        pph = seg[:, cols.index("pph")]
        lag = seg[:, cols.index("lagrange")]
        assert band[0] <= pph.min() and pph.max() <= band[1]
        assert lag.min() < band[0] or lag.max() > band[1]


def test_smooth_data_operators_agree(capsys):
    rec = json.loads(run(capsys, "singularity", "--dataset", "sine-nonuniform", "--levels", "3", "--format", "json")[1])
    assert rec["jump_interval"] is None
    rows = np.array(rec["curves"]["rows"])
    for col in rows[:, 2:].T:
        assert np.abs(col - rows[:, 1]).max() < 1e-3


def test_samples_env(monkeypatch, capsys):
    monkeypatch.setenv("PPH_SAMPLES", "5")
    code, out, _ = run(capsys, "reconstruct", "--dataset", "fig1")
    assert code == 0 and len(table(out)[1]) == 5
    code, out, _ = run(capsys, "reconstruct", "--dataset", "fig1", "--samples", "7")
    assert len(table(out)[1]) == 7
    monkeypatch.setenv("PPH_SAMPLES", "many")
    assert run(capsys, "reconstruct")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nupph", "convexity", "--format", "json"], capture_output=True, text=True, check=True)
    assert math.isclose(json.loads(proc.stdout)["reports"][0]["gap"], 4.5)

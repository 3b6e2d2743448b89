import csv
import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jaya import report
from jaya.cli import RunConfig, main, parse_config, run
from jaya.errors import InvalidConfigError
from jaya.multi import jaya_multi
from jaya.single import jaya


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def sq(x):
    return float(np.dot(x, x))


# --- number formatting and tables -------------------------------------------


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_seventeen_digits_round_trip(v):
    assert float(report.fmt_float(v)) == v


def test_written_floats_read_back_bit_identical(tmp_path):
    vals = np.random.default_rng(0).standard_normal((50, 3)) * 10.0 ** np.arange(-100, 200, 100)
    p = report.write_table(tmp_path / "t.csv", ["a", "b", "c"], vals.tolist())
    back = np.array([[float(c) for c in r] for r in read_csv(p)[1:]])
    assert np.array_equal(back, vals)


def test_history_has_header_plus_one_row_per_iteration(tmp_path):
    res = jaya(sq, ([-5] * 3, [5] * 3), max_iter=50, pop_size=20, seed=1)
    p = report.emit_history_csv(res, tmp_path / "h.csv")
    rows = read_csv(p)
    assert len(rows) == 51
    assert rows[0] == ["iteration", "best_penalized", "pop_size"]
    assert [float(r[1]) for r in rows[1:]] == [h.best_penalized for h in res.history]


def test_front_shape(tmp_path):
    res = jaya_multi([sq, lambda x: sq(x - 2)], ([-5] * 3, [5] * 3), max_iter=30, pop_size=20, seed=2)
    p = report.emit_front_csv(res, tmp_path / "f.csv")
    rows = read_csv(p)
    assert rows[0] == ["x1", "x2", "x3", "f1", "f2"]
    assert len(rows) == len(res.front) + 1
    assert all(len(r) == 5 for r in rows)


def test_front_table_for_twelve_entries(tmp_path):
    from jaya.multi import ParetoFront

    class Fake:
        pass

    fake = Fake()
    t = np.linspace(0, 1, 12)
    fake.front = ParetoFront(np.column_stack([t, t, t]), np.column_stack([t, 1 - t]))
    fake.bounds = type("B", (), {"n_var": 3})()
    rows = read_csv(report.emit_front_csv(fake, tmp_path / "f.csv"))
    assert len(rows) == 13 and {len(r) for r in rows} == {5}


def test_header_written_even_when_empty(tmp_path):
    p = report.write_table(tmp_path / "e.csv", ["a", "b"], [])
    assert p.read_text() == "a,b\n"


def test_json_lines(tmp_path):
    p = report.write_table(tmp_path / "t.jsonl", ["name", "v", "n", "ok"], [["x", 0.1, 3, True]], "json-lines")
    assert json.loads(p.read_text()) == {"name": "x", "v": 0.1, "n": 3, "ok": True}


def test_write_failure_names_path(tmp_path):
    target = tmp_path / "missing" / "t.csv"
    with pytest.raises(OSError, match="missing"):
        report.write_table(target, ["a"], [[1.0]])


def test_single_summary_fields():
    res = jaya(sq, ([-5] * 3, [5] * 3), max_iter=50, pop_size=20, seed=3)
    text = report.emit_summary(res)
    assert "Population Size      = 20" in text
    assert "Number of iterations = 50" in text
    for i in (1, 2, 3):
        assert f"x{i} = [-5, 5]" in text
    assert "Best.f.x. =" in text and "Objective: minimize" in text


def test_multi_summary_fields():
    res = jaya_multi([sq, lambda x: sq(x - 1)], ([0, 0], [1, 1]), max_iter=5, pop_size=6, seed=4)
    text = report.emit_summary(res)
    assert f"Pareto front size = {len(res.front)}" in text
    assert "Ideal point" in text and "f1 =" in text and "f2 =" in text


# --- configuration parsing --------------------------------------------------


def test_flags_only_default_pop_size():
    cfg = parse_config(["--mode", "single", "--problem", "sphere", "--n-var", "3", "--max-iter", "50"])
    assert cfg.mode == "single" and cfg.n_var == 3 and cfg.max_iter == 50
    assert cfg.solver_config().pop_size == 50


def test_empty_config_lists_required_fields(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("")
    with pytest.raises(InvalidConfigError, match="mode.*maxiter"):
        parse_config(["--config", str(p)])


def test_flag_overrides_file(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"mode": "single", "problem": "sphere", "maxiter": 5, "popSize": 30}))
    assert parse_config(["--config", str(p)]).pop_size == 30
    assert parse_config(["--config", str(p), "--pop-size", "100"]).pop_size == 100


def test_snake_case_key_accepted(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"mode": "single", "problem": "sphere", "max_iter": 5, "pop_size": 30}))
    assert parse_config(["--config", str(p)]).pop_size == 30


def test_unknown_key_is_named(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"mode": "single", "problem": "sphere", "maxiter": 5, "popsize": 3}))
    with pytest.raises(InvalidConfigError, match="'popsize'"):
        parse_config(["--config", str(p)])


def test_conflicting_modes():
    with pytest.raises(InvalidConfigError, match="conflicting"):
        parse_config(["--mode", "single", "--mode", "multi", "--problem", "sphere", "--max-iter", "3"])


def test_zero_iterations_rejected_at_parse():
    with pytest.raises(InvalidConfigError, match="maxiter"):
        parse_config(["--mode", "single", "--problem", "sphere", "--max-iter", "0"])


@pytest.mark.parametrize(
    "argv",
    [
        ["--mode", "single", "--problem", "two-sphere", "--max-iter", "3"],
        ["--mode", "multi", "--problem", "sphere", "--max-iter", "3"],
        ["--mode", "benchmark-suite", "--problem", "sphere,booth", "--max-iter", "3"],
        ["--mode", "single", "--max-iter", "3"],
        ["--mode", "teleport"],
        ["--mode", "single", "--problem", "sphere", "--max-iter", "3", "--format", "xml"],
    ],
)
def test_invalid_selections(argv):
    with pytest.raises(InvalidConfigError):
        parse_config(argv)


def test_energy_case_needs_no_iteration_count():
    cfg = parse_config(["--mode", "energy-case"])
    assert cfg.max_iter is None


def test_patience_enables_early_stop():
    cfg = parse_config(["--mode", "single", "--problem", "sphere", "--max-iter", "9", "--patience", "4"])
    es = cfg.solver_config().early_stop
    assert (es.tolerance, es.patience) == (1e-3, 4)


def test_workers_default_to_cpu_count():
    import os

    assert RunConfig(mode="single").workers == (os.cpu_count() or 1)


# --- end to end ---------------------------------------------------------------


def test_main_single_writes_files(tmp_path, capsys):
    rc = main(["--mode", "single", "--problem", "sphere", "--n-var", "3", "--max-iter", "50", "--pop-size", "20",
               "--seed", "5", "--out-dir", str(tmp_path)])
    assert rc == 0
    assert len(read_csv(tmp_path / "history.csv")) == 51
    assert (tmp_path / "summary.txt").read_text() in capsys.readouterr().out


def test_main_error_is_one_line(tmp_path, capsys):
    rc = main(["--mode", "single", "--problem", "nope", "--max-iter", "3", "--out-dir", str(tmp_path)])
    err = capsys.readouterr().err
    assert rc != 0
    assert err.startswith("error: ") and err.count("\n") == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["--bogus"],
        ["--mode", "single", "--problem", "sphere", "--max-iter", "x"],
        ["--config", "/nonexistent/c.json"],
        ["--mode", "energy-case", "--pop-size", "10"],  # below the default adaptive floor
    ],
)
def test_every_error_class_exits_nonzero_with_one_line(argv, capsys):
    assert main(argv) != 0
    err = capsys.readouterr().err
    assert err.startswith("error: ") and err.count("\n") == 1


def test_unwritable_out_dir(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    rc = main(["--mode", "single", "--problem", "sphere", "--max-iter", "2", "--out-dir", str(blocker / "sub")])
    assert rc != 0 and "error:" in capsys.readouterr().err


def test_multi_mode_files(tmp_path):
    rc = main(["--mode", "multi", "--problem", "two-sphere", "--max-iter", "20", "--pop-size", "30", "--seed", "1",
               "--out-dir", str(tmp_path)])
    assert rc == 0
    front = read_csv(tmp_path / "front.csv")
    assert front[0] == ["x1", "x2", "x3", "f1", "f2"]
    hist = read_csv(tmp_path / "history.csv")
    assert hist[0] == ["iteration", "front_size", "pop_size", "ideal_f1", "ideal_f2"] and len(hist) == 21


def test_suite_mode_files(tmp_path):
    cfgfile = tmp_path / "c.json"
    cfgfile.write_text(json.dumps({"mode": "benchmark-suite", "maxiter": 20, "popSize": 10, "seeds": [1, 2]}))
    assert main(["--config", str(cfgfile), "--out-dir", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "suite.csv")
    assert rows[0] == ["problem", "n_var", "pop_size", "max_iter", "seed", "achieved", "evaluations", "stopped_early"]
    assert len(rows) == 1 + 5 * 2


def test_energy_mode_with_factor_file(tmp_path):
    cfgfile = tmp_path / "c.json"
    cfgfile.write_text(json.dumps({"mode": "energy-case", "maxiter": 10, "seed": 3,
                                   "energy": {"factors": {"emission": {"hydro": 5.0}}}}))
    assert main(["--config", str(cfgfile), "--out-dir", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "front.csv")
    assert rows[0] == ["wind", "solar", "hydro", "storage", "total", "emissions", "cost", "reliability"]
    x = np.array([[float(c) for c in r] for r in rows[1:]])
    assert np.allclose(x[:, 5], x[:, :4] @ [10, 15, 5, 30], rtol=0, atol=1e-9)


def test_unknown_energy_key(tmp_path):
    cfgfile = tmp_path / "c.json"
    cfgfile.write_text(json.dumps({"mode": "energy-case", "energy": {"budget": 3}}))
    with pytest.raises(InvalidConfigError, match="energy.budget"):
        parse_config(["--config", str(cfgfile)])


def test_json_lines_output(tmp_path):
    rc = main(["--mode", "single", "--problem", "rastrigin", "--max-iter", "7", "--seed", "2",
               "--format", "json-lines", "--out-dir", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "history.jsonl").read_text().splitlines()
    assert len(lines) == 7 and json.loads(lines[-1])["iteration"] == 7


def test_same_config_twice_is_byte_identical(tmp_path):
    cfgfile = tmp_path / "c.json"
    cfgfile.write_text(json.dumps({"mode": "multi", "problem": "two-sphere", "maxiter": 25, "popSize": 20,
                                   "seed": 11, "adaptive_pop": True}))
    outs = []
    for name in ("a", "b"):
        assert main(["--config", str(cfgfile), "--out-dir", str(tmp_path / name)]) == 0
        outs.append([(tmp_path / name / f).read_bytes() for f in ("history.csv", "front.csv", "summary.txt")])
    assert outs[0] == outs[1]


def test_run_returns_result_object(tmp_path):
    out = run(parse_config(["--mode", "single", "--problem", "ackley", "--max-iter", "3", "--out-dir",
                            str(tmp_path)]))
    assert out["result"].iterations_run == 3 and len(out["files"]) == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "jaya", "--mode", "single", "--problem", "sphere", "--max-iter", "2",
         "--out-dir", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "Best.f.x." in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "jaya", "--mode"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stderr.startswith("error:")

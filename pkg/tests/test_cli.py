"""CLI contract: exit codes, CSV formats, config parsing, table replay."""

import json

import numpy as np
import pytest

from frachz import cli
from frachz.cli import (CliError, RunConfig, emit_csv, load_controller_config,
                        reproduce_tables, save_controller_config)
from frachz.controllers import ControllerSpec, Structure, param_names
from frachz.tables import PUBLISHED, row

# independent transcription of the published tuning tables:
# (structure tag, process) -> (J_min, parameter values in column order)
REGISTRY_FIXTURE = {
    ("fuzzy-pid", "gp1"): (38.20247,
        (0.887976, 0.63353, 1.417276, 0.820367, 0.959188, 0.994714)),
    ("fuzzy-pid", "gp2"): (7.630405,
        (0.098897, 0.102872, 0.728721, 0.787448, 0.998849, 0.992102)),
    ("fuzzy-pid", "gp3"): (39.6631,
        (0.666385, 0.214853, 0.801473, 0.321055, 0.998524, 0.288179)),
    ("fuzzy-pi-pd", "gp1"): (38.17563,
        (0.957059, 0.74568, 1.506117, 0.725838, 0.872039, 0.882793,
         0.932188, 0.982342)),
    ("fuzzy-pi-pd", "gp2"): (3.752172,
        (0.177834, 0.016532, 0.636613, 0.299998, 0.765192, 0.287097,
         0.976782, 0.810926)),
    ("fuzzy-pi-pd", "gp3"): (39.64602,
        (0.848295, 0.209849, 0.843522, 0.295589, 0.209216, 0.487242,
         0.971632, 0.436048)),
    ("fuzzy-p-id", "gp1"): (38.1687,
        (0.339126, 0.81547, 0.594271, 1.924765, 1.806937, 0.882179,
         0.973166, 0.177353)),
    ("fuzzy-p-id", "gp2"): (3.631472,
        (0.007836, 0.288275, 0.650441, 0.131799, 0.17253, 0.973567,
         0.769968, 0.05902)),
    ("fuzzy-p-id", "gp3"): (39.69599,
        (0.64044, 0.094509, 0.301722, 0.161946, 0.657659, 0.972741,
         0.998061, 0.00964)),
    ("fuzzy-pi-d", "gp1"): (38.21658,
        (0.658696, 0.328859, 2.02627, 1.314265, 0.883782, 0.707495,
         0.432665)),
    ("fuzzy-pi-d", "gp2"): (6.67324,
        (0.435695, 0.240776, 0.379578, 0.314335, 0.873519, 0.59048,
         0.753619)),
    ("fuzzy-pi-d", "gp3"): (39.89151,
        (0.712596, 0.20361, 1.06411, 0.220181, 0.940606, 0.607729,
         0.429407)),
    ("fuzzy-pd-i", "gp1"): (38.22424,
        (0.207274, 0.59619, 0.639649, 1.039919, 0.983022, 0.599213)),
    ("fuzzy-pd-i", "gp2"): (3.297377,
        (0.056807, 0.211725, 0.113836, 0.828508, 0.989822, 0.723279)),
    ("fuzzy-pd-i", "gp3"): (39.67555,
        (0.344379, 0.5251, 0.626799, 0.33055, 0.96105, 0.28574)),
}


def test_registry_matches_fixture_digit_for_digit():
    assert len(PUBLISHED) == len(REGISTRY_FIXTURE) == 15
    for published in PUBLISHED:
        j_min, values = REGISTRY_FIXTURE[(published.structure.value,
                                          published.process)]
        assert published.j_min == j_min
        assert published.values == values


# ------------------------------------------------------------------ emission

def test_emit_csv_format(tmp_path):
    path = tmp_path / "out.csv"
    emit_csv(str(path), ("a", "b"), [(1.0 / 3.0, 1234567.0), (2, True)])
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.decode() == "a,b\n0.333333,1.23457e+06\n2,true\n"


def test_emit_csv_unwritable_path():
    with pytest.raises(CliError):
        emit_csv("/nonexistent-dir/out.csv", ("a",), [(1,)])


def test_controller_config_round_trip(tmp_path):
    spec = row(Structure.FUZZY_PI_PD, "gp3").spec
    path = tmp_path / "best.cfg"
    save_controller_config(str(path), spec, meta={"fitness": 1.0})
    loaded = load_controller_config(str(path))
    assert loaded.structure is spec.structure
    assert np.array_equal(loaded.as_vector(), spec.as_vector())
    assert loaded == spec


def test_controller_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text(json.dumps({"structure": "fuzzy-pid", "params": {},
                                "extra": 1}))
    with pytest.raises(CliError):
        load_controller_config(str(path))


# ------------------------------------------------------------------- config

def _full_config(**overrides):
    base = {
        "plant": {"preset": "gp3"},
        "controller": {"structure": "fuzzy-pd-i",
                       "params": row(Structure.FUZZY_PD_I, "gp3").params},
        "scenario": {"horizon": 10.0, "disturbance_time": 5.0},
        "loop": {"dt": 0.01, "uss_mode": "zero"},
        "output": {},
        "seed": 7,
    }
    base.update(overrides)
    return base


def test_run_config_parses_full_document():
    cfg = RunConfig.from_dict(_full_config())
    assert cfg.plant == {"preset": "gp3"}
    assert cfg.seed == 7
    assert cfg.loop["uss_mode"] == "zero"


def test_run_config_rejects_unknown_top_key():
    with pytest.raises(CliError):
        RunConfig.from_dict(_full_config(bogus={}))


def test_run_config_rejects_unknown_section_key():
    bad = _full_config()
    bad["scenario"] = {"horizan": 40.0}
    with pytest.raises(CliError):
        RunConfig.from_dict(bad)


def test_run_config_rejects_non_integer_seed():
    with pytest.raises(CliError):
        RunConfig.from_dict(_full_config(seed="seven"))


def test_run_config_rejects_non_object_section():
    with pytest.raises(CliError):
        RunConfig.from_dict(_full_config(plant=[1, 2]))


# -------------------------------------------------------------- table replay

def test_reproduce_tables_reports_all_rows():
    report = reproduce_tables()
    assert len(report.entries) == 15
    assert report.settings["uss_mode"] == "dc"
    by_process = {}
    for entry in report.entries:
        by_process.setdefault(entry.process, []).append(entry)
    for process, entries in by_process.items():
        assert sorted(e.recomputed_rank for e in entries) == [1, 2, 3, 4, 5]
        assert sorted(e.published_rank for e in entries) == [1, 2, 3, 4, 5]
        assert all(e.stable for e in entries)
        assert all(np.isfinite(e.recomputed_j) for e in entries)


def test_reproduce_tables_rejects_empty_registry():
    with pytest.raises(CliError):
        reproduce_tables(registry=())


# ---------------------------------------------------------------- subcommands

def test_freqcheck_csv_columns(tmp_path, capsys):
    out = tmp_path / "freq.csv"
    code = cli.main(["freqcheck", "--beta", "0.5", "--points", "9",
                     "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ("omega_rad_s,mag_ideal,mag_filter,"
                        "phase_ideal_deg,phase_filter_deg")
    assert len(lines) == 10
    mid = lines[5].split(",")  # omega = 1 on the log grid
    assert float(mid[0]) == pytest.approx(1.0, rel=1e-6)
    assert float(mid[2]) == pytest.approx(1.0, rel=0.05)
    assert float(mid[3]) == pytest.approx(45.0, abs=1e-9)


def test_surface_row_count_and_corners(tmp_path):
    out = tmp_path / "surface.csv"
    code = cli.main(["surface", "--grid-n", "11", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "e_norm,de_norm,u_norm"
    assert len(lines) == 1 + 11 * 11
    first = lines[1].split(",")
    assert (float(first[0]), float(first[1])) == (-1.0, -1.0)
    assert float(first[2]) == pytest.approx(-8.0 / 9.0, abs=1e-4)


def test_simulate_published_row_writes_trajectory(tmp_path, capsys):
    out = tmp_path / "traj.csv"
    code = cli.main(["simulate", "--process", "gp3", "--structure",
                     "fuzzy-pi-pd", "--row", "--indices",
                     "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,r,e,u,y"
    assert len(lines) == 1 + 4000  # 40 s at dt = 0.01
    printed = capsys.readouterr().out
    assert "j_weighted=" in printed and "uss_mode=dc" in printed


def test_simulate_inline_plant(tmp_path):
    out = tmp_path / "traj.csv"
    code = cli.main(["simulate", "--plant", "1.0", "1.11", "1.5", "0.105",
                     "--dt", "0.005", "--horizon", "5.0",
                     "--structure", "fuzzy-pid", "--params",
                     json.dumps(row(Structure.FUZZY_PID, "gp1").params),
                     "--out", str(out)])
    assert code == 0
    assert len(out.read_text().splitlines()) == 1 + 1000


def test_simulate_config_file_drive(tmp_path):
    cfg_path = tmp_path / "run.json"
    out = tmp_path / "traj.csv"
    doc = _full_config()
    doc["output"] = {"out": str(out)}
    cfg_path.write_text(json.dumps(doc))
    code = cli.main(["simulate", "--config", str(cfg_path)])
    assert code == 0
    assert len(out.read_text().splitlines()) == 1 + 1000


def test_simulate_divergent_loop_exits_two(tmp_path):
    params = {"K_e": 1.0, "K_d1": 0.1, "K_PI": 40.0, "K_d2": 40.0,
              "lambda": 0.0, "mu1": 1.0, "mu2": 1.0}
    code = cli.main(["simulate", "--process", "gp3", "--structure",
                     "fuzzy-pi-d", "--params", json.dumps(params),
                     "--out", str(tmp_path / "t.csv")])
    assert code == 2


def test_validation_errors_exit_one(tmp_path):
    assert cli.main(["simulate", "--process", "gp3", "--structure",
                     "no-such-tag", "--row"]) == 1
    assert cli.main(["simulate", "--structure", "fuzzy-pid", "--row"]) == 1
    assert cli.main(["simulate", "--process", "gp1", "--structure",
                     "fuzzy-pid", "--params", '{"K_e": 2.0}']) == 1
    assert cli.main(["tune", "--process", "gp1"]) == 1
    assert cli.main(["no-such-command"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(_full_config(bogus={})))
    assert cli.main(["simulate", "--config", str(bad)]) == 1


def test_tune_writes_reparsable_spec(tmp_path, capsys):
    out = tmp_path / "best.cfg"
    code = cli.main(["tune", "--process", "gp3", "--structure", "fuzzy-pd-i",
                     "--pop", "6", "--generations", "2", "--seed", "0",
                     "--out", str(out)])
    assert code == 0
    loaded = load_controller_config(str(out))
    assert loaded.structure is Structure.FUZZY_PD_I
    doc = json.loads(out.read_text())
    assert ControllerSpec(Structure.from_tag(doc["structure"]),
                          doc["params"]) == loaded
    assert {"fitness", "generations", "seed"} <= set(doc["meta"])


def test_pareto_csv_header_matches_structure(tmp_path):
    out = tmp_path / "front.csv"
    code = cli.main(["pareto", "--process", "gp3", "--structure", "fuzzy-pid",
                     "--pop", "8", "--generations", "2", "--seed", "0",
                     "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    expected = ("J1", "J2") + param_names(Structure.FUZZY_PID)
    assert lines[0] == ",".join(expected)
    assert len(lines) >= 2


def test_reproduce_tables_subcommand_csv(tmp_path, capsys):
    out = tmp_path / "tables.csv"
    code = cli.main(["reproduce-tables", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ("process,structure,published_jmin,recomputed_j,"
                        "stable,published_rank,recomputed_rank")
    assert len(lines) == 16
    summary = capsys.readouterr().out
    assert "structures by recomputed J" in summary
    assert "settings:" in summary


def test_gnuplot_script_emission(tmp_path):
    out = tmp_path / "surface.csv"
    script = tmp_path / "surface.gp"
    code = cli.main(["surface", "--grid-n", "5", "--out", str(out),
                     "--gnuplot", str(script)])
    assert code == 0
    assert str(out) in script.read_text()

"""CLI behaviour: config validation, outputs, determinism, exit codes."""

import json

import pytest

from fluctforce.cli import main


def write_config(tmp_path, name, cfg):
    path = tmp_path / name
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


def oscillator_cfg(**overrides):
    cfg = {
        "schema": "fluctforce/1",
        "mode": "oscillator",
        "units": "reduced",
        "parameters": {
            "damping": "ohmic",
            "temperature": 0.5,
            "omega0": {"coeff": 1.0, "power": 0.5},
            "gamma0": 0.3,
        },
        "sweep": {"parameter": "lambda", "start": 0.5, "stop": 2.0,
                  "points": 8, "spacing": "linear"},
    }
    cfg.update(overrides)
    return cfg


def read_rows(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    return header, [dict(zip(header, ln.split(","))) for ln in lines[1:]]


def test_missing_config_is_config_error(capsys, tmp_path):
    assert main(["force", "--config", str(tmp_path / "nope.json")]) == 2


def test_bad_json_is_config_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["force", "--config", str(path)]) == 2


def test_wrong_schema_rejected(tmp_path):
    cfg = oscillator_cfg()
    cfg["schema"] = "something/2"
    assert main(["force", "--config", write_config(tmp_path, "c.json", cfg)]) == 2


def test_unknown_mode_rejected(tmp_path):
    cfg = oscillator_cfg(mode="quantum-gravity")
    assert main(["force", "--config", write_config(tmp_path, "c.json", cfg)]) == 2


def test_geometry_mode_requires_si(tmp_path):
    cfg = {
        "schema": "fluctforce/1", "mode": "sphere-plate", "units": "reduced",
        "parameters": {"radius": 1e-4, "inductance": 1e-6,
                       "temperature": 300.0, "regime": "high-T"},
    }
    assert main(["force", "--config", write_config(tmp_path, "c.json", cfg)]) == 2


def test_precondition_violation_exit_code(tmp_path):
    # swept resistance makes gamma lambda-dependent: domain error, exit 3
    cfg = {
        "schema": "fluctforce/1", "mode": "series-rlc", "units": "reduced",
        "parameters": {"resistance": {"coeff": 1.0, "power": 1.0},
                       "inductance": 1.0,
                       "capacitance": {"coeff": 1.0, "power": 1.0},
                       "temperature": 0.5, "lambda": 1.0},
    }
    assert main(["force", "--config", write_config(tmp_path, "c.json", cfg)]) == 3


def test_force_single_row_stdout(capsys, tmp_path):
    cfg = oscillator_cfg()
    del cfg["sweep"]
    cfg["parameters"]["lambda"] = 1.0
    assert main(["force", "--config",
                 write_config(tmp_path, "c.json", cfg)]) == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0].startswith("lambda,force,f_omega,f_gamma0,f_omegaD,"
                               "regime,oracle,discrepancy,warnings")
    assert len(lines) == 2
    assert ",exact," in lines[1]


def test_zero_derivative_sweep_all_zero(tmp_path):
    cfg = oscillator_cfg()
    cfg["parameters"]["omega0"] = {"coeff": 1.0, "power": 0.0}
    out = tmp_path / "zero.csv"
    assert main(["sweep", "--config", write_config(tmp_path, "c.json", cfg),
                 "--out", str(out)]) == 0
    _, rows = read_rows(out)
    assert len(rows) == 8
    assert all(float(r["force"]) == 0.0 for r in rows)


def test_oscillator_oracle_discrepancy_column(tmp_path):
    cfg = oscillator_cfg(oracle={"enabled": True, "n_max": 50_000})
    out = tmp_path / "o.csv"
    assert main(["sweep", "--config", write_config(tmp_path, "c.json", cfg),
                 "--out", str(out)]) == 0
    _, rows = read_rows(out)
    for row in rows:
        assert row["oracle"] != ""
        assert float(row["discrepancy"]) <= 1e-8


def test_drude_mode_components(tmp_path):
    cfg = oscillator_cfg()
    cfg["parameters"]["damping"] = "drude"
    cfg["parameters"]["omega_d"] = 50.0
    cfg["parameters"]["gamma0"] = {"coeff": 0.3, "power": 1.0}
    out = tmp_path / "d.csv"
    assert main(["sweep", "--config", write_config(tmp_path, "c.json", cfg),
                 "--out", str(out)]) == 0
    _, rows = read_rows(out)
    for row in rows:
        total = (float(row["f_omega"]) + float(row["f_gamma0"])
                 + float(row["f_omegaD"]))
        assert total == pytest.approx(float(row["force"]), rel=1e-12)


def test_warning_flags_appear_verbatim(tmp_path):
    cfg = oscillator_cfg()
    cfg["parameters"]["damping"] = "drude"
    cfg["parameters"]["omega_d"] = 2.0    # below 10 max(Omega, gamma0)
    cfg["parameters"]["gamma0"] = 0.3
    out = tmp_path / "w.csv"
    assert main(["sweep", "--config", write_config(tmp_path, "c.json", cfg),
                 "--out", str(out)]) == 0
    _, rows = read_rows(out)
    assert any("drude-approx-regime" in r["warnings"] for r in rows)


def test_sphere_plate_sweep_weight_span(tmp_path):
    radius = 1e-4
    cfg = {
        "schema": "fluctforce/1", "mode": "sphere-plate", "units": "si",
        "parameters": {"radius": radius, "inductance": 1e-6,
                       "temperature": 300.0, "regime": "high-T"},
        "sweep": {"parameter": "lambda", "start": 0.035 * radius,
                  "stop": 0.75 * radius, "points": 12, "spacing": "log"},
    }
    out = tmp_path / "sp.csv"
    assert main(["sweep", "--config", write_config(tmp_path, "c.json", cfg),
                 "--out", str(out)]) == 0
    header, rows = read_rows(out)
    assert header[-2:] == ["f_casimir", "r_weight"]
    weights = [float(r["r_weight"]) for r in rows]
    assert weights[0] == pytest.approx(0.0209, abs=5e-4)
    assert weights[-1] == pytest.approx(0.50, abs=0.01)
    assert all(a < b for a, b in zip(weights, weights[1:]))


def test_planar_mode_columns(tmp_path):
    cfg = {
        "schema": "fluctforce/1", "mode": "planar", "units": "si",
        "parameters": {"area": 2.5e-5, "inductance": 1e-6,
                       "resistance": 0.0, "temperature": 300.0,
                       "regime": "high-T"},
        "sweep": {"parameter": "lambda", "start": 0.5e-3, "stop": 1e-3,
                  "points": 5, "spacing": "linear"},
    }
    out = tmp_path / "pc.csv"
    assert main(["sweep", "--config", write_config(tmp_path, "c.json", cfg),
                 "--out", str(out)]) == 0
    _, rows = read_rows(out)
    # r_T^pc = 4 pi d^2 / (zeta(3) S); at d = 1 mm, S = 25 mm^2 -> 0.418
    assert float(rows[-1]["r_weight"]) == pytest.approx(0.418, abs=2e-3)
    assert float(rows[0]["f_casimir"]) < 0.0


def test_sweep_determinism_byte_identical(tmp_path):
    cfg = oscillator_cfg(oracle={"enabled": True, "n_max": 20_000})
    path = write_config(tmp_path, "c.json", cfg)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", path, "--out", str(out1)]) == 0
    assert main(["sweep", "--config", path, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sweep_workers_do_not_change_output(tmp_path):
    cfg = oscillator_cfg(oracle={"enabled": True, "n_max": 20_000})
    path = write_config(tmp_path, "c.json", cfg)
    out1, out4 = tmp_path / "w1.csv", tmp_path / "w4.csv"
    assert main(["sweep", "--config", path, "--out", str(out1),
                 "--workers", "1"]) == 0
    assert main(["sweep", "--config", path, "--out", str(out4),
                 "--workers", "4"]) == 0
    assert out1.read_bytes() == out4.read_bytes()


def test_json_format_output(tmp_path):
    cfg = oscillator_cfg(output={"format": "json"})
    out = tmp_path / "o.json"
    assert main(["sweep", "--config", write_config(tmp_path, "c.json", cfg),
                 "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["schema"] == "fluctforce/1"
    assert payload["columns"][0] == "lambda"
    assert len(payload["rows"]) == 8
    assert payload["rows"][0]["regime"] == "exact"


def test_temperature_sweep(tmp_path):
    cfg = oscillator_cfg()
    cfg["parameters"]["lambda"] = 1.0
    cfg["sweep"] = {"parameter": "temperature", "start": 0.1, "stop": 10.0,
                    "points": 6, "spacing": "log"}
    out = tmp_path / "t.csv"
    assert main(["sweep", "--config", write_config(tmp_path, "c.json", cfg),
                 "--out", str(out)]) == 0
    _, rows = read_rows(out)
    forces_col = [float(r["force"]) for r in rows]
    assert all(f < 0.0 for f in forces_col)
    # classical growth with T at the high end
    assert abs(forces_col[-1]) > abs(forces_col[0])


def test_parallel_rlc_mode(tmp_path):
    cfg = {
        "schema": "fluctforce/1", "mode": "parallel-rlc", "units": "reduced",
        "parameters": {"resistance": 50.0, "capacitance": 1.0,
                       "inductance": {"coeff": 1.0, "power": 1.0},
                       "temperature": 0.5},
        "sweep": {"parameter": "lambda", "start": 0.5, "stop": 2.0,
                  "points": 5, "spacing": "linear"},
        "oracle": {"enabled": True, "n_max": 30_000},
    }
    out = tmp_path / "p.csv"
    assert main(["sweep", "--config", write_config(tmp_path, "c.json", cfg),
                 "--out", str(out)]) == 0
    _, rows = read_rows(out)
    # dL/dlam > 0: the swept inductance pulls Omega down, so the force
    # is positive (repulsive) and tracks the oracle
    for row in rows:
        assert float(row["force"]) > 0.0
        assert float(row["discrepancy"]) <= 1e-8


def test_validate_suite_pass(capsys):
    assert main(["validate", "--suite", "paper-numbers"]) == 0
    out = capsys.readouterr().out
    assert "PASS planar-relative-weights" in out
    assert "PASS sphere-plate-relative-weights" in out


def test_validate_unknown_suite():
    assert main(["validate", "--suite", "does-not-exist"]) == 2


def test_divergent_sum_exit_code(tmp_path):
    # Ohmic damping with lambda-dependent gamma0 and the oracle enabled
    cfg = oscillator_cfg(oracle={"enabled": True, "n_max": 10_000})
    cfg["parameters"]["gamma0"] = {"coeff": 0.3, "power": 1.0}
    del cfg["sweep"]
    cfg["parameters"]["lambda"] = 1.0
    assert main(["force", "--config",
                 write_config(tmp_path, "c.json", cfg)]) == 3

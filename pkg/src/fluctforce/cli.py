"""Command-line interface: single-point forces, parameter sweeps, and
validation batteries.

Configs are JSON with a versioned "schema" field ("fluctforce/1"); see
the README for the full key reference.  Output is CSV or JSON with a
fixed column set

    lambda, force, f_omega, f_gamma0, f_omegaD, regime, oracle,
    discrepancy, warnings

(geometry modes append f_casimir and r_weight).  Floats are written with
Python's shortest round-trip repr, rows in sweep order, so identical
configs produce byte-identical files regardless of worker count.

Exit codes: 0 success, 2 config error, 3 domain/precondition violation,
4 validation failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import io
import json
import sys
from typing import Any

import numpy as np

from . import circuits, forces, matsubara, validation
from .errors import DivergentSumError, DomainError, PreconditionError
from .matsubara import SumSpec
from .oscillator import ParametricModel, power_law

SCHEMA = "fluctforce/1"

BASE_COLUMNS = ("lambda", "force", "f_omega", "f_gamma0", "f_omegaD",
                "regime", "oracle", "discrepancy", "warnings")
GEOMETRY_COLUMNS = BASE_COLUMNS + ("f_casimir", "r_weight")

_MODES = ("oscillator", "series-rlc", "parallel-rlc", "planar", "sphere-plate")


class ConfigError(ValueError):
    pass


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return repr(float(x))


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    if cfg.get("schema") != SCHEMA:
        raise ConfigError(f"config schema must be {SCHEMA!r}")
    mode = cfg.get("mode")
    if mode not in _MODES:
        raise ConfigError(f"mode must be one of {_MODES}")
    units = cfg.get("units", "reduced")
    if units not in ("reduced", "si"):
        raise ConfigError("units must be 'reduced' or 'si'")
    if mode in ("planar", "sphere-plate") and units != "si":
        raise ConfigError(f"mode {mode!r} is SI only")
    if "parameters" not in cfg or not isinstance(cfg["parameters"], dict):
        raise ConfigError("config needs a 'parameters' object")
    return cfg


def _law(spec: Any, name: str):
    """A scalar is a constant; {'coeff': c, 'power': p} is c * lam**p."""
    if isinstance(spec, (int, float)):
        return power_law(float(spec), 0.0)
    if isinstance(spec, dict) and set(spec) <= {"coeff", "power"}:
        return power_law(float(spec["coeff"]), float(spec.get("power", 0.0)))
    raise ConfigError(f"parameter {name!r} must be a number or "
                      "{'coeff': c, 'power': p}")


def _require_key(params: dict, key: str):
    if key not in params:
        raise ConfigError(f"missing parameter {key!r}")
    return params[key]


def _sweep_values(cfg: dict) -> tuple[str, list[float]]:
    sweep = cfg.get("sweep")
    if not isinstance(sweep, dict):
        raise ConfigError("sweep mode needs a 'sweep' object")
    name = sweep.get("parameter", "lambda")
    try:
        start = float(sweep["start"])
        stop = float(sweep["stop"])
        points = int(sweep["points"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("sweep needs numeric start/stop/points") from exc
    if points < 1:
        raise ConfigError("sweep points must be >= 1")
    if not (0.0 < start <= stop):
        raise ConfigError("sweep range must be positive and ordered")
    spacing = sweep.get("spacing", "linear")
    if spacing == "linear":
        values = np.linspace(start, stop, points)
    elif spacing == "log":
        values = np.geomspace(start, stop, points)
    else:
        raise ConfigError("spacing must be 'linear' or 'log'")
    return name, [float(v) for v in values]


def _oracle_spec(cfg: dict) -> SumSpec | None:
    oracle = cfg.get("oracle", {})
    if not isinstance(oracle, dict):
        raise ConfigError("'oracle' must be an object")
    if not oracle.get("enabled", False):
        return None
    return SumSpec(n_max=int(oracle.get("n_max", 100_000)))


def _component(res: forces.ForceResult, key: str) -> float | None:
    if res.components is None:
        return None
    return res.components.get(key)


def _oscillator_model(params: dict) -> tuple[ParametricModel, str]:
    damping = _require_key(params, "damping")
    if damping not in ("ohmic", "drude"):
        raise ConfigError("damping must be 'ohmic' or 'drude'")
    om, dom = _law(_require_key(params, "omega0"), "omega0")
    g0, dg0 = _law(params.get("gamma0", 0.0), "gamma0")
    if damping == "drude":
        wd, dwd = _law(_require_key(params, "omega_d"), "omega_d")
        return ParametricModel(om, dom, g0, dg0, wd, dwd), damping
    return ParametricModel(om, dom, g0, dg0), damping


def _row_oscillator(cfg: dict, lam: float, temperature: float) -> dict:
    params = cfg["parameters"]
    model, damping = _oscillator_model(params)
    units = cfg.get("units", "reduced")
    hbar_out, t_freq = circuits.units_factors(temperature, units)
    p = model.params_at(lam, t_freq)
    if damping == "ohmic":
        res = forces.force_ohmic_exact(p, model.d_omega(lam))
    else:
        res = forces.force_drude_full(p, model, lam)
    res = circuits.scale_result(res, hbar_out)
    row = _force_row(lam, res)
    spec = _oracle_spec(cfg)
    if spec is not None:
        oracle = matsubara.force_sum_exact(p, model, lam, spec)
        row["oracle"] = hbar_out * oracle.value
        row["discrepancy"] = abs(res.value - hbar_out * oracle.value)
    return row


def _element(params: dict, key: str) -> circuits.ElementLaw:
    spec = _require_key(params, key)
    if isinstance(spec, dict) and "planar" in spec:
        geom = spec["planar"]
        return circuits.planar_capacitance_law(
            float(_require_key(geom, "area")), float(geom.get("epsilon", 1.0)))
    value, derivative = _law(spec, key)
    return circuits.ElementLaw(value, derivative,
                               constant=isinstance(spec, (int, float)))


def _series_loop(params: dict) -> circuits.SeriesRLC:
    return circuits.SeriesRLC.of(
        _element(params, "resistance"), _element(params, "inductance"),
        _element(params, "capacitance"), params.get("element_size"))


def _row_series(cfg: dict, lam: float, temperature: float) -> dict:
    params = cfg["parameters"]
    loop = _series_loop(params)
    units = cfg.get("units", "reduced")
    regime = params.get("regime", "exact")
    res = circuits.force_series_rlc(loop, temperature, lam, regime, units)
    row = _force_row(lam, res)
    spec = _oracle_spec(cfg)
    if spec is not None:
        model = circuits.map_series(loop)
        hbar_out, t_freq = circuits.units_factors(temperature, units)
        oracle = matsubara.force_sum_exact(model.params_at(lam, t_freq),
                                           model, lam, spec)
        row["oracle"] = hbar_out * oracle.value
        row["discrepancy"] = abs(res.value - hbar_out * oracle.value)
    return row


def _row_parallel(cfg: dict, lam: float, temperature: float) -> dict:
    params = cfg["parameters"]
    loop = circuits.ParallelRLC.of(
        _element(params, "resistance"), _element(params, "inductance"),
        _element(params, "capacitance"), params.get("element_size"))
    units = cfg.get("units", "reduced")
    regime = params.get("regime", "exact")
    res = circuits.force_parallel_rlc(loop, temperature, lam, regime, units)
    row = _force_row(lam, res)
    spec = _oracle_spec(cfg)
    if spec is not None:
        model = circuits.map_parallel(loop)
        hbar_out, t_freq = circuits.units_factors(temperature, units)
        oracle = matsubara.force_sum_exact(model.params_at(lam, t_freq),
                                           model, lam, spec)
        row["oracle"] = hbar_out * oracle.value
        row["discrepancy"] = abs(res.value - hbar_out * oracle.value)
    return row


def _force_row(lam: float, res: forces.ForceResult) -> dict:
    return {
        "lambda": lam,
        "force": res.value,
        "f_omega": _component(res, "f_omega"),
        "f_gamma0": _component(res, "f_gamma0"),
        "f_omegaD": _component(res, "f_omegaD"),
        "regime": res.regime,
        "oracle": None,
        "discrepancy": None,
        "warnings": ";".join(res.warnings),
    }


def _row_planar(cfg: dict, lam: float, temperature: float) -> dict:
    params = cfg["parameters"]
    area = float(_require_key(params, "area"))
    epsilon = float(params.get("epsilon", 1.0))
    inductance = float(_require_key(params, "inductance"))
    resistance = float(params.get("resistance", 0.0))
    regime = _require_key(params, "regime")
    geom = circuits.PlanarCapacitor(area, lam, epsilon)
    loop = circuits.SeriesRLC.of(resistance, inductance,
                                 circuits.planar_capacitance_law(area, epsilon))
    res = circuits.force_series_rlc(loop, temperature, lam, regime, "si")
    cas = circuits.casimir_reference(geom, temperature, regime)
    row = _force_row(lam, res)
    row["warnings"] = ";".join(res.warnings + cas.warnings)
    row["f_casimir"] = cas.value
    row["r_weight"] = circuits.relative_weight(geom, loop, temperature, regime)
    return row


def _row_sphere_plate(cfg: dict, lam: float, temperature: float) -> dict:
    params = cfg["parameters"]
    radius = float(_require_key(params, "radius"))
    inductance = float(_require_key(params, "inductance"))
    regime = _require_key(params, "regime")
    geom = circuits.SpherePlate(radius, lam)
    res = circuits.sphere_plate_circuit_force(geom, inductance, temperature,
                                              regime)
    cas = circuits.casimir_reference(geom, temperature, regime)
    loop = circuits.SeriesRLC.of(0.0, inductance,
                                 circuits.sphere_plate_capacitance_law(radius))
    row = _force_row(lam, res)
    row["warnings"] = ";".join(res.warnings + cas.warnings)
    row["f_casimir"] = cas.value
    row["r_weight"] = circuits.relative_weight(geom, loop, temperature, regime)
    return row


_ROW_BUILDERS = {
    "oscillator": _row_oscillator,
    "series-rlc": _row_series,
    "parallel-rlc": _row_parallel,
    "planar": _row_planar,
    "sphere-plate": _row_sphere_plate,
}


def _compute_rows(cfg: dict, sweep_name: str, values: list[float],
                  workers: int) -> list[dict]:
    params = cfg["parameters"]
    if cfg["mode"] in ("planar", "sphere-plate"):
        base_t = float(_require_key(params, "temperature"))
    else:
        base_t = float(params.get("temperature", 0.0))
    base_lam = float(params.get("lambda", 1.0))
    builder = _ROW_BUILDERS[cfg["mode"]]

    def one(value: float) -> dict:
        if sweep_name == "temperature":
            row = builder(cfg, base_lam, value)
        elif sweep_name == "lambda":
            row = builder(cfg, value, base_t)
        else:
            raise ConfigError("sweep parameter must be 'lambda' or "
                              "'temperature'")
        row["lambda"] = value
        return row

    if workers <= 1 or len(values) == 1:
        return [one(v) for v in values]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, values))


def _columns(mode: str) -> tuple[str, ...]:
    return GEOMETRY_COLUMNS if mode in ("planar", "sphere-plate") \
        else BASE_COLUMNS


def _render_csv(columns, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(row.get(c)) for c in columns) + "\n")
    return buf.getvalue()


def _render_json(columns, rows) -> str:
    payload = {
        "schema": SCHEMA,
        "columns": list(columns),
        "rows": [{c: row.get(c) for c in columns} for row in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def _emit(cfg: dict, rows: list[dict], args) -> None:
    out_cfg = cfg.get("output", {})
    fmt = args.format or out_cfg.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("format must be 'csv' or 'json'")
    columns = _columns(cfg["mode"])
    text = _render_csv(columns, rows) if fmt == "csv" \
        else _render_json(columns, rows)
    path = args.out or out_cfg.get("path")
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_force(args) -> int:
    cfg = _load_config(args.config)
    if args.units:
        cfg["units"] = args.units
    params = cfg["parameters"]
    lam = float(params.get("lambda", 1.0))
    if cfg["mode"] in ("planar", "sphere-plate"):
        t = float(_require_key(params, "temperature"))
    else:
        t = float(params.get("temperature", 0.0))
    rows = [_ROW_BUILDERS[cfg["mode"]](cfg, lam, t)]
    _emit(cfg, rows, args)
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    if args.units:
        cfg["units"] = args.units
    sweep_name, values = _sweep_values(cfg)
    workers = args.workers if args.workers else int(cfg.get("workers", 1))
    rows = _compute_rows(cfg, sweep_name, values, workers)
    _emit(cfg, rows, args)
    return 0


def _cmd_validate(args) -> int:
    try:
        reports = validation.run_suite(args.suite, n_max=args.n_max)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    ok = True
    for report in reports:
        print(report.line())
        ok = ok and report.passed
    return 0 if ok else 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluctforce",
        description="Fluctuation-induced forces of damped oscillators and "
                    "RLC circuits")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn in (("force", _cmd_force), ("sweep", _cmd_sweep)):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--units", choices=("reduced", "si"), default=None)
        if name == "sweep":
            p.add_argument("--workers", type=int, default=0)
        p.set_defaults(fn=fn)

    v = sub.add_parser("validate")
    v.add_argument("--suite", required=True)
    v.add_argument("--n-max", type=int, default=100_000)
    v.set_defaults(fn=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, PreconditionError, DivergentSumError,
            ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

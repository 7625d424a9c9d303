"""Command-line front end: presets, config files, CSV/report emission.

Subcommands cover the full comparison workflow: frequency-domain filter
checks, fuzzy surface export, closed-loop simulation, single-objective
tuning, bi-objective front generation, and re-evaluation of the published
parameter tables.  Exit codes: 0 success, 1 validation error, 2 runtime
instability in a non-tuning run.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from .controllers import ControllerSpec, Structure, param_names
from .fracops import (DEFAULT_BAND, DEFAULT_HALF_ORDER, OustaloupSpec,
                      oustaloup_synthesize)
from .fuzzy import DEFAULT_RESOLUTION, FuzzyEngine
from .loop import (PENALTY, Scenario, compute_indices, default_scenario,
                   evaluate_candidate, simulate, steady_state_u)
from .plantsim import DEFAULT_DT, PRESETS, PlantModel
from .tables import PROCESSES, PUBLISHED, PublishedRow, rows_for_process
from .tuner import (GaConfig, Nsga2Config, SearchSpace, ga_multistart,
                    nsga2_optimize)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_UNSTABLE = 2


class CliError(ValueError):
    """Bad arguments or config: maps to exit code 1."""


class UnstableRunError(RuntimeError):
    """Divergent non-tuning run: maps to exit code 2."""


# ------------------------------------------------------------------ emission

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.6g}"
    return str(value)


def emit_csv(path: str, header, rows) -> None:
    """CSV with a fixed column order, 6 significant digits, LF endings."""
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    _write_text(path, buf.getvalue())


def emit_report(path: str, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    _write_text(path, text)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}") from exc


# ------------------------------------------------------------ config loading

_TOP_KEYS = ("plant", "controller", "scenario", "loop", "tuner", "output",
             "seed")
_PLANT_KEYS = ("preset", "K", "T", "alpha", "L")
_CONTROLLER_KEYS = ("structure", "params", "u_limit")
_SCENARIO_KEYS = ("horizon", "setpoint_time", "setpoint_mag",
                  "disturbance_time", "disturbance_mag")
_LOOP_KEYS = ("dt", "band", "filter_order", "uss_mode", "weights", "u_limit")
_GA_KEYS = ("pop_size", "elite_count", "crossover_ratio", "mutation_ratio",
            "mutation_sigma", "max_generations", "target_fitness")
_NSGA_KEYS = ("pop_size", "pareto_fraction", "crossover_ratio",
              "mutation_ratio", "mutation_sigma", "max_generations")
_OUTPUT_KEYS = ("out", "gnuplot")


def _check_keys(section: str, mapping: dict, allowed) -> None:
    unknown = sorted(set(mapping) - set(allowed))
    if unknown:
        raise CliError(f"unknown {section} keys: {', '.join(unknown)}")


@dataclass
class RunConfig:
    """Validated contents of a --config file; flags override fields."""

    plant: dict
    controller: dict
    scenario: dict
    loop: dict
    tuner: dict
    output: dict
    seed: int | None

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        if not isinstance(raw, dict):
            raise CliError("config root must be a JSON object")
        _check_keys("config", raw, _TOP_KEYS)
        sections = {}
        for name, allowed in (("plant", _PLANT_KEYS),
                              ("controller", _CONTROLLER_KEYS),
                              ("scenario", _SCENARIO_KEYS),
                              ("loop", _LOOP_KEYS),
                              ("tuner", _GA_KEYS + _NSGA_KEYS),
                              ("output", _OUTPUT_KEYS)):
            value = raw.get(name, {})
            if not isinstance(value, dict):
                raise CliError(f"config section {name!r} must be an object")
            _check_keys(name, value, allowed)
            sections[name] = value
        seed = raw.get("seed")
        if seed is not None and not isinstance(seed, int):
            raise CliError("seed must be an integer")
        return cls(seed=seed, **sections)

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise CliError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise CliError(f"malformed config {path}: {exc}") from exc
        return cls.from_dict(raw)


def load_controller_config(path: str) -> ControllerSpec:
    """Parse a controller spec file as written by ``tune --out``."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed controller config {path}: {exc}") from exc
    _check_keys("controller config", raw, ("structure", "params", "meta"))
    try:
        structure = Structure.from_tag(raw["structure"])
        return ControllerSpec(structure, raw["params"])
    except KeyError as exc:
        raise CliError(f"controller config missing {exc}") from exc


def save_controller_config(path: str, spec: ControllerSpec,
                           meta: dict | None = None) -> None:
    doc = {"structure": spec.structure.value, "params": dict(spec.params)}
    if meta:
        doc["meta"] = meta
    _write_text(path, json.dumps(doc, indent=2) + "\n")


# --------------------------------------------------------------- table replay

@dataclass(frozen=True)
class TableEntry:
    process: str
    structure: str
    published_jmin: float
    recomputed_j: float
    stable: bool
    published_rank: int
    recomputed_rank: int


@dataclass(frozen=True)
class TableReport:
    entries: tuple
    settings: dict


def reproduce_tables(registry=PUBLISHED, *, uss_mode: str = "dc",
                     dt: float | None = None,
                     band=DEFAULT_BAND, N: int = DEFAULT_HALF_ORDER,
                     weights=(1.0, 1.0)) -> TableReport:
    """Re-simulate every published row and rank structures per process."""
    if not registry:
        raise CliError("table registry is empty")
    by_process: dict[str, list[PublishedRow]] = {}
    for row in registry:
        by_process.setdefault(row.process, []).append(row)
    entries = []
    for process, rows in by_process.items():
        sc = default_scenario(process) if dt is None \
            else default_scenario(process, dt=dt)
        plant = PRESETS[process]
        recomputed = []
        for row in rows:
            j = evaluate_candidate(plant, row.spec, sc, weights=weights,
                                   uss_mode=uss_mode, band=band, N=N)
            recomputed.append(j)
        pub_rank = _ranks([r.j_min for r in rows])
        rec_rank = _ranks(recomputed)
        for row, j, pr, rr in zip(rows, recomputed, pub_rank, rec_rank):
            entries.append(TableEntry(process=process,
                                      structure=row.structure.value,
                                      published_jmin=row.j_min,
                                      recomputed_j=j,
                                      stable=j < PENALTY,
                                      published_rank=pr,
                                      recomputed_rank=rr))
    settings = {"uss_mode": uss_mode, "dt": dt if dt is not None else "preset",
                "band": list(band), "filter_order": N,
                "weights": list(weights)}
    return TableReport(entries=tuple(entries), settings=settings)


def _ranks(values) -> list[int]:
    order = np.argsort(np.asarray(values), kind="stable")
    out = [0] * len(values)
    for place, idx in enumerate(order, start=1):
        out[int(idx)] = place
    return out


def _format_table_report(report: TableReport) -> str:
    lines = ["settings: " + json.dumps(report.settings, sort_keys=True)]
    for process in PROCESSES:
        entries = [e for e in report.entries if e.process == process]
        if not entries:
            continue
        lines.append(f"{process}: structures by recomputed J")
        for e in sorted(entries, key=lambda e: e.recomputed_rank):
            verdict = "stable" if e.stable else "UNSTABLE"
            lines.append(f"  {e.recomputed_rank}. {e.structure:12s} "
                         f"J={_fmt(e.recomputed_j)} "
                         f"(published J_min={_fmt(e.published_jmin)}, "
                         f"rank {e.published_rank}, {verdict})")
    return "\n".join(lines)


# ------------------------------------------------------------- flag plumbing

def _parse_structure(tag: str) -> Structure:
    try:
        return Structure.from_tag(tag)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _resolve_plant(args, cfg: RunConfig | None):
    plant_cfg = dict(cfg.plant) if cfg else {}
    if getattr(args, "process", None):
        plant_cfg = {"preset": args.process}
    elif getattr(args, "plant", None):
        vals = args.plant
        if len(vals) == 1 and vals[0] in PRESETS:
            plant_cfg = {"preset": vals[0]}
        elif len(vals) == 4:
            try:
                k, t, alpha, dead = (float(v) for v in vals)
            except ValueError as exc:
                raise CliError(f"bad inline plant values: {exc}") from exc
            plant_cfg = {"K": k, "T": t, "alpha": alpha, "L": dead}
        else:
            raise CliError("--plant takes a preset name or K T ALPHA L")
    if "preset" in plant_cfg:
        if len(plant_cfg) > 1:
            raise CliError("plant preset excludes inline K/T/alpha/L")
        preset = plant_cfg["preset"]
        if preset not in PRESETS:
            raise CliError(f"unknown plant preset {preset!r}")
        return preset, PRESETS[preset]
    if plant_cfg:
        missing = sorted(set(("K", "T", "alpha", "L")) - set(plant_cfg))
        if missing:
            raise CliError(f"inline plant missing keys: {', '.join(missing)}")
        return None, PlantModel(K=float(plant_cfg["K"]),
                                T=float(plant_cfg["T"]),
                                alpha=float(plant_cfg["alpha"]),
                                L=float(plant_cfg["L"]))
    raise CliError("no plant given: use --process, --plant, or a config file")


def _resolve_scenario(args, cfg: RunConfig | None, preset: str | None,
                      dt: float) -> Scenario:
    sc_cfg = dict(cfg.scenario) if cfg else {}
    for key in _SCENARIO_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            sc_cfg[key] = flag
    if preset is not None:
        return default_scenario(preset, dt=dt, **sc_cfg)
    if "horizon" not in sc_cfg:
        raise CliError("inline plants need an explicit --horizon")
    return Scenario(dt=dt, **sc_cfg)


def _resolve_loop(args, cfg: RunConfig | None, preset: str | None):
    loop_cfg = dict(cfg.loop) if cfg else {}
    dt = getattr(args, "dt", None) or loop_cfg.get("dt") \
        or (DEFAULT_DT[preset] if preset else None)
    if dt is None:
        raise CliError("inline plants need an explicit --dt")
    band = getattr(args, "band", None) or loop_cfg.get("band") or DEFAULT_BAND
    band = (float(band[0]), float(band[1]))
    N = getattr(args, "filter_order", None) or loop_cfg.get("filter_order") \
        or DEFAULT_HALF_ORDER
    uss = getattr(args, "uss_mode", None) or loop_cfg.get("uss_mode") or "dc"
    weights = getattr(args, "weights", None) or loop_cfg.get("weights") \
        or (1.0, 1.0)
    weights = (float(weights[0]), float(weights[1]))
    u_limit = getattr(args, "u_limit", None) or loop_cfg.get("u_limit")
    return float(dt), band, int(N), uss, weights, u_limit


def _resolve_controller(args, cfg: RunConfig | None,
                        preset: str | None) -> ControllerSpec:
    ctl_cfg = dict(cfg.controller) if cfg else {}
    tag = getattr(args, "structure", None) or ctl_cfg.get("structure")
    if tag is None:
        raise CliError("no controller structure given")
    structure = _parse_structure(tag)
    if getattr(args, "row", False):
        if preset is None:
            raise CliError("--row needs a plant preset")
        from .tables import row as registry_row
        return registry_row(structure, preset).spec
    params = ctl_cfg.get("params")
    if getattr(args, "params", None):
        raw = args.params
        if raw.lstrip().startswith("{"):
            try:
                params = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CliError(f"malformed inline params: {exc}") from exc
        else:
            spec = load_controller_config(raw)
            if spec.structure is not structure:
                raise CliError(f"{raw} holds a {spec.structure.value} spec, "
                               f"not {structure.value}")
            return spec
    if params is None:
        raise CliError("no controller parameters given: use --params or --row")
    try:
        return ControllerSpec(structure, {k: float(v)
                                          for k, v in params.items()})
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _resolve_seed(args, cfg: RunConfig | None, default: int = 0) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    if cfg and cfg.seed is not None:
        return cfg.seed
    return default


def _load_config(args) -> RunConfig | None:
    path = getattr(args, "config", None)
    return RunConfig.from_file(path) if path else None


def _out_path(args, cfg: RunConfig | None) -> str:
    if getattr(args, "out", None):
        return args.out
    if cfg and cfg.output.get("out"):
        return cfg.output["out"]
    return "-"


# ----------------------------------------------------------------- commands

def _cmd_freqcheck(args) -> int:
    spec = OustaloupSpec(beta=args.beta, N=args.filter_order or
                         DEFAULT_HALF_ORDER,
                         wb=(args.band or DEFAULT_BAND)[0],
                         wh=(args.band or DEFAULT_BAND)[1])
    filt = oustaloup_synthesize(spec)
    omega = np.logspace(np.log10(args.omega_min), np.log10(args.omega_max),
                        args.points)
    h_filter = filt.freq_response(omega)
    h_ideal = (1j * omega) ** args.beta
    rows = zip(omega, np.abs(h_ideal), np.abs(h_filter),
               np.degrees(np.angle(h_ideal)), np.degrees(np.angle(h_filter)))
    emit_csv(args.out, ("omega_rad_s", "mag_ideal", "mag_filter",
                        "phase_ideal_deg", "phase_filter_deg"), rows)
    mag_err = np.max(np.abs(np.abs(h_filter) - np.abs(h_ideal))
                     / np.abs(h_ideal))
    ph_err = np.max(np.abs(np.degrees(np.angle(h_filter))
                           - np.degrees(np.angle(h_ideal))))
    print(f"max relative magnitude error: {mag_err:.6g}", file=sys.stderr)
    print(f"max phase error: {ph_err:.6g} deg", file=sys.stderr)
    return EXIT_OK


def _cmd_surface(args) -> int:
    engine = FuzzyEngine(resolution=args.resolution)
    pts = np.linspace(-1.0, 1.0, args.grid_n)
    surface = engine.control_surface(args.grid_n)
    rows = ((e, de, surface[a, b])
            for a, e in enumerate(pts) for b, de in enumerate(pts))
    emit_csv(args.out, ("e_norm", "de_norm", "u_norm"), rows)
    if args.gnuplot:
        emit_report(args.gnuplot, _surface_gnuplot(args.out))
    return EXIT_OK


def _surface_gnuplot(csv_path: str) -> str:
    return (f"set datafile separator ','\n"
            f"set xlabel 'e_norm'\nset ylabel 'de_norm'\n"
            f"set zlabel 'u_norm'\nset dgrid3d 41,41\nset hidden3d\n"
            f"splot '{csv_path}' every ::1 using 1:2:3 with lines notitle\n")


def _cmd_simulate(args) -> int:
    cfg = _load_config(args)
    preset, plant = _resolve_plant(args, cfg)
    dt, band, N, uss_mode, weights, u_limit = _resolve_loop(args, cfg, preset)
    sc = _resolve_scenario(args, cfg, preset, dt)
    spec = _resolve_controller(args, cfg, preset)
    tr = simulate(plant, spec, sc, band=band, N=N, u_limit=u_limit)
    out = _out_path(args, cfg)
    emit_csv(out, ("t", "r", "e", "u", "y"),
             zip(tr.t, tr.r, tr.e, tr.u, tr.y))
    if args.gnuplot:
        emit_report(args.gnuplot, _trajectory_gnuplot(out))
    if tr.unstable:
        raise UnstableRunError("closed loop diverged; trajectory truncated")
    if args.indices:
        rep = compute_indices(tr, sc, weights=weights, uss_mode=uss_mode)
        for key in ("istse_setpoint", "isdco_setpoint", "istse_load",
                    "j_weighted", "u_ss"):
            print(f"{key}={_fmt(getattr(rep, key))}")
        print(f"uss_mode={rep.uss_mode}")
    return EXIT_OK


def _trajectory_gnuplot(csv_path: str) -> str:
    return (f"set datafile separator ','\nset xlabel 't [s]'\n"
            f"plot '{csv_path}' every ::1 using 1:2 with lines title 'r', \\\n"
            f"     '{csv_path}' every ::1 using 1:5 with lines title 'y', \\\n"
            f"     '{csv_path}' every ::1 using 1:4 with lines title 'u'\n")


def _cmd_tune(args) -> int:
    cfg = _load_config(args)
    preset, plant = _resolve_plant(args, cfg)
    dt, band, N, uss_mode, weights, _ = _resolve_loop(args, cfg, preset)
    sc = _resolve_scenario(args, cfg, preset, dt)
    tag = getattr(args, "structure", None) \
        or (cfg.controller.get("structure") if cfg else None)
    if tag is None:
        raise CliError("no controller structure given")
    structure = _parse_structure(tag)
    tuner_cfg = dict(cfg.tuner) if cfg else {}
    _check_keys("tuner", tuner_cfg, _GA_KEYS)
    for key, flag in (("pop_size", "pop"), ("elite_count", "elite"),
                      ("max_generations", "generations"),
                      ("crossover_ratio", "crossover"),
                      ("mutation_ratio", "mutation"),
                      ("target_fitness", "target")):
        value = getattr(args, flag, None)
        if value is not None:
            tuner_cfg[key] = value
    seeds = args.seeds or [_resolve_seed(args, cfg)]
    ga_cfg = GaConfig(rng_seed=seeds[0], **tuner_cfg)
    space = SearchSpace.for_structure(structure)

    def fitness(vec):
        spec = ControllerSpec.from_vector(structure, vec)
        return evaluate_candidate(plant, spec, sc, weights=weights,
                                  uss_mode=uss_mode, band=band, N=N)

    res, runs = ga_multistart(space, fitness, ga_cfg, seeds)
    seeds_used = seeds[:len(runs)]
    winner = seeds_used[int(np.argmin([r.best_fitness for r in runs]))]
    best = ControllerSpec.from_vector(structure, res.best_params)
    out = _out_path(args, cfg)
    meta = {"fitness": res.best_fitness, "generations": res.generations,
            "evaluations": sum(r.evaluations for r in runs), "seed": winner,
            "seeds": list(seeds_used), "uss_mode": uss_mode,
            "weights": list(weights), "plant": preset or "inline", "dt": dt}
    if out == "-":
        doc = {"structure": best.structure.value,
               "params": dict(best.params), "meta": meta}
        print(json.dumps(doc, indent=2))
    else:
        save_controller_config(out, best, meta)
        print(f"best J = {_fmt(res.best_fitness)} from seed {winner} "
              f"({len(seeds_used)} restarts, "
              f"{sum(r.evaluations for r in runs)} evaluations)")
    return EXIT_OK


_OBJECTIVE_MODES = ("tracking-effort", "tracking-disturbance")


def _cmd_pareto(args) -> int:
    cfg = _load_config(args)
    preset, plant = _resolve_plant(args, cfg)
    dt, band, N, uss_mode, _, _ = _resolve_loop(args, cfg, preset)
    sc = _resolve_scenario(args, cfg, preset, dt)
    tag = getattr(args, "structure", None) \
        or (cfg.controller.get("structure") if cfg else None)
    if tag is None:
        raise CliError("no controller structure given")
    structure = _parse_structure(tag)
    if args.objectives not in _OBJECTIVE_MODES:
        raise CliError(f"objectives must be one of {_OBJECTIVE_MODES}")
    tuner_cfg = dict(cfg.tuner) if cfg else {}
    _check_keys("tuner", tuner_cfg, _NSGA_KEYS)
    for key, flag in (("pop_size", "pop"), ("max_generations", "generations"),
                      ("pareto_fraction", "pareto_fraction")):
        value = getattr(args, flag, None)
        if value is not None:
            tuner_cfg[key] = value
    nsga_cfg = Nsga2Config(rng_seed=_resolve_seed(args, cfg), **tuner_cfg)
    space = SearchSpace.for_structure(structure)
    second = "istse_load" if args.objectives == "tracking-disturbance" \
        else "isdco_setpoint"

    def objectives(vec):
        spec = ControllerSpec.from_vector(structure, vec)
        tr = simulate(plant, spec, sc, band=band, N=N)
        if tr.unstable or not np.all(np.isfinite(tr.y)) \
                or np.max(np.abs(tr.y)) > 1e3:
            return PENALTY, PENALTY
        rep = compute_indices(tr, sc, uss_mode=uss_mode)
        return rep.istse_setpoint, getattr(rep, second)

    archive = nsga2_optimize(space, objectives, nsga_cfg)
    second_name = "J3" if args.objectives == "tracking-disturbance" else "J2"
    header = ("J1", second_name) + param_names(structure)
    rows = (tuple(obj) + tuple(vec)
            for obj, vec in zip(archive.objectives, archive.params))
    out = _out_path(args, cfg)
    emit_csv(out, header, rows)
    if args.gnuplot:
        emit_report(args.gnuplot, _front_gnuplot(out, second_name))
    return EXIT_OK


def _front_gnuplot(csv_path: str, second_name: str) -> str:
    return (f"set datafile separator ','\nset xlabel 'J1'\n"
            f"set ylabel '{second_name}'\nset logscale xy\n"
            f"plot '{csv_path}' every ::1 using 1:2 with points notitle\n")


def _cmd_reproduce_tables(args) -> int:
    report = reproduce_tables(uss_mode=args.uss_mode or "dc", dt=args.dt,
                              band=args.band or DEFAULT_BAND,
                              N=args.filter_order or DEFAULT_HALF_ORDER)
    header = ("process", "structure", "published_jmin", "recomputed_j",
              "stable", "published_rank", "recomputed_rank")
    rows = ((e.process, e.structure, e.published_jmin, e.recomputed_j,
             e.stable, e.published_rank, e.recomputed_rank)
            for e in report.entries)
    emit_csv(args.out, header, rows)
    if args.out != "-":
        print(_format_table_report(report))
    return EXIT_OK


# ------------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    """argparse maps usage errors to exit 2; remap them to exit 1."""

    def error(self, message):
        raise CliError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dt", type=float, help="sample time [s]")
    p.add_argument("--band", type=float, nargs=2, metavar=("WB", "WH"),
                   help="approximation band [rad/s]")
    p.add_argument("--filter-order", type=int, metavar="N",
                   help="half order N of the rational filter (2N+1 pairs)")
    p.add_argument("--seed", type=int, help="RNG seed")
    p.add_argument("--uss-mode", choices=("dc", "zero"),
                   help="steady-state control reference for ISDCO")


def _add_scenario(p: argparse.ArgumentParser) -> None:
    p.add_argument("--horizon", type=float, dest="horizon")
    p.add_argument("--setpoint-time", type=float, dest="setpoint_time")
    p.add_argument("--setpoint-mag", type=float, dest="setpoint_mag")
    p.add_argument("--disturbance-time", type=float, dest="disturbance_time")
    p.add_argument("--disturbance-mag", type=float, dest="disturbance_mag")


def _add_plant(p: argparse.ArgumentParser) -> None:
    p.add_argument("--process", choices=PROCESSES,
                   help="benchmark plant preset")
    p.add_argument("--plant", nargs="+", metavar="PRESET|K T ALPHA L",
                   help="plant preset name or inline K, T, alpha, L")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frachz",
                     description="Hybrid fractional-order fuzzy controller "
                                 "bench: simulate, tune, and compare.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("freqcheck", parents=[], help="rational filter vs "
                       "ideal s^beta frequency response")
    _add_common(p)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--omega-min", type=float, default=0.1)
    p.add_argument("--omega-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_freqcheck)

    p = sub.add_parser("surface", help="export the fuzzy control surface")
    _add_common(p)
    p.add_argument("--grid-n", type=int, default=101)
    p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p.add_argument("--out", default="-")
    p.add_argument("--gnuplot", help="also write a gnuplot script here")
    p.set_defaults(func=_cmd_surface)

    p = sub.add_parser("simulate", help="closed-loop run, CSV trajectory")
    _add_common(p)
    _add_plant(p)
    _add_scenario(p)
    p.add_argument("--structure", help="controller structure tag")
    p.add_argument("--params", help="JSON object or spec file path")
    p.add_argument("--row", action="store_true",
                   help="use the published parameter row for this "
                        "process and structure")
    p.add_argument("--u-limit", type=float, dest="u_limit")
    p.add_argument("--config", help="RunConfig JSON file")
    p.add_argument("--indices", action="store_true",
                   help="print performance indices")
    p.add_argument("--out", default=None)
    p.add_argument("--gnuplot", help="also write a gnuplot script here")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("tune", help="single-objective GA parameter search")
    _add_common(p)
    _add_plant(p)
    _add_scenario(p)
    p.add_argument("--structure", help="controller structure tag")
    p.add_argument("--pop", type=int, help="population size")
    p.add_argument("--elite", type=int, help="elite count")
    p.add_argument("--generations", type=int, help="generation cap")
    p.add_argument("--crossover", type=float, help="crossover ratio")
    p.add_argument("--mutation", type=float, help="mutation ratio")
    p.add_argument("--target", type=float,
                   help="stop once best J falls to this level")
    p.add_argument("--seeds", type=int, nargs="+",
                   help="restart seed list; best restart wins")
    p.add_argument("--weights", type=float, nargs=2, metavar=("W1", "W2"))
    p.add_argument("--config", help="RunConfig JSON file")
    p.add_argument("--out", default=None,
                   help="write the best spec here (JSON)")
    p.set_defaults(func=_cmd_tune)

    p = sub.add_parser("pareto", help="bi-objective NSGA-II front")
    _add_common(p)
    _add_plant(p)
    _add_scenario(p)
    p.add_argument("--structure", help="controller structure tag")
    p.add_argument("--objectives", choices=_OBJECTIVE_MODES,
                   default="tracking-effort")
    p.add_argument("--pop", type=int, help="population size")
    p.add_argument("--generations", type=int, help="generation count")
    p.add_argument("--pareto-fraction", type=float, dest="pareto_fraction")
    p.add_argument("--config", help="RunConfig JSON file")
    p.add_argument("--out", default=None)
    p.add_argument("--gnuplot", help="also write a gnuplot script here")
    p.set_defaults(func=_cmd_pareto)

    p = sub.add_parser("reproduce-tables",
                       help="re-evaluate all published parameter rows")
    _add_common(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_reproduce_tables)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except UnstableRunError as exc:
        print(f"unstable: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Bi-objective trade-off study: one NSGA-II front per controller family.

For a chosen process, runs NSGA-II over every structure with the same
budget and seed, writes one front CSV per structure, and prints each
front's tracking-effort reading at the matched tracking budget (the
median J1 of the first structure's front).
"""

import argparse
import pathlib
import sys

import numpy as np

from frachz.cli import emit_csv
from frachz.controllers import ControllerSpec, Structure, param_names
from frachz.loop import PENALTY, compute_indices, default_scenario, simulate
from frachz.plantsim import PRESETS
from frachz.tuner import Nsga2Config, SearchSpace, nsga2_optimize


def front_for(structure: Structure, process: str, cfg: Nsga2Config,
              uss_mode: str):
    plant = PRESETS[process]
    sc = default_scenario(process)
    space = SearchSpace.for_structure(structure)

    def objectives(vec):
        spec = ControllerSpec.from_vector(structure, vec)
        tr = simulate(plant, spec, sc)
        if tr.unstable or not np.all(np.isfinite(tr.y)) \
                or np.max(np.abs(tr.y)) > 1e3:
            return PENALTY, PENALTY
        rep = compute_indices(tr, sc, uss_mode=uss_mode)
        return rep.istse_setpoint, rep.isdco_setpoint

    archive = nsga2_optimize(space, objectives, cfg)
    feasible = archive.objectives[:, 0] < PENALTY
    return archive.params[feasible], archive.objectives[feasible]


def j2_at(front_objs: np.ndarray, j1: float) -> float:
    order = np.argsort(front_objs[:, 0])
    return float(np.interp(j1, front_objs[order, 0], front_objs[order, 1]))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--process", default="gp3", choices=("gp1", "gp2", "gp3"))
    ap.add_argument("--pop", type=int, default=40)
    ap.add_argument("--generations", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--uss-mode", default="dc", choices=("dc", "zero"))
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    fronts = {}
    for structure in Structure:
        cfg = Nsga2Config(pop_size=args.pop, max_generations=args.generations,
                          rng_seed=args.seed)
        params, objs = front_for(structure, args.process, cfg, args.uss_mode)
        fronts[structure] = objs
        path = outdir / f"front_{args.process}_{structure.value}.csv"
        emit_csv(str(path), ("J1", "J2") + param_names(structure),
                 (tuple(o) + tuple(p) for o, p in zip(objs, params)))
        print(f"{structure.value:12s}: {len(objs):3d} feasible points "
              f"-> {path}")

    pid_front = fronts[Structure.FUZZY_PID]
    if len(pid_front) == 0:
        print("no feasible fuzzy-pid front; increase the budget")
        return 1
    j1_star = float(np.median(pid_front[:, 0]))
    print(f"\nJ2 at matched J1 = {j1_star:.6g} "
          f"(median of the fuzzy-pid front):")
    for structure, objs in fronts.items():
        if len(objs) == 0:
            print(f"  {structure.value:12s}: no feasible points")
            continue
        print(f"  {structure.value:12s}: J2 = {j2_at(objs, j1_star):.6g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

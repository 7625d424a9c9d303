#!/usr/bin/env python3
"""Re-evaluate the published tuning tables under both u_ss conventions.

Writes one CSV per convention plus a ranking summary to stdout.  The dc
convention scores control effort against the step's steady-state input
u_ss = r/K; the zero convention reproduces the literal ISDCO integral.
"""

import argparse
import pathlib
import sys

from frachz.cli import _format_table_report, emit_csv, reproduce_tables


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results", help="output directory")
    ap.add_argument("--dt", type=float, default=None,
                    help="override the per-process default sample time")
    args = ap.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    header = ("process", "structure", "published_jmin", "recomputed_j",
              "stable", "published_rank", "recomputed_rank")
    for mode in ("dc", "zero"):
        report = reproduce_tables(uss_mode=mode, dt=args.dt)
        path = outdir / f"tables_uss_{mode}.csv"
        emit_csv(str(path), header,
                 ((e.process, e.structure, e.published_jmin, e.recomputed_j,
                   e.stable, e.published_rank, e.recomputed_rank)
                  for e in report.entries))
        print(f"== u_ss mode: {mode} -> {path}")
        print(_format_table_report(report))
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())

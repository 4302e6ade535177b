"""Command-line front end.

Exit codes:
  0  every trip reached its goal
  1  unexpected error (unreadable file, bad arguments to a batch command)
  2  usage error (argparse)
  3  scenario validation error
  4  Livelock
  5  NoFreeNeighbor
  6  StepBudgetExhausted
  7  invariant violation (collision, out of bounds, beating the oracle, ...)

``sweep`` exits with the code of the first failing run in row-major goal
order, or 7 if any invariant broke. ``fuzz`` exits 7 on invariant
violations only; planner failures there are measurements, not errors.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from pathlib import Path

from .coverage import SensorField, coverage_fraction, monte_carlo_coverage, monte_carlo_uncovered, uncovered_area_per_cell
from .grid import GridSpec
from .planner import Outcome
from .render import render_ascii, render_svg
from .scenario import ScenarioConfig, ValidationError, dump_scenario, emit_run, parse_scenario, random_scenario
from .simulation import (
    EXIT_CODES,
    EXIT_ERROR,
    EXIT_INVARIANT,
    EXIT_VALIDATION,
    fuzz,
    run_scenario,
    summarize,
    sweep,
)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load(path: str, max_steps: int | None = None) -> ScenarioConfig:
    cfg = parse_scenario(Path(path).read_bytes())
    if max_steps is not None:
        cfg = dataclasses.replace(cfg, max_steps=max_steps)
    return cfg


def cmd_simulate(args) -> int:
    cfg = _load(args.scenario, args.max_steps)
    record = run_scenario(cfg)
    data = emit_run(record)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "run.json").write_bytes(data)
        if args.render == "ascii":
            (out / "render.txt").write_text(render_ascii(record))
        elif args.render == "svg":
            (out / "render.svg").write_text(render_svg(record))
    else:
        sys.stdout.write(data.decode())
        if args.render == "ascii":
            sys.stdout.write(render_ascii(record))
        elif args.render == "svg":
            sys.stdout.write(render_svg(record))
    m = record.metrics
    print(
        f"outcome={m['outcome']} path_length={m['path_length']} return_length={m['return_length']} "
        f"oracle_length={m['oracle_length']} detour_excess={m['detour_excess']}",
        file=sys.stderr,
    )
    return EXIT_CODES[Outcome(m["outcome"])]


SWEEP_FIELDS = ["goal_row", "goal_col", "outcome", "length", "oracle_reachable", "oracle_length", "detour_excess"]


def sweep_table(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_FIELDS)
    for r in rows:
        w.writerow(
            [r.goal[0], r.goal[1], r.outcome, r.length, str(r.oracle_reachable).lower(),
             "" if r.oracle_length is None else r.oracle_length,
             "" if r.detour_excess is None else r.detour_excess]
        )
    return buf.getvalue()


def _grid_from_args(args) -> GridSpec:
    return GridSpec(args.rows, args.cols, args.sensing_range)


def cmd_sweep(args) -> int:
    if args.scenario:
        base = _load(args.scenario, args.max_steps)
    else:
        grid = _grid_from_args(args)
        base = ScenarioConfig(grid=grid, fire_cell=(1, 1), max_steps=args.max_steps)
    rows = sweep(base, jobs=args.jobs)
    if args.out:
        Path(args.out).write_text(sweep_table(rows))
    summary = summarize(rows)
    print(_dumps(summary))
    if summary["invariant_violations"]:
        for r in rows:
            for v in r.violations:
                print(f"violation at goal {r.goal}: {v}", file=sys.stderr)
        return EXIT_INVARIANT
    for r in rows:
        if r.outcome != Outcome.REACHED.value:
            return EXIT_CODES[Outcome(r.outcome)]
    return 0


def coverage_report(grid: GridSpec, samples: int, seed: int) -> dict:
    r = grid.sensing_range
    analytic = uncovered_area_per_cell(r)
    mc = monte_carlo_uncovered(r, samples, seed)
    field = SensorField(grid)
    frac = monte_carlo_coverage(field, samples, seed)
    return {
        "grid": {"rows": grid.rows, "cols": grid.cols, "sensing_range": r},
        "samples": samples,
        "seed": seed,
        "uncovered_per_cell": {
            "analytic": round(analytic, 6),
            "monte_carlo": round(mc.value, 6),
            "stderr": round(mc.stderr, 6),
            "z": round((mc.value - analytic) / mc.stderr, 3),
        },
        "coverage_fraction": {
            "analytic": round(coverage_fraction(field), 6),
            "monte_carlo": round(frac.value, 6),
            "stderr": round(frac.stderr, 6),
        },
    }


def cmd_coverage(args) -> int:
    if args.samples < 1:
        print("--samples must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    print(_dumps(coverage_report(_grid_from_args(args), args.samples, args.seed)))
    return 0


def cmd_fuzz(args) -> int:
    if args.count < 1:
        print("--count must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    grid = _grid_from_args(args)
    results = fuzz(args.count, args.seed, grid, args.obstacles, args.max_steps, jobs=args.jobs)
    violations = [(r, v) for r in results for v in r.violations]
    counts = {o.value: 0 for o in Outcome}
    for r in results:
        counts[r.outcome] += 1
    reachable = [r for r in results if r.oracle_reachable]
    detours = [r.detour_excess for r in results if r.detour_excess is not None]
    summary = {
        "count": len(results),
        "seed": args.seed,
        "grid": [grid.rows, grid.cols],
        "obstacles": args.obstacles,
        "outcomes": counts,
        "success_rate": counts[Outcome.REACHED.value] / len(results),
        "success_rate_on_reachable": (
            sum(r.outcome == Outcome.REACHED.value for r in reachable) / len(reachable) if reachable else 0.0
        ),
        "max_detour_excess": max(detours) if detours else None,
        "invariant_violations": len(violations),
    }
    if args.out:
        out = Path(args.out)
        corpus = out / "failures"
        corpus.mkdir(parents=True, exist_ok=True)
        for r in results:
            if r.outcome != Outcome.REACHED.value or r.violations:
                cfg = random_scenario(r.seed, grid, args.obstacles, max_steps=args.max_steps)
                (corpus / f"{r.index:05d}_{r.outcome}.yaml").write_text(dump_scenario(cfg))
        (out / "summary.json").write_text(_dumps(summary) + "\n")
    print(_dumps(summary))
    for r, v in violations:
        print(f"violation in run {r.index} (seed {r.seed}): {v}", file=sys.stderr)
    return EXIT_INVARIANT if violations else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="firepath", description="Forest-fire actor path planning simulator")
    sub = p.add_subparsers(dest="command", required=True)

    def grid_args(sp, rows=20, cols=20):
        sp.add_argument("--rows", type=int, default=rows)
        sp.add_argument("--cols", type=int, default=cols)
        sp.add_argument("--sensing-range", type=float, default=1.0)

    s = sub.add_parser("simulate", help="run one scenario end to end")
    s.add_argument("--scenario", required=True)
    s.add_argument("--render", choices=["ascii", "svg", "none"], default="none")
    s.add_argument("--out", default=None, help="output directory (default: stdout)")
    s.add_argument("--max-steps", type=int, default=None)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("sweep", help="place the fire in every free cell")
    s.add_argument("--scenario", default=None, help="base scenario (grid, obstacles, actor start)")
    grid_args(s)
    s.add_argument("--out", default=None, help="CSV table path")
    s.add_argument("--max-steps", type=int, default=None)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("coverage", help="analytic vs Monte-Carlo coverage")
    grid_args(s)
    s.add_argument("--samples", type=int, default=1_000_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_coverage)

    s = sub.add_parser("fuzz", help="random obstacle scenarios checked against the oracle")
    grid_args(s)
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--obstacles", type=int, default=9, help="obstacles per scenario")
    s.add_argument("--max-steps", type=int, default=None)
    s.add_argument("--out", default=None, help="directory for summary and failure corpus")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"validation error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

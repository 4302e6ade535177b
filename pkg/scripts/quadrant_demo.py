"""Fires in every quadrant and on the axes through the actor, 9 obstacles, 20x20.

Writes one run record plus ASCII and SVG renders per fire into --out.

    python scripts/quadrant_demo.py --out runs/quadrants
"""

import argparse
from pathlib import Path

from firepath.grid import Cell, GridSpec
from firepath.render import render_ascii, render_svg
from firepath.scenario import ScenarioConfig, emit_run
from firepath.simulation import run_scenario

OBSTACLES = [(4, 16), (6, 10), (7, 7), (8, 12), (10, 5), (10, 15), (12, 8), (13, 13), (14, 10)]
FIRES = [(3, 3), (3, 17), (17, 3), (17, 17), (2, 10), (18, 10), (10, 2), (10, 19)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="runs/quadrants")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    grid = GridSpec(20, 20)
    for r, c in FIRES:
        cfg = ScenarioConfig(grid=grid, fire_cell=Cell(r, c), obstacles=tuple(sorted(Cell(*o) for o in OBSTACLES)))
        rec = run_scenario(cfg)
        stem = f"fire_{r:02d}_{c:02d}"
        (out / f"{stem}.json").write_bytes(emit_run(rec))
        (out / f"{stem}.txt").write_text(render_ascii(rec))
        (out / f"{stem}.svg").write_text(render_svg(rec))
        m = rec.metrics
        print(f"{stem}: {m['outcome']:<8} length={m['path_length']:>2} oracle={m['oracle_length']:>2} return={m['return_length']}")


if __name__ == "__main__":
    main()

"""Greedy planner success rate as obstacle density grows.

Runs a seeded fuzz campaign per obstacle count on a 20x20 grid and prints a
table of outcomes. Success is measured against all runs and against the runs
the BFS oracle says are reachable.

    python scripts/density_study.py --count 500 --counts 0 9 20 40 80
"""

import argparse
from collections import Counter

from firepath.grid import GridSpec
from firepath.simulation import fuzz


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--counts", type=int, nargs="+", default=[0, 9, 20, 40, 80, 120])
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    grid = GridSpec(20, 20)
    print(f"{'obstacles':>9} {'reached':>8} {'livelock':>8} {'boxed':>6} {'unreach':>8} {'succ':>6} {'succ|reach':>10} {'max_detour':>10}")
    for n in args.counts:
        res = fuzz(args.count, args.seed, grid, n, jobs=args.jobs)
        c = Counter(r.outcome for r in res)
        reachable = [r for r in res if r.oracle_reachable]
        ok_reach = sum(r.outcome == "Reached" for r in reachable)
        detours = [r.detour_excess for r in res if r.detour_excess is not None]
        assert not any(r.violations for r in res), "invariant violation"
        print(
            f"{n:>9} {c['Reached']:>8} {c['Livelock']:>8} {c['NoFreeNeighbor']:>6} "
            f"{len(res) - len(reachable):>8} {c['Reached'] / len(res):>6.3f} "
            f"{ok_reach / max(1, len(reachable)):>10.3f} {max(detours, default=0):>10}"
        )


if __name__ == "__main__":
    main()

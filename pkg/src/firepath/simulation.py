"""End-to-end runs: detect -> relay -> dedupe -> plan out -> plan back.

Also the batch drivers behind ``sweep`` and ``fuzz``.
"""

from __future__ import annotations

import dataclasses
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .coverage import SensorField
from .detection import broadcast, deliver
from .grid import Cell, GridSpec, chebyshev
from .oracle import bfs_shortest
from .planner import Outcome, dispatch_and_extinguish, plan_free
from .scenario import RunRecord, ScenarioConfig, random_scenario, validate_record

# process exit codes; argparse already uses 2 for usage errors
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VALIDATION = 3
EXIT_CODES = {
    Outcome.REACHED: EXIT_OK,
    Outcome.LIVELOCK: 4,
    Outcome.NO_FREE_NEIGHBOR: 5,
    Outcome.STEP_BUDGET_EXHAUSTED: 6,
}
EXIT_INVARIANT = 7


def overall_outcome(outbound, back) -> Outcome:
    if not outbound.reached:
        return outbound.outcome
    return back.outcome if back is not None else Outcome.REACHED


def run_scenario(config: ScenarioConfig) -> RunRecord:
    grid = config.grid
    field = SensorField(grid)
    fire = config.fire_event()
    messages = broadcast(fire, field, config.spread_speed)
    inbox, dispatches = deliver(messages)
    obstacles = config.obstacle_map()
    start = config.start

    if config.mode == "free":
        target = inbox.accepted.fire_cell
        outbound = plan_free(start, target, grid)
        back = plan_free(target, start, grid)
    else:
        outbound, back = dispatch_and_extinguish(inbox, grid, obstacles, config.step_budget, start)

    oracle = bfs_shortest(start, fire.cell, obstacles, grid)
    outcome = overall_outcome(outbound, back)
    detour = None
    if outbound.reached and oracle.reachable:
        detour = outbound.length - oracle.shortest_length
    metrics = {
        "outcome": str(outcome),
        "path_length": outbound.length,
        "return_length": back.length if back is not None else None,
        "chebyshev": chebyshev(start, fire.cell),
        "oracle_reachable": oracle.reachable,
        "oracle_length": oracle.shortest_length,
        "detour_excess": detour,
        "plans_dispatched": dispatches,
    }
    return RunRecord(config, messages, inbox, outbound, back, metrics)


def exit_code_for(record: RunRecord) -> int:
    return EXIT_CODES[Outcome(record.metrics["outcome"])]


@dataclass(frozen=True)
class SweepRow:
    goal: Cell
    outcome: str
    length: int
    oracle_reachable: bool
    oracle_length: Optional[int]
    detour_excess: Optional[int]
    violations: tuple[str, ...] = ()


def _sweep_one(config: ScenarioConfig) -> SweepRow:
    rec = run_scenario(config)
    m = rec.metrics
    return SweepRow(
        goal=config.target_cell,
        outcome=m["outcome"],
        length=m["path_length"],
        oracle_reachable=m["oracle_reachable"],
        oracle_length=m["oracle_length"],
        detour_excess=m["detour_excess"],
        violations=tuple(validate_record(rec.to_dict())),
    )


def _run_batch(fn, configs: list, jobs: int) -> list:
    if jobs <= 1 or len(configs) < 2:
        return [fn(c) for c in configs]
    # map() keeps input order, so output does not depend on scheduling
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, configs, chunksize=max(1, len(configs) // (4 * jobs))))


def sweep_configs(base: ScenarioConfig) -> list[ScenarioConfig]:
    """One scenario per free cell of ``base``, with the fire at that cell's center."""
    blocked = set(base.obstacles)
    return [
        dataclasses.replace(base, fire_cell=c, fire_point=None)
        for c in base.grid.cells()
        if c not in blocked
    ]


def sweep(base: ScenarioConfig, jobs: int = 1) -> list[SweepRow]:
    return _run_batch(_sweep_one, sweep_configs(base), jobs)


def summarize(rows: Iterable[SweepRow]) -> dict:
    rows = list(rows)
    reached = [r for r in rows if r.outcome == Outcome.REACHED.value]
    reachable = [r for r in rows if r.oracle_reachable]
    counts: dict[str, int] = {o.value: 0 for o in Outcome}
    for r in rows:
        counts[r.outcome] += 1
    detours = [r.detour_excess for r in reached if r.detour_excess is not None]
    return {
        "runs": len(rows),
        "outcomes": counts,
        "success_rate": len(reached) / len(rows) if rows else 0.0,
        "oracle_reachable": len(reachable),
        "success_rate_on_reachable": (
            sum(r.oracle_reachable for r in reached) / len(reachable) if reachable else 0.0
        ),
        "max_detour_excess": max(detours) if detours else None,
        "mean_detour_excess": sum(detours) / len(detours) if detours else None,
        "invariant_violations": sum(len(r.violations) for r in rows),
    }


@dataclass(frozen=True)
class FuzzResult:
    index: int
    seed: int
    outcome: str
    length: int
    oracle_reachable: bool
    oracle_length: Optional[int]
    detour_excess: Optional[int]
    accepted_messages: int
    plans_dispatched: int
    violations: tuple[str, ...]


def fuzz_seeds(count: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(count)]


def _fuzz_one(args) -> FuzzResult:
    index, s, grid, n_obstacles, max_steps = args
    cfg = random_scenario(s, grid, n_obstacles, max_steps=max_steps)
    rec = run_scenario(cfg)
    m = rec.metrics
    violations = list(validate_record(rec.to_dict()))
    accepted = 1 if rec.inbox.accepted is not None else 0
    if accepted != 1:
        violations.append(f"expected exactly one accepted report, got {accepted}")
    if m["outcome"] == Outcome.REACHED.value and m["path_length"] < m["chebyshev"]:
        violations.append("Reached trace shorter than the Chebyshev bound")
    return FuzzResult(
        index=index,
        seed=s,
        outcome=m["outcome"],
        length=m["path_length"],
        oracle_reachable=m["oracle_reachable"],
        oracle_length=m["oracle_length"],
        detour_excess=m["detour_excess"],
        accepted_messages=accepted,
        plans_dispatched=m["plans_dispatched"],
        violations=tuple(violations),
    )


def fuzz(
    count: int,
    seed: int,
    grid: GridSpec,
    n_obstacles: int,
    max_steps: int | None = None,
    jobs: int = 1,
) -> list[FuzzResult]:
    if count < 1:
        raise ValueError("count must be >= 1")
    tasks = [(i, s, grid, n_obstacles, max_steps) for i, s in enumerate(fuzz_seeds(count, seed))]
    return _run_batch(_fuzz_one, tasks, jobs)

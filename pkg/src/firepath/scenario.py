"""Scenario files, run records, and seeded scenario generation.

Scenario files are YAML documents (JSON is accepted too, being a subset)::

    grid:
      rows: 20
      cols: 20
      sensing_range: 1.0        # optional, default 1.0
    obstacles: [[4, 4], [6, 12]] # optional, default []
    fire:
      cell: [3, 7]              # exactly one of `cell` or `point: [x, y]`
      time: 0.0                 # optional, default 0.0
    actor_start: [10, 10]       # optional, default: grid center
    planner:                    # optional
      mode: obstacles           # "free" | "obstacles", default "obstacles"
      max_steps: 1600           # optional, default 4 * rows * cols
    spread_speed: 1.0           # optional, cell sides per time unit
    seed: 0                     # optional, unsigned 64-bit

Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Any, Optional

import yaml

from .coverage import FireEvent, Point, cell_of_point
from .grid import Cell, GridSpec, ObstacleMap, center_cell, chebyshev
from .oracle import bfs_shortest
from .planner import default_max_steps

MODES = ("free", "obstacles")
FLOAT_DIGITS = 9


class ValidationError(ValueError):
    """Invalid scenario content. ``path`` names the offending field."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


@dataclass(frozen=True)
class ScenarioConfig:
    grid: GridSpec
    fire_cell: Optional[Cell] = None
    fire_point: Optional[Point] = None
    fire_time: float = 0.0
    obstacles: tuple[Cell, ...] = ()
    actor_start: Optional[Cell] = None
    mode: str = "obstacles"
    max_steps: Optional[int] = None
    spread_speed: float = 1.0
    seed: int = 0

    @property
    def start(self) -> Cell:
        return self.actor_start if self.actor_start is not None else center_cell(self.grid)

    @property
    def step_budget(self) -> int:
        return self.max_steps if self.max_steps is not None else default_max_steps(self.grid)

    @property
    def target_cell(self) -> Cell:
        if self.fire_cell is not None:
            return self.fire_cell
        return cell_of_point(self.fire_point, self.grid)

    def obstacle_map(self) -> ObstacleMap:
        return ObstacleMap(self.grid, self.obstacles)

    def fire_event(self) -> FireEvent:
        if self.fire_point is not None:
            return FireEvent.at_point(self.fire_point, self.grid, self.fire_time)
        return FireEvent.at_cell(self.fire_cell, self.grid, self.fire_time)

    def to_dict(self) -> dict:
        fire: dict[str, Any] = {"time": self.fire_time}
        if self.fire_point is not None:
            fire["point"] = list(self.fire_point)
        else:
            fire["cell"] = list(self.fire_cell)
        planner: dict[str, Any] = {"mode": self.mode}
        if self.max_steps is not None:
            planner["max_steps"] = self.max_steps
        out = {
            "grid": {
                "rows": self.grid.rows,
                "cols": self.grid.cols,
                "sensing_range": self.grid.sensing_range,
            },
            "obstacles": [list(c) for c in self.obstacles],
            "fire": fire,
            "planner": planner,
            "spread_speed": self.spread_speed,
            "seed": self.seed,
        }
        if self.actor_start is not None:
            out["actor_start"] = list(self.actor_start)
        return out


# -- parsing -----------------------------------------------------------------


def _check_keys(d: Any, path: str, required: set[str], optional: set[str]) -> dict:
    if not isinstance(d, dict):
        raise ValidationError(path or "<root>", "expected a mapping")
    for k in d:
        if k not in required | optional:
            raise ValidationError(f"{path}.{k}" if path else str(k), "unknown key")
    for k in sorted(required):
        if k not in d:
            raise ValidationError(f"{path}.{k}" if path else k, "missing required key")
    return d


def _int(v: Any, path: str, lo: int | None = None, hi: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValidationError(path, f"expected an integer, got {v!r}")
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        raise ValidationError(path, f"value {v} out of range")
    return v


def _float(v: Any, path: str, positive: bool = False, nonneg: bool = False) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(path, f"expected a number, got {v!r}")
    if not math.isfinite(v):
        raise ValidationError(path, "must be finite")
    v = round(float(v), FLOAT_DIGITS)
    if positive and v <= 0:
        raise ValidationError(path, "must be positive")
    if nonneg and v < 0:
        raise ValidationError(path, "must be non-negative")
    return v


def _cell(v: Any, path: str, grid: GridSpec) -> Cell:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ValidationError(path, f"expected [row, col], got {v!r}")
    cell = Cell(_int(v[0], f"{path}[0]"), _int(v[1], f"{path}[1]"))
    if not grid.contains(cell):
        raise ValidationError(path, f"out-of-bounds: {cell} not in 1..{grid.rows} x 1..{grid.cols}")
    return cell


def config_from_dict(d: Any) -> ScenarioConfig:
    d = _check_keys(
        d, "", {"grid", "fire"}, {"obstacles", "actor_start", "planner", "spread_speed", "seed"}
    )
    g = _check_keys(d["grid"], "grid", {"rows", "cols"}, {"sensing_range"})
    grid = GridSpec(
        _int(g["rows"], "grid.rows", lo=1),
        _int(g["cols"], "grid.cols", lo=1),
        _float(g.get("sensing_range", 1.0), "grid.sensing_range", positive=True),
    )

    raw_obs = d.get("obstacles", [])
    if raw_obs is None:
        raw_obs = []
    if not isinstance(raw_obs, list):
        raise ValidationError("obstacles", "expected a list of [row, col]")
    obstacles = tuple(sorted({_cell(c, f"obstacles[{i}]", grid) for i, c in enumerate(raw_obs)}))
    blocked = set(obstacles)

    f = _check_keys(d["fire"], "fire", set(), {"cell", "point", "time"})
    if ("cell" in f) == ("point" in f):
        raise ValidationError("fire", "give exactly one of `cell` or `point`")
    fire_cell = fire_point = None
    if "cell" in f:
        fire_cell = _cell(f["cell"], "fire.cell", grid)
        target = fire_cell
    else:
        p = f["point"]
        if not isinstance(p, (list, tuple)) or len(p) != 2:
            raise ValidationError("fire.point", f"expected [x, y], got {p!r}")
        fire_point = Point(_float(p[0], "fire.point[0]"), _float(p[1], "fire.point[1]"))
        try:
            target = cell_of_point(fire_point, grid)
        except ValueError as e:
            raise ValidationError("fire.point", f"out-of-bounds: {e}") from None
    fire_path = "fire.cell" if fire_cell is not None else "fire.point"
    if target in blocked:
        raise ValidationError(fire_path, f"fire-on-obstacle: {target}")
    fire_time = _float(f.get("time", 0.0), "fire.time", nonneg=True)

    actor_start = None
    if d.get("actor_start") is not None:
        actor_start = _cell(d["actor_start"], "actor_start", grid)
    start = actor_start if actor_start is not None else center_cell(grid)
    if start in blocked:
        raise ValidationError("actor_start", f"actor-on-obstacle: {start}")

    p = _check_keys(d.get("planner", {}) or {}, "planner", set(), {"mode", "max_steps"})
    mode = p.get("mode", "obstacles")
    if mode not in MODES:
        raise ValidationError("planner.mode", f"bad mode {mode!r}, expected one of {MODES}")
    if mode == "free" and obstacles:
        raise ValidationError("planner.mode", "mode 'free' requires an empty obstacle list")
    max_steps = p.get("max_steps")
    if max_steps is not None:
        max_steps = _int(max_steps, "planner.max_steps", lo=1)

    return ScenarioConfig(
        grid=grid,
        fire_cell=fire_cell,
        fire_point=fire_point,
        fire_time=fire_time,
        obstacles=obstacles,
        actor_start=actor_start,
        mode=mode,
        max_steps=max_steps,
        spread_speed=_float(d.get("spread_speed", 1.0), "spread_speed", positive=True),
        seed=_int(d.get("seed", 0), "seed", lo=0, hi=2**64 - 1),
    )


def parse_scenario(text: bytes | str) -> ScenarioConfig:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ValidationError("<root>", f"malformed syntax: not UTF-8 ({e})") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ValidationError("<root>", f"malformed syntax: {e}") from None
    return config_from_dict(data)


def _yfloat(v: float) -> str:
    # PyYAML reads "1e-05" as a string; let it format its own floats
    return yaml.safe_dump(float(v)).splitlines()[0]


def dump_scenario(config: ScenarioConfig) -> str:
    """YAML text that parses back to ``config``."""
    d = config.to_dict()
    lines = [
        "grid:",
        f"  rows: {d['grid']['rows']}",
        f"  cols: {d['grid']['cols']}",
        f"  sensing_range: {_yfloat(d['grid']['sensing_range'])}",
        f"obstacles: {json.dumps(d['obstacles'])}",
        "fire:",
    ]
    fire = d["fire"]
    if "cell" in fire:
        lines.append(f"  cell: {json.dumps(fire['cell'])}")
    else:
        lines.append(f"  point: [{_yfloat(fire['point'][0])}, {_yfloat(fire['point'][1])}]")
    lines.append(f"  time: {_yfloat(fire['time'])}")
    if "actor_start" in d:
        lines.append(f"actor_start: {json.dumps(d['actor_start'])}")
    lines += ["planner:", f"  mode: {d['planner']['mode']}"]
    if "max_steps" in d["planner"]:
        lines.append(f"  max_steps: {d['planner']['max_steps']}")
    lines += [f"spread_speed: {_yfloat(d['spread_speed'])}", f"seed: {d['seed']}"]
    return "\n".join(lines) + "\n"


# -- generation --------------------------------------------------------------


def random_scenario(
    seed: int,
    grid: GridSpec,
    n_obstacles: int,
    actor_start: Cell | None = None,
    mode: str = "obstacles",
    max_steps: int | None = None,
) -> ScenarioConfig:
    """Uniform fire point plus ``n_obstacles`` distinct obstacle cells, all drawn from ``seed``.

    Obstacles never land on the actor's cell or the fire cell.
    """
    rng = random.Random(seed)
    point = Point(round(rng.uniform(0.0, grid.height), 6), round(rng.uniform(0.0, grid.width), 6))
    fire_cell = cell_of_point(point, grid)
    start = Cell(*actor_start) if actor_start is not None else center_cell(grid)
    candidates = [c for c in grid.cells() if c != start and c != fire_cell]
    if n_obstacles > len(candidates):
        raise ValueError(f"cannot place {n_obstacles} obstacles in {len(candidates)} free cells")
    if n_obstacles and mode == "free":
        raise ValueError("mode 'free' cannot carry obstacles")
    obstacles = tuple(sorted(rng.sample(candidates, n_obstacles)))
    return ScenarioConfig(
        grid=grid,
        fire_point=point,
        obstacles=obstacles,
        actor_start=actor_start,
        mode=mode,
        max_steps=max_steps,
        seed=seed,
    )


# -- run records -------------------------------------------------------------


@dataclass
class RunRecord:
    scenario: ScenarioConfig
    messages: list = field(default_factory=list)
    inbox: Any = None
    outbound: Any = None
    return_trace: Any = None
    metrics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        inbox = self.inbox
        return {
            "scenario": self.scenario.to_dict(),
            "messages": [_message_dict(m) for m in self.messages],
            "inbox": {
                "accepted": _message_dict(inbox.accepted) if inbox and inbox.accepted else None,
                "discarded_count": inbox.discarded_count if inbox else 0,
            },
            "outbound": _trace_dict(self.outbound),
            "return": _trace_dict(self.return_trace),
            "metrics": dict(self.metrics),
        }


def _message_dict(m) -> dict:
    return {
        "fire_cell": list(m.fire_cell),
        "origin_sensor": list(m.origin_sensor),
        "relay_corner": list(m.relay_corner),
        "arrival_time": m.arrival_time,
    }


def _trace_dict(t) -> dict | None:
    if t is None:
        return None
    return {
        "start": list(t.start),
        "goal": list(t.goal),
        "outcome": str(t.outcome),
        "length": t.length,
        "moves": [[int(d), c[0], c[1]] for d, c in t.moves],
        "repeated_cell": list(t.repeated_cell) if t.repeated_cell is not None else None,
    }


def _canon(obj):
    if isinstance(obj, float):
        return round(obj, FLOAT_DIGITS) + 0.0  # folds -0.0
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    return obj


def _encode(obj, indent: int = 0) -> str:
    """JSON with sorted keys; lists of scalars stay on one line."""
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(obj[k], indent + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return json.dumps(obj)
        if all(isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v) for v in obj):
            return "[\n" + ",\n".join(pad + json.dumps(v) for v in obj) + "\n" + "  " * indent + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent + 1) for v in obj) + "\n" + "  " * indent + "]"
    return json.dumps(obj)


def emit_run(record: RunRecord | dict) -> bytes:
    """Canonical bytes for a run: identical runs give identical output."""
    d = record.to_dict() if isinstance(record, RunRecord) else record
    return (_encode(_canon(d)) + "\n").encode("utf-8")


def load_run(data: bytes | str) -> dict:
    return json.loads(data)


# -- independent replay check ------------------------------------------------

_MOVE_OFFSETS = {1: (-1, 1), 2: (-1, 0), 3: (-1, -1), 4: (0, -1), 5: (1, -1), 6: (1, 0), 7: (1, 1), 8: (0, 1)}


def _replay_trace(name: str, t: dict, grid: GridSpec, blocked: set, problems: list[str]) -> None:
    cur = tuple(t["start"])
    seen = {cur}
    for i, (code, r, c) in enumerate(t["moves"]):
        dr, dc = _MOVE_OFFSETS.get(code, (None, None))
        if dr is None or (cur[0] + dr, cur[1] + dc) != (r, c):
            problems.append(f"{name}.moves[{i}]: move {code} from {cur} does not land on {(r, c)}")
        if not (1 <= r <= grid.rows and 1 <= c <= grid.cols):
            problems.append(f"{name}.moves[{i}]: {(r, c)} out of bounds")
        if (r, c) in blocked:
            problems.append(f"{name}.moves[{i}]: collision with obstacle at {(r, c)}")
        cur = (r, c)
        if cur in seen and t["outcome"] != "Livelock":
            problems.append(f"{name}.moves[{i}]: revisits {cur} without a Livelock outcome")
        seen.add(cur)
    if t["length"] != len(t["moves"]):
        problems.append(f"{name}.length: {t['length']} != {len(t['moves'])} moves")
    if t["outcome"] == "Reached" and list(cur) != list(t["goal"]):
        problems.append(f"{name}: Reached but ends at {cur}, goal {tuple(t['goal'])}")


def validate_record(record: dict) -> list[str]:
    """Re-check a serialized run from scratch; returns a list of problems (empty when sound).

    Replays every move against the obstacle map and recomputes the metrics,
    using only the serialized data.
    """
    problems: list[str] = []
    cfg = config_from_dict(record["scenario"])
    grid = cfg.grid
    blocked = set(cfg.obstacles)
    target = cfg.target_cell

    accepted = record["inbox"]["accepted"]
    n_msgs = len(record["messages"])
    if accepted is None:
        problems.append("inbox: no accepted message")
    else:
        if tuple(accepted["fire_cell"]) != target:
            problems.append(f"inbox: accepted fire cell {accepted['fire_cell']} != ignition cell {target}")
        first = min(record["messages"], key=lambda m: (m["arrival_time"], m["relay_corner"]))
        if first != accepted:
            problems.append("inbox: accepted message is not the earliest")
    if record["inbox"]["discarded_count"] != max(n_msgs - 1, 0):
        problems.append("inbox: discarded_count inconsistent with message count")

    out = record["outbound"]
    if out is None:
        problems.append("outbound: missing trace")
        return problems
    _replay_trace("outbound", out, grid, blocked, problems)
    if tuple(out["start"]) != cfg.start or tuple(out["goal"]) != target:
        problems.append("outbound: endpoints do not match the scenario")
    back = record["return"]
    if out["outcome"] == "Reached":
        if back is None:
            problems.append("return: missing after a Reached outbound trip")
        else:
            _replay_trace("return", back, grid, blocked, problems)
    elif back is not None:
        problems.append("return: present although the outbound trip failed")

    m = record["metrics"]
    oracle = bfs_shortest(cfg.start, target, cfg.obstacle_map(), grid)
    expect = {
        "path_length": out["length"],
        "oracle_reachable": oracle.reachable,
        "oracle_length": oracle.shortest_length,
        "chebyshev": chebyshev(cfg.start, target),
    }
    for k, v in expect.items():
        if m.get(k) != v:
            problems.append(f"metrics.{k}: recorded {m.get(k)!r}, recomputed {v!r}")
    if out["outcome"] == "Reached" and oracle.reachable:
        if m.get("detour_excess") != out["length"] - oracle.shortest_length:
            problems.append("metrics.detour_excess inconsistent")
        if out["length"] < oracle.shortest_length:
            problems.append("outbound: shorter than the oracle's shortest path")
    if out["outcome"] == "Reached" and not oracle.reachable:
        problems.append("outbound: Reached a goal the oracle says is unreachable")
    return problems

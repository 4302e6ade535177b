import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from firepath.grid import Cell, GridSpec
from firepath.scenario import (
    ScenarioConfig,
    ValidationError,
    config_from_dict,
    dump_scenario,
    emit_run,
    load_run,
    parse_scenario,
    random_scenario,
    validate_record,
)
from firepath.simulation import run_scenario

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = sorted((ROOT / "scenarios").glob("*.yaml"))
GOLDEN = ROOT / "tests" / "golden"

NINE = "[[4, 16], [6, 10], [7, 7], [8, 12], [10, 5], [10, 15], [12, 8], [13, 13], [14, 10]]"


def base_text(obstacles=NINE, fire="cell: [3, 7]", extra=""):
    return f"""
grid:
  rows: 20
  cols: 20
obstacles: {obstacles}
fire:
  {fire}
{extra}
"""


def test_parse_minimal_with_nine_obstacles():
    cfg = parse_scenario(base_text().encode())
    assert cfg.grid == GridSpec(20, 20, 1.0)
    assert len(cfg.obstacles) == 9
    assert cfg.fire_cell == (3, 7)
    assert cfg.start == (10, 10)
    assert cfg.mode == "obstacles" and cfg.step_budget == 1600


def test_obstacles_are_deduplicated_and_sorted():
    cfg = parse_scenario(base_text(obstacles="[[5, 5], [2, 2], [5, 5]]"))
    assert cfg.obstacles == (Cell(2, 2), Cell(5, 5))


@pytest.mark.parametrize(
    "text, path, reason",
    [
        (base_text(obstacles="[[3, 7]]"), "fire.cell", "fire-on-obstacle"),
        (base_text(obstacles="[[0, 5]]"), "obstacles[0]", "out-of-bounds"),
        (base_text(obstacles="[[10, 10]]"), "actor_start", "actor-on-obstacle"),
        (base_text(fire="point: [5.0, 13.5]", obstacles="[[3, 7]]"), "fire.point", "fire-on-obstacle"),
        (base_text(fire="point: [50.0, 1.0]"), "fire.point", "out-of-bounds"),
        (base_text(extra="planner: {mode: teleport}"), "planner.mode", "bad mode"),
        (base_text(extra="planner: {mode: free}"), "planner.mode", "empty obstacle list"),
        (base_text(extra="planner: {max_steps: 0}"), "planner.max_steps", "out of range"),
        (base_text(extra="colour: red"), "colour", "unknown key"),
        (base_text(extra="seed: -1"), "seed", "out of range"),
        (base_text(extra="actor_start: [21, 1]"), "actor_start", "out-of-bounds"),
        ("grid: {rows: 20, cols: 20}\nfire: {}\n", "fire", "exactly one"),
        ("grid: {rows: 20}\nfire: {cell: [1, 1]}\n", "grid.cols", "missing"),
        ("grid: [1, 2\n", "<root>", "malformed syntax"),
        ("- just\n- a list\n", "<root>", "expected a mapping"),
        (b"\xff\xfe", "<root>", "malformed syntax"),
        ("grid: {rows: true, cols: 20}\nfire: {cell: [1, 1]}\n", "grid.rows", "integer"),
    ],
)
def test_validation_errors(text, path, reason):
    with pytest.raises(ValidationError) as ei:
        parse_scenario(text)
    assert ei.value.path == path
    assert reason in ei.value.reason


def test_fire_point_resolves_cell():
    cfg = parse_scenario(base_text(fire="point: [5.0, 13.5]"))
    assert cfg.fire_point == (5.0, 13.5) and cfg.target_cell == (3, 7)


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.stem)
def test_dump_parse_roundtrip_on_examples(path):
    cfg = parse_scenario(path.read_bytes())
    assert parse_scenario(dump_scenario(cfg)) == cfg


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.stem)
def test_run_json_config_roundtrip(path):
    cfg = parse_scenario(path.read_bytes())
    rec = load_run(emit_run(run_scenario(cfg)))
    assert config_from_dict(rec["scenario"]) == cfg
    # the run record's scenario section is itself a valid scenario file (JSON is YAML)
    assert parse_scenario(json.dumps(rec["scenario"])) == cfg


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.stem)
def test_golden_run_records(path):
    rec = run_scenario(parse_scenario(path.read_bytes()))
    assert emit_run(rec) == (GOLDEN / f"{path.stem}.run.json").read_bytes()


def test_emit_is_deterministic():
    cfg = parse_scenario((ROOT / "scenarios" / "obstacles_20x20.yaml").read_bytes())
    assert emit_run(run_scenario(cfg)) == emit_run(run_scenario(cfg))


def test_fire_at_actor_has_empty_path():
    rec = load_run(emit_run(run_scenario(parse_scenario(base_text(obstacles="[]", fire="cell: [10, 10]")))))
    assert rec["metrics"]["path_length"] == 0 and rec["outbound"]["moves"] == []
    assert validate_record(rec) == []


def test_detour_excess_zero_on_empty_map():
    rec = run_scenario(parse_scenario(base_text(obstacles="[]", fire="cell: [17, 2]")))
    assert rec.metrics["detour_excess"] == 0
    assert rec.metrics["oracle_length"] == rec.metrics["path_length"] == 8


def test_validate_record_catches_tampering():
    cfg = parse_scenario((ROOT / "scenarios" / "obstacles_20x20.yaml").read_bytes())
    good = load_run(emit_run(run_scenario(cfg)))
    assert validate_record(good) == []

    collide = json.loads(json.dumps(good))
    collide["scenario"]["obstacles"].append(collide["outbound"]["moves"][2][1:])
    assert any("collision" in p for p in validate_record(collide))

    jump = json.loads(json.dumps(good))
    jump["outbound"]["moves"][1] = [8, 1, 1]
    assert any("does not land" in p for p in validate_record(jump))

    metrics = json.loads(json.dumps(good))
    metrics["metrics"]["oracle_length"] = 3
    assert any("oracle_length" in p for p in validate_record(metrics))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**64 - 1), st.integers(0, 30))
def test_random_scenarios_roundtrip_and_validate(seed, n_obs):
    cfg = random_scenario(seed, GridSpec(20, 20), n_obs)
    assert len(cfg.obstacles) == n_obs
    assert cfg.target_cell not in cfg.obstacles and cfg.start not in cfg.obstacles
    assert parse_scenario(dump_scenario(cfg)) == cfg
    rec = load_run(emit_run(run_scenario(cfg)))
    assert config_from_dict(rec["scenario"]) == cfg
    assert validate_record(rec) == []


def test_random_scenario_reproducible():
    g = GridSpec(20, 20)
    assert random_scenario(42, g, 9) == random_scenario(42, g, 9)
    assert random_scenario(42, g, 9) != random_scenario(43, g, 9)


def test_random_scenario_too_many_obstacles():
    with pytest.raises(ValueError):
        random_scenario(0, GridSpec(2, 2), 4)


def test_dump_handles_tiny_floats():
    cfg = ScenarioConfig(grid=GridSpec(3, 3, sensing_range=1e-5), fire_cell=Cell(1, 1), spread_speed=2e-7)
    assert parse_scenario(dump_scenario(cfg)) == cfg


def test_range_below_precision_rejected():
    with pytest.raises(ValidationError) as ei:
        parse_scenario("grid: {rows: 2, cols: 2, sensing_range: 1.0e-12}\nfire: {cell: [1, 1]}\n")
    assert ei.value.path == "grid.sensing_range"

"""Forest-fire detection and actor path planning on a matrix-coordinate grid."""

from .coverage import FireEvent, SensorField, coverage_fraction, first_detector, uncovered_area_per_cell
from .detection import ActorInbox, ConflictingReports, DetectionMessage, broadcast, dedupe_first
from .grid import Cell, Direction, GridSpec, ObstacleMap, center_cell, chebyshev, neighbor
from .oracle import OracleResult, bfs_shortest
from .planner import (
    Outcome,
    PathTrace,
    direction_code,
    dispatch_and_extinguish,
    freespace_search,
    plan_free,
    plan_obstacles,
)
from .scenario import RunRecord, ScenarioConfig, ValidationError, emit_run, parse_scenario
from .simulation import run_scenario

__all__ = [
    "ActorInbox",
    "Cell",
    "ConflictingReports",
    "DetectionMessage",
    "Direction",
    "FireEvent",
    "GridSpec",
    "ObstacleMap",
    "OracleResult",
    "Outcome",
    "PathTrace",
    "RunRecord",
    "ScenarioConfig",
    "SensorField",
    "ValidationError",
    "bfs_shortest",
    "broadcast",
    "center_cell",
    "chebyshev",
    "coverage_fraction",
    "dedupe_first",
    "direction_code",
    "dispatch_and_extinguish",
    "emit_run",
    "first_detector",
    "freespace_search",
    "neighbor",
    "parse_scenario",
    "plan_free",
    "plan_obstacles",
    "run_scenario",
    "uncovered_area_per_cell",
]

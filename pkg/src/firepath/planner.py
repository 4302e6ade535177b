"""Incremental actor path planning on the 8-connected grid.

Both planners are greedy and memoryless: each step heads in the direction
given by the signs of ``current - goal``. With obstacles, a blocked step is
replaced by the first free neighbor found scanning anticlockwise from the
intended direction.

Because the next move is a pure function of ``(current, goal, obstacles)``,
the first revisit of any cell proves the walk would cycle forever. That is
reported as ``Outcome.LIVELOCK`` as soon as it happens.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .detection import ActorInbox
from .grid import Cell, Direction, GridSpec, ObstacleMap, center_cell, neighbor


class Outcome(str, enum.Enum):
    REACHED = "Reached"
    NO_FREE_NEIGHBOR = "NoFreeNeighbor"
    LIVELOCK = "Livelock"
    STEP_BUDGET_EXHAUSTED = "StepBudgetExhausted"

    def __str__(self) -> str:
        return self.value


_SIGN_TO_DIRECTION = {
    (1, -1): Direction.UP_RIGHT,
    (1, 0): Direction.UP,
    (1, 1): Direction.UP_LEFT,
    (0, 1): Direction.LEFT,
    (-1, 1): Direction.DOWN_LEFT,
    (-1, 0): Direction.DOWN,
    (-1, -1): Direction.DOWN_RIGHT,
    (0, -1): Direction.RIGHT,
}


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class PathTrace:
    start: Cell
    goal: Cell
    moves: tuple[tuple[Direction, Cell], ...] = ()
    outcome: Outcome = Outcome.REACHED
    # set on LIVELOCK: the cell whose revisit ended the walk (also the last cell)
    repeated_cell: Optional[Cell] = None

    @property
    def cells(self) -> list[Cell]:
        """Visited cells including the start."""
        return [self.start] + [c for _, c in self.moves]

    @property
    def length(self) -> int:
        return len(self.moves)

    @property
    def end(self) -> Cell:
        return self.moves[-1][1] if self.moves else self.start

    @property
    def reached(self) -> bool:
        return self.outcome is Outcome.REACHED


@dataclass
class PlanState:
    current: Cell
    goal: Cell
    steps_taken: int = 0
    moves: list[tuple[Direction, Cell]] = field(default_factory=list)

    def step(self, d: Direction, cell: Cell) -> None:
        self.moves.append((d, cell))
        self.current = cell
        self.steps_taken += 1

    def trace(self, start: Cell, outcome: Outcome, repeated: Cell | None = None) -> PathTrace:
        return PathTrace(start, self.goal, tuple(self.moves), outcome, repeated)


def direction_code(current: Cell, goal: Cell) -> Direction | None:
    """Direction toward ``goal``, or None when already there."""
    signs = (_sign(current[0] - goal[0]), _sign(current[1] - goal[1]))
    return _SIGN_TO_DIRECTION.get(signs)


def plan_free(start: Cell, goal: Cell, grid: GridSpec) -> PathTrace:
    """Greedy walk on an obstacle-free grid; always reaches the goal in Chebyshev-many moves."""
    start, goal = Cell(*start), Cell(*goal)
    for c in (start, goal):
        if not grid.contains(c):
            raise ValueError(f"{c} is outside the {grid.rows}x{grid.cols} grid")
    state = PlanState(start, goal)
    while (d := direction_code(state.current, goal)) is not None:
        state.step(d, neighbor(state.current, d, grid))
    return state.trace(start, Outcome.REACHED)


def freespace_search(
    current: Cell, intended: Direction, obstacles: ObstacleMap, grid: GridSpec
) -> tuple[Cell, Direction] | None:
    """First free neighbor scanning anticlockwise after ``intended``.

    Tries ``intended + 1`` through ``intended + 7`` (codes wrap 8 -> 1).
    Returns None when the actor is boxed in.
    """
    intended = Direction(intended)
    for k in range(1, 8):
        d = intended.rotate(k)
        nxt = neighbor(current, d, grid)
        if not obstacles.is_blocked(nxt):
            return nxt, d
    return None


def default_max_steps(grid: GridSpec) -> int:
    return 4 * grid.n_cells


def plan_obstacles(
    start: Cell,
    goal: Cell,
    obstacles: ObstacleMap,
    grid: GridSpec,
    max_steps: int | None = None,
) -> PathTrace:
    """Greedy walk with anticlockwise detours around blocked cells.

    Runs until both coordinates match the goal. Stops early with
    ``NO_FREE_NEIGHBOR`` when every neighbor is blocked, ``LIVELOCK`` on the
    first revisited cell, or ``STEP_BUDGET_EXHAUSTED`` after ``max_steps``.
    """
    start, goal = Cell(*start), Cell(*goal)
    for name, c in (("start", start), ("goal", goal)):
        if not grid.contains(c):
            raise ValueError(f"{name} {c} is outside the {grid.rows}x{grid.cols} grid")
        if obstacles.is_obstacle(c):
            raise ValueError(f"{name} {c} is an obstacle")
    if max_steps is None:
        max_steps = default_max_steps(grid)
    if max_steps < 1:
        raise ValueError("max_steps must be positive")

    state = PlanState(start, goal)
    visited = {start}
    while (d := direction_code(state.current, goal)) is not None:
        if state.steps_taken >= max_steps:
            return state.trace(start, Outcome.STEP_BUDGET_EXHAUSTED)
        nxt = neighbor(state.current, d, grid)
        if obstacles.is_blocked(nxt):
            found = freespace_search(state.current, d, obstacles, grid)
            if found is None:
                return state.trace(start, Outcome.NO_FREE_NEIGHBOR)
            nxt, d = found
        state.step(d, nxt)
        if nxt in visited:
            return state.trace(start, Outcome.LIVELOCK, nxt)
        visited.add(nxt)
    return state.trace(start, Outcome.REACHED)


def dispatch_and_extinguish(
    inbox: ActorInbox,
    grid: GridSpec,
    obstacles: ObstacleMap,
    max_steps: int | None = None,
    start: Cell | None = None,
) -> tuple[PathTrace, PathTrace | None]:
    """Send the actor from its base to the reported fire and back.

    Extinguishing takes no time. The return trip is planned only when the
    outbound trip reached the fire.
    """
    if inbox.accepted is None:
        raise ValueError("inbox holds no accepted fire report")
    base = Cell(*start) if start is not None else center_cell(grid)
    fire = inbox.accepted.fire_cell
    outbound = plan_obstacles(base, fire, obstacles, grid, max_steps)
    if not outbound.reached:
        return outbound, None
    return outbound, plan_obstacles(fire, base, obstacles, grid, max_steps)

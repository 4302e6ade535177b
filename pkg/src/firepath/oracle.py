"""Breadth-first shortest paths on the 8-connected obstacle grid.

Every move costs 1, and diagonal moves between two diagonally touching
obstacles are allowed, matching what the planner may do.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .grid import OFFSETS, Cell, GridSpec, ObstacleMap


@dataclass(frozen=True)
class OracleResult:
    reachable: bool
    shortest_length: Optional[int] = None


def bfs_distances(source: Cell, obstacles: ObstacleMap, grid: GridSpec) -> dict[Cell, int]:
    """Move count from ``source`` to every reachable free cell."""
    source = Cell(*source)
    dist = {source: 0}
    queue = deque([source])
    steps = tuple(OFFSETS.values())
    while queue:
        cur = queue.popleft()
        d = dist[cur] + 1
        for dr, dc in steps:
            nxt = Cell(cur[0] + dr, cur[1] + dc)
            if nxt not in dist and not obstacles.is_blocked(nxt):
                dist[nxt] = d
                queue.append(nxt)
    return dist


def bfs_shortest(start: Cell, goal: Cell, obstacles: ObstacleMap, grid: GridSpec) -> OracleResult:
    start, goal = Cell(*start), Cell(*goal)
    for name, c in (("start", start), ("goal", goal)):
        if not grid.contains(c):
            raise ValueError(f"{name} {c} is outside the grid")
        if obstacles.is_obstacle(c):
            raise ValueError(f"{name} {c} is an obstacle")
    if start == goal:
        return OracleResult(True, 0)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for dr, dc in OFFSETS.values():
            nxt = Cell(cur[0] + dr, cur[1] + dc)
            if nxt in dist or obstacles.is_blocked(nxt):
                continue
            if nxt == goal:
                return OracleResult(True, dist[cur] + 1)
            dist[nxt] = dist[cur] + 1
            queue.append(nxt)
    return OracleResult(False, None)

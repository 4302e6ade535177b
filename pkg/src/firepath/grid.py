"""Matrix-coordinate grid geometry.

Cells are addressed ``(row, col)``, 1-indexed, rows growing downward. The
eight move directions are numbered 1..8 anticlockwise on screen, starting
from up-right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, NamedTuple

import numpy as np


class Cell(NamedTuple):
    row: int
    col: int

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


class Direction(IntEnum):
    UP_RIGHT = 1
    UP = 2
    UP_LEFT = 3
    LEFT = 4
    DOWN_LEFT = 5
    DOWN = 6
    DOWN_RIGHT = 7
    RIGHT = 8

    @property
    def offset(self) -> tuple[int, int]:
        return OFFSETS[self]

    def rotate(self, steps: int = 1) -> "Direction":
        """Rotate anticlockwise by ``steps`` eighths of a turn (negative = clockwise)."""
        return Direction((self.value - 1 + steps) % 8 + 1)

    @property
    def opposite(self) -> "Direction":
        return self.rotate(4)


OFFSETS: dict[Direction, tuple[int, int]] = {
    Direction.UP_RIGHT: (-1, 1),
    Direction.UP: (-1, 0),
    Direction.UP_LEFT: (-1, -1),
    Direction.LEFT: (0, -1),
    Direction.DOWN_LEFT: (1, -1),
    Direction.DOWN: (1, 0),
    Direction.DOWN_RIGHT: (1, 1),
    Direction.RIGHT: (0, 1),
}


@dataclass(frozen=True)
class GridSpec:
    """An ``rows x cols`` field of square cells, one sensor per cell.

    The cell side is tied to the sensing range: ``cell_side == 2 * sensing_range``.
    """

    rows: int
    cols: int
    sensing_range: float = 1.0

    def __post_init__(self):
        if not isinstance(self.rows, int) or self.rows < 1:
            raise ValueError(f"rows must be a positive integer, got {self.rows!r}")
        if not isinstance(self.cols, int) or self.cols < 1:
            raise ValueError(f"cols must be a positive integer, got {self.cols!r}")
        if not self.sensing_range > 0 or not math.isfinite(self.sensing_range):
            raise ValueError(f"sensing_range must be positive, got {self.sensing_range!r}")

    @property
    def cell_side(self) -> float:
        return 2.0 * self.sensing_range

    @property
    def width(self) -> float:
        return self.cols * self.cell_side

    @property
    def height(self) -> float:
        return self.rows * self.cell_side

    @property
    def n_cells(self) -> int:
        return self.rows * self.cols

    def contains(self, cell: Cell) -> bool:
        return 1 <= cell[0] <= self.rows and 1 <= cell[1] <= self.cols

    def cells(self) -> Iterator[Cell]:
        """All cells in row-major order."""
        for r in range(1, self.rows + 1):
            for c in range(1, self.cols + 1):
                yield Cell(r, c)

    def corners(self) -> tuple[Cell, Cell, Cell, Cell]:
        m, n = self.rows, self.cols
        return (Cell(1, 1), Cell(1, n), Cell(m, 1), Cell(m, n))


def neighbor(cell: Cell, direction: Direction | int, grid: GridSpec) -> Cell | None:
    """The cell one step away in ``direction``, or None when that leaves the grid."""
    dr, dc = OFFSETS[Direction(direction)]
    nxt = Cell(cell[0] + dr, cell[1] + dc)
    return nxt if grid.contains(nxt) else None


def chebyshev(a: Cell, b: Cell) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def center_cell(grid: GridSpec) -> Cell:
    # even sizes have no true center; take the upper-left of the middle four
    return Cell(-(-grid.rows // 2), -(-grid.cols // 2))


class ObstacleMap:
    """Static single-cell obstacles on a grid.

    Out-of-bounds positions report as blocked, so planners need no separate
    edge handling.
    """

    __slots__ = ("grid", "cells")

    def __init__(self, grid: GridSpec, cells: Iterable[Cell] = ()):
        cells = frozenset(Cell(*c) for c in cells)
        for c in cells:
            if not grid.contains(c):
                raise ValueError(f"obstacle {c} is outside the {grid.rows}x{grid.cols} grid")
        self.grid = grid
        self.cells = cells

    @classmethod
    def from_array(cls, grid: GridSpec, occupied: np.ndarray) -> "ObstacleMap":
        """Build from an ``(rows, cols)`` 0/1 array, where ``occupied[x-1, y-1] == 1`` marks cell (x, y)."""
        occupied = np.asarray(occupied)
        if occupied.shape != (grid.rows, grid.cols):
            raise ValueError(f"array shape {occupied.shape} does not match grid {grid.rows}x{grid.cols}")
        rows, cols = np.nonzero(occupied)
        return cls(grid, (Cell(int(r) + 1, int(c) + 1) for r, c in zip(rows, cols)))

    def as_array(self) -> np.ndarray:
        out = np.zeros((self.grid.rows, self.grid.cols), dtype=bool)
        for r, c in self.cells:
            out[r - 1, c - 1] = True
        return out

    def is_obstacle(self, cell: Cell) -> bool:
        return Cell(*cell) in self.cells

    def is_blocked(self, cell: Cell | None) -> bool:
        return cell is None or not self.grid.contains(cell) or Cell(*cell) in self.cells

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return Cell(*cell) in self.cells

    def __eq__(self, other) -> bool:
        return isinstance(other, ObstacleMap) and self.grid == other.grid and self.cells == other.cells

    def __hash__(self) -> int:
        return hash((self.grid, self.cells))

    def __repr__(self) -> str:
        return f"ObstacleMap({self.grid.rows}x{self.grid.cols}, {self.sorted_cells()})"

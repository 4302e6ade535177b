"""Sensor deployment geometry and area-coverage analytics.

One sensor sits at the center of every cell. Continuous points are given as
``(x, y)`` in length units measured from the top-left corner of cell (1, 1),
with ``x`` running down the rows and ``y`` across the columns, so that a
point's axes line up with the ``(row, col)`` of the cell containing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .grid import Cell, GridSpec


class Point(NamedTuple):
    x: float
    y: float


class Estimate(NamedTuple):
    value: float
    stderr: float
    samples: int


@dataclass(frozen=True)
class SensorField:
    grid: GridSpec
    sensor_positions: dict[Cell, Point] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "sensor_positions", {c: sensor_center(c, self.grid) for c in self.grid.cells()}
        )

    @property
    def sensing_range(self) -> float:
        return self.grid.sensing_range


@dataclass(frozen=True)
class FireEvent:
    ignition_point: Point
    cell: Cell
    time: float = 0.0

    @classmethod
    def at_point(cls, point, grid: GridSpec, time: float = 0.0) -> "FireEvent":
        point = Point(float(point[0]), float(point[1]))
        return cls(point, cell_of_point(point, grid), float(time))

    @classmethod
    def at_cell(cls, cell, grid: GridSpec, time: float = 0.0) -> "FireEvent":
        cell = Cell(*cell)
        if not grid.contains(cell):
            raise ValueError(f"fire cell {cell} is outside the grid")
        return cls(sensor_center(cell, grid), cell, float(time))


def sensor_center(cell: Cell, grid: GridSpec) -> Point:
    L = grid.cell_side
    return Point((cell[0] - 0.5) * L, (cell[1] - 0.5) * L)


def cell_of_point(point, grid: GridSpec) -> Cell:
    """Cell whose square contains ``point``.

    Points on a shared edge or corner go to the lexicographically smallest
    ``(row, col)`` among the cells touching it.
    """
    x, y = point
    if not (0.0 <= x <= grid.height and 0.0 <= y <= grid.width):
        raise ValueError(f"point {tuple(point)} lies outside the {grid.height}x{grid.width} field")
    L = grid.cell_side
    row = min(grid.rows, max(1, math.ceil(x / L)))
    col = min(grid.cols, max(1, math.ceil(y / L)))
    return Cell(row, col)


def uncovered_area_per_cell(r: float) -> float:
    """Area of a ``2r x 2r`` cell left outside its inscribed sensing disc: ``(4 - pi) r^2``."""
    if not r > 0:
        raise ValueError(f"sensing range must be positive, got {r!r}")
    return (4.0 - math.pi) * r * r


def coverage_fraction(field: SensorField) -> float:
    # each cell's disc is inscribed, so the ratio is the same for every cell
    r = field.sensing_range
    return math.pi * r * r / (field.grid.cell_side ** 2)


def first_detector(fire: FireEvent, field: SensorField) -> Cell:
    """Sensor that detects ``fire`` first: the one in the cell containing the ignition point."""
    if not field.grid.contains(fire.cell):
        raise ValueError(f"fire cell {fire.cell} is outside the grid")
    return fire.cell


def detection_delay(fire: FireEvent, field: SensorField, spread_speed: float = 1.0) -> float:
    """Time for the fire front to reach the detecting sensor.

    ``spread_speed`` is in cell sides per time unit.
    """
    if not spread_speed > 0:
        raise ValueError(f"spread_speed must be positive, got {spread_speed!r}")
    sx, sy = field.sensor_positions[first_detector(fire, field)]
    px, py = fire.ignition_point
    return math.hypot(px - sx, py - sy) / (spread_speed * field.grid.cell_side)


def _binomial_stderr(hits: int, n: int) -> float:
    # Laplace-smoothed proportion keeps tiny samples from reporting zero error
    p = (hits + 1) / (n + 2)
    return math.sqrt(p * (1.0 - p) / n)


def monte_carlo_uncovered(r: float, samples: int, seed: int = 0) -> Estimate:
    """Estimate the uncovered area of one cell by uniform rejection sampling."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not r > 0:
        raise ValueError(f"sensing range must be positive, got {r!r}")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-r, r, size=(samples, 2))
    outside = int(np.count_nonzero(np.einsum("ij,ij->i", pts, pts) > r * r))
    cell_area = 4.0 * r * r
    return Estimate(cell_area * outside / samples, cell_area * _binomial_stderr(outside, samples), samples)


def monte_carlo_coverage(field: SensorField, samples: int, seed: int = 0) -> Estimate:
    """Estimate the covered fraction of the whole field.

    Points are drawn over the full rectangle and counted as covered when they
    fall inside the sensing disc of the sensor of their own cell.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    grid = field.grid
    L = grid.cell_side
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, grid.height, samples)
    y = rng.uniform(0.0, grid.width, samples)
    # nearest center along each axis; boundary ties cannot change the distance
    cx = (np.clip(np.ceil(x / L), 1, grid.rows) - 0.5) * L
    cy = (np.clip(np.ceil(y / L), 1, grid.cols) - 0.5) * L
    r = grid.sensing_range
    covered = int(np.count_nonzero((x - cx) ** 2 + (y - cy) ** 2 <= r * r))
    return Estimate(covered / samples, _binomial_stderr(covered, samples), samples)

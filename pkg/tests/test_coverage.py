import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from firepath.coverage import (
    FireEvent,
    Point,
    SensorField,
    cell_of_point,
    coverage_fraction,
    detection_delay,
    first_detector,
    monte_carlo_coverage,
    monte_carlo_uncovered,
    sensor_center,
    uncovered_area_per_cell,
)
from firepath.grid import Cell, GridSpec

G20 = GridSpec(20, 20)


def nearest_sensors(point, field):
    """Brute force: every sensor at minimal distance, sorted."""
    d = {c: math.dist(point, p) for c, p in field.sensor_positions.items()}
    best = min(d.values())
    return sorted(c for c, v in d.items() if math.isclose(v, best, abs_tol=1e-12))


def test_uncovered_area_values():
    assert uncovered_area_per_cell(1.0) == pytest.approx(0.858407346, abs=1e-9)
    assert round(uncovered_area_per_cell(1.0), 2) == 0.86
    assert uncovered_area_per_cell(2.0) == pytest.approx(3.433629385, abs=1e-9)


@pytest.mark.parametrize("r", [0.0, -1.0])
def test_uncovered_area_rejects_nonpositive(r):
    with pytest.raises(ValueError):
        uncovered_area_per_cell(r)


def test_uncovered_area_monte_carlo_pure_python():
    # independent sampler: stdlib RNG, per-point loop
    rng = random.Random(12345)
    n = 200_000
    outside = sum(1 for _ in range(n) if rng.uniform(-1, 1) ** 2 + rng.uniform(-1, 1) ** 2 > 1)
    est = 4 * outside / n
    se = 4 * math.sqrt((outside / n) * (1 - outside / n) / n)
    assert abs(est - uncovered_area_per_cell(1.0)) < 3 * se


def test_uncovered_area_monte_carlo_1e6():
    est = monte_carlo_uncovered(1.0, 1_000_000, seed=7)
    assert est.value == pytest.approx(0.858, abs=0.005)
    assert abs(est.value - (4 - math.pi)) < 3 * est.stderr


def test_monte_carlo_single_sample_is_wide():
    est = monte_carlo_uncovered(1.0, 1, seed=0)
    assert est.value in (0.0, 4.0)
    assert est.stderr > 1.0


@pytest.mark.parametrize("grid", [GridSpec(20, 20), GridSpec(1, 1), GridSpec(3, 7, sensing_range=2.0)])
def test_coverage_fraction_is_pi_over_4(grid):
    field = SensorField(grid)
    assert coverage_fraction(field) == pytest.approx(math.pi / 4, abs=1e-12)
    mc = monte_carlo_coverage(field, 200_000, seed=3)
    assert abs(mc.value - math.pi / 4) < 3 * mc.stderr


def test_sensor_positions_are_cell_centers():
    field = SensorField(GridSpec(2, 3, sensing_range=1.0))
    assert field.sensor_positions[Cell(1, 1)] == Point(1.0, 1.0)
    assert field.sensor_positions[Cell(2, 3)] == Point(3.0, 5.0)
    assert len(field.sensor_positions) == 6


def test_first_detector_interior_point():
    field = SensorField(G20)
    fire = FireEvent.at_point((2 * 2 + 0.3, 6 * 2 + 1.7), G20)
    assert fire.cell == Cell(3, 7)
    assert first_detector(fire, field) == Cell(3, 7)


def test_first_detector_at_sensor_center_has_zero_delay():
    field = SensorField(G20)
    fire = FireEvent.at_point(sensor_center(Cell(3, 7), G20), G20)
    assert first_detector(fire, field) == Cell(3, 7)
    assert detection_delay(fire, field) == 0.0


@pytest.mark.parametrize(
    "point, expected",
    [
        ((6.0, 13.0), Cell(3, 7)),  # edge between (3,7) and (4,7)
        ((5.0, 12.0), Cell(3, 6)),  # edge between (3,6) and (3,7)
        ((6.0, 12.0), Cell(3, 6)),  # corner shared by four cells
        ((0.0, 0.0), Cell(1, 1)),
        ((40.0, 40.0), Cell(20, 20)),
    ],
)
def test_edge_tie_break_lowest_cell(point, expected):
    field = SensorField(G20)
    assert cell_of_point(point, G20) == expected
    assert nearest_sensors(point, field)[0] == expected


def test_point_outside_field_rejected():
    with pytest.raises(ValueError):
        cell_of_point((-0.1, 3.0), G20)


def test_detection_delay_scales_with_speed():
    field = SensorField(G20)
    fire = FireEvent.at_point((4.0, 13.0), G20)
    assert fire.cell == Cell(2, 7)
    # center of (2,7) is (3, 13): one length unit away, half a cell side
    assert detection_delay(fire, field) == pytest.approx(0.5)
    assert detection_delay(fire, field, spread_speed=2.0) == pytest.approx(0.25)


@settings(max_examples=300)
@given(st.floats(0, 40, exclude_min=True, exclude_max=True), st.floats(0, 40, exclude_min=True, exclude_max=True))
def test_nearest_sensor_is_own_cell(x, y):
    field = SensorField(G20)
    cell = cell_of_point((x, y), G20)
    nearest = nearest_sensors((x, y), field)
    assert cell in nearest
    if x % 2 != 0 and y % 2 != 0:
        assert nearest == [cell]


def test_nearest_sensor_strict_by_sampling():
    field = SensorField(G20)
    centers = np.array([field.sensor_positions[c] for c in G20.cells()])
    rng = np.random.default_rng(11)
    pts = rng.uniform(0, 40, size=(5000, 2))
    d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(-1)
    order = np.sort(d2, axis=1)
    assert np.all(order[:, 0] < order[:, 1])
    cells = list(G20.cells())
    for p, idx in zip(pts, d2.argmin(axis=1)):
        assert cells[idx] == cell_of_point(p, G20)


def test_discs_are_interior_disjoint():
    field = SensorField(G20)
    r = G20.sensing_range
    pos = field.sensor_positions
    for a in G20.cells():
        for b in [Cell(a.row, a.col + 1), Cell(a.row + 1, a.col), Cell(a.row + 1, a.col + 1)]:
            if b in pos:
                assert math.dist(pos[a], pos[b]) >= 2 * r - 1e-12

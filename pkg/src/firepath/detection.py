"""Fire report relay: detecting sensor -> corner nodes -> actor.

Delivery is lossless and modeled as a deterministic list of timed messages.
The actor keeps the earliest report and drops the duplicates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .coverage import FireEvent, SensorField, detection_delay, first_detector
from .grid import Cell, chebyshev

HOP_LATENCY = 1.0


class ConflictingReports(ValueError):
    """Reports for different fire cells arrived in a single run."""


@dataclass(frozen=True)
class DetectionMessage:
    fire_cell: Cell
    origin_sensor: Cell
    relay_corner: Cell
    arrival_time: float

    def sort_key(self):
        return (self.arrival_time, self.relay_corner)


@dataclass(frozen=True)
class ActorInbox:
    accepted: Optional[DetectionMessage]
    discarded_count: int = 0


def relay_latency(origin: Cell, corner: Cell) -> float:
    return chebyshev(origin, corner) * HOP_LATENCY


def broadcast(fire: FireEvent, field: SensorField, spread_speed: float = 1.0) -> list[DetectionMessage]:
    """One report per corner node, in corner order (1,1), (1,n), (m,1), (m,n)."""
    origin = first_detector(fire, field)
    detected_at = fire.time + detection_delay(fire, field, spread_speed)
    return [
        DetectionMessage(fire.cell, origin, corner, detected_at + relay_latency(origin, corner))
        for corner in field.grid.corners()
    ]


def dedupe_first(messages: Iterable[DetectionMessage]) -> ActorInbox:
    messages = list(messages)
    if not messages:
        return ActorInbox(None, 0)
    cells = {m.fire_cell for m in messages}
    if len(cells) > 1:
        raise ConflictingReports(f"reports name different fire cells: {sorted(cells)}")
    first = min(messages, key=DetectionMessage.sort_key)
    return ActorInbox(first, len(messages) - 1)


class ActorNode:
    """Receives reports one at a time; the first one triggers a dispatch, later ones are dropped."""

    def __init__(self):
        self.accepted: Optional[DetectionMessage] = None
        self.discarded_count = 0

    def receive(self, msg: DetectionMessage) -> bool:
        """True when ``msg`` should trigger a dispatch."""
        if self.accepted is None:
            self.accepted = msg
            return True
        if msg.fire_cell != self.accepted.fire_cell:
            raise ConflictingReports(f"report for {msg.fire_cell} after {self.accepted.fire_cell}")
        self.discarded_count += 1
        return False

    @property
    def inbox(self) -> ActorInbox:
        return ActorInbox(self.accepted, self.discarded_count)


def deliver(messages: Iterable[DetectionMessage]) -> tuple[ActorInbox, int]:
    """Deliver ``messages`` to an actor in arrival order; returns the inbox and the dispatch count."""
    actor = ActorNode()
    dispatches = sum(actor.receive(m) for m in sorted(messages, key=DetectionMessage.sort_key))
    return actor.inbox, dispatches

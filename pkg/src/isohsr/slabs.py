"""Cutting the sweep into slabs of roughly 2n / log n vertical-edge events."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterator

from .scene import Scene


class Kind(IntEnum):
    LEFT = 0
    RIGHT = 1


@dataclass(frozen=True)
class Event:
    x: float
    kind: Kind
    rect: int  # index into scene.rects


@dataclass
class Slab:
    index: int
    x_left: float
    x_right: float
    events: list[Event] = field(default_factory=list)


@dataclass
class SlabPlan:
    boundaries: list[float]
    slabs: list[Slab]

    def __len__(self) -> int:
        return len(self.slabs)

    @property
    def event_count(self) -> int:
        return sum(len(s.events) for s in self.slabs)


def slab_size(n: int) -> int:
    """Events per slab: ceil(2n / ceil(log2 n)); a single slab below n = 4."""
    if n < 4:
        return max(2 * n, 1)
    return math.ceil(2 * n / math.ceil(math.log2(max(n, 2))))


def events_of(scene: Scene) -> list[Event]:
    out = []
    for i, role in scene.x_order:
        r = scene.rects[i]
        out.append(Event(r.x2 if role else r.x1, Kind(role), i))
    return out


def plan_slabs(scene: Scene, size: int | None = None) -> SlabPlan:
    """Partition the x-sorted events into consecutive slabs.

    Boundaries sit halfway between the last event of one slab and the
    first of the next, so no event lies on a boundary.
    """
    events = events_of(scene)
    if not events:
        return SlabPlan([], [])
    s = size if size is not None else slab_size(len(scene))
    if s < 1:
        raise ValueError("slab size must be positive")
    chunks = [events[i:i + s] for i in range(0, len(events), s)]
    boundaries = [events[0].x - 0.5]
    for prev, nxt in zip(chunks, chunks[1:]):
        boundaries.append((prev[-1].x + nxt[0].x) / 2)
    boundaries.append(events[-1].x + 0.5)
    slabs = [Slab(j, boundaries[j], boundaries[j + 1], chunk) for j, chunk in enumerate(chunks)]
    return SlabPlan(boundaries, slabs)


def spanning_segments(scene: Scene, plan: SlabPlan, slab_index: int) -> list[int]:
    """Indices of rectangles whose x-extent strictly contains the slab."""
    if not 0 <= slab_index < len(plan.slabs):
        raise IndexError(f"slab index {slab_index} out of range")
    slab = plan.slabs[slab_index]
    return [i for i, r in enumerate(scene.rects) if r.x1 < slab.x_left and r.x2 > slab.x_right]


def iter_slabs(scene: Scene, plan: SlabPlan) -> Iterator[tuple[Slab, list[int]]]:
    """Yield each slab with its spanning set, using one pass over the events.

    Only the rectangles open at the current slab boundary are held, so the
    live set never exceeds n.
    """
    open_rects: set[int] = set()
    for slab in plan.slabs:
        spanning = sorted(i for i in open_rects if scene.rects[i].x2 > slab.x_right)
        yield slab, spanning
        for e in slab.events:
            if e.kind is Kind.LEFT:
                open_rects.add(e.rect)
            else:
                open_rects.discard(e.rect)

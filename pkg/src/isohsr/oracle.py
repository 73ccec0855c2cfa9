"""Brute-force visibility by painting rectangles back to front on the arrangement grid.

Shares nothing with the sweep beyond the scene model.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .scene import BACKGROUND_ID, Scene


@dataclass
class OwnerGrid:
    xs: list
    ys: list
    owner: np.ndarray  # owner[i, j] for cell (xs[i], xs[i+1]) x (ys[j], ys[j+1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.owner.shape

    def owner_at(self, x: float, y: float) -> int:
        i = bisect_left(self.xs, x) - 1
        j = bisect_left(self.ys, y) - 1
        if not (0 <= i < len(self.xs) - 1 and 0 <= j < len(self.ys) - 1):
            return BACKGROUND_ID
        return int(self.owner[i, j])


def build_grid(scene: Scene) -> OwnerGrid:
    xs = sorted({v for r in scene for v in (r.x1, r.x2)})
    ys = sorted({v for r in scene for v in (r.y1, r.y2)})
    owner = np.full((max(len(xs) - 1, 0), max(len(ys) - 1, 0)), BACKGROUND_ID, dtype=np.int64)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    # painter's order: later (higher) rectangles overwrite earlier ones
    for r in sorted(scene, key=lambda r: (r.z, r.id)):
        owner[xi[r.x1]:xi[r.x2], yi[r.y1]:yi[r.y2]] = r.id
    return OwnerGrid(xs, ys, owner)


def naive_owner(scene: Scene, x: float, y: float) -> int:
    """Topmost rectangle strictly containing ``(x, y)``; a direct scan."""
    best, best_z = BACKGROUND_ID, None
    for r in scene:
        if r.x1 < x < r.x2 and r.y1 < y < r.y2 and (best_z is None or r.z > best_z):
            best, best_z = r.id, r.z
    return best


@dataclass
class Verdict:
    ok: bool
    message: str = ""
    cell: tuple | None = None  # (x_lo, x_hi, y_lo, y_hi) of the first bad cell

    def __bool__(self) -> bool:
        return self.ok


def verify(regions: Iterable[Sequence], scene: Scene, grid: OwnerGrid | None = None) -> Verdict:
    """Check that ``regions`` tile exactly the non-background visible area.

    Each region is ``(owner, x_start, x_end, y_low, y_high)``.  Background
    regions, if present, are checked against background cells.
    """
    if grid is None:
        grid = build_grid(scene)
    xs, ys, owner = grid.xs, grid.ys, grid.owner
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    cover = np.zeros(owner.shape, dtype=np.int64)

    def cell(i, j):
        return (xs[i], xs[i + 1], ys[j], ys[j + 1])

    for n, reg in enumerate(regions):
        rid, x0, x1, y0, y1 = reg
        if not (x0 < x1 and y0 < y1):
            return Verdict(False, f"region {n} ({rid}) has no area")
        try:
            i0, i1, j0, j1 = xi[x0], xi[x1], yi[y0], yi[y1]
        except KeyError:
            return Verdict(False, f"region {n} ({rid}) has a corner off the arrangement grid")
        block = owner[i0:i1, j0:j1]
        bad = np.argwhere(block != rid)
        if len(bad):
            i, j = bad[0]
            return Verdict(False, f"region {n} claims owner {rid} but cell is owned by "
                                  f"{int(block[i, j])}", cell(i0 + i, j0 + j))
        if rid == BACKGROUND_ID:
            continue
        cover[i0:i1, j0:j1] += 1

    over = np.argwhere(cover > 1)
    if len(over):
        i, j = over[0]
        return Verdict(False, f"cell covered {int(cover[i, j])} times", cell(i, j))
    missing = np.argwhere((cover == 0) & (owner != BACKGROUND_ID))
    if len(missing):
        i, j = missing[0]
        return Verdict(False, f"cell owned by {int(owner[i, j])} is not covered", cell(i, j))
    return Verdict(True)


def count_faces(grid: OwnerGrid) -> int:
    """Connected same-owner components of non-background cells."""
    from scipy import ndimage

    total = 0
    for rid in np.unique(grid.owner):
        if rid == BACKGROUND_ID:
            continue
        _, count = ndimage.label(grid.owner == rid)
        total += count
    return total

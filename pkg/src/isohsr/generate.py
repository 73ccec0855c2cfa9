"""Deterministic scene generators."""

from __future__ import annotations

import math
import random

from .scene import Rect, Scene

KINDS = ("uniform", "nested", "grid-stress")


def uniform(n: int, seed: int, density: float = 2.0) -> Scene:
    """Random rectangles in the unit square with sides near ``density / sqrt(n)``.

    The expected overlap per rectangle stays constant as n grows, so the
    number of visible pieces is linear in n.
    """
    rng = random.Random(seed)
    side = min(density / math.sqrt(max(n, 1)), 1.0)
    rects = []
    zs = rng.sample(range(10 * n + 10), n)
    for i in range(n):
        w = side * rng.uniform(0.3, 1.0)
        h = side * rng.uniform(0.3, 1.0)
        x = rng.uniform(0.0, 1.0 - w)
        y = rng.uniform(0.0, 1.0 - h)
        rects.append(Rect(i, x, x + w, y, y + h, float(zs[i])))
    return Scene(tuple(rects))


def nested(n: int, seed: int) -> Scene:
    """Shrinking, jittered rectangles stacked upward: every one shows a ring."""
    rng = random.Random(seed)
    rects = []
    for i in range(n):
        half = 1.0 - (i + rng.uniform(0.1, 0.9)) / (n + 1)
        cx = rng.uniform(-0.1, 0.1) / (n + 1)
        cy = rng.uniform(-0.1, 0.1) / (n + 1)
        rects.append(Rect(i, cx - half, cx + half * rng.uniform(0.95, 1.0),
                          cy - half * rng.uniform(0.95, 1.0), cy + half, float(i)))
    return Scene(tuple(rects))


def grid_stress(n: int, seed: int) -> Scene:
    """Long thin strips: horizontal ones below, vertical ones stacked on top.

    With ``m = n // 2`` strips per orientation every horizontal strip is cut
    into ``m + 1`` visible pieces, giving about ``m**2`` regions.
    """
    rng = random.Random(seed)
    m = n // 2
    rects = []
    zs_low = list(range(m))
    zs_high = list(range(m, 2 * m))
    rng.shuffle(zs_low)
    rng.shuffle(zs_high)
    for i in range(m):
        # horizontal strip i: full width, thin in y
        rects.append(Rect(len(rects), -(i + 1), 10 * m + i + 1, 10 * i, 10 * i + 5, zs_low[i]))
    for j in range(m):
        rects.append(Rect(len(rects), 10 * j + 2, 10 * j + 7, -(j + 1), 10 * m + j + 1, zs_high[j]))
    if n % 2:
        rects.append(Rect(len(rects), -3 * m - 7, -2 * m - 5, -3 * m - 7, -2 * m - 5, 2 * m))
    return Scene(tuple(rects))


def generate(kind: str, n: int, seed: int) -> Scene:
    if n < 0:
        raise ValueError("n must be non-negative")
    if kind == "uniform":
        return uniform(n, seed)
    if kind == "nested":
        return nested(n, seed)
    if kind == "grid-stress":
        return grid_stress(n, seed)
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {KINDS}")

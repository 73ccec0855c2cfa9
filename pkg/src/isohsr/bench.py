"""Operation-count scaling runs."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .generate import generate
from .scene import canonicalize
from .sweep import run


@dataclass
class BenchRow:
    kind: str
    n: int
    k: int
    total_ops: int
    node_visits: int
    region_ops: int
    peak_live: int

    @property
    def time_ratio(self) -> float:
        """Counted operations per ``(n + k) log2 n``."""
        return self.total_ops / ((self.n + self.k) * math.log2(self.n))

    @property
    def space_ratio(self) -> float:
        """Peak live auxiliary entries per rectangle."""
        return self.peak_live / self.n


def measure(kind: str, n: int, seed: int = 0, slab_size: int | None = None) -> BenchRow:
    scene = canonicalize(generate(kind, n, seed))
    c = run(scene, slab_size=slab_size, debug_checks=False).counters
    return BenchRow(kind, n, c.regions, c.total_ops, c.node_visits + c.report_visits,
                    c.region_searches + c.region_restructures + c.region_updates,
                    c.peak_live_entries)


def sweep_sizes(kind: str, exponents, seed: int = 0, slab_size: int | None = None) -> list[BenchRow]:
    return [measure(kind, 2 ** e, seed, slab_size) for e in exponents]


def spread(values) -> float:
    values = list(values)
    return max(values) / min(values)


def format_table(rows: list[BenchRow]) -> str:
    head = f"{'kind':<12}{'n':>8}{'k':>10}{'ops':>12}{'ops/((n+k)lg n)':>17}{'peak':>10}{'peak/n':>9}"
    lines = [head]
    for r in rows:
        lines.append(f"{r.kind:<12}{r.n:>8}{r.k:>10}{r.total_ops:>12}{r.time_ratio:>17.3f}"
                     f"{r.peak_live:>10}{r.space_ratio:>9.2f}")
    if len(rows) > 1:
        lines.append(f"spread: time {spread(r.time_ratio for r in rows):.3f}x, "
                     f"space {spread(r.space_ratio for r in rows):.3f}x")
    return "\n".join(lines)

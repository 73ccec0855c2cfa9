"""Slab-by-slab plane sweep reporting the visible pieces of a rectangle scene."""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field
from typing import Iterable, NamedTuple

from .regiontree import RegionTree
from .scene import BACKGROUND_ID, Scene, require_valid
from .segtree import BG, OpCounter, SegTree, VSeg
from .slabs import Kind, SlabPlan, iter_slabs, plan_slabs

# Guards of the edge procedures that can be inverted for mutation testing.
GUARDS = (
    "L1", "L2", "L5", "L6",  # LeftEdge
    "LR1", "LR2",  # LeftReportRegions
    "R1", "R2", "R3", "R4", "R7", "R8", "R9", "R10",  # RightEdge
    "RR1", "RR2", "RR9", "RR10", "RR11",  # RightReportRegions
)

DEBUG_MAX_N = 64


class SweepError(RuntimeError):
    """Internal inconsistency between the precomputed and the replayed sweep."""


class VisibleRegion(NamedTuple):
    owner: int
    x_start: float
    x_end: float
    y_low: float
    y_high: float


@dataclass
class Counters:
    events: int = 0
    slabs: int = 0
    node_visits: int = 0
    report_visits: int = 0
    cursor_advances: int = 0
    precompute_ops: int = 0
    region_searches: int = 0
    region_restructures: int = 0
    region_updates: int = 0
    regions: int = 0
    peak_tree_entries: int = 0
    peak_region_leaves: int = 0
    peak_live_entries: int = 0

    @property
    def total_ops(self) -> int:
        return (self.node_visits + self.report_visits + self.cursor_advances
                + self.precompute_ops + self.region_searches
                + self.region_restructures + self.region_updates + self.regions)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["total_ops"] = self.total_ops
        return d


@dataclass
class SweepResult:
    regions: list[VisibleRegion]
    counters: Counters = field(default_factory=Counters)

    @property
    def k(self) -> int:
        return self.counters.regions


def _debug_from_env() -> bool:
    return os.environ.get("HSR_DEBUG_CHECKS", "") not in ("", "0")


class SweepEngine:
    """One run of the sweep over a validated scene.

    ``faults`` names guards from ``GUARDS`` whose condition is inverted;
    it exists only to measure how sensitive the test suite is.
    """

    def __init__(self, scene: Scene, *, report_background: bool = False,
                 slab_size: int | None = None, debug_checks: bool | None = None,
                 faults: Iterable[str] = ()):
        require_valid(scene)
        self.scene = scene
        self.report_background = report_background
        self.slab_size = slab_size
        if debug_checks is None:
            debug_checks = _debug_from_env()
        self.debug_checks = debug_checks and len(scene) <= DEBUG_MAX_N
        faults = set(faults)
        unknown = faults - set(GUARDS)
        if unknown:
            raise ValueError(f"unknown guards: {sorted(unknown)}")
        for g in GUARDS:
            setattr(self, "_f" + g, g in faults)

        n = len(scene)
        self.zrank = [0] * n
        self.by_z = [0] * n
        for rank, i in enumerate(scene.z_order):
            self.zrank[i] = rank
            self.by_z[rank] = i
        self.counters = Counters()
        self.regions: list[VisibleRegion] = []
        bbox = scene.bbox
        self.bbox = bbox if bbox is not None else (0.0, 0.0, 0.0, 0.0)
        self.region = RegionTree(x_start=self.bbox[0])
        self.ops = OpCounter()
        self.tree: SegTree | None = None
        self.x = -math.inf

    # -- output ------------------------------------------------------------------

    def _sink(self, owner: int, x_start: float, x_end: float, y_lo: float, y_hi: float) -> None:
        if owner == BG:
            if not self.report_background:
                return
            xmin, _, ymin, ymax = self.bbox
            x_start = max(x_start, xmin)
            y_lo, y_hi = max(y_lo, ymin), min(y_hi, ymax)
            if not (x_start < x_end and y_lo < y_hi):
                return
            rid = BACKGROUND_ID
        else:
            rid = self.scene.rects[self.by_z[owner]].id
            self.counters.regions += 1
        self.regions.append(VisibleRegion(rid, x_start, x_end, y_lo, y_hi))

    # -- driver --------------------------------------------------------------------

    def run(self) -> SweepResult:
        for _ in self.stations():
            pass
        return self.result()

    def stations(self):
        """Process the events one at a time, yielding each after it is applied."""
        scene = self.scene
        plan = plan_slabs(scene, self.slab_size)
        self.plan: SlabPlan = plan
        for slab, spanning in iter_slabs(scene, plan):
            self._enter_slab(slab, spanning)
            for j, e in enumerate(slab.events):
                self.event_index = j
                self.x = e.x
                r = scene.rects[e.rect]
                if e.kind is Kind.LEFT:
                    self.left_edge(self.zrank[e.rect], r.y1, r.y2)
                else:
                    self.right_edge(self.zrank[e.rect], r.y1, r.y2)
                self.counters.events += 1
                self._sample_space()
                if self.debug_checks:
                    from .checks import check_station
                    check_station(self)
                yield e
            self._leave_slab()
        self._flush()

    def result(self) -> SweepResult:
        c = self.counters
        c.precompute_ops = self.ops.count
        c.region_searches = self.region.searches
        c.region_restructures = self.region.restructures
        c.peak_region_leaves = self.region.peak
        return SweepResult(self.regions, c)

    def _enter_slab(self, slab, spanning: list[int]) -> None:
        rects = self.scene.rects
        events = slab.events
        m = len(events)
        t_in: dict[int, int] = {}
        t_out: dict[int, int] = {}
        for j, e in enumerate(events):
            (t_in if e.kind is Kind.LEFT else t_out)[e.rect] = j
        members = sorted(set(t_in) | set(t_out))
        ys = set()
        for i in members:
            ys.add(rects[i].y1)
            ys.add(rects[i].y2)
        for i in spanning:
            ys.add(rects[i].y1)
            ys.add(rects[i].y2)
        tree = SegTree(sorted(ys), self.ops)
        self.spanning = [(self.zrank[i], rects[i].y1, rects[i].y2) for i in spanning]
        tree.fill_hh(self.spanning)
        self.vsegs = [VSeg(self.zrank[i], rects[i].y1, rects[i].y2,
                           t_in.get(i, -1), t_out.get(i, m)) for i in members]
        tree.precompute(self.vsegs, [e.x for e in events])
        self.tree = tree
        self.slab = slab
        self.counters.slabs += 1
        entries = tree.entries()
        self.tree_entries = entries
        if entries > self.counters.peak_tree_entries:
            self.counters.peak_tree_entries = entries
        self._sample_space()

    def _leave_slab(self) -> None:
        t = self.tree
        for u in t.nodes:
            if t.p[u] != t.update_count(u):
                raise SweepError(f"node {u} cursor at {t.p[u]} of {t.update_count(u)} updates")
        self.tree = None

    def _sample_space(self) -> None:
        live = self.tree_entries + len(self.region)
        if live > self.counters.peak_live_entries:
            self.counters.peak_live_entries = live

    def _flush(self) -> None:
        if not self.scene.rects:
            return
        x_end = self.bbox[1]
        for f in list(self.region.leaves()):
            if f.x_start < x_end:
                self._sink(f.region, f.x_start, x_end, f.y, f.y_top)
            f.x_start = x_end

    # -- left edges ------------------------------------------------------------------

    def left_edge(self, z: int, y1: float, y2: float) -> None:
        self._pieces: list[tuple[float, float]] = []
        self._left_edge(z, y1, y2, True, 1)
        for lo, hi in _runs(self._pieces):
            self.counters.region_updates += 1
            self.region.repaint(lo, hi, [(lo, hi, z)], self.x, self._sink, self.report_background)

    def _left_edge(self, z, y1, y2, visible, u):
        t = self.tree
        self.counters.node_visits += 1
        if (z < t.low[u][t.p[u]]) != self._fL1:
            visible = False
        if (y1 <= t.y1[u] and t.y2[u] <= y2) != self._fL2:
            if visible:
                self._left_report(z, u)
        else:
            if t.is_leaf[u]:
                raise SweepError(f"left edge routed below leaf {u}")
            if (y1 < t.ymid[u]) != self._fL5:
                self._left_edge(z, y1, y2, visible, 2 * u)
            if (y2 > t.ymid[u]) != self._fL6:
                self._left_edge(z, y1, y2, visible, 2 * u + 1)
        t.advance(u)
        self.counters.cursor_advances += 1

    def _left_report(self, z, u):
        t = self.tree
        self.counters.report_visits += 1
        p = t.p[u]
        if (z < t.low[u][p]) != self._fLR1:
            return
        if (t.high[u][p] < z) != self._fLR2:
            self._pieces.append((t.y1[u], t.y2[u]))
            return
        if t.is_leaf[u]:
            raise SweepError(f"left report descended below leaf {u}")
        self._left_report(z, 2 * u)
        self._left_report(z, 2 * u + 1)

    # -- right edges -----------------------------------------------------------------

    def right_edge(self, z: int, y1: float, y2: float) -> None:
        self._cleared: list[tuple[float, float]] = []
        self._revealed: list[tuple[float, float, int]] = []
        self._right_edge(z, y1, y2, True, BG, 1)
        revealed = self._revealed
        k = 0
        for lo, hi in _runs(self._cleared):
            pieces: list[tuple[float, float, int]] = []
            while k < len(revealed) and revealed[k][1] <= lo:
                k += 1
            while k < len(revealed) and revealed[k][0] < hi:
                a, b, owner = revealed[k]
                if pieces and pieces[-1][2] == owner and pieces[-1][1] == a:
                    pieces[-1] = (pieces[-1][0], b, owner)
                else:
                    pieces.append((a, b, owner))
                k += 1
            if not pieces or pieces[0][0] != lo or pieces[-1][1] != hi or any(
                    p[1] != q[0] for p, q in zip(pieces, pieces[1:])):
                raise SweepError(f"revealed owners do not tile [{lo}, {hi}] at x={self.x}")
            self.counters.region_updates += 1
            self.region.repaint(lo, hi, pieces, self.x, self._sink, self.report_background)

    def _right_edge(self, z, y1, y2, visible, rp, u):
        t = self.tree
        self.counters.node_visits += 1
        if (z < t.low[u][t.p[u]]) != self._fR1:
            visible = False
        if (y1 <= t.y1[u] and t.y2[u] <= y2) != self._fR2:
            top = t.top_at(u, self.x)
            if (rp < top) != self._fR3:
                rp = top
            if (rp < t.hh[u]) != self._fR4:
                rp = t.hh[u]
            if visible:
                self._right_report(z, True, rp, u, True)
        else:
            top = t.top_at(u, self.x)
            if (rp < top) != self._fR7:
                rp = top
            if (rp < t.hh[u]) != self._fR8:
                rp = t.hh[u]
            if t.is_leaf[u]:
                raise SweepError(f"right edge routed below leaf {u}")
            if (y1 < t.ymid[u]) != self._fR9:
                self._right_edge(z, y1, y2, visible, rp, 2 * u)
            if (y2 > t.ymid[u]) != self._fR10:
                self._right_edge(z, y1, y2, visible, rp, 2 * u + 1)
        t.advance(u)
        self.counters.cursor_advances += 1

    def _right_report(self, z, at_r, rp, u, canonical):
        t = self.tree
        self.counters.report_visits += 1
        # the departing edge sits at its canonical nodes: judge them without it
        p = t.p[u] + 1 if canonical else t.p[u]
        if p >= len(t.high[u]):
            raise SweepError(f"node {u} has no state after the current update")
        h = t.high[u][p]
        if (z < t.low[u][p]) != self._fRR1:
            return
        if (h < z and at_r) != self._fRR2:
            self._cleared.append((t.y1[u], t.y2[u]))
            at_r = False
        top = t.top_at(u, self.x)
        if (rp < top) != self._fRR9:
            rp = top
        if (rp < t.hh[u]) != self._fRR10:
            rp = t.hh[u]
        if (h <= rp) != self._fRR11:
            self._revealed.append((t.y1[u], t.y2[u], rp))
            return
        if t.is_leaf[u]:
            raise SweepError(f"right report descended below leaf {u}")
        self._right_report(z, at_r, rp, 2 * u, False)
        self._right_report(z, at_r, rp, 2 * u + 1, False)


def _runs(ranges: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Merge abutting ``(lo, hi)`` ranges given bottom to top."""
    out: list[tuple[float, float]] = []
    for a, b in ranges:
        if out and out[-1][1] == a:
            out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def run(scene: Scene, *, report_background: bool = False, slab_size: int | None = None,
        debug_checks: bool | None = None, faults: Iterable[str] = ()) -> SweepResult:
    """Report the visible regions of ``scene`` seen from z = +inf."""
    engine = SweepEngine(scene, report_background=report_background, slab_size=slab_size,
                         debug_checks=debug_checks, faults=faults)
    return engine.run()


def coalesce(regions: Iterable[VisibleRegion]) -> list[VisibleRegion]:
    """Merge x-adjacent regions sharing owner and y-strip."""
    groups: dict[tuple[int, float, float], list[VisibleRegion]] = {}
    for r in regions:
        groups.setdefault((r.owner, r.y_low, r.y_high), []).append(r)
    out = []
    for rs in groups.values():
        rs.sort(key=lambda r: r.x_start)
        cur = rs[0]
        for r in rs[1:]:
            if r.x_start == cur.x_end:
                cur = cur._replace(x_end=r.x_end)
            else:
                out.append(cur)
                cur = r
        out.append(cur)
    out.sort(key=lambda r: (r.x_end, r.y_low))
    return out

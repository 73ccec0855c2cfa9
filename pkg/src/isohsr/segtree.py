"""Per-slab static segment tree whose dynamic fields are precomputed.

Owners are represented by their canonical z rank, so ``max``/``min`` on
owners are the max-by-z / min-by-z of the rectangles; the background is
``BG = -1`` and loses every max.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

BG = -1


class CursorOverrun(RuntimeError):
    """An update was applied to a node more often than precomputed."""


class OpCounter:
    """Plain mutable counter shared by the building blocks of a run."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0


def topmost_span_array(
    segments: Sequence[tuple[int, int, int, float]],
    q: int,
    size: int | None = None,
    ops: OpCounter | None = None,
) -> list[int]:
    """Highest segment over every unit cell ``[i, i + 1]``.

    ``segments`` holds ``(id, t1, t2, z)`` in strictly decreasing z.  The
    result has ``size`` entries (``2q`` by default); cells covered by no
    segment hold ``BG``.  Each cell is filled once, the first time a
    segment reaches it, and filled cells are skipped through a
    path-halving next-free pointer, so the work is linear up to the
    inverse-Ackermann factor.
    """
    if size is None:
        size = 2 * q
    prev_z = math.inf
    for seg in segments:
        if not seg[3] < prev_z:
            raise ValueError("segments must be given in strictly decreasing z order")
        prev_z = seg[3]
        if not 0 <= seg[1] <= seg[2] <= size:
            raise ValueError(f"segment {seg[0]} outside [0, {size}]")

    out = [BG] * size
    nxt = list(range(size + 1))
    steps = 0

    for sid, t1, t2, _ in segments:
        i = t1
        while True:
            # find the first free cell >= i
            while nxt[i] != i:
                nxt[i] = nxt[nxt[i]]
                i = nxt[i]
                steps += 1
            if i >= t2:
                break
            out[i] = sid
            nxt[i] = i + 1
            steps += 1
        steps += 1
    if ops is not None:
        ops.count += steps
    return out


def naive_span_array(segments, size: int) -> list[int]:
    """Quadratic per-cell max scan; reference for ``topmost_span_array``."""
    out = []
    for i in range(size):
        best, best_z = BG, -math.inf
        for sid, t1, t2, z in segments:
            if t1 <= i and i + 1 <= t2 and z > best_z:
                best, best_z = sid, z
        out.append(best)
    return out


@dataclass(frozen=True)
class VSeg:
    """A vertical edge's rectangle clipped to the slab.

    ``t_in`` is the index of its left event in the slab (-1 if already open
    at the slab start); ``t_out`` the index of its right event (``m`` if it
    stays open past the slab end).
    """

    z: int
    y1: float
    y2: float
    t_in: int
    t_out: int


class SegTree:
    """Array-backed balanced tree over the elementary y-intervals of a slab.

    Node ``1`` is the root and node ``i`` has children ``2i`` and ``2i+1``.
    """

    def __init__(self, ys: Sequence[float], ops: OpCounter | None = None):
        ys = sorted(ys)
        if len(ys) < 2:
            ys = [-math.inf, math.inf]
        self.ys = ys
        self.nleaves = len(ys) - 1
        self.ops = ops if ops is not None else OpCounter()
        cap = 4 * self.nleaves
        self.y1 = [0.0] * cap
        self.y2 = [0.0] * cap
        self.ymid = [0.0] * cap
        self.lo = [0] * cap
        self.hi = [0] * cap
        self.is_leaf = [False] * cap
        self.leaf_node = [0] * self.nleaves
        self.nodes: list[int] = []  # preorder

        stack = [(1, 0, self.nleaves)]
        while stack:
            u, lo, hi = stack.pop()
            self.nodes.append(u)
            self.lo[u], self.hi[u] = lo, hi
            self.y1[u], self.y2[u] = ys[lo], ys[hi]
            if hi - lo == 1:
                self.is_leaf[u] = True
                self.leaf_node[lo] = u
                self.ymid[u] = ys[hi]
            else:
                mid = (lo + hi) // 2
                self.ymid[u] = ys[mid]
                stack.append((2 * u + 1, mid, hi))
                stack.append((2 * u, lo, mid))
        self.ops.count += len(self.nodes)

        self.hh = [BG] * cap
        self.top: list[list[int]] = [None] * cap  # type: ignore[list-item]
        self.xtop: list[list[float]] = [None] * cap  # type: ignore[list-item]
        self.high: list[list[int]] = [None] * cap  # type: ignore[list-item]
        self.low: list[list[int]] = [None] * cap  # type: ignore[list-item]
        self.xhl: list[list[float]] = [None] * cap  # type: ignore[list-item]
        self.p = [0] * cap
        self.tp = [0] * cap

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def root(self) -> int:
        return 1

    def postorder(self) -> list[int]:
        out = []
        stack = [(1, False)]
        while stack:
            u, done = stack.pop()
            if done or self.is_leaf[u]:
                out.append(u)
                continue
            stack.append((u, True))
            stack.append((2 * u + 1, False))
            stack.append((2 * u, False))
        return out

    # -- structure ---------------------------------------------------------

    def canonical_nodes(self, y1: float, y2: float) -> list[int]:
        """Maximal nodes whose y-range lies inside ``[y1, y2]``, bottom to top."""
        out: list[int] = []
        self._canonical(1, y1, y2, out)
        return out

    def _canonical(self, u, y1, y2, out):
        if y1 <= self.y1[u] and self.y2[u] <= y2:
            out.append(u)
            return
        if self.is_leaf[u]:
            return
        if y1 < self.ymid[u]:
            self._canonical(2 * u, y1, y2, out)
        if y2 > self.ymid[u]:
            self._canonical(2 * u + 1, y1, y2, out)

    def search_path(self, y1: float, y2: float) -> list[int]:
        """Nodes an edge update touches (canonical nodes and their ancestors), postorder."""
        out: list[int] = []
        self._path(1, y1, y2, out)
        return out

    def _path(self, u, y1, y2, out):
        if not (y1 <= self.y1[u] and self.y2[u] <= y2) and not self.is_leaf[u]:
            if y1 < self.ymid[u]:
                self._path(2 * u, y1, y2, out)
            if y2 > self.ymid[u]:
                self._path(2 * u + 1, y1, y2, out)
        out.append(u)

    # -- slab-constant spanning owners ---------------------------------------

    def fill_hh(self, spanning: Sequence[tuple[int, float, float]]) -> None:
        """Set ``hh[u]`` to the highest spanning owner whose y-range covers ``u``.

        ``spanning`` holds ``(z, y1, y2)`` triples.  Leaves are filled with
        ``topmost_span_array``; internal nodes take the first owner in
        decreasing z that covers them, found by descending each owner's
        canonical decomposition and skipping subtrees a higher owner
        already claimed.
        """
        segs = sorted(spanning, key=lambda s: -s[0])
        index = {y: i for i, y in enumerate(self.ys)}
        cells = topmost_span_array(
            [(z, index[a], index[b], z) for z, a, b in segs],
            len(segs), size=self.nleaves, ops=self.ops,
        )
        hh = self.hh
        for i, owner in enumerate(cells):
            hh[self.leaf_node[i]] = owner

        claimed = [False] * len(hh)
        for u in self.nodes:
            if self.is_leaf[u]:
                claimed[u] = True
        ops = 0
        for z, a, b in segs:
            stack = [1]
            while stack:
                u = stack.pop()
                ops += 1
                if claimed[u]:
                    continue
                if a <= self.y1[u] and self.y2[u] <= b:
                    hh[u] = z
                    claimed[u] = True
                    # descendants are covered too; claim the free ones
                    sub = [2 * u, 2 * u + 1]
                    while sub:
                        w = sub.pop()
                        ops += 1
                        if claimed[w]:
                            continue
                        hh[w] = z
                        claimed[w] = True
                        sub.append(2 * w)
                        sub.append(2 * w + 1)
                    continue
                if a < self.ymid[u]:
                    stack.append(2 * u)
                if b > self.ymid[u]:
                    stack.append(2 * u + 1)
        self.ops.count += ops

    # -- precomputed update sequences ------------------------------------------

    def precompute(self, vsegs: Sequence[VSeg], xs: Sequence[float]) -> None:
        """Fill Top_v/xTop_v and High/Low/xHL for every node.

        ``xs`` are the x-coordinates of the slab's events in order; every
        event index in ``[0, len(xs))`` must be the ``t_in`` or ``t_out`` of
        exactly one segment.
        """
        m = len(xs)
        event_seg = [-1] * m
        order = sorted(range(len(vsegs)), key=lambda i: -vsegs[i].z)
        canon: list[list[int]] = [[] for _ in vsegs]
        assoc: dict[int, list[int]] = {}
        for i in order:
            s = vsegs[i]
            canon[i] = self.canonical_nodes(s.y1, s.y2)
            for u in canon[i]:
                assoc.setdefault(u, []).append(i)
            if s.t_in >= 0:
                event_seg[s.t_in] = i
            if s.t_out < m:
                event_seg[s.t_out] = i
        if -1 in event_seg:
            raise ValueError("every event needs exactly one segment")
        ops = sum(len(c) for c in canon)

        # per-node change times, in event order
        times: dict[int, list[int]] = {}
        for j in range(m):
            for u in canon[event_seg[j]]:
                times.setdefault(u, []).append(j)

        top, xtop = self.top, self.xtop
        for u in self.nodes:
            segs = assoc.get(u)
            if not segs:
                top[u] = [BG]
                xtop[u] = []
                continue
            ts = times.get(u, [])
            rank = {t: r for r, t in enumerate(ts)}
            q = len(ts)
            spans = []
            for i in segs:
                s = vsegs[i]
                a = 0 if s.t_in < 0 else rank[s.t_in] + 1
                b = q + 1 if s.t_out >= m else rank[s.t_out] + 1
                spans.append((s.z, a, b, s.z))
            top[u] = topmost_span_array(spans, q, size=q + 1, ops=self.ops)
            xtop[u] = [xs[t] for t in ts]
            ops += len(spans) + q

        hh, high, low, xhl, leaf = self.hh, self.high, self.low, self.xhl, self.is_leaf
        for u in self.postorder():
            t = top[u][0]
            if leaf[u]:
                h = hh[u] if hh[u] > t else t
                lo = h
            else:
                hl, hr = high[2 * u][0], high[2 * u + 1][0]
                ll, lr = low[2 * u][0], low[2 * u + 1][0]
                h = max(hl, hr, t)
                lo = max(min(ll, lr), t)
            high[u] = [h]
            low[u] = [lo]
            xhl[u] = []
            ops += 1

        paths = [None] * len(vsegs)
        tcur = {u: 0 for u in assoc}
        for j in range(m):
            i = event_seg[j]
            path = paths[i]
            if path is None:
                path = paths[i] = self.search_path(vsegs[i].y1, vsegs[i].y2)
            x = xs[j]
            for u in canon[i]:
                tcur[u] += 1
            for u in path:
                t = top[u][tcur[u]] if u in tcur else BG
                if leaf[u]:
                    h = hh[u] if hh[u] > t else t
                    lo = h
                else:
                    hl, hr = high[2 * u][-1], high[2 * u + 1][-1]
                    ll, lr = low[2 * u][-1], low[2 * u + 1][-1]
                    h = max(hl, hr, t)
                    lo = max(min(ll, lr), t)
                high[u].append(h)
                low[u].append(lo)
                xhl[u].append(x)
            ops += len(path)
        self.ops.count += ops
        for u in self.nodes:
            self.p[u] = 0
            self.tp[u] = 0

    # -- cursors -------------------------------------------------------------

    def advance(self, u: int) -> None:
        if self.p[u] >= len(self.high[u]) - 1:
            raise CursorOverrun(f"node {u} advanced past its {len(self.high[u]) - 1} updates")
        self.p[u] += 1

    def top_at(self, u: int, x: float) -> int:
        """Highest vertical-edge owner associated with ``u`` for sweep position ``x``.

        A change recorded at ``xTop_v[i]`` is in effect from that x on.
        """
        xt = self.xtop[u]
        i = self.tp[u]
        while i < len(xt) and xt[i] <= x:
            i += 1
        self.tp[u] = i
        return self.top[u][i]

    def current(self, u: int, x: float) -> tuple[int, int, int]:
        p = self.p[u]
        return self.high[u][p], self.low[u][p], self.top_at(u, x)

    def update_count(self, u: int) -> int:
        return len(self.high[u]) - 1

    def entries(self) -> int:
        """Total allocated array entries plus one per skeleton node."""
        total = 0
        for u in self.nodes:
            total += (len(self.top[u]) + len(self.xtop[u]) + len(self.high[u])
                      + len(self.low[u]) + len(self.xhl[u]) + 1)
        return total

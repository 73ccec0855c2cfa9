"""Red-black tree of visible horizontal edges with doubly linked entries.

Every entry ("leaf") ``f`` stands for the strip between ``f.y`` and the next
entry's ``y`` (``+inf`` for the last one).  ``f.region`` owns that strip on
the sweep line and has owned the rectangle ``[f.x_start, x_now] x strip``
without interruption; that rectangle has not been reported yet.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator

from .segtree import BG

Sink = Callable[[int, float, float, float, float], None]


class RegionLeaf:
    __slots__ = ("y", "region", "x_start", "left", "right", "parent", "red", "prev", "next")

    def __init__(self, y: float, region: int, x_start: float):
        self.y = y
        self.region = region
        self.x_start = x_start
        self.left: RegionLeaf = NIL
        self.right: RegionLeaf = NIL
        self.parent: RegionLeaf = NIL
        self.red = True
        self.prev: RegionLeaf | None = None
        self.next: RegionLeaf | None = None

    @property
    def y_top(self) -> float:
        return self.next.y if self.next is not None else math.inf

    def __repr__(self) -> str:
        return f"RegionLeaf(y={self.y}, region={self.region}, x_start={self.x_start})"


NIL = RegionLeaf.__new__(RegionLeaf)
NIL.y = math.nan
NIL.region = BG
NIL.x_start = math.nan
NIL.left = NIL.right = NIL.parent = NIL
NIL.red = False
NIL.prev = NIL.next = None


class RegionTree:
    """Balanced search over strip boundaries; persists across slabs."""

    def __init__(self, x_start: float = -math.inf):
        self.sentinel = RegionLeaf(-math.inf, BG, x_start)
        self.sentinel.red = False
        self.root = self.sentinel
        self.size = 1
        self.peak = 1
        self.searches = 0  # nodes inspected during descents
        self.restructures = 0  # rotations and recolourings

    # -- queries -------------------------------------------------------------

    def __len__(self) -> int:
        return self.size

    def leaves(self) -> Iterator[RegionLeaf]:
        f: RegionLeaf | None = self.sentinel
        while f is not None:
            yield f
            f = f.next

    def predecessor(self, y: float) -> RegionLeaf:
        """Rightmost leaf with ``leaf.y < y``; the sentinel when none is lower."""
        node, best = self.root, self.sentinel
        steps = 0
        while node is not NIL:
            steps += 1
            if node.y < y:
                best = node
                node = node.right
            else:
                node = node.left
        self.searches += steps
        return best

    def locate_range(self, y_lo: float, y_hi: float) -> tuple[RegionLeaf, RegionLeaf]:
        """Predecessor leaves of ``y_lo`` and ``y_hi``."""
        if not y_lo < y_hi:
            raise ValueError("empty range")
        p = self.predecessor(y_lo)
        q = p
        # walk when the range is short, otherwise search
        hops = 0
        while q.next is not None and q.next.y < y_hi and hops < 8:
            q = q.next
            hops += 1
        if q.next is not None and q.next.y < y_hi:
            q = self.predecessor(y_hi)
        self.searches += hops
        return p, q

    def report_between(self, p: RegionLeaf, q: RegionLeaf, sweep_x: float, sink: Sink,
                       y_lo: float = -math.inf, y_hi: float = math.inf,
                       report_background: bool = False) -> int:
        """Emit the strips of leaves ``p`` through ``q`` clipped to ``[y_lo, y_hi]``."""
        count = 0
        f: RegionLeaf | None = p
        while f is not None:
            lo, hi = max(f.y, y_lo), min(f.y_top, y_hi)
            if lo < hi and f.x_start < sweep_x and (f.region != BG or report_background):
                sink(f.region, f.x_start, sweep_x, lo, hi)
                count += 1
            if f is q:
                break
            f = f.next
        return count

    def remove_range(self, p: RegionLeaf, q: RegionLeaf) -> int:
        """Delete every leaf strictly between ``p`` and ``q``."""
        removed = 0
        f = p.next
        while f is not None and f is not q:
            nxt = f.next
            self.delete(f)
            removed += 1
            f = nxt
        return removed

    def insert_edge(self, y: float, region: int, x_now: float) -> RegionLeaf:
        p = self.predecessor(y)
        if p.next is not None and p.next.y == y:
            raise ValueError(f"a leaf at y={y} already exists")
        return self.insert_after(p, y, region, x_now)

    def set_region(self, leaf: RegionLeaf, owner: int, x_now: float, sink: Sink,
                   report_background: bool = False) -> None:
        """Hand ``leaf``'s strip to ``owner``, closing the previous pairing."""
        if leaf.region == owner:
            return
        if leaf.x_start < x_now and (leaf.region != BG or report_background):
            sink(leaf.region, leaf.x_start, x_now, leaf.y, leaf.y_top)
        leaf.region = owner
        leaf.x_start = x_now

    # -- batched ownership change ------------------------------------------------

    def repaint(self, lo: float, hi: float, pieces: list[tuple[float, float, int]],
                x_now: float, sink: Sink, report_background: bool = False) -> int:
        """Give ``[lo, hi]`` the owners in ``pieces`` at sweep position ``x_now``.

        ``pieces`` are ``(a, b, owner)`` tiling ``[lo, hi]`` bottom to top.
        A resulting strip keeps its old start-x only when it is a sub-strip
        of an old strip with the same owner; every part of an old strip not
        kept this way is reported.  Returns the number of reports.
        """
        p = self.predecessor(lo)
        old: list[RegionLeaf] = []
        f: RegionLeaf | None = p
        while f is not None and f.y < hi:
            old.append(f)
            f = f.next
        q = old[-1]
        above = f if (f is not None and f.y == hi) else None
        if above is not None:
            old.append(above)
        end = old[-1].y_top

        bounds: list[float] = [p.y]
        owners: list[int] = [p.region]

        def push(y: float, owner: int) -> None:
            if owner == owners[-1]:
                return
            bounds.append(y)
            owners.append(owner)

        for a, b, owner in pieces:
            push(a, owner)
        if above is None:
            if q.y_top > hi:
                push(hi, q.region)
        else:
            push(hi, above.region)
        bounds.append(end)

        # old strips: extents and owners
        o_lo = [g.y for g in old]
        o_hi = [g.y_top for g in old]
        kept: list[list[tuple[float, float]]] = [[] for _ in old]
        starts: list[float] = []
        j = 0
        for i, owner in enumerate(owners):
            a, b = bounds[i], bounds[i + 1]
            while o_hi[j] <= a:
                j += 1
            if old[j].region == owner and b <= o_hi[j]:
                starts.append(old[j].x_start)
                kept[j].append((a, b))
            else:
                starts.append(x_now)

        reported = 0
        for g, a0, b0, keep in zip(old, o_lo, o_hi, kept):
            if g.x_start >= x_now or (g.region == BG and not report_background):
                continue
            cur = a0
            for a, b in keep + [(b0, b0)]:
                if cur < a:
                    sink(g.region, g.x_start, x_now, cur, a)
                    reported += 1
                cur = max(cur, b)

        # restructure: drop stale boundaries, then fill in the new ones
        new_set = set(bounds[:-1])
        for g in old[1:]:
            if g.y not in new_set:
                self.delete(g)
        cur = p
        p.region, p.x_start = owners[0], starts[0]
        for i in range(1, len(owners)):
            y = bounds[i]
            nxt = cur.next
            if nxt is not None and nxt.y == y:
                cur = nxt
                cur.region, cur.x_start = owners[i], starts[i]
            else:
                cur = self.insert_after(cur, y, owners[i], starts[i])
        self.searches += len(old) + len(owners)
        return reported

    # -- red-black machinery ------------------------------------------------------

    def insert_after(self, anchor: RegionLeaf, y: float, region: int, x_start: float) -> RegionLeaf:
        """Insert a new leaf as the in-order successor of ``anchor``."""
        node = RegionLeaf(y, region, x_start)
        succ = anchor.next
        if anchor.right is NIL:
            anchor.right = node
            node.parent = anchor
        else:
            # succ is the leftmost node of anchor.right and has no left child
            succ.left = node
            node.parent = succ
        node.prev, node.next = anchor, succ
        anchor.next = node
        if succ is not None:
            succ.prev = node
        self.size += 1
        if self.size > self.peak:
            self.peak = self.size
        self._insert_fixup(node)
        return node

    def delete(self, z: RegionLeaf) -> None:
        if z is self.sentinel:
            raise ValueError("the sentinel leaf cannot be removed")
        if z.prev is not None:
            z.prev.next = z.next
        if z.next is not None:
            z.next.prev = z.prev
        y = z
        y_red = y.red
        if z.left is NIL:
            x = z.right
            self._transplant(z, z.right)
        elif z.right is NIL:
            x = z.left
            self._transplant(z, z.left)
        else:
            y = z.right
            while y.left is not NIL:
                y = y.left
            y_red = y.red
            x = y.right
            if y.parent is z:
                x.parent = y
            else:
                self._transplant(y, y.right)
                y.right = z.right
                y.right.parent = y
            self._transplant(z, y)
            y.left = z.left
            y.left.parent = y
            y.red = z.red
        if not y_red:
            self._delete_fixup(x)
        NIL.parent = NIL
        z.left = z.right = z.parent = NIL
        z.prev = z.next = None
        self.size -= 1

    def _transplant(self, u: RegionLeaf, v: RegionLeaf) -> None:
        if u.parent is NIL:
            self.root = v
        elif u is u.parent.left:
            u.parent.left = v
        else:
            u.parent.right = v
        v.parent = u.parent

    def _rotate_left(self, x: RegionLeaf) -> None:
        y = x.right
        x.right = y.left
        if y.left is not NIL:
            y.left.parent = x
        self._transplant(x, y)
        y.left = x
        x.parent = y
        self.restructures += 1

    def _rotate_right(self, x: RegionLeaf) -> None:
        y = x.left
        x.left = y.right
        if y.right is not NIL:
            y.right.parent = x
        self._transplant(x, y)
        y.right = x
        x.parent = y
        self.restructures += 1

    def _insert_fixup(self, z: RegionLeaf) -> None:
        while z.parent.red:
            g = z.parent.parent
            self.restructures += 1
            if z.parent is g.left:
                uncle = g.right
                if uncle.red:
                    z.parent.red = uncle.red = False
                    g.red = True
                    z = g
                    continue
                if z is z.parent.right:
                    z = z.parent
                    self._rotate_left(z)
                z.parent.red = False
                g.red = True
                self._rotate_right(g)
            else:
                uncle = g.left
                if uncle.red:
                    z.parent.red = uncle.red = False
                    g.red = True
                    z = g
                    continue
                if z is z.parent.left:
                    z = z.parent
                    self._rotate_right(z)
                z.parent.red = False
                g.red = True
                self._rotate_left(g)
        self.root.red = False

    def _delete_fixup(self, x: RegionLeaf) -> None:
        while x is not self.root and not x.red:
            self.restructures += 1
            parent = x.parent
            if x is parent.left:
                w = parent.right
                if w.red:
                    w.red = False
                    parent.red = True
                    self._rotate_left(parent)
                    w = parent.right
                if not w.left.red and not w.right.red:
                    w.red = True
                    x = parent
                else:
                    if not w.right.red:
                        w.left.red = False
                        w.red = True
                        self._rotate_right(w)
                        w = parent.right
                    w.red = parent.red
                    parent.red = False
                    w.right.red = False
                    self._rotate_left(parent)
                    x = self.root
            else:
                w = parent.left
                if w.red:
                    w.red = False
                    parent.red = True
                    self._rotate_right(parent)
                    w = parent.left
                if not w.right.red and not w.left.red:
                    w.red = True
                    x = parent
                else:
                    if not w.left.red:
                        w.right.red = False
                        w.red = True
                        self._rotate_left(w)
                        w = parent.left
                    w.red = parent.red
                    parent.red = False
                    w.left.red = False
                    self._rotate_right(parent)
                    x = self.root
        x.red = False

    def check(self) -> None:
        """Assert the red-black, ordering and threading invariants (tests only)."""
        assert not self.root.red
        assert self.root.parent is NIL

        def walk(node, lo, hi):
            if node is NIL:
                return 1, []
            assert lo < node.y < hi or node is self.sentinel
            if node.red:
                assert not node.left.red and not node.right.red
            if node.left is not NIL:
                assert node.left.parent is node
            if node.right is not NIL:
                assert node.right.parent is node
            bl, left = walk(node.left, lo, node.y)
            br, right = walk(node.right, node.y, hi)
            assert bl == br
            return bl + (0 if node.red else 1), left + [node] + right

        _, inorder = walk(self.root, -math.inf, math.inf)
        threaded = list(self.leaves())
        assert inorder == threaded, "thread order differs from tree order"
        assert len(threaded) == self.size
        for a, b in zip(threaded, threaded[1:]):
            assert b.prev is a

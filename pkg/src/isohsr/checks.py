"""Per-station invariant recomputation, enabled with ``HSR_DEBUG_CHECKS=1``.

Everything here is recomputed from the scene and the slab's segment list
by direct scans; only the node skeleton is borrowed from the live tree.
"""

from __future__ import annotations

import math

from .segtree import BG


class InvariantViolation(AssertionError):
    pass


def _slab_associations(tree, vsegs):
    """Canonical association by definition: range inside the edge, father's range not."""
    cache = getattr(tree, "_naive_assoc", None)
    if cache is not None:
        return cache
    parent = {}
    for u in tree.nodes:
        if not tree.is_leaf[u]:
            parent[2 * u] = u
            parent[2 * u + 1] = u
    assoc = {u: [] for u in tree.nodes}
    for s in vsegs:
        for u in tree.nodes:
            inside = s.y1 <= tree.y1[u] and tree.y2[u] <= s.y2
            f = parent.get(u)
            if inside and (f is None or not (s.y1 <= tree.y1[f] and tree.y2[f] <= s.y2)):
                assoc[u].append(s)
    tree._naive_assoc = (assoc, parent)
    return tree._naive_assoc


def naive_node_fields(tree, vsegs, spanning, j):
    """Recompute T_v, H_h, H and L of every node after event ``j`` of the slab.

    Returns ``(tv, hh, rec, sem)`` where ``rec`` maps node -> (H, L) from the
    recurrences and ``sem`` maps node -> (highest, lowest visible) obtained
    by enumerating the elementary intervals below the node.
    """
    assoc, _ = _slab_associations(tree, vsegs)
    tv = {}
    hh = {}
    for u in tree.nodes:
        best = BG
        for s in assoc[u]:
            if s.t_in <= j < s.t_out and s.z > best:
                best = s.z
        tv[u] = best
        best = BG
        for z, a, b in spanning:
            if a <= tree.y1[u] and tree.y2[u] <= b and z > best:
                best = z
        hh[u] = best

    rec = {}
    tops = {}
    for u in reversed(tree.nodes):  # children before parents
        if tree.is_leaf[u]:
            h = max(hh[u], tv[u])
            rec[u] = (h, h)
            tops[u] = [h]
        else:
            (hl, ll), (hr, lr) = rec[2 * u], rec[2 * u + 1]
            rec[u] = (max(hl, hr, tv[u]), max(min(ll, lr), tv[u]))
            tops[u] = [max(v, tv[u]) for v in tops[2 * u] + tops[2 * u + 1]]
    sem = {u: (max(tops[u]), min(tops[u])) for u in tree.nodes}
    return tv, hh, rec, sem


def check_segment_tree(engine) -> None:
    tree, j, x = engine.tree, engine.event_index, engine.x
    tv, hh, rec, sem = naive_node_fields(tree, engine.vsegs, engine.spanning, j)
    for u in tree.nodes:
        h, lo, top = tree.current(u, x)
        if (h, lo) != rec[u]:
            raise InvariantViolation(f"x={x} node {u}: (H, L)=({h}, {lo}) but recurrence gives {rec[u]}")
        if (h, lo) != sem[u]:
            raise InvariantViolation(f"x={x} node {u}: (H, L)=({h}, {lo}) but subscene gives {sem[u]}")
        if top != tv[u]:
            raise InvariantViolation(f"x={x} node {u}: T_v={top} but naive gives {tv[u]}")
        if tree.hh[u] != hh[u]:
            raise InvariantViolation(f"node {u}: H_h={tree.hh[u]} but naive gives {hh[u]}")


def check_region_tree(engine) -> None:
    scene, x = engine.scene, engine.x
    zrank = engine.zrank
    active = [(zrank[i], r) for i, r in enumerate(scene.rects) if r.x1 <= x < r.x2]

    def top(y):
        best = BG
        for z, r in active:
            if r.y1 < y < r.y2 and z > best:
                best = z
        return best

    leaves = list(engine.region.leaves())
    n = len(scene)
    if len(leaves) > 2 * n + 1:
        raise InvariantViolation(f"x={x}: {len(leaves)} leaves exceed 2n+1={2 * n + 1}")
    for f, g in zip(leaves, leaves[1:] + [None]):
        if g is None:
            y = f.y + 1 if f.y > -math.inf else 0.0
        elif f.y == -math.inf:
            y = g.y - 1
        else:
            y = (f.y + g.y) / 2
        want = top(y)
        if f.region != want:
            raise InvariantViolation(f"x={x}: strip above y={f.y} owned by {f.region}, naive top is {want}")
        if g is not None and g.region == f.region:
            raise InvariantViolation(f"x={x}: leaf y={g.y} separates two strips of {f.region}")
        if f.x_start > x:
            raise InvariantViolation(f"x={x}: strip above y={f.y} starts in the future")


def check_station(engine) -> None:
    check_segment_tree(engine)
    check_region_tree(engine)

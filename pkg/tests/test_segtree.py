import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isohsr.segtree import (
    BG, CursorOverrun, OpCounter, SegTree, VSeg, naive_span_array, topmost_span_array,
)


# -- topmost span array ---------------------------------------------------------

def test_span_array_example():
    segs = [(1, 0, 5, 9), (2, 2, 4, 7), (3, 0, 2, 5)]
    assert topmost_span_array(segs, 3) == [1, 1, 1, 1, 1, BG]


def test_span_array_example_without_top():
    segs = [(2, 2, 4, 7), (3, 0, 2, 5)]
    assert topmost_span_array(segs, 3) == [3, 3, 2, 2, BG, BG]


def test_span_array_rejects_unsorted_z():
    with pytest.raises(ValueError):
        topmost_span_array([(1, 0, 1, 1), (2, 0, 1, 5)], 2)


def test_span_array_rejects_out_of_range():
    with pytest.raises(ValueError):
        topmost_span_array([(1, 0, 7, 1)], 2)


def test_span_array_empty():
    assert topmost_span_array([], 0) == []
    assert topmost_span_array([], 2) == [BG] * 4


def _shapes(q):
    """Nested and disjoint span layouts over ``2q`` cells."""
    size = 2 * q
    nested = [(i, size - i) for i in range(q)]
    disjoint = [(2 * i, 2 * i + 2) for i in range(q)]
    staircase = [(i, i + q) for i in range(q)]
    return size, (nested, disjoint, staircase)


@pytest.mark.parametrize("q", range(1, 7))
def test_span_array_exhaustive_small(q):
    size, layouts = _shapes(q)
    for spans in layouts:
        for perm in itertools.permutations(range(q)):
            segs = [(i, a, b, perm[i]) for i, (a, b) in enumerate(spans)]
            segs.sort(key=lambda s: -s[3])
            assert topmost_span_array(segs, q) == naive_span_array(segs, size)


@given(st.data())
@settings(max_examples=300, deadline=None)
def test_span_array_random(data):
    q = data.draw(st.integers(0, 20))
    size = 2 * q
    segs = []
    for i in range(q):
        a = data.draw(st.integers(0, size))
        b = data.draw(st.integers(a, size))
        segs.append((i, a, b, i))
    zs = data.draw(st.permutations(range(q)))
    segs = sorted(((i, a, b, zs[i]) for i, a, b, _ in segs), key=lambda s: -s[3])
    assert topmost_span_array(segs, q) == naive_span_array(segs, size)


def test_span_array_counts_ops():
    ops = OpCounter()
    topmost_span_array([(0, 0, 4, 1)], 2, ops=ops)
    # four fills, four pointer hops, one per-segment step
    assert ops.count == 9


# -- skeleton -------------------------------------------------------------------

def test_two_intervals_three_nodes():
    t = SegTree([0, 1, 2])
    assert len(t) == 3
    assert t.canonical_nodes(0, 2) == [1]
    assert t.canonical_nodes(0, 1) == [2]
    assert t.postorder() == [2, 3, 1]


def test_full_edge_is_root_only():
    t = SegTree(range(9))
    assert t.canonical_nodes(0, 8) == [t.root]
    assert t.search_path(0, 8) == [t.root]


def _by_definition(t, y1, y2):
    parent = {2 * u + c: u for u in t.nodes if not t.is_leaf[u] for c in (0, 1)}

    def inside(u):
        return y1 <= t.y1[u] and t.y2[u] <= y2

    return {u for u in t.nodes if inside(u) and (u not in parent or not inside(parent[u]))}


@pytest.mark.parametrize("seed", range(20))
def test_canonical_nodes_by_definition(seed):
    rng = random.Random(seed)
    ys = sorted(rng.sample(range(100), rng.randint(2, 30)))
    t = SegTree(ys)
    for _ in range(30):
        a, b = sorted(rng.sample(ys, 2))
        canon = t.canonical_nodes(a, b)
        assert set(canon) == _by_definition(t, a, b)
        # canonical ranges tile [a, b]
        spans = sorted((t.y1[u], t.y2[u]) for u in canon)
        assert spans[0][0] == a and spans[-1][1] == b
        assert all(p[1] == q[0] for p, q in zip(spans, spans[1:]))
        # search path: canonical nodes plus their ancestors, children first
        path = t.search_path(a, b)
        anc = set()
        for u in canon:
            while u >= 1:
                anc.add(u)
                u //= 2
        assert set(path) == anc
        pos = {u: i for i, u in enumerate(path)}
        assert all(pos[u // 2] > pos[u] for u in path if u > 1)
        assert len(canon) <= 2 * math.ceil(math.log2(len(ys))) + 2


def test_single_coordinate_tree_has_one_leaf():
    t = SegTree([])
    assert len(t) == 1 and t.is_leaf[1]


# -- H_h ------------------------------------------------------------------------

def test_fill_hh_example():
    t = SegTree([0, 1, 2, 3, 4])
    # z=5 covers [0,4], z=7 covers [1,2]
    t.fill_hh([(5, 0, 4), (7, 1, 2)])
    assert t.hh[1] == 5
    leaves = [t.hh[t.leaf_node[i]] for i in range(4)]
    assert leaves == [5, 7, 5, 5]


def test_fill_hh_empty():
    t = SegTree([0, 1, 2])
    t.fill_hh([])
    assert all(t.hh[u] == BG for u in t.nodes)


@pytest.mark.parametrize("seed", range(20))
def test_fill_hh_matches_definition(seed):
    rng = random.Random(seed)
    ys = list(range(rng.randint(2, 25)))
    t = SegTree(ys)
    zs = rng.sample(range(100), rng.randint(0, 12))
    spanning = []
    for z in zs:
        a, b = sorted(rng.sample(ys, 2))
        spanning.append((z, a, b))
    t.fill_hh(spanning)
    for u in t.nodes:
        want = max((z for z, a, b in spanning if a <= t.y1[u] and t.y2[u] <= b), default=BG)
        assert t.hh[u] == want


# -- precomputed sequences ------------------------------------------------------

def test_top_sequence_left_event():
    t = SegTree([0, 1])
    t.fill_hh([])
    t.precompute([VSeg(3, 0, 1, 0, 1)], [10.0])
    assert t.top[1] == [BG, 3]
    assert t.xtop[1] == [10.0]


def test_top_sequence_left_then_right():
    t = SegTree([0, 1])
    t.fill_hh([])
    t.precompute([VSeg(3, 0, 1, 0, 1)], [10.0, 20.0])
    assert t.top[1] == [BG, 3, BG]
    assert t.top_at(1, 5.0) == BG
    assert t.top_at(1, 10.0) == 3
    assert t.top_at(1, 15.0) == 3
    assert t.top_at(1, 20.0) == BG


def test_precompute_rejects_orphan_event():
    t = SegTree([0, 1])
    t.fill_hh([])
    with pytest.raises(ValueError):
        t.precompute([VSeg(3, 0, 1, 0, 5)], [1.0, 2.0])


def _random_slab(rng):
    """Random vertical segments over integer y with a consistent event order."""
    k = rng.randint(1, 8)
    ys = list(range(rng.randint(2, 12)))
    segs = []
    for z in rng.sample(range(50), k):
        a, b = sorted(rng.sample(ys, 2))
        segs.append([z, a, b, None, None])
    events = []
    for i, s in enumerate(segs):
        kind = rng.choice(["open", "inside", "close", "span"])
        if kind in ("inside", "open"):
            events.append(("in", i, rng.random()))
        if kind in ("inside", "close"):
            events.append(("out", i, rng.random()))
    # an "out" must follow its "in"
    events.sort(key=lambda e: e[2])
    seen = set()
    ordered = []
    for ev in events:
        if ev[0] == "out" and ev[1] not in seen and any(e[0] == "in" and e[1] == ev[1] for e in events):
            continue
        seen.add(ev[1])
        ordered.append(ev)
    for ev in events:
        if ev not in ordered:
            ordered.append(ev)
    m = len(ordered)
    for i, s in enumerate(segs):
        s[3], s[4] = -1, m
    for j, (kind, i, _) in enumerate(ordered):
        segs[i][3 if kind == "in" else 4] = j
    vsegs = [VSeg(z, a, b, ti, to) for z, a, b, ti, to in segs]
    used = {i for _, i, _ in ordered}
    vsegs = [v for i, v in enumerate(vsegs) if i in used]
    spanning = []
    for z in rng.sample(range(50, 100), rng.randint(0, 3)):
        a, b = sorted(rng.sample(ys, 2))
        spanning.append((z - 60, a, b))
    return ys, vsegs, spanning, m


def _naive_fields(t, vsegs, spanning, j):
    """H and L per node after event j, from leaf cells and edge associations."""
    def inside(s, u):
        return s.y1 <= t.y1[u] and t.y2[u] <= s.y2

    def assoc(s, u):
        return inside(s, u) and (u == 1 or not inside(s, u // 2))

    active = [s for s in vsegs if s.t_in <= j < s.t_out]
    out = {}
    for u in t.nodes:
        below = [w for w in t.nodes if t.lo[u] <= t.lo[w] and t.hi[w] <= t.hi[u]]
        vals = []
        for leaf in below:
            if not t.is_leaf[leaf]:
                continue
            hh = max((z for z, a, b in spanning if a <= t.y1[leaf] and t.y2[leaf] <= b), default=BG)
            tv = max((s.z for s in active for w in below if assoc(s, w)
                      and t.lo[w] <= t.lo[leaf] and t.hi[leaf] <= t.hi[w]), default=BG)
            vals.append(max(hh, tv))
        out[u] = (max(vals), min(vals))
    return out


@pytest.mark.parametrize("seed", range(40))
def test_replay_matches_naive_simulation(seed):
    rng = random.Random(seed)
    ys, vsegs, spanning, m = _random_slab(rng)
    t = SegTree(ys)
    t.fill_hh(spanning)
    xs = [float(j) for j in range(m)]
    t.precompute(vsegs, xs)
    paths = {}
    for j in range(m):
        (s,) = [s for s in vsegs if j in (s.t_in, s.t_out)]
        for u in t.search_path(s.y1, s.y2):
            t.advance(u)
        want = _naive_fields(t, vsegs, spanning, j)
        for u in t.nodes:
            h, lo, _ = t.current(u, xs[j])
            assert (h, lo) == want[u], (j, u)
    for u in t.nodes:
        assert t.p[u] == t.update_count(u)
        with pytest.raises(CursorOverrun):
            t.advance(u)


def test_entries_counts_every_array():
    t = SegTree([0, 1, 2])
    t.fill_hh([])
    t.precompute([VSeg(1, 0, 2, 0, 1)], [3.0])
    # root: top 2 + xtop 1 + high 2 + low 2 + xhl 1 + 1; leaves: 1+0+1+1+0+1 each
    assert t.entries() == 9 + 4 + 4

import random

import pytest
from hypothesis import strategies as st

from isohsr.generate import generate
from isohsr.scene import Rect, Scene, canonicalize


def random_scene(n, seed, kind="uniform"):
    return canonicalize(generate(kind, n, seed))


def tied_scene(n, seed, span=6):
    """Small-integer scene where coordinate collisions are frequent."""
    rng = random.Random(seed)
    rects = []
    for i in range(n):
        x1 = rng.randrange(span)
        y1 = rng.randrange(span)
        rects.append(Rect(i, x1, x1 + rng.randint(1, span), y1, y1 + rng.randint(1, span),
                          rng.randrange(n + 2)))
    return Scene(tuple(rects))


@st.composite
def scenes(draw, max_n=10, span=12):
    n = draw(st.integers(0, max_n))
    rects = []
    for i in range(n):
        x1 = draw(st.integers(0, span - 1))
        y1 = draw(st.integers(0, span - 1))
        w = draw(st.integers(1, span))
        h = draw(st.integers(1, span))
        z = draw(st.integers(0, 3 * n))
        rects.append(Rect(i, x1, x1 + w, y1, y1 + h, z))
    return Scene(tuple(rects))


@pytest.fixture
def fig_scene():
    """Scene whose sweep reproduces the two region-tree walkthroughs.

    A.z < G.z < C.z < F.z < D.z, A.y1 < F.y1 < G.y1, D.y1 < F.y2 < D.y2.
    F enters at x=50 and leaves at x=80; C starts hidden under F.
    """
    return Scene((
        Rect(0, 0, 100, 0, 50, 1),      # A
        Rect(1, 10, 90, 20, 45, 2),     # G
        Rect(2, 5, 95, 30, 60, 5),      # D
        Rect(3, 50, 80, 15, 40, 4),     # F
        Rect(4, 60, 85, 25, 35, 3),     # C
    ))

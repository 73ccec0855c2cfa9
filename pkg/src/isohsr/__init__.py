"""Hidden surface removal for iso-oriented rectangles by a slab-decomposed plane sweep."""

from .oracle import build_grid, verify
from .scene import BACKGROUND, BACKGROUND_ID, Rect, Scene, canonicalize, validate
from .sweep import SweepResult, VisibleRegion, coalesce, run

__all__ = [
    "BACKGROUND", "BACKGROUND_ID", "Rect", "Scene", "SweepResult", "VisibleRegion",
    "build_grid", "canonicalize", "coalesce", "run", "validate", "verify",
]

"""Dot presence extraction from segmented cell boxes."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .image import BinaryImage, Rect
from .layout import BrailleGeometry, PageLayout
from .mapping import DotPattern

DEFAULT_FILL_THRESHOLD = 0.5


def _grid_edges(origin: int, size: int, parts: int) -> list[int]:
    return [origin + int(round(size * i / parts)) for i in range(parts + 1)]


def dot_area_px(geometry: BrailleGeometry) -> float:
    """Area of one embossed dot in pixels."""
    return math.pi * geometry.dot_radius_px ** 2


def extract_pattern(
    binary: BinaryImage,
    box: Rect,
    geometry: BrailleGeometry,
    fill_threshold: float = DEFAULT_FILL_THRESHOLD,
) -> DotPattern:
    """Read one cell: split the box into a 3x2 grid and threshold ink.

    A dot counts as present when its grid compartment holds at least
    fill_threshold times the area of a full dot (inclusive).  Dots are
    numbered 1..3 down the left column, 4..6 down the right.
    """
    if not 0 < fill_threshold <= 1:
        raise ValueError("fill_threshold must be in (0, 1]")
    px = binary.pixels
    xs = _grid_edges(box.x, box.w, 2)
    ys = _grid_edges(box.y, box.h, 3)
    need = fill_threshold * dot_area_px(geometry)
    dots = []
    for col in range(2):
        for row in range(3):
            x0, x1 = max(0, xs[col]), max(0, min(binary.width, xs[col + 1]))
            y0, y1 = max(0, ys[row]), max(0, min(binary.height, ys[row + 1]))
            count = int(px[y0:y1, x0:x1].sum()) if x1 > x0 and y1 > y0 else 0
            dots.append(count >= need)
    return DotPattern(tuple(dots))


def extract_page_patterns(
    binary: BinaryImage,
    layout: PageLayout,
    geometry: BrailleGeometry,
    fill_threshold: float = DEFAULT_FILL_THRESHOLD,
) -> list[list[DotPattern]]:
    return [
        [extract_pattern(binary, box, geometry, fill_threshold) for box in row]
        for row in layout.lines
    ]


def patterns_to_bitstrings(rows: Sequence[Sequence[DotPattern]]) -> str:
    """Debug dump: one line per braille row, cells as 6-bit groups."""
    return "\n".join(" ".join(p.bitstring() for p in row) for row in rows)

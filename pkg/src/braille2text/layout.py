"""Page segmentation: ink projections -> line bands -> cell boxes.

Everything is anchored on ink, not on page margins: the first band-height
window holding enough foreground anchors line placement, and the first
cell-width window holding enough foreground anchors cell placement within
each band.  Subsequent lines/cells sit at whole multiples of the
respective pitch, so rounding drift matches a renderer that accumulates
from the same floating point pitch.

Anchors are windowed sums rather than single rows/columns so that a
stray fleck of surviving noise cannot drag the whole grid off the text
block: a window must collect `min_ink` foreground pixels to count as
content.  The default of 1 keeps the historic exact behaviour for clean
input; the pipeline passes a threshold of a few dots' worth of edge ink.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .image import BinaryImage, Rect


class SegmentationError(ValueError):
    pass


MM_PER_INCH = 25.4


@dataclass(frozen=True)
class BrailleGeometry:
    """Physical cell geometry plus scan resolution.

    Distances are millimetres: dot_pitch between dot centres within a
    cell, cell_pitch between cell origins, line_pitch between line
    origins, dot_diameter of an embossed dot.
    """

    dot_pitch_mm: float = 2.5
    cell_pitch_mm: float = 6.2
    line_pitch_mm: float = 10.0
    dot_diameter_mm: float = 1.5
    dpi: int = 300

    def __post_init__(self):
        for name in ("dot_pitch_mm", "cell_pitch_mm", "line_pitch_mm", "dot_diameter_mm"):
            if getattr(self, name) <= 0:
                raise SegmentationError(f"{name} must be positive")
        if self.dpi <= 0:
            raise SegmentationError("dpi must be positive")
        if not self.dot_pitch_mm < self.cell_pitch_mm < self.line_pitch_mm:
            raise SegmentationError("expected dot pitch < cell pitch < line pitch")

    def px(self, mm: float) -> float:
        return mm * self.dpi / MM_PER_INCH

    @property
    def dot_pitch_px(self) -> float:
        return self.px(self.dot_pitch_mm)

    @property
    def cell_pitch_px(self) -> float:
        return self.px(self.cell_pitch_mm)

    @property
    def line_pitch_px(self) -> float:
        return self.px(self.line_pitch_mm)

    @property
    def dot_radius_px(self) -> float:
        return self.px(self.dot_diameter_mm) / 2.0

    @property
    def cell_box_width(self) -> int:
        return int(round(2 * self.dot_pitch_px))

    @property
    def cell_box_height(self) -> int:
        return int(round(3 * self.dot_pitch_px))


def row_profile(binary: BinaryImage) -> np.ndarray:
    """Foreground count per image row."""
    return binary.pixels.sum(axis=1, dtype=np.int64)


def column_profile(binary: BinaryImage) -> np.ndarray:
    """Foreground count per image column."""
    return binary.pixels.sum(axis=0, dtype=np.int64)


@dataclass
class PageLayout:
    lines: list[list[Rect]] = field(default_factory=list)

    @property
    def line_count(self) -> int:
        return len(self.lines)

    @property
    def cell_count(self) -> int:
        return sum(len(row) for row in self.lines)


def _window_sums(prof: np.ndarray, width: int) -> np.ndarray:
    """sums[i] = prof[i:i+width].sum(), windows truncated at the end."""
    c = np.concatenate(([0], np.cumsum(prof, dtype=np.int64)))
    hi = np.minimum(np.arange(len(prof)) + width, len(prof))
    return c[hi] - c[: len(prof)]


def _run_starts(prof: np.ndarray, min_gap: int) -> np.ndarray:
    """Rows that begin an ink run preceded by at least min_gap blank rows.

    Only such rows can start a band: rows inside a run (and run starts
    after the narrow gaps between dot rows of one band) never qualify,
    so a window reaching into a denser following line cannot win.
    """
    inked = np.flatnonzero(prof)
    if inked.size == 0:
        return inked
    gaps = np.diff(inked)
    keep = np.concatenate(([True], gaps > min_gap))
    return inked[keep]


def _best_band_top(starts: np.ndarray, sums: np.ndarray, lo: int, hi: int):
    """Run start in [lo, hi) whose forward window catches the most ink."""
    lo = max(lo, 0)
    hi = min(hi, len(sums))
    cand = starts[(starts >= lo) & (starts < hi)]
    if cand.size == 0:
        return None
    return int(cand[int(np.argmax(sums[cand]))])


def find_line_bands(
    binary: BinaryImage, geometry: BrailleGeometry, min_band_ink: int = 1
) -> list[int]:
    """Ink-top row of every braille line, top to bottom.

    The reference band is found near the first band-height window whose
    ink count reaches min_band_ink, refined to the gap-preceded run
    start covering the most ink (the band's actual ink top).  Band k is
    then looked for around ref + k*line_pitch with the same refinement
    inside a +-20%-of-pitch window; a window short of min_band_ink is
    skipped (a blank line), but scanning continues to the last inked row.
    """
    prof = row_profile(binary)
    inked = np.flatnonzero(prof)
    if inked.size == 0:
        raise SegmentationError("no foreground ink to segment")
    last = int(inked[-1])
    height = geometry.cell_box_height
    # half the nominal blank space between consecutive line bands
    min_gap = max(2, int(round((geometry.line_pitch_px - height) / 2)))
    starts = _run_starts(prof, min_gap)
    sums = _window_sums(prof, height)
    qualified = np.flatnonzero(sums >= min_band_ink)
    if qualified.size == 0:
        raise SegmentationError("no window reaches the band ink threshold")
    r0 = int(qualified[0])
    ref = _best_band_top(starts, sums, r0, r0 + height)
    if ref is None:
        raise SegmentationError("no band start near the first qualifying window")
    pitch = geometry.line_pitch_px
    tol = max(2, int(round(0.2 * pitch)))
    tops = [ref]
    k = 1
    while True:
        est = ref + int(round(k * pitch))
        if est > last + tol:
            break
        top = _best_band_top(starts, sums, est - tol, est + tol + 1)
        if top is not None and sums[top] >= min_band_ink:
            tops.append(top)
        k += 1
    return tops


def find_cell_starts(
    binary: BinaryImage,
    geometry: BrailleGeometry,
    band_top: int,
    min_cell_ink: int = 1,
) -> list[int]:
    """Left x of every cell box in the band starting at band_top.

    Anchored on the first inked column at or after the first cell-width
    window holding min_cell_ink foreground pixels.  Cells continue at
    pitch multiples until the start would pass the last inked column,
    so gaps between words stay in the list as blank cells.
    """
    height = geometry.cell_box_height
    width = geometry.cell_box_width
    y1 = min(binary.height, band_top + height)
    band = BinaryImage(binary.pixels[band_top:y1, :])
    prof = column_profile(band)
    inked = np.flatnonzero(prof)
    if inked.size == 0:
        return []
    last = int(inked[-1])
    sums = _window_sums(prof, width)
    qualified = np.flatnonzero(sums >= min_cell_ink)
    if qualified.size == 0:
        return []
    c0 = int(qualified[0])
    first = c0 + int(np.flatnonzero(prof[c0:])[0])
    pitch = geometry.cell_pitch_px
    starts = []
    k = 0
    while True:
        x = first + int(round(k * pitch))
        if x > last:
            break
        starts.append(x)
        k += 1
    return starts


def segment_page(
    binary: BinaryImage,
    geometry: BrailleGeometry,
    min_band_ink: int = 1,
    min_cell_ink: int = 1,
) -> PageLayout:
    """Full segmentation: line bands, then cell boxes inside each."""
    w = geometry.cell_box_width
    h = geometry.cell_box_height
    lines: list[list[Rect]] = []
    for top in find_line_bands(binary, geometry, min_band_ink):
        starts = find_cell_starts(binary, geometry, top, min_cell_ink)
        boxes = [Rect(x, top, w, h) for x in starts]
        lines.append(boxes)
    return PageLayout(lines=lines)

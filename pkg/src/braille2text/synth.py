"""Synthetic page generation: text -> cells -> rendered scan.

The encoder is the exact inverse of the decoder's resolution rules, so
rendered pages round-trip losslessly:

* a whole token is replaced by a single contraction cell only when that
  cell, standing alone, decodes back to the same token;
* contraction cells that collide with letters are never used inside a
  token; ones that collide with punctuation only strictly inside; the
  rest anywhere;
* digit runs become a number sign plus a..j cells; a fresh number sign
  is emitted after any interruption;
* Devanagari/Tamil text is decomposed to independent-vowel form first
  and re-composed as a self-check (tokens where an independent vowel
  follows a bare consonant cannot round-trip and are rejected).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import indic
from .decode import resolve_graphic
from .image import GrayImage, Rect
from .layout import BrailleGeometry
from .mapping import (
    AJ_SEQ_TO_DIGIT,
    NUMBER_SIGN_SEQ,
    DotPattern,
    MappingTable,
    load_table,
    pattern_to_canonical,
    seq_to_pattern,
)

_ROUND = lambda a: np.floor(a + 0.5)


class EncodeError(ValueError):
    pass


_DIGIT_TO_AJ_SEQ = {d: s for s, d in AJ_SEQ_TO_DIGIT.items()}


class Encoder:
    def __init__(self, table: MappingTable, language: str):
        self.language = language
        self.script = indic.LANGUAGE_SCRIPT.get(language)
        self._letters = {e.grapheme: e.seq for e in table.entries if e.cls == "letter"}
        self._punct = {e.grapheme: e.seq for e in table.entries if e.cls == "punctuation"}
        contractions = sorted(
            table.contractions(), key=lambda e: (-len(e.grapheme), e.grapheme)
        )
        self._whole = {}
        self._inner = []
        for e in contractions:
            entries = table.lookup(e.seq)
            if resolve_graphic(entries, standalone=True, interior=False) is e:
                self._whole[e.grapheme] = e.seq
            if "letter" not in entries:
                # punctuation collisions restrict the cell to strictly
                # inside a token; no collision means anywhere
                self._inner.append((e.grapheme, e.seq, "punctuation" in entries))

    def encode_token(self, token: str) -> list[DotPattern]:
        """Cells for one whitespace-delimited token."""
        if not token:
            raise EncodeError("empty token")
        if self.script is not None:
            decomposed = indic.decompose(token, self.script)
            if indic.compose(decomposed, self.script) != token:
                raise EncodeError(f"token {token!r} cannot round-trip through cells")
            token = decomposed
        if token in self._whole:
            return [seq_to_pattern(self._whole[token])]
        cells: list[DotPattern] = []
        for run, is_digits in _runs(token):
            if is_digits:
                cells.append(seq_to_pattern(NUMBER_SIGN_SEQ))
                cells.extend(seq_to_pattern(_DIGIT_TO_AJ_SEQ[d]) for d in run)
            else:
                cells.extend(self._encode_fragment(run, token))
        if len(cells) >= 2 and pattern_to_canonical(cells[0]) == NUMBER_SIGN_SEQ:
            # a token-initial number-sign-shaped letter followed by a
            # digit-capable cell would decode as a numeral run
            if pattern_to_canonical(cells[1]) in AJ_SEQ_TO_DIGIT and not token[0].isdigit():
                raise EncodeError(f"token {token!r} would decode as a number")
        return cells

    def _encode_fragment(self, fragment: str, token: str) -> list[DotPattern]:
        out: list[DotPattern] = []
        i = 0
        while i < len(fragment):
            matched = False
            for grapheme, seq, interior_only in self._inner:
                j = i + len(grapheme)
                if fragment[i:j] != grapheme:
                    continue
                if interior_only and (i == 0 or j == len(fragment)):
                    continue
                out.append(seq_to_pattern(seq))
                i = j
                matched = True
                break
            if matched:
                continue
            ch = fragment[i]
            seq = self._letters.get(ch) or self._punct.get(ch)
            if seq is None:
                raise EncodeError(f"no cell for {ch!r} in token {token!r}")
            out.append(seq_to_pattern(seq))
            i += 1
        return out


def _runs(token: str):
    """Split into maximal (run, is_digits) pieces."""
    start = 0
    for i in range(1, len(token) + 1):
        if i == len(token) or token[i].isdigit() != token[start].isdigit():
            yield token[start:i], token[start].isdigit()
            start = i


def encode_text(text: str, language: str, grade: int = 2) -> list[list[DotPattern]]:
    """Cells per whitespace token, in order."""
    table = load_table(language, grade)
    enc = Encoder(table, language)
    return [enc.encode_token(tok) for tok in text.split()]


# --- rendering --------------------------------------------------------------


@dataclass(frozen=True)
class RenderParams:
    geometry: BrailleGeometry = field(default_factory=BrailleGeometry)
    background: int = 215
    dot_value: int = 140
    margin_mm: float = 12.0
    max_cells_per_line: int = 56

    def __post_init__(self):
        if not 0 <= self.dot_value < self.background <= 255:
            raise ValueError("expected 0 <= dot_value < background <= 255")


@dataclass
class TruthLine:
    patterns: list[DotPattern]
    boxes: list[Rect]
    ink_top: int
    ink_left: int


@dataclass
class PageTruth:
    lines: list[TruthLine]

    @property
    def line_count(self) -> int:
        return len(self.lines)

    @property
    def cell_count(self) -> int:
        return sum(len(ln.patterns) for ln in self.lines)

    def pattern_rows(self) -> list[list[DotPattern]]:
        return [list(ln.patterns) for ln in self.lines]


@dataclass
class RenderResult:
    image: GrayImage
    truth: PageTruth


def wrap_words(word_cells: list[list[DotPattern]], max_cells: int) -> list[list[DotPattern]]:
    """Greedy wrap; words on one line are separated by one blank cell."""
    lines: list[list[DotPattern]] = []
    current: list[DotPattern] = []
    for cells in word_cells:
        if not cells:
            continue
        if len(cells) > max_cells:
            raise EncodeError(f"word of {len(cells)} cells exceeds line width {max_cells}")
        need = len(cells) + (1 if current else 0)
        if current and len(current) + need > max_cells:
            lines.append(current)
            current = []
        if current:
            current.append(DotPattern.blank())
        current.extend(cells)
    if current:
        lines.append(current)
    return lines


def render_page(word_cells: list[list[DotPattern]], params: RenderParams = RenderParams()) -> RenderResult:
    """Draw cells as dark disks on a light page.

    Dots are hard disks of the geometry's dot diameter.  Ground truth
    boxes use the same anchoring rule as the segmenter: first inked row
    of the line, leftmost inked column, then pitch multiples.
    """
    geo = params.geometry
    lines = wrap_words(word_cells, params.max_cells_per_line)
    if not lines:
        raise EncodeError("nothing to render")
    margin = geo.px(params.margin_mm)
    cp, lp, dp = geo.cell_pitch_px, geo.line_pitch_px, geo.dot_pitch_px
    radius = geo.dot_radius_px
    width = int(round(2 * margin + params.max_cells_per_line * cp))
    height = int(round(2 * margin + (len(lines) - 1) * lp + geo.cell_box_height))
    page = np.full((height, width), params.background, dtype=np.uint8)

    truth_lines: list[TruthLine] = []
    for li, cells in enumerate(lines):
        oy = margin + li * lp
        ink_top, ink_left = height, width
        for ci, pat in enumerate(cells):
            ox = margin + ci * cp
            for k, present in enumerate(pat.dots):
                if not present:
                    continue
                col, row = divmod(k, 3)
                cx = ox + radius + col * dp
                cy = oy + radius + row * dp
                x0, x1 = int(np.floor(cx - radius)), int(np.ceil(cx + radius)) + 1
                y0, y1 = int(np.floor(cy - radius)), int(np.ceil(cy + radius)) + 1
                yy, xx = np.ogrid[y0:y1, x0:x1]
                mask = (xx - cx) ** 2 + (yy - cy) ** 2 <= radius**2
                page[y0:y1, x0:x1][mask] = params.dot_value
                ys, xs = np.nonzero(mask)
                ink_top = min(ink_top, y0 + int(ys.min()))
                ink_left = min(ink_left, x0 + int(xs.min()))
        boxes = [
            Rect(ink_left + int(round(ci * cp)), ink_top, geo.cell_box_width, geo.cell_box_height)
            for ci in range(len(cells))
        ]
        truth_lines.append(TruthLine(list(cells), boxes, ink_top, ink_left))
    return RenderResult(image=GrayImage(page), truth=PageTruth(truth_lines))


# --- scan degradation -------------------------------------------------------


def add_noise(
    image: GrayImage,
    seed: int,
    gaussian_sigma: float = 8.0,
    speck_fraction: float = 0.0,
    speck_radius: float = 6.5,
    speck_value: int = 140,
) -> GrayImage:
    """Deterministic scan degradation.

    speck_fraction is the expected fraction of page area covered by
    dark circular specks; the speck count is derived from it.  Specks
    land first, then pixel-wise gaussian noise.
    """
    if gaussian_sigma < 0 or speck_fraction < 0:
        raise ValueError("noise parameters must be non-negative")
    rng = np.random.default_rng(seed)
    h, w = image.pixels.shape
    out = image.pixels.astype(np.float64)
    if speck_fraction > 0:
        area = np.pi * speck_radius**2
        count = int(round(speck_fraction * w * h / area))
        for _ in range(count):
            cx = rng.uniform(0, w)
            cy = rng.uniform(0, h)
            x0, x1 = int(np.floor(cx - speck_radius)), int(np.ceil(cx + speck_radius)) + 1
            y0, y1 = int(np.floor(cy - speck_radius)), int(np.ceil(cy + speck_radius)) + 1
            x0c, y0c = max(0, x0), max(0, y0)
            x1c, y1c = min(w, x1), min(h, y1)
            if x1c <= x0c or y1c <= y0c:
                continue
            yy, xx = np.ogrid[y0c:y1c, x0c:x1c]
            mask = (xx - cx) ** 2 + (yy - cy) ** 2 <= speck_radius**2
            out[y0c:y1c, x0c:x1c][mask] = speck_value
    if gaussian_sigma > 0:
        out = out + rng.normal(0.0, gaussian_sigma, size=out.shape)
    return GrayImage(np.clip(_ROUND(out), 0, 255).astype(np.uint8))


def make_page(
    language: str,
    n_words: int,
    seed: int,
    grade: int = 2,
    params: RenderParams = RenderParams(),
) -> tuple[str, RenderResult]:
    """Text plus rendered page for it, both deterministic in seed."""
    from .corpus import make_page_text

    text = make_page_text(language, n_words, seed)
    cells = encode_text(text, language, grade)
    return text, render_page(cells, params)

"""End-to-end conversion: scanned page image -> text.

Stage order is: enhancement chain (configurable), gradient edge map,
border-component autocrop, line/cell segmentation, dot extraction,
trie decoding, and (for Devanagari/Tamil) matra composition.

Gaussian smoothing runs exactly once: immediately after the
morphological step when "morph" is part of the enhancement order,
otherwise right before edge detection.  Running the filter on the
morphological output keeps speck removal exact (the structuring element
sees crisp blobs, not blurred ones), and the bundling is what makes the
enhancement order observable at all: the grayscale open/close commutes
with any monotone point map, so without the bundled smoothing every
ordering of the three steps would produce the same edge map.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Optional

from . import indic
from .decode import DecodeResult, decode_cells
from .enhance import (
    PiecewiseParams,
    contrast_stretch,
    edge_map,
    gaussian_smooth,
    intensity_adjust,
    morph_close,
    morph_open,
    prewitt_gradients,
    relative_threshold,
    autocrop_content,
)
from .extract import dot_area_px, extract_page_patterns
from .image import GrayImage, Rect
from .layout import BrailleGeometry, PageLayout, segment_page
from .mapping import DotPattern, build_trie, load_table

ENHANCE_STEPS = ("contrast", "intensity", "morph")

# Segmentation anchors must gather this many dots' worth of edge ink
# (scaled by the fill threshold) before a window counts as content, so a
# stray surviving speck cannot anchor the line or cell grid.
BAND_ANCHOR_DOTS = 3.0
CELL_ANCHOR_DOTS = 0.3


class PipelineError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    language: str = "en"
    grade: int = 2
    geometry: BrailleGeometry = field(default_factory=BrailleGeometry)
    enhance_order: tuple[str, ...] = ("contrast", "intensity", "morph")
    contrast: PiecewiseParams = field(
        default_factory=lambda: PiecewiseParams(165, 8, 195, 247)
    )
    intensity_low: int = 40
    intensity_high: int = 170
    smooth_sigma: float = 1.3
    morph_radius: int = 7
    morph_mode: str = "close"  # "close" removes dark specks, "open" bright ones
    edge_fraction: float = 0.25
    edge_threshold: Optional[float] = None  # absolute override
    fill_threshold: float = 0.7
    autocrop_margin: int = 8
    compose_script: bool = True

    def __post_init__(self):
        unknown = set(self.enhance_order) - set(ENHANCE_STEPS)
        if unknown:
            raise PipelineError(f"unknown enhancement steps {sorted(unknown)}")
        if len(set(self.enhance_order)) != len(self.enhance_order):
            raise PipelineError("enhancement steps cannot repeat")
        if self.morph_mode not in ("open", "close"):
            raise PipelineError("morph_mode must be 'open' or 'close'")


@dataclass
class ConversionReport:
    text: str
    layout: PageLayout  # boxes in original page coordinates
    patterns: list[list[DotPattern]]
    decoded: DecodeResult
    crop: Rect
    edge_threshold: float
    timings: dict[str, float]
    config: PipelineConfig

    @property
    def line_count(self) -> int:
        return self.layout.line_count

    @property
    def cell_count(self) -> int:
        return self.layout.cell_count

    @property
    def unmapped_cells(self) -> int:
        return self.decoded.unmapped_cells

    @property
    def total_seconds(self) -> float:
        return sum(self.timings.values())


def _enhance(img: GrayImage, cfg: PipelineConfig, timings: dict) -> GrayImage:
    smoothed = False
    for step in cfg.enhance_order:
        t0 = time.perf_counter()
        if step == "contrast":
            img = contrast_stretch(img, cfg.contrast)
        elif step == "intensity":
            img = intensity_adjust(img, cfg.intensity_low, cfg.intensity_high)
        else:
            op = morph_close if cfg.morph_mode == "close" else morph_open
            img = op(img, cfg.morph_radius)
            if cfg.smooth_sigma > 0:
                img = gaussian_smooth(img, cfg.smooth_sigma)
            smoothed = True
        timings[step] = time.perf_counter() - t0
    if not smoothed and cfg.smooth_sigma > 0:
        t0 = time.perf_counter()
        img = gaussian_smooth(img, cfg.smooth_sigma)
        timings["smooth"] = time.perf_counter() - t0
    return img


def run_pipeline(image: GrayImage, config: PipelineConfig = PipelineConfig()) -> ConversionReport:
    timings: dict[str, float] = {}
    img = _enhance(image, config, timings)

    t0 = time.perf_counter()
    grads = prewitt_gradients(img)
    threshold = (
        config.edge_threshold
        if config.edge_threshold is not None
        else relative_threshold(grads, config.edge_fraction)
    )
    edges = edge_map(grads, threshold)
    timings["edges"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    crop = autocrop_content(edges, margin=config.autocrop_margin)
    cropped = edges.crop(crop)
    dot_ink = config.fill_threshold * dot_area_px(config.geometry)
    layout = segment_page(
        cropped,
        config.geometry,
        min_band_ink=max(1, int(round(BAND_ANCHOR_DOTS * dot_ink))),
        min_cell_ink=max(1, int(round(CELL_ANCHOR_DOTS * dot_ink))),
    )
    timings["segment"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    patterns = extract_page_patterns(cropped, layout, config.geometry, config.fill_threshold)
    trie = build_trie(load_table(config.language, config.grade))
    decoded = decode_cells(patterns, trie)
    text = decoded.text
    script = indic.LANGUAGE_SCRIPT.get(config.language)
    if config.compose_script and script:
        text = indic.compose(text, script)
    timings["decode"] = time.perf_counter() - t0

    page_layout = PageLayout(
        lines=[
            [Rect(b.x + crop.x, b.y + crop.y, b.w, b.h) for b in row]
            for row in layout.lines
        ]
    )
    return ConversionReport(
        text=text,
        layout=page_layout,
        patterns=patterns,
        decoded=decoded,
        crop=crop,
        edge_threshold=float(threshold),
        timings=timings,
        config=config,
    )

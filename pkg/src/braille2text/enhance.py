"""Image enhancement and edge detection for braille scans.

Dots emboss as small dark disks on a bright background, usually with weak
contrast.  The stages here turn such a scan into a clean binary edge map:

  contrast_stretch   piecewise-linear stretch anchored at (0,0) and (255,255)
  intensity_adjust   clamp-and-rescale of a chosen input range to 0..255
  gaussian_smooth    separable blur, edge-replicated borders
  morph_open/close   flat grayscale morphology with a Euclidean disk
  prewitt_gradients  3x3 Prewitt correlation, integer-exact
  edge_map           gradient-magnitude threshold (strict)
  autocrop_content   drop border-connected clutter, crop to the remainder

All intensity outputs round half-up so results are identical across
platforms.  Border policy everywhere is edge replication.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, floor, sqrt

import numpy as np
from scipy import ndimage

from .image import BinaryImage, GrayImage, Rect


class EnhanceError(ValueError):
    """Raised for invalid enhancement parameters or degenerate content."""


def _round_half_up(values: np.ndarray) -> np.ndarray:
    # np.round ties to even; the pipeline wants plain .5-up everywhere.
    return np.floor(values + 0.5)


@dataclass(frozen=True)
class PiecewiseParams:
    """Knee points of the contrast-stretch map: (r1,s1) and (r2,s2)."""

    r1: int
    s1: int
    r2: int
    s2: int

    def __post_init__(self):
        if not (0 <= self.r1 < self.r2 <= 255):
            raise EnhanceError(f"need 0 <= r1 < r2 <= 255, got r1={self.r1} r2={self.r2}")
        if not (0 <= self.s1 <= self.s2 <= 255):
            raise EnhanceError(f"need 0 <= s1 <= s2 <= 255, got s1={self.s1} s2={self.s2}")


def _piecewise_lut(params: PiecewiseParams) -> np.ndarray:
    xs = np.array([0, params.r1, params.r2, 255], dtype=np.float64)
    ys = np.array([0, params.s1, params.s2, 255], dtype=np.float64)
    lut = _round_half_up(np.interp(np.arange(256, dtype=np.float64), xs, ys))
    return lut.astype(np.uint8)


def contrast_stretch(img: GrayImage, params: PiecewiseParams) -> GrayImage:
    """Piecewise-linear intensity map through (0,0),(r1,s1),(r2,s2),(255,255)."""
    return GrayImage(_piecewise_lut(params)[img.pixels])


def intensity_adjust(img: GrayImage, low: int, high: int) -> GrayImage:
    """Stretch [low, high] to [0, 255]; values outside clamp to 0 / 255."""
    if not (0 <= low < high <= 255):
        raise EnhanceError(f"need 0 <= low < high <= 255, got [{low},{high}]")
    ramp = (np.arange(256, dtype=np.float64) - low) * 255.0 / (high - low)
    lut = np.clip(_round_half_up(ramp), 0, 255).astype(np.uint8)
    return GrayImage(lut[img.pixels])


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian taps with radius ceil(3*sigma)."""
    if sigma <= 0:
        raise EnhanceError(f"sigma must be positive, got {sigma}")
    radius = ceil(3.0 * sigma)
    xs = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(xs * xs) / (2.0 * sigma * sigma))
    return kernel / kernel.sum()


def gaussian_smooth(img: GrayImage, sigma: float) -> GrayImage:
    """Separable Gaussian blur; borders replicate the nearest edge pixel."""
    kernel = gaussian_kernel(sigma)
    radius = len(kernel) // 2
    acc = img.pixels.astype(np.float64)
    for axis in (0, 1):
        pad = [(0, 0), (0, 0)]
        pad[axis] = (radius, radius)
        padded = np.pad(acc, pad, mode="edge")
        out = np.zeros_like(acc)
        for i, weight in enumerate(kernel):
            if axis == 0:
                out += weight * padded[i : i + acc.shape[0], :]
            else:
                out += weight * padded[:, i : i + acc.shape[1]]
        acc = out
    return GrayImage(np.clip(_round_half_up(acc), 0, 255).astype(np.uint8))


def disk_chords(radius: int) -> list[tuple[int, int]]:
    """(row offset, half-width) pairs of the inclusive Euclidean disk."""
    if radius < 1:
        raise EnhanceError(f"disk radius must be >= 1, got {radius}")
    return [(dy, floor(sqrt(radius * radius - dy * dy))) for dy in range(-radius, radius + 1)]


def _shift_axis(arr: np.ndarray, offset: int, axis: int) -> np.ndarray:
    """Shift with edge replication (window sliding off the border clamps)."""
    if offset == 0:
        return arr
    out = np.empty_like(arr)
    src = [slice(None), slice(None)]
    dst = [slice(None), slice(None)]
    fill = [slice(None), slice(None)]
    if offset > 0:
        src[axis] = slice(offset, None)
        dst[axis] = slice(0, arr.shape[axis] - offset)
        fill[axis] = slice(arr.shape[axis] - offset, None)
        edge = arr.take([-1], axis=axis)
    else:
        src[axis] = slice(0, arr.shape[axis] + offset)
        dst[axis] = slice(-offset, None)
        fill[axis] = slice(0, -offset)
        edge = arr.take([0], axis=axis)
    out[tuple(dst)] = arr[tuple(src)]
    out[tuple(fill)] = edge
    return out


def _rank_filter_1d(arr: np.ndarray, halfwidth: int, axis: int, reducer) -> np.ndarray:
    if halfwidth == 0:
        return arr
    out = arr.copy()
    for off in range(1, halfwidth + 1):
        reducer(out, _shift_axis(arr, off, axis), out=out)
        reducer(out, _shift_axis(arr, -off, axis), out=out)
    return out


def _disk_rank(arr: np.ndarray, radius: int, reducer) -> np.ndarray:
    # Decompose the disk into horizontal chords: run the 1-D filter once per
    # distinct chord width, then combine the row-shifted results.
    chords = disk_chords(radius)
    by_width: dict[int, np.ndarray] = {}
    for _, hw in chords:
        if hw not in by_width:
            by_width[hw] = _rank_filter_1d(arr, hw, axis=1, reducer=reducer)
    out = None
    for dy, hw in chords:
        layer = _shift_axis(by_width[hw], dy, axis=0)
        out = layer.copy() if out is None else reducer(out, layer, out=out)
    return out


def erode(img: GrayImage, radius: int) -> GrayImage:
    """Flat grayscale erosion (disk minimum)."""
    return GrayImage(_disk_rank(img.pixels, radius, np.minimum))


def dilate(img: GrayImage, radius: int) -> GrayImage:
    """Flat grayscale dilation (disk maximum)."""
    return GrayImage(_disk_rank(img.pixels, radius, np.maximum))


def morph_open(img: GrayImage, radius: int) -> GrayImage:
    """Erosion then dilation; removes bright structures smaller than the disk."""
    return dilate(erode(img, radius), radius)


def morph_close(img: GrayImage, radius: int) -> GrayImage:
    """Dilation then erosion; removes dark structures smaller than the disk.

    Braille scans carry dark dots, so dark speck noise is the usual target.
    """
    return erode(dilate(img, radius), radius)


@dataclass(frozen=True)
class GradientPair:
    """Signed Prewitt responses; int32, exact."""

    gx: np.ndarray
    gy: np.ndarray

    def magnitude(self) -> np.ndarray:
        gxf = self.gx.astype(np.float64)
        gyf = self.gy.astype(np.float64)
        return np.sqrt(gxf * gxf + gyf * gyf)


def prewitt_gradients(img: GrayImage) -> GradientPair:
    """3x3 Prewitt correlation with edge replication.

    gx is positive where intensity rises left-to-right, gy where it rises
    top-to-bottom, so gy(img) == gx(img.T).T.
    """
    padded = np.pad(img.pixels.astype(np.int32), 1, mode="edge")
    h, w = img.pixels.shape
    rows = padded[:-2, :] + padded[1:-1, :] + padded[2:, :]  # 3-row column sums
    gx = rows[:, 2:] - rows[:, :-2]
    cols = padded[:, :-2] + padded[:, 1:-1] + padded[:, 2:]  # 3-col row sums
    gy = cols[2:, :] - cols[:-2, :]
    assert gx.shape == (h, w) and gy.shape == (h, w)
    return GradientPair(gx=gx, gy=gy)


def edge_map(gradients: GradientPair, threshold: float) -> BinaryImage:
    """Foreground where sqrt(gx^2 + gy^2) exceeds threshold strictly."""
    if threshold < 0:
        raise EnhanceError(f"threshold must be >= 0, got {threshold}")
    gxf = gradients.gx.astype(np.float64)
    gyf = gradients.gy.astype(np.float64)
    return BinaryImage(gxf * gxf + gyf * gyf > threshold * threshold)


def relative_threshold(gradients: GradientPair, fraction: float = 0.25) -> float:
    """Threshold as a fraction of the page's maximum gradient magnitude."""
    if not (0 < fraction < 1):
        raise EnhanceError(f"fraction must lie in (0,1), got {fraction}")
    return fraction * float(gradients.magnitude().max())


def autocrop_content(binary: BinaryImage, margin: int = 8) -> Rect:
    """Bounding box of interior foreground, padded by margin and clamped.

    Components 8-connected to the image border (scanner edges, punch
    shadows) are discarded first.  Raises when nothing interior remains.
    """
    if margin < 0:
        raise EnhanceError(f"margin must be >= 0, got {margin}")
    arr = binary.pixels
    labels, n = ndimage.label(arr, structure=np.ones((3, 3), dtype=np.int32))
    if n == 0:
        raise EnhanceError("no foreground content to crop to")
    border = np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    border_ids = np.unique(border[border != 0])
    keep = arr & ~np.isin(labels, border_ids)
    if not keep.any():
        raise EnhanceError("all foreground touches the border; nothing interior")
    ys, xs = np.nonzero(keep)
    y0 = max(int(ys.min()) - margin, 0)
    x0 = max(int(xs.min()) - margin, 0)
    y1 = min(int(ys.max()) + 1 + margin, binary.height)
    x1 = min(int(xs.max()) + 1 + margin, binary.width)
    return Rect(x=x0, y=y0, w=x1 - x0, h=y1 - y0)

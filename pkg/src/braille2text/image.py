"""Grayscale image container and binary PGM (P5) input/output.

All pipeline stages operate on 8-bit grayscale images.  Scans are expected
as binary PGM files; an adapter accepts grayscale PNG as a convenience and
yields the exact same pixel content.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np


class ImageFormatError(ValueError):
    """Raised for malformed or unsupported image files."""


@dataclass(frozen=True)
class Rect:
    """Axis-aligned pixel rectangle. x/y is the top-left corner."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"rectangle must have positive size, got {self.w}x{self.h}")
        if self.x < 0 or self.y < 0:
            raise ValueError(f"rectangle origin must be non-negative, got ({self.x},{self.y})")

    @property
    def x1(self) -> int:
        return self.x + self.w

    @property
    def y1(self) -> int:
        return self.y + self.h


class GrayImage:
    """Immutable 8-bit grayscale raster (row-major, top-left origin)."""

    __slots__ = ("pixels",)

    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        if arr.size == 0:
            raise ValueError("image must have at least one pixel")
        if arr.dtype != np.uint8:
            if np.issubdtype(arr.dtype, np.floating):
                raise ValueError("float pixels are not allowed; round and cast first")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("pixel values outside 0..255")
            arr = arr.astype(np.uint8)
        else:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    def __setattr__(self, name, value):
        raise AttributeError("GrayImage is immutable")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"

    def crop(self, rect: Rect) -> "GrayImage":
        """Return the sub-image under rect; rect must lie fully inside."""
        _check_rect_inside(rect, self.width, self.height)
        return GrayImage(self.pixels[rect.y : rect.y1, rect.x : rect.x1])


class BinaryImage:
    """Immutable boolean raster; True marks foreground."""

    __slots__ = ("pixels",)

    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError(f"expected a non-empty 2-D array, got shape {arr.shape}")
        arr = arr.astype(bool)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryImage is immutable")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryImage) and np.array_equal(self.pixels, other.pixels)

    def __repr__(self) -> str:
        return f"BinaryImage({self.width}x{self.height})"

    def crop(self, rect: Rect) -> "BinaryImage":
        _check_rect_inside(rect, self.width, self.height)
        return BinaryImage(self.pixels[rect.y : rect.y1, rect.x : rect.x1])

    def count(self) -> int:
        return int(self.pixels.sum())


def _check_rect_inside(rect: Rect, width: int, height: int) -> None:
    if rect.x1 > width or rect.y1 > height:
        raise ValueError(
            f"rectangle {rect} exceeds image bounds {width}x{height}"
        )


def histogram(img: GrayImage) -> np.ndarray:
    """256-bin intensity histogram; bins sum to width*height."""
    return np.bincount(img.pixels.ravel(), minlength=256).astype(np.int64)


def load_pgm(source: Union[str, Path, bytes]) -> GrayImage:
    """Read a binary (P5) PGM file with maxval 255.

    Accepts a path or raw bytes.  Header comments (#) are allowed.
    """
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source
    if not data.startswith(b"P5"):
        raise ImageFormatError("not a binary PGM (missing P5 magic)")

    # Tokenize the header: magic, width, height, maxval, then one whitespace
    # byte before the pixel payload.  '#' starts a comment running to EOL.
    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            eol = data.find(b"\n", pos)
            if eol < 0:
                raise ImageFormatError("unterminated header comment")
            pos = eol + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ImageFormatError("truncated PGM header")
        fields.append(data[start:pos])
    pos += 1  # single whitespace after maxval

    try:
        width, height, maxval = (int(f) for f in fields)
    except ValueError as exc:
        raise ImageFormatError(f"bad PGM header fields {fields!r}") from exc
    if width <= 0 or height <= 0:
        raise ImageFormatError(f"bad PGM dimensions {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(f"only maxval 255 is supported, got {maxval}")

    payload = data[pos : pos + width * height]
    if len(payload) != width * height:
        raise ImageFormatError(
            f"payload holds {len(payload)} bytes, expected {width * height}"
        )
    arr = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
    return GrayImage(arr)


def save_pgm(img: GrayImage, path: Union[str, Path, None] = None) -> bytes:
    """Serialize to binary PGM; writes to path when given, returns the bytes."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    blob = header + img.pixels.tobytes()
    if path is not None:
        Path(path).write_bytes(blob)
    return blob


def load_image(source: Union[str, Path, bytes]) -> GrayImage:
    """Load a scan from PGM or grayscale PNG.

    PNG input must already be single-channel grayscale; color scans are
    rejected rather than silently converted.
    """
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source
    if data.startswith(b"P5"):
        return load_pgm(data)
    if data.startswith(b"\x89PNG"):
        from PIL import Image

        with Image.open(io.BytesIO(data)) as im:
            if im.mode == "1":
                im = im.convert("L")
            if im.mode != "L":
                raise ImageFormatError(
                    f"PNG mode {im.mode!r} is not grayscale; supply a gray scan"
                )
            return GrayImage(np.asarray(im, dtype=np.uint8))
    raise ImageFormatError("unrecognized image format (want PGM P5 or grayscale PNG)")

"""Flat key=value configuration files for the conversion pipeline.

Example::

    # scanned at 300dpi
    language = hi
    grade = 1
    enhance_order = contrast,intensity,morph
    contrast = 165,8,222,247
    fill_threshold = 0.5

Unknown keys are rejected so typos fail loudly.
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path
from typing import Union

from .enhance import PiecewiseParams
from .layout import BrailleGeometry
from .pipeline import PipelineConfig


class ConfigError(ValueError):
    pass


def parse_config_text(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ConfigError(f"line {lineno}: empty key or value")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def _parse_bool(value: str) -> bool:
    low = value.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"not a boolean: {value!r}")


_STR_KEYS = ("language", "morph_mode")
_INT_KEYS = ("grade", "intensity_low", "intensity_high", "morph_radius", "autocrop_margin")
_FLOAT_KEYS = ("smooth_sigma", "edge_fraction", "edge_threshold", "fill_threshold")
_GEO_FLOAT_KEYS = ("dot_pitch_mm", "cell_pitch_mm", "line_pitch_mm", "dot_diameter_mm")


def apply_config(base: PipelineConfig, values: dict[str, str]) -> PipelineConfig:
    """Overlay parsed key=value pairs onto a config."""
    cfg_updates: dict = {}
    geo_updates: dict = {}
    for key, value in values.items():
        try:
            if key in _STR_KEYS:
                cfg_updates[key] = value
            elif key in _INT_KEYS:
                cfg_updates[key] = int(value)
            elif key in _FLOAT_KEYS:
                cfg_updates[key] = float(value)
            elif key == "compose_script":
                cfg_updates[key] = _parse_bool(value)
            elif key == "enhance_order":
                cfg_updates[key] = tuple(
                    s.strip() for s in value.split(",") if s.strip()
                )
            elif key == "contrast":
                parts = [float(s) for s in value.split(",")]
                if len(parts) != 4:
                    raise ConfigError("contrast needs r1,s1,r2,s2")
                cfg_updates[key] = PiecewiseParams(*parts)
            elif key == "dpi":
                geo_updates[key] = int(value)
            elif key in _GEO_FLOAT_KEYS:
                geo_updates[key] = float(value)
            else:
                raise ConfigError(f"unknown key {key!r}")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}") from exc
    if geo_updates:
        cfg_updates["geometry"] = replace(base.geometry, **geo_updates)
    return replace(base, **cfg_updates)


def load_config(path: Union[str, Path], base: PipelineConfig = PipelineConfig()) -> PipelineConfig:
    return apply_config(base, parse_config_text(Path(path).read_text("utf-8")))

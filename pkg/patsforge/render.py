"""Pattern renderers: ascii glyphs, binary PPM and SVG."""

from __future__ import annotations

import io
from typing import Dict, Literal, Optional, Tuple

import numpy as np
import svgwrite
from PIL import Image
from pydantic import BaseModel, Field

from .errors import PaletteError
from .palette import ASCII_GLYPHS, RGB
from .rtas import Pattern


RGBColor = Tuple[int, int, int]


class RenderSpec(BaseModel):
    format: Literal["ascii", "ppm", "svg"] = "ascii"
    cell_size: int = Field(default=8, ge=1)
    palette: Optional[Dict[int, RGBColor]] = None
    glyphs: Optional[Dict[int, str]] = None


def _require(mapping: Dict[int, object], p: Pattern) -> None:
    missing = [c for c in p.color_set() if c not in mapping]
    if missing:
        raise PaletteError(f"missing palette entry for color(s) {missing}")


def render_ascii(p: Pattern, glyphs: Optional[Dict[int, str]] = None) -> bytes:
    glyphs = glyphs or ASCII_GLYPHS
    _require(glyphs, p)
    rows = ("".join(glyphs[c] for c in row) for row in p.rows_top_first())
    return ("\n".join(rows) + "\n").encode("ascii")


def _hex(rgb: RGBColor) -> str:
    return "#%02x%02x%02x" % rgb


def render_svg(p: Pattern, palette: Dict[int, RGBColor], cell_size: int) -> bytes:
    width, height = p.width * cell_size, p.height * cell_size
    image = svgwrite.Drawing(size=("%dpx" % width, "%dpx" % height))
    # svg puts 0,0 at top left
    for row, colors in enumerate(p.rows_top_first()):
        for col, color in enumerate(colors):
            image.add(
                image.rect(
                    insert=(col * cell_size, row * cell_size),
                    size=(cell_size, cell_size),
                    fill=_hex(palette[color]),
                )
            )
    return image.tostring().encode("utf-8")


def render_ppm(p: Pattern, palette: Dict[int, RGBColor], cell_size: int) -> bytes:
    lut = np.zeros((max(palette) + 1, 3), dtype=np.uint8)
    for code, rgb in palette.items():
        lut[code] = rgb
    pixels = lut[np.asarray(p.rows_top_first(), dtype=np.int64)]
    pixels = np.repeat(np.repeat(pixels, cell_size, axis=0), cell_size, axis=1)
    out = io.BytesIO()
    Image.fromarray(pixels).save(out, format="PPM")
    return out.getvalue()


def render(p: Pattern, spec: RenderSpec) -> bytes:
    if spec.format == "ascii":
        return render_ascii(p, spec.glyphs)
    palette = spec.palette or RGB
    _require(palette, p)
    if spec.format == "svg":
        return render_svg(p, palette, spec.cell_size)
    return render_ppm(p, palette, spec.cell_size)

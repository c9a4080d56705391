import io

import pytest
from PIL import Image

from patsforge.errors import PaletteError
from patsforge.palette import CYAN, RGB, YELLOW
from patsforge.render import RenderSpec, render
from patsforge.rtas import Pattern


def test_single_cell_ascii() -> None:
    assert render(Pattern.uniform(1, 1, YELLOW), RenderSpec()) == b"Y\n"


def test_renders_are_deterministic() -> None:
    p = Pattern.from_rows([[0, 1, 2], [3, 4, 5]])
    for fmt in ("ascii", "ppm", "svg"):
        spec = RenderSpec(format=fmt, cell_size=3)
        assert render(p, spec) == render(p, spec)


def test_ppm_pixels() -> None:
    p = Pattern.from_rows([[CYAN, YELLOW]])
    data = render(p, RenderSpec(format="ppm", cell_size=2))
    assert data.startswith(b"P6")
    image = Image.open(io.BytesIO(data))
    assert image.size == (4, 2)
    assert image.getpixel((0, 0)) == RGB[CYAN]
    assert image.getpixel((3, 1)) == RGB[YELLOW]


def test_svg_has_one_rect_per_cell() -> None:
    p = Pattern.from_rows([[0, 1], [2, 3]])
    svg = render(p, RenderSpec(format="svg", cell_size=5)).decode()
    assert svg.count("<rect") == 4
    assert 'width="10px"' in svg


def test_missing_palette_entry() -> None:
    p = Pattern.uniform(2, 2, 42)
    with pytest.raises(PaletteError, match="missing palette entry"):
        render(p, RenderSpec())
    with pytest.raises(PaletteError):
        render(p, RenderSpec(format="svg"))
    spec = RenderSpec(format="ppm", palette={42: (1, 2, 3)})
    assert render(p, spec).startswith(b"P6")


def test_cell_size_must_be_positive() -> None:
    with pytest.raises(ValueError):
        RenderSpec(cell_size=0)

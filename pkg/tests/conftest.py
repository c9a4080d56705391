from __future__ import annotations

from pathlib import Path

import pytest

from patsforge.gadget import SCALED_C, SCALED_R, build_blueprint
from patsforge.reduction import Formula, parse_formula
from patsforge.rtas import TileSet, TileType


GOLDEN_DIR = Path(__file__).parent / "golden"

PHI_EX_TEXT = "p mono13 4 2\n1 2 3\n1 2 4\n"


@pytest.fixture
def phi_ex() -> Formula:
    return parse_formula(PHI_EX_TEXT)


@pytest.fixture
def scaled_blueprint():
    return build_blueprint(SCALED_C, SCALED_R)


@pytest.fixture
def golden() -> Path:
    return GOLDEN_DIR


@pytest.fixture
def xor_set() -> TileSet:
    """Sierpinski rule: north = east = west xor south."""
    tiles = []
    for w in "01":
        for s in "01":
            out = str(int(w) ^ int(s))
            tiles.append(TileType(out, w, s, out, int(out), f"x{w}{s}"))
    return TileSet(tuple(tiles))

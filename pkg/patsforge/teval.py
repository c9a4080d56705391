"""The 21-type, 11-color evaluation tile set.

Glues are the single letters c, F, T, f, t, s, n, v. Uppercase F/T carry an
assignment bit as a "hot" signal, lowercase f/t the same bit after it has been
diagonally reflected, s marks a satisfied clause and c, n, v are column
markers (clause, white filler, black membership).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List

from .config import DATA_DIR
from .formats import parse_tileset
from .palette import BLACK, BLUE, CE, CYAN, DGNL_BLACK, DGNL_WHITE, INIT, RED, SAT, WHITE, YELLOW
from .palette import COLOR_NAMES, PALETTE
from .rtas import TileSet, TileType, color_census, glue_alphabet


BUNDLED_PATH = DATA_DIR / "teval.tiles"

# name: (color, N, W, S, E)
_TABLE = [
    ("t_sbFF", CYAN, "F", "F", "F", "F"),
    ("t_sbFT", CYAN, "T", "F", "T", "F"),
    ("t_sbTF", CYAN, "F", "T", "F", "T"),
    ("t_sbTT", CYAN, "T", "T", "T", "T"),
    ("t_CEss", CE, "F", "s", "F", "s"),
    ("t_CEff", CE, "F", "f", "F", "f"),
    ("t_CEfs", CE, "F", "f", "T", "s"),
    ("t_wf", WHITE, "n", "f", "n", "f"),
    ("t_wt", WHITE, "n", "t", "n", "t"),
    ("t_bf", BLACK, "v", "f", "v", "f"),
    ("t_bt", BLACK, "v", "t", "v", "t"),
    ("t_DGNLwF", DGNL_WHITE, "F", "F", "n", "f"),
    ("t_DGNLwT", DGNL_WHITE, "F", "T", "n", "t"),
    ("t_DGNLbF", DGNL_BLACK, "F", "F", "v", "f"),
    ("t_DGNLbT", DGNL_BLACK, "T", "T", "v", "t"),
    ("t_InitF", INIT, "c", "f", "c", "F"),
    ("t_InitT", INIT, "c", "t", "c", "T"),
    ("t_Sat", SAT, "F", "s", "c", "F"),
    ("t_y", YELLOW, "T", "s", "T", "s"),
    ("t_F", RED, "c", "F", "c", "f"),
    ("t_T", BLUE, "c", "T", "c", "t"),
]

TILE_NAMES: List[str] = [row[0] for row in _TABLE]

EXPECTED_CENSUS: Dict[str, int] = {
    "cyan": 4,
    "CE": 3,
    "white": 2,
    "black": 2,
    "DGNL-white": 2,
    "DGNL-black": 2,
    "Init": 2,
    "Sat": 1,
    "yellow": 1,
    "red": 1,
    "blue": 1,
}


@lru_cache(maxsize=1)
def t_eval() -> TileSet:
    return TileSet(tuple(TileType(n, w, s, e, color, name) for name, color, n, w, s, e in _TABLE))


def tile_index(name: str) -> int:
    return TILE_NAMES.index(name)


def load_bundled() -> TileSet:
    return parse_tileset(BUNDLED_PATH.read_text(encoding="utf-8"))


def named_census(ts: TileSet) -> Dict[str, int]:
    return {COLOR_NAMES.get(code, str(code)): n for code, n in color_census(ts).items()}


__all__ = [
    "BUNDLED_PATH",
    "COLOR_NAMES",
    "EXPECTED_CENSUS",
    "PALETTE",
    "TILE_NAMES",
    "color_census",
    "glue_alphabet",
    "load_bundled",
    "named_census",
    "t_eval",
    "tile_index",
]

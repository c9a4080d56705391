"""Color codes of the evaluation palette and their display forms."""

from __future__ import annotations

from typing import Dict, Tuple


CYAN = 0
CE = 1
WHITE = 2
BLACK = 3
DGNL_WHITE = 4
DGNL_BLACK = 5
INIT = 6
SAT = 7
YELLOW = 8
RED = 9
BLUE = 10

PALETTE: Dict[str, int] = {
    "cyan": CYAN,
    "CE": CE,
    "white": WHITE,
    "black": BLACK,
    "DGNL-white": DGNL_WHITE,
    "DGNL-black": DGNL_BLACK,
    "Init": INIT,
    "Sat": SAT,
    "yellow": YELLOW,
    "red": RED,
    "blue": BLUE,
}

COLOR_NAMES: Dict[int, str] = {code: name for name, code in PALETTE.items()}

ASCII_GLYPHS: Dict[int, str] = {
    CYAN: "+",
    CE: "=",
    WHITE: ".",
    BLACK: "#",
    DGNL_WHITE: "/",
    DGNL_BLACK: "%",
    INIT: "i",
    SAT: "S",
    YELLOW: "Y",
    RED: "F",
    BLUE: "T",
}

RGB: Dict[int, Tuple[int, int, int]] = {
    CYAN: (0, 200, 220),
    CE: (128, 128, 128),
    WHITE: (255, 255, 255),
    BLACK: (0, 0, 0),
    DGNL_WHITE: (200, 230, 200),
    DGNL_BLACK: (40, 90, 40),
    INIT: (150, 80, 200),
    SAT: (250, 150, 30),
    YELLOW: (250, 230, 40),
    RED: (220, 30, 30),
    BLUE: (30, 60, 220),
}


def color_code(token: str) -> int:
    if token in PALETTE:
        return PALETTE[token]
    return int(token)


def color_token(code: int) -> str:
    return COLOR_NAMES.get(code, str(code))

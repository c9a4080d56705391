"""ASCII file formats for tile sets, seeds and patterns.

Every format is line based with whitespace separated tokens; `#` starts a
comment. Patterns list rows top row first, the loader flips them so row 1 is
the south row in memory.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from .errors import FormatError
from .palette import color_code, color_token
from .rtas import LSeed, Pattern, TileSet, TileType


Line = Tuple[int, List[str]]


def content_lines(text: str) -> List[Line]:
    out: List[Line] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((lineno, body.split()))
    return out


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from exc


def positive_int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {token!r}", lineno) from None
    if value < 0:
        raise FormatError(f"{what} must be non-negative", lineno)
    return value


def _color(token: str, lineno: int) -> int:
    try:
        code = color_code(token)
    except ValueError:
        raise FormatError(f"unknown color {token!r}", lineno) from None
    if code < 0:
        raise FormatError("color codes are non-negative", lineno)
    return code


def _expect_header(lines: Sequence[Line], pos: int, keyword: str, arity: int) -> List[str]:
    if pos >= len(lines):
        raise FormatError(f"missing `{keyword}` header")
    lineno, tokens = lines[pos]
    if tokens[0] != keyword or len(tokens) != arity + 1:
        raise FormatError(f"expected `{keyword}` header with {arity} value(s)", lineno)
    return tokens[1:]


# --- tile sets -------------------------------------------------------------


def _tileset_at(lines: Sequence[Line], pos: int) -> Tuple[TileSet, int]:
    (count_tok,) = _expect_header(lines, pos, "tileset", 1)
    count = positive_int(count_tok, lines[pos][0], "tile count")
    types: List[TileType] = []
    seen = set()
    for i in range(count):
        if pos + 1 + i >= len(lines):
            raise FormatError(f"expected {count} tiles, found {i}")
        lineno, tokens = lines[pos + 1 + i]
        if tokens[0] != "tile" or len(tokens) != 7:
            raise FormatError("expected `tile <name> <color> <N> <W> <S> <E>`", lineno)
        _, name, color, n, w, s, e = tokens
        tile = TileType(n, w, s, e, _color(color, lineno), name)
        if tile in seen:
            raise FormatError(f"duplicate tile type {name}", lineno)
        seen.add(tile)
        types.append(tile)
    return TileSet(tuple(types)), pos + 1 + count


def parse_tileset(text: str) -> TileSet:
    lines = content_lines(text)
    ts, end = _tileset_at(lines, 0)
    if end != len(lines):
        raise FormatError("trailing content after tile set", lines[end][0])
    return ts


def write_tileset(ts: TileSet) -> str:
    out = [f"tileset {len(ts)}"]
    for i, t in enumerate(ts):
        name = t.name or f"t{i}"
        out.append(f"tile {name} {color_token(t.color)} {t.north} {t.west} {t.south} {t.east}")
    return "\n".join(out) + "\n"


# --- seeds -----------------------------------------------------------------


def _glue_row(lines: Sequence[Line], pos: int, label: str, length: int) -> Tuple[str, ...]:
    if pos >= len(lines):
        raise FormatError(f"missing `{label}` line")
    lineno, tokens = lines[pos]
    if tokens[0] != label:
        raise FormatError(f"expected `{label}` line", lineno)
    glues = tuple(tokens[1:])
    if len(glues) != length:
        raise FormatError(f"`{label}` has {len(glues)} glues, expected {length}", lineno)
    return glues


def _seed_at(lines: Sequence[Line], pos: int) -> Tuple[LSeed, int]:
    w_tok, h_tok = _expect_header(lines, pos, "seed", 2)
    lineno = lines[pos][0]
    w = positive_int(w_tok, lineno, "seed width")
    h = positive_int(h_tok, lineno, "seed height")
    if w == 0 or h == 0:
        raise FormatError("seed dimensions must be positive", lineno)
    x = _glue_row(lines, pos + 1, "x:", w)
    y = _glue_row(lines, pos + 2, "y:", h)
    return LSeed(w, h, x, y), pos + 3


def parse_seed(text: str) -> LSeed:
    lines = content_lines(text)
    seed, end = _seed_at(lines, 0)
    if end != len(lines):
        raise FormatError("trailing content after seed", lines[end][0])
    return seed


def write_seed(seed: LSeed) -> str:
    return (
        f"seed {seed.width} {seed.height}\n"
        f"x: {' '.join(seed.x_north)}\n"
        f"y: {' '.join(seed.y_east)}\n"
    )


def parse_system(text: str) -> Tuple[TileSet, LSeed]:
    """A tile set block followed by a seed block, as written by `solve -o`."""
    lines = content_lines(text)
    ts, pos = _tileset_at(lines, 0)
    seed, end = _seed_at(lines, pos)
    if end != len(lines):
        raise FormatError("trailing content after seed", lines[end][0])
    return ts, seed


def write_system(ts: TileSet, seed: LSeed) -> str:
    return write_tileset(ts) + write_seed(seed)


# --- patterns --------------------------------------------------------------


def parse_pattern(text: str) -> Pattern:
    lines = content_lines(text)
    w_tok, h_tok, n_tok = _expect_header(lines, 0, "pattern", 3)
    lineno = lines[0][0]
    w = positive_int(w_tok, lineno, "pattern width")
    h = positive_int(h_tok, lineno, "pattern height")
    ncolors = positive_int(n_tok, lineno, "color count")
    if w == 0 or h == 0:
        raise FormatError("pattern dimensions must be positive", lineno)
    body = lines[1:]
    if len(body) != h:
        raise FormatError(f"expected {h} rows, found {len(body)}", lineno)
    rows = []
    for row_lineno, tokens in body:
        if len(tokens) != w:
            raise FormatError(f"expected {w} colors, found {len(tokens)}", row_lineno)
        rows.append([_color(tok, row_lineno) for tok in tokens])
    pattern = Pattern(np.array(rows[::-1], dtype=np.int64))
    if len(pattern.color_set()) != ncolors:
        raise FormatError(
            f"header declares {ncolors} colors, body uses {len(pattern.color_set())}", lineno
        )
    return pattern


def write_pattern(p: Pattern) -> str:
    out = [f"pattern {p.width} {p.height} {len(p.color_set())}"]
    out.extend(" ".join(str(c) for c in row) for row in p.rows_top_first())
    return "\n".join(out) + "\n"

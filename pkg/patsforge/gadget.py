"""GADGET: the auxiliary region that pins the evaluation tile set.

The blueprint is built as a staircase. Each block owns fresh columns east of
the previous block and fresh rows north of it, so a block's rows only ever
cross earlier blocks through columns that already carry a vertical F (where
F/T pass as cyan and f/s pass as CE), and its columns only ever see earlier
rows as lowercase f/t (which `c` columns flip in pairs and `n`/`v` columns
pass through). Every block closes all its columns to F before the next block
starts; a final F row finishes the gadget.

Column behavior under T_eval, by the glue travelling up the column:

* ``c``: red/blue on F/T, Init on f/t (flips case), Sat on s (column becomes F)
* ``n``/``v``: white/black on f/t, a DGNL tile on F/T (lowercases the row;
  ``n`` becomes F, ``v`` mirrors the bit upward)
* ``F``: cyan on F/T, CE on f/s, no tile for t
* ``T``: cyan on F/T, CE on f (row becomes s, column becomes F), yellow on s
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from .errors import BlueprintError, FormatError
from .formats import content_lines, positive_int
from .palette import BLACK, BLUE, CE, CYAN, DGNL_BLACK, DGNL_WHITE, INIT, RED, SAT, WHITE, YELLOW
from .rtas import Assembly, Completed, LSeed, Pattern, east_exposure, north_exposure, pattern_of, simulate
from .teval import t_eval


logger = logging.getLogger(__name__)

DEFAULT_C = 25
DEFAULT_R = 13
SCALED_C = 7
SCALED_R = 4

SEED_ALPHABET = frozenset("cFTftsnv")

Bits = Tuple[bool, bool, bool, bool]


@dataclass(frozen=True)
class Region:
    name: str
    x0: int
    y0: int
    x1: int
    y1: int

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1


@dataclass(frozen=True)
class GadgetBlueprint:
    c: int
    r: int
    width: int
    height: int
    x_north: Tuple[str, ...]
    y_east: Tuple[str, ...]
    regions: Tuple[Region, ...]
    motifs: Tuple[Tuple[str, int, int], ...]

    def region(self, name: str) -> Region:
        for reg in self.regions:
            if reg.name == name:
                return reg
        raise BlueprintError(f"blueprint has no region {name!r}")

    def motif_anchor(self, name: str) -> Tuple[int, int]:
        for motif, x, y in self.motifs:
            if motif == name:
                return (x, y)
        raise BlueprintError(f"blueprint has no motif anchor {name!r}")

    @property
    def seed(self) -> LSeed:
        return LSeed(self.width, self.height, self.x_north, self.y_east)


# --- boundary words and templates -----------------------------------------


def lb4_boundary(c: int, r: int) -> Tuple[List[int], List[int]]:
    """Top row (west to east) and right column (south to north) colors."""
    if c < 1 or r < 1:
        raise BlueprintError("c and r must be positive")
    top = [SAT, RED, CE, CE, YELLOW, YELLOW, YELLOW, CE, YELLOW, YELLOW]
    top += [CE] * c + [YELLOW, CE, CE, SAT]
    right = [RED] * 2 + [BLUE] * (2 * r - 1) + [RED] * (2 * r - 1) + [BLUE] * 2 + [SAT]
    return top, right


def _bit_word(bits: Sequence[bool]) -> str:
    return "".join("T" if b else "F" for b in bits)


def template_order() -> List[Tuple[str, Bits]]:
    """wFF, wFT, wTF, wTT, bTT, bTF, bFT, bFF; last two bits FF, FT, TF, TT."""
    pairs = [(False, False), (False, True), (True, False), (True, True)]
    order: List[Tuple[str, Bits]] = []
    for palette, heads in (("white", pairs), ("black", pairs[::-1])):
        for b1, b2 in heads:
            for b3, b4 in pairs:
                order.append((palette, (b1, b2, b3, b4)))
    return order


def template_name(palette: str, bits: Sequence[bool]) -> str:
    return f"template-{palette[0]}-{_bit_word(bits)}"


def template_seed(palette: str, bits: Sequence[bool]) -> LSeed:
    column = "v" if palette == "black" else "n"
    return LSeed.of([column] * 4 + ["c", "c"], ["T" if b else "F" for b in bits])


def paint_template(palette: str, bits: Sequence[bool]) -> Pattern:
    base, diagonal = (BLACK, DGNL_BLACK) if palette == "black" else (WHITE, DGNL_WHITE)
    grid = np.empty((4, 6), dtype=np.int64)
    for i in range(4):
        for j in range(4):
            grid[i, j] = base if i < j else diagonal if i == j else CYAN
        grid[i, 4] = INIT
        grid[i, 5] = BLUE if bits[i] else RED
    return Pattern(grid)


@dataclass(frozen=True)
class TemplateInstance:
    palette: str
    bits: Bits
    pattern: Pattern
    assembly: Assembly


def template_instance(palette: str, bits: Sequence[bool]) -> TemplateInstance:
    if palette not in ("white", "black") or len(bits) != 4:
        raise BlueprintError("template needs a white/black palette and four bits")
    seed = template_seed(palette, bits)
    outcome = simulate(t_eval(), seed)
    if not isinstance(outcome, Completed):
        raise BlueprintError(f"template {template_name(palette, bits)} did not assemble", outcome)
    return TemplateInstance(palette, tuple(bool(b) for b in bits), paint_template(palette, bits), outcome.assembly)


# --- motifs ----------------------------------------------------------------


@dataclass(frozen=True)
class Motif:
    name: str
    tiles: Tuple[Tuple[str, ...], ...]  # rows, south row first

    @property
    def width(self) -> int:
        return len(self.tiles[0])

    @property
    def height(self) -> int:
        return len(self.tiles)


def motif_catalog(c: int, r: int) -> Dict[str, Motif]:
    initcol = (
        [("t_InitF", "t_F")] * 2
        + [("t_InitT", "t_T")] * (2 * r - 1)
        + [("t_InitF", "t_F")]
    )
    stack = [("t_CEss", "t_y")] * 6 + [("t_CEff", "t_CEfs")]
    motifs = [
        Motif("M_initcol", tuple(initcol)),
        Motif("M_yellowstack", tuple(stack)),
        Motif("M_redCEsat", (("t_F", "t_CEfs", "t_Sat"),)),
        Motif("M_rowtop", (("t_F", "t_CEff", "t_CEfs", "t_y"),)),
        Motif("M_bwicb", (("t_T", "t_wt", "t_InitT", "t_sbTF", "t_T"),)),
        Motif("M_rcir", (("t_F", "t_CEff", "t_InitF", "t_F"),)),
    ]
    return {m.name: m for m in motifs}


# --- builder ---------------------------------------------------------------


class _Staircase:
    def __init__(self) -> None:
        self.x: List[str] = []
        self.y: List[str] = []
        self.regions: List[Region] = []
        self.motifs: List[Tuple[str, int, int]] = []

    @property
    def next_x(self) -> int:
        return len(self.x) + 1

    @property
    def next_y(self) -> int:
        return len(self.y) + 1

    def block(self, columns: Sequence[str], rows: Sequence[str]) -> Tuple[int, int]:
        origin = (self.next_x, self.next_y)
        self.x.extend(columns)
        self.y.extend(rows)
        return origin


def _leftmost_block(stair: _Staircase, c: int, r: int) -> None:
    interior = ["F", "T", "T", "T", "T", "F", "T", "T"] + ["F"] * c + ["T", "F", "F"]
    columns = ["c", "c"] + interior + ["c"] + ["c"] * 6 + ["n"] * 5
    rows = (
        ["F", "F"] + ["T"] * (2 * r - 1) + ["F"] * (2 * r - 1) + ["T", "T"]
        + ["s"] + ["F"] * 6 + ["s"]
    )
    x0, y0 = stair.block(columns, rows)
    lb4_w, lb4_h = c + 14, 4 * r + 3
    stair.regions.append(Region("lb4", x0, y0, x0 + lb4_w - 1, y0 + lb4_h - 1))
    stair.regions.append(Region("leftmost", x0, y0, x0 + len(columns) - 1, y0 + len(rows) - 1))
    stair.motifs.append(("M_initcol", x0 + lb4_w, y0))
    stair.motifs.append(("M_yellowstack", x0 + 9 + c, y0 + lb4_h - 1))
    stair.motifs.append(("M_rowtop", x0 + 1, y0 + lb4_h - 1))


def _middle_block(stair: _Staircase) -> None:
    # Z0 A B C E G H K L D1 D2 D3
    columns = ["c", "c", "n", "c", "F", "c", "c", "T", "c", "n", "n", "n"]
    rows = ["s", "T", "s", "F", "s", "s", "s"]
    x0, y0 = stair.block(columns, rows)
    stair.regions.append(Region("middle", x0, y0, x0 + len(columns) - 1, y0 + len(rows) - 1))
    stair.motifs.append(("M_bwicb", x0 + 1, y0 + 1))
    stair.motifs.append(("M_rcir", x0 + 3, y0 + 3))
    stair.motifs.append(("M_redCEsat", x0 + 6, y0 + 3))


def _template_unit(stair: _Staircase, palette: str, bits: Bits) -> Region:
    # black DGNL tiles on T bits leave T columns behind; each f row closes one
    trues = sum(bits) if palette == "black" else 0
    closers = 2 if trues <= 2 else 4
    column = "v" if palette == "black" else "n"
    columns = [column] * 4 + ["c"] * closers + ["n"] * (closers // 2)
    rows = ["T" if b else "F" for b in bits] + ["f"] * trues + ["s"] * (closers - trues)
    x0, y0 = stair.block(columns, rows)
    stair.regions.append(Region(template_name(palette, bits), x0, y0, x0 + 5, y0 + 3))
    return Region("unit", x0, y0, x0 + len(columns) - 1, y0 + len(rows) - 1)


@lru_cache(maxsize=8)
def build_blueprint(c: int = DEFAULT_C, r: int = DEFAULT_R) -> GadgetBlueprint:
    if c < 1 or r < 1:
        raise BlueprintError("c and r must be positive")
    stair = _Staircase()
    _leftmost_block(stair, c, r)
    _middle_block(stair)
    order = template_order()
    for start in range(0, len(order), 4):
        group = order[start : start + 4]
        units = [_template_unit(stair, palette, bits) for palette, bits in group]
        palette, bits = group[0]
        name = f"eighth-{palette[0]}{_bit_word(bits[:2])}"
        stair.regions.append(Region(name, units[0].x0, units[0].y0, units[-1].x1, units[-1].y1))
    stair.block([], ["F"])
    width, height = len(stair.x), len(stair.y)
    stair.regions.append(Region("joint", width + 1, 1, width + 1, height))
    bp = GadgetBlueprint(
        c, r, width, height, tuple(stair.x), tuple(stair.y), tuple(stair.regions), tuple(stair.motifs)
    )
    logger.debug("built gadget blueprint c=%d r=%d: %dx%d", c, r, width, height)
    return bp


def default_blueprint() -> GadgetBlueprint:
    return build_blueprint(DEFAULT_C, DEFAULT_R)


# --- validation and assembly -----------------------------------------------


REQUIRED_REGIONS = (
    ["lb4", "leftmost", "middle", "joint"]
    + [f"eighth-{p[0]}{_bit_word(b[:2])}" for p, b in template_order()[::4]]
    + [template_name(p, b) for p, b in template_order()]
)


def validate_blueprint(bp: GadgetBlueprint) -> None:
    if bp.c < 1 or bp.r < 1:
        raise BlueprintError("blueprint parameters c and r must be positive")
    if len(bp.x_north) != bp.width or len(bp.y_east) != bp.height:
        raise BlueprintError(
            f"seed lengths {len(bp.x_north)}x{len(bp.y_east)} do not match {bp.width}x{bp.height}"
        )
    stray = sorted((set(bp.x_north) | set(bp.y_east)) - SEED_ALPHABET)
    if stray:
        raise BlueprintError(f"seed glues outside the evaluation alphabet: {stray}")
    names = {reg.name for reg in bp.regions}
    missing = [n for n in REQUIRED_REGIONS if n not in names]
    if missing:
        raise BlueprintError(f"blueprint is missing regions: {missing[:4]}")
    for reg in bp.regions:
        max_x = bp.width + 1 if reg.name == "joint" else bp.width
        if not (1 <= reg.x0 <= reg.x1 <= max_x and 1 <= reg.y0 <= reg.y1 <= bp.height):
            raise BlueprintError(f"region {reg.name} lies outside the gadget")
    top, right = lb4_boundary(bp.c, bp.r)
    lb4 = bp.region("lb4")
    if (lb4.width, lb4.height) != (len(top), len(right)):
        raise BlueprintError(f"lb4 region is {lb4.width}x{lb4.height}, expected {len(top)}x{len(right)}")
    catalog = motif_catalog(bp.c, bp.r)
    for name, x, y in bp.motifs:
        if name not in catalog:
            raise BlueprintError(f"unknown motif {name}")
        motif = catalog[name]
        if not (1 <= x and x + motif.width - 1 <= bp.width and 1 <= y and y + motif.height - 1 <= bp.height):
            raise BlueprintError(f"motif {name} anchored outside the gadget")


def assemble_gadget(bp: GadgetBlueprint) -> Assembly:
    validate_blueprint(bp)
    outcome = simulate(t_eval(), bp.seed)
    if not isinstance(outcome, Completed):
        raise BlueprintError(f"gadget does not assemble: {outcome.describe()}", outcome)
    return outcome.assembly


@lru_cache(maxsize=8)
def gadget_pattern(bp: GadgetBlueprint) -> Pattern:
    return pattern_of(assemble_gadget(bp))


class ExposureReport(BaseModel):
    north_ok: bool
    north_first_bad: Optional[int] = None
    east_ok: bool
    east_first_bad: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.north_ok and self.east_ok


def check_exposures(a: Assembly) -> ExposureReport:
    north = north_exposure(a)
    bad_north = next((i for i, g in enumerate(north, start=1) if g != "F"), None)
    east = east_exposure(a)
    bad_east: Optional[int] = None
    if len(east) < 2:
        bad_east = 1
    else:
        bad_east = next((i for i, g in enumerate(east[:-1], start=1) if g not in ("f", "t")), None)
        if bad_east is None and east[-1] != "F":
            bad_east = len(east)
    return ExposureReport(
        north_ok=bad_north is None,
        north_first_bad=bad_north,
        east_ok=bad_east is None,
        east_first_bad=bad_east,
    )


def lb4_words(a: Assembly, bp: GadgetBlueprint) -> Tuple[List[int], List[int]]:
    reg = bp.region("lb4")
    top = [a.tile_at(x, reg.y1).color for x in range(reg.x0, reg.x1 + 1)]
    right = [a.tile_at(reg.x1, y).color for y in range(reg.y0, reg.y1 + 1)]
    return top, right


def check_motifs(a: Assembly, bp: GadgetBlueprint) -> Dict[str, bool]:
    ts = t_eval()
    results: Dict[str, bool] = {}
    for name, motif in motif_catalog(bp.c, bp.r).items():
        x, y = bp.motif_anchor(name)
        results[name] = all(
            a.tile_at(x + dx, y + dy) == ts.by_name(tile)
            for dy, row in enumerate(motif.tiles)
            for dx, tile in enumerate(row)
        )
    return results


def template_regions_present(a: Assembly, bp: GadgetBlueprint) -> Dict[str, bool]:
    painted = pattern_of(a)
    results: Dict[str, bool] = {}
    for palette, bits in template_order():
        reg = bp.region(template_name(palette, bits))
        window = painted.crop(reg.x0, reg.y0, reg.x1, reg.y1)
        results[template_name(palette, bits)] = window == paint_template(palette, bits)
    return results


# --- blueprint file format -------------------------------------------------


def write_blueprint(bp: GadgetBlueprint) -> str:
    out = [
        f"gadget {bp.width} {bp.height}",
        f"param c {bp.c}",
        f"param r {bp.r}",
        f"xseed: {' '.join(bp.x_north)}",
        f"yseed: {' '.join(bp.y_east)}",
    ]
    out.extend(f"region {g.name} {g.x0} {g.y0} {g.x1} {g.y1}" for g in bp.regions)
    out.extend(f"motif {name} {x} {y}" for name, x, y in bp.motifs)
    return "\n".join(out) + "\n"


def parse_blueprint(text: str) -> GadgetBlueprint:
    lines = content_lines(text)
    if not lines or lines[0][1][0] != "gadget" or len(lines[0][1]) != 3:
        raise FormatError("expected `gadget <w> <h>` header", lines[0][0] if lines else None)
    lineno, tokens = lines[0]
    width = positive_int(tokens[1], lineno, "gadget width")
    height = positive_int(tokens[2], lineno, "gadget height")
    params: Dict[str, int] = {}
    x_north: Optional[Tuple[str, ...]] = None
    y_east: Optional[Tuple[str, ...]] = None
    regions: List[Region] = []
    motifs: List[Tuple[str, int, int]] = []
    for lineno, tokens in lines[1:]:
        head = tokens[0]
        if head == "param" and len(tokens) == 3 and tokens[1] in ("c", "r"):
            params[tokens[1]] = positive_int(tokens[2], lineno, f"param {tokens[1]}")
        elif head == "xseed:":
            x_north = tuple(tokens[1:])
        elif head == "yseed:":
            y_east = tuple(tokens[1:])
        elif head == "region" and len(tokens) == 6:
            x0, y0, x1, y1 = (positive_int(t, lineno, "region bound") for t in tokens[2:])
            regions.append(Region(tokens[1], x0, y0, x1, y1))
        elif head == "motif" and len(tokens) == 4:
            motifs.append((tokens[1], positive_int(tokens[2], lineno, "motif x"), positive_int(tokens[3], lineno, "motif y")))
        else:
            raise FormatError(f"unrecognized blueprint line `{' '.join(tokens)}`", lineno)
    if x_north is None or y_east is None:
        raise FormatError("blueprint needs `xseed:` and `yseed:` lines")
    if len(x_north) != width or len(y_east) != height:
        raise FormatError(f"seed lengths {len(x_north)}x{len(y_east)} do not match {width}x{height}")
    return GadgetBlueprint(
        params.get("c", DEFAULT_C),
        params.get("r", DEFAULT_R),
        width,
        height,
        x_north,
        y_east,
        tuple(regions),
        tuple(motifs),
    )

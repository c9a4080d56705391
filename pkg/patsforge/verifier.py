"""Mechanical checks of the lower-bound arguments behind the gadget.

Cyan lower bound: a set of cyan tiles is run on the LB4 cyan rectangle with
free boundaries. It survives when it can carry information: a self-stacking
("quiet") tile fills the rectangle, every single impulse on the west or south
boundary is transported to a distinct change of the exposures, and some west
impulse and south impulse can coexist. Two budget checks over the rectangle's
exposures then reuse the 1D strip search of the solver.

CE/yellow lower bound: labelings of a small CE/yellow window with 2 CE types,
solved by edge unification the way the solver does it.
"""

from __future__ import annotations

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from .errors import PatsforgeError
from .gadget import (
    SCALED_C,
    SCALED_R,
    GadgetBlueprint,
    assemble_gadget,
    check_exposures,
    check_motifs,
    lb4_boundary,
    lb4_words,
    paint_template,
    template_order,
    template_regions_present,
)
from .palette import CE, CYAN, YELLOW
from .rtas import (
    Assembly,
    Completed,
    LSeed,
    TileSet,
    TileType,
    canonicalize,
    east_exposure,
    isomorphic,
    north_exposure,
    simulate,
    sweep_order,
)
from .solver import EdgeGrid, strip_admits, strip_admits_some
from .teval import t_eval
from .unionfind import RollbackUnionFind


logger = logging.getLogger(__name__)

Exposures = Tuple[Tuple[str, ...], Tuple[str, ...]]
Quad = Tuple[str, str, str, str]  # north, west, south, east


class LemmaReport(BaseModel):
    lemma: str
    candidates: int = 0
    survivors: List[str] = Field(default_factory=list)
    checks: Dict[str, bool] = Field(default_factory=dict)
    details: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def lines(self) -> List[str]:
        out = list(self.details)
        out.extend(f"{self.lemma} check {name} {'ok' if ok else 'FAIL'}" for name, ok in self.checks.items())
        out.extend(f"{self.lemma} survivor {s}" for s in self.survivors)
        out.append(
            f"{self.lemma} candidates={self.candidates} survivors={len(self.survivors)} "
            f"result={'PASS' if self.passed else 'FAIL'}"
        )
        return out


def signature(ts: TileSet) -> str:
    return " ".join(f"({t.north},{t.west},{t.south},{t.east}:{t.color})" for t in canonicalize(ts))


def tiles_of(quads: Sequence[Quad], color: int = CYAN) -> TileSet:
    names = "ABCDEFGH"
    return TileSet(tuple(TileType(n, w, s, e, color, names[i]) for i, (n, w, s, e) in enumerate(quads)))


# --- cyan sets -------------------------------------------------------------


ZIGZAG_SET: Tuple[Quad, ...] = (("a", "0", "a", "0"), ("a", "0", "b", "1"), ("b", "1", "a", "0"))


def zigzag_set() -> TileSet:
    return tiles_of(ZIGZAG_SET)


def cyan_triples() -> Iterator[Tuple[Quad, Quad, Quad]]:
    """Wests normalized to (0, 0, 1), souths to (a, b, a); 64 candidates."""
    for norths in itertools.product("ab", repeat=3):
        for easts in itertools.product("01", repeat=3):
            yield tuple(
                (norths[i], ("0", "0", "1")[i], ("a", "b", "a")[i], easts[i]) for i in range(3)
            )


def two_cyan_sets() -> Iterator[Tuple[Quad, Quad]]:
    types = list(itertools.product("ab", "01", "ab", "01"))
    for first, second in itertools.combinations(types, 2):
        if (first[1], first[2]) != (second[1], second[2]):
            yield (first, second)


def distinct_west_triples() -> Iterator[Tuple[Quad, Quad, Quad]]:
    for norths in itertools.product("ab", repeat=3):
        for souths in itertools.product("ab", repeat=3):
            for easts in itertools.product("012", repeat=3):
                yield tuple((norths[i], str(i), souths[i], easts[i]) for i in range(3))


def equal_west_triples() -> Iterator[Tuple[Quad, Quad, Quad]]:
    # one west glue forces three distinct souths
    for norths in itertools.product("abc", repeat=3):
        for easts in itertools.product("01", repeat=3):
            yield tuple((norths[i], "0", "abc"[i], easts[i]) for i in range(3))


def _exposures(ts: TileSet, west: Sequence[str], south: Sequence[str]) -> Optional[Exposures]:
    outcome = simulate(ts, LSeed.of(south, west))
    if not isinstance(outcome, Completed):
        return None
    return tuple(north_exposure(outcome.assembly)), tuple(east_exposure(outcome.assembly))


def _impulses(
    ts: TileSet, background: Sequence[str], alternatives: Sequence[str], place
) -> Optional[Dict[Tuple[str, int], Exposures]]:
    """Exposures per single impulse, None if any impulse is lost or jams."""
    results: Dict[Tuple[str, int], Exposures] = {}
    for glue in alternatives:
        for pos in range(len(background), 0, -1):
            boundary = list(background)
            boundary[pos - 1] = glue
            got = place(boundary)
            if got is None:
                return None
            results[(glue, pos)] = got
    return results


def transports(ts: TileSet, width: int, height: int) -> bool:
    for q in ts:
        if q.north != q.south or q.east != q.west:
            continue
        west_bg = [q.west] * height
        south_bg = [q.south] * width
        quiet = _exposures(ts, west_bg, south_bg)
        if quiet is None:
            continue
        west_alts = sorted({t.west for t in ts} - {q.west})
        south_alts = sorted({t.south for t in ts} - {q.south})
        if not west_alts or not south_alts:
            continue
        horizontal = _impulses(ts, west_bg, west_alts, lambda w: _exposures(ts, w, south_bg))
        if horizontal is None or not _distinct_changes(horizontal, quiet):
            continue
        vertical = _impulses(ts, south_bg, south_alts, lambda s: _exposures(ts, west_bg, s))
        if vertical is None or not _distinct_changes(vertical, quiet):
            continue
        if _crossing(ts, west_bg, south_bg, horizontal, vertical):
            return True
    return False


def _distinct_changes(results: Dict[Tuple[str, int], Exposures], quiet: Exposures) -> bool:
    values = list(results.values())
    return quiet not in values and len(set(values)) == len(values)


def _crossing(
    ts: TileSet,
    west_bg: Sequence[str],
    south_bg: Sequence[str],
    horizontal: Dict[Tuple[str, int], Exposures],
    vertical: Dict[Tuple[str, int], Exposures],
) -> bool:
    for (wg, y), alone_w in horizontal.items():
        for (sg, x), alone_s in vertical.items():
            west = list(west_bg)
            west[y - 1] = wg
            south = list(south_bg)
            south[x - 1] = sg
            both = _exposures(ts, west, south)
            if both is not None and both != alone_w and both != alone_s:
                return True
    return False


def periodic_words(length: int, max_period: int = 3, alphabet: str = "ab") -> List[str]:
    words = set()
    for period in range(1, max_period + 1):
        for base in itertools.product(alphabet, repeat=period):
            words.add("".join(base[i % period] for i in range(length)))
    return sorted(words)


def words_without_double_one(length: int) -> Iterator[str]:
    def grow(prefix: str) -> Iterator[str]:
        if len(prefix) == length:
            yield prefix
            return
        yield from grow(prefix + "0")
        if not prefix.endswith("1"):
            yield from grow(prefix + "1")

    yield from grow("")


def right_column_witness(r: int) -> List[str]:
    fill = ["0"] * (2 * r - 2)
    return ["0", "0", "1"] + fill + ["1"] + fill + ["1", "0"]


def check_zigzag(a: Assembly) -> bool:
    """No column shows east glue 1 on two vertically adjacent cells."""
    for x in range(1, a.width + 1):
        for y in range(1, a.height):
            if a.tile_at(x, y).east == "1" and a.tile_at(x, y + 1).east == "1":
                return False
    return True


def zigzag_borders(width: int, height: int) -> Iterator[Tuple[List[str], List[str]]]:
    """The quiet border (south all a, west all 0) and every single-glue change of it.

    The zigzag set has no tile for west 1 over south b, so these are the
    borders it can always tile: a lone impulse runs diagonally out of the
    rectangle without meeting another.
    """
    south, west = ["a"] * width, ["0"] * height
    yield south, west
    for x in range(width):
        yield south[:x] + ["b"] + south[x + 1 :], west
    for y in range(height):
        yield south, west[:y] + ["1"] + west[y + 1 :]


def zigzag_property(sizes: Sequence[Tuple[int, int]]) -> Tuple[int, bool]:
    """Grow the zigzag set over every border of every size; (grown, property holds)."""
    zigzag = zigzag_set()
    grown = 0
    for width, height in sizes:
        for south, west in zigzag_borders(width, height):
            outcome = simulate(zigzag, LSeed.of(south, west))
            if not isinstance(outcome, Completed) or not check_zigzag(outcome.assembly):
                return grown, False
            grown += 1
    return grown, True


def verify_lemma_lb4(c: int = SCALED_C, r: int = SCALED_R, exhaustive_words: bool = True) -> LemmaReport:
    if c < 4 or r < 2:
        raise PatsforgeError("cyan lower bound needs c >= 4 and r >= 2")
    width, height = c + 11, 4 * r + 2
    report = LemmaReport(lemma="lb4")

    survivors: List[TileSet] = []
    for index, quads in enumerate(cyan_triples()):
        ts = tiles_of(quads)
        ok = transports(ts, width, height)
        report.candidates += 1
        report.details.append(
            f"lb4 candidate {index} {' '.join('(' + ','.join(q) + ')' for q in quads)} "
            f"{'survives' if ok else 'rejected'}"
        )
        if ok:
            survivors.append(ts)
    report.survivors = sorted({signature(ts) for ts in survivors})
    report.checks["unique_survivor_is_zigzag"] = len(report.survivors) == 1 and all(
        isomorphic(ts, zigzag_set()) for ts in survivors
    )
    report.checks["two_cyan_sets_fail"] = not any(
        transports(tiles_of(pair), width, height) for pair in two_cyan_sets()
    )
    report.checks["distinct_wests_fail"] = not any(
        transports(tiles_of(t), width, height) for t in distinct_west_triples()
    )
    report.checks["equal_wests_fail"] = not any(
        transports(tiles_of(t), width, height) for t in equal_west_triples()
    )
    case2 = (("a", "0", "a", "1"), ("a", "0", "b", "1"), ("b", "1", "a", "0"))
    report.checks["case2_triple_fails"] = not transports(tiles_of(case2), width, height)

    top, right = lb4_boundary(c, r)
    window = top[2:-1]
    ce_budget = (c - 1) // 3
    report.checks["periodic_top_rows_fail"] = all(
        strip_admits(list(word), window, {CE: ce_budget}) is None
        for word in periodic_words(width)
    )
    control = ["b" if color == YELLOW else "a" for color in window]
    report.checks["top_row_control_passes"] = strip_admits(control, window, {CE: 1, YELLOW: 1}) is not None

    column = right[:-1]
    if exhaustive_words:
        report.checks["right_column_needs_four"] = all(
            strip_admits(list(word), column, 3) is None for word in words_without_double_one(height)
        )
    else:
        report.checks["right_column_needs_four"] = strip_admits_some(column, 3) is None
    report.checks["right_column_witness_four"] = strip_admits(right_column_witness(r), column, 4) is not None

    sizes = [(w, h) for w in range(1, 11) for h in range(1, 11)] + [(width, height)]
    grown, holds = zigzag_property(sizes)
    report.details.append(f"lb4 zigzag rectangles grown={grown}")
    report.checks["zigzag_property"] = holds and grown > 0
    logger.info("lb4 (c=%d, r=%d): %d survivors", c, r, len(report.survivors))
    return report


# --- CE / yellow labelings --------------------------------------------------


LB3_WINDOW: Tuple[Tuple[int, ...], ...] = (
    (YELLOW, CE, YELLOW, YELLOW),
    (YELLOW, CE, YELLOW, YELLOW),
    (CE, CE, YELLOW, YELLOW),
    (CE, CE, CE, YELLOW),
    (CE, CE, CE, CE),
)  # south row first

FORCED_CE_YELLOW: Tuple[Quad, ...] = (
    ("0", "a", "0", "a"),
    ("0", "b", "0", "b"),
    ("0", "a", "1", "b"),
    ("1", "b", "1", "b"),
)


def forced_ce_yellow_set() -> TileSet:
    return TileSet(
        tuple(
            TileType(n, w, s, e, CE if i < 2 else YELLOW, f"t{i + 1}")
            for i, (n, w, s, e) in enumerate(FORCED_CE_YELLOW)
        )
    )


class _WindowLabeling:
    """Labelings of a colored window by a fixed number of classes per color."""

    def __init__(self, rows: Sequence[Sequence[int]], classes: Dict[int, int], force_yellow_south: bool):
        self.rows = rows
        self.width = len(rows[0])
        self.height = len(rows)
        self.grid = EdgeGrid(self.width, self.height)
        self.uf = RollbackUnionFind(self.grid.size)
        self.order = list(sweep_order(self.width, self.height))
        self.slots = [(color, k) for color, n in sorted(classes.items()) for k in range(n)]
        self.reps: Dict[Tuple[int, int], Tuple[int, int, int, int]] = {}
        self.force_yellow_south = force_yellow_south
        self.found: List[TileSet] = []
        self.leaves = 0

    def color(self, x: int, y: int) -> int:
        return self.rows[y - 1][x - 1]

    def _consistent(self) -> bool:
        find = self.uf.find
        keys = set()
        for _, w, s, _ in self.reps.values():
            key = (find(w), find(s))
            if key in keys:
                return False
            keys.add(key)
        ce = [self.reps[slot] for slot in ((CE, 0), (CE, 1)) if slot in self.reps]
        if len(ce) == 2:
            (_, w0, _, e0), (_, w1, _, e1) = ce
            if find(w0) == find(w1) or find(e0) == find(e1):
                return False
        return True

    def _open(self, slot: Tuple[int, int], edges) -> bool:
        """Open a class; both CE classes share their south glue."""
        self.reps[slot] = edges
        if slot == (CE, 1):
            self.uf.union(edges[2], self.reps[(CE, 0)][2])
        return self._consistent()

    def search(self) -> List[TileSet]:
        self._dfs(0)
        return self.found

    def _dfs(self, i: int) -> None:
        if i == len(self.order):
            if len(self.reps) == len(self.slots):
                self._leaf()
            return
        x, y = self.order[i]
        color = self.color(x, y)
        edges = self.grid.cell(x, y)
        find = self.uf.find
        key = (find(edges[1]), find(edges[2]))
        forced = [slot for slot, rep in self.reps.items() if (find(rep[1]), find(rep[2])) == key]
        if forced:
            candidates = [forced[0]] if forced[0][0] == color else []
        else:
            candidates = [slot for slot in self.reps if slot[0] == color]
            fresh = next((slot for slot in self.slots if slot[0] == color and slot not in self.reps), None)
            if fresh is not None:
                candidates.append(fresh)
        for slot in candidates:
            mark = self.uf.mark()
            if slot in self.reps:
                for mine, theirs in zip(edges, self.reps[slot]):
                    self.uf.union(mine, theirs)
                ok = self._consistent()
                opened = False
            else:
                ok = self._open(slot, edges)
                opened = True
            if ok:
                self._dfs(i + 1)
            if opened:
                del self.reps[slot]
            self.uf.rollback(mark)

    def _leaf(self) -> None:
        self.leaves += 1
        if not self.force_yellow_south:
            self.found.append(self._tileset())
            return
        ce_south = self.reps[(CE, 0)][2]
        for slot, rep in list(self.reps.items()):
            if slot[0] != YELLOW:
                continue
            mark = self.uf.mark()
            self.uf.union(rep[2], ce_south)
            if self._consistent():
                self.found.append(self._tileset())
            self.uf.rollback(mark)

    def _tileset(self) -> TileSet:
        labels = self.uf.classes()
        tiles = []
        for (color, k), (n, w, s, e) in sorted(self.reps.items()):
            tiles.append(TileType(str(labels[n]), str(labels[w]), str(labels[s]), str(labels[e]), color))
        return TileSet(tuple(tiles))


def verify_lemma_lb3(force_t3_south_zero: bool = False, yellow_types: int = 2) -> LemmaReport:
    search = _WindowLabeling(LB3_WINDOW, {CE: 2, YELLOW: yellow_types}, force_t3_south_zero)
    found = search.search()
    report = LemmaReport(lemma="lb3", candidates=search.leaves)
    report.survivors = sorted({signature(ts) for ts in found})
    expect_unique = yellow_types == 2 and not force_t3_south_zero
    if expect_unique:
        report.checks["unique_survivor"] = len(report.survivors) == 1
        report.checks["matches_forced_labels"] = bool(found) and all(
            isomorphic(ts, forced_ce_yellow_set()) for ts in found
        )
    else:
        report.checks["infeasible"] = not found
    logger.info("lb3 (yellow=%d, forced=%s): %d survivors", yellow_types, force_t3_south_zero, len(report.survivors))
    return report


# --- tile-set level checks --------------------------------------------------


def check_lemma_exactly2(ts: TileSet, color: int) -> bool:
    pair = [t for t in ts if t.color == color]
    if len(pair) != 2:
        raise PatsforgeError(f"color {color} has {len(pair)} tile types, expected 2")
    first, second = pair
    return first.west != second.west and first.east != second.east and first.south == second.south


def check_property2(a: Assembly) -> bool:
    """Every CE run directly east of a yellow tile is made of t_CEss."""
    ce_ss = t_eval().by_name("t_CEss")
    for y in range(1, a.height + 1):
        for x in range(1, a.width + 1):
            if a.tile_at(x, y).color != YELLOW:
                continue
            d = x + 1
            while d <= a.width and a.tile_at(d, y).color == CE:
                if a.tile_at(d, y) != ce_ss:
                    return False
                d += 1
    return True


def verify_gadget(bp: GadgetBlueprint) -> LemmaReport:
    report = LemmaReport(lemma="gadget", candidates=1)
    try:
        a = assemble_gadget(bp)
    except PatsforgeError as exc:
        report.details.append(f"gadget assembly failed: {exc}")
        report.checks["completes"] = False
        return report
    report.checks["completes"] = True
    exposures = check_exposures(a)
    report.checks["north_exposure_all_F"] = exposures.north_ok
    report.checks["east_exposure_ft_then_F"] = exposures.east_ok
    top, right = lb4_words(a, bp)
    want_top, want_right = lb4_boundary(bp.c, bp.r)
    report.checks["lb4_top_row"] = top == want_top
    report.checks["lb4_right_column"] = right == want_right
    report.checks["property2"] = check_property2(a)
    for name, ok in check_motifs(a, bp).items():
        report.checks[f"motif_{name}"] = ok
    report.checks["templates_present"] = all(template_regions_present(a, bp).values())
    painted = {paint_template(p, b) for p, b in template_order()}
    report.checks["templates_distinct"] = len(painted) == 32
    report.details.append(f"gadget {bp.width}x{bp.height} c={bp.c} r={bp.r}")
    return report

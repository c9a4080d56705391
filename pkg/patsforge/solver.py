"""Exact minimum-size directed tile sets for small patterns.

A candidate solution is a partition of the cells into tile classes. Glues are
never enumerated: every edge of the grid is a variable, and putting two cells
in one class unifies their four sides pairwise. The resulting most general
glue assignment is directed iff no two classes share a (west, south) key, and
a directed system that tiles reproduces its partition, hence the pattern.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import get_settings
from .errors import InstanceTooLarge, PatsforgeError, SearchSpaceExceeded
from .palette import BLACK, WHITE
from .rtas import Completed, LSeed, Pattern, TileSet, TileType, is_directed, pattern_of, simulate, sweep_order
from .unionfind import RollbackUnionFind


logger = logging.getLogger(__name__)

MAX_SEARCH_CELLS = 400

Edges = Tuple[int, int, int, int]  # north, west, south, east


@dataclass(frozen=True, eq=False)
class CellPartition:
    class_of: np.ndarray  # (height, width), row 0 is y = 1
    count: int

    def __post_init__(self) -> None:
        grid = np.array(self.class_of, dtype=np.int64, copy=True)
        grid.setflags(write=False)
        object.__setattr__(self, "class_of", grid)

    def at(self, x: int, y: int) -> int:
        return int(self.class_of[y - 1, x - 1])

    def color_respecting(self, p: Pattern) -> bool:
        if self.class_of.shape != p.colors.shape:
            return False
        seen: Dict[int, int] = {}
        for cls, color in zip(self.class_of.ravel(), p.colors.ravel()):
            if seen.setdefault(int(cls), int(color)) != int(color):
                return False
        return True


@dataclass(frozen=True)
class Solution:
    tileset: TileSet
    seed: LSeed
    size: int
    partition: CellPartition


class EdgeGrid:
    """Edge variables of a w x h grid.

    H(x, y), x = 0..w, is the vertical edge east of cell (x, y); H(0, y) is
    the seed edge of row y. U(x, y), y = 0..h, is the horizontal edge north of
    cell (x, y); U(x, 0) is the seed edge of column x.
    """

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self._horizontal = (width + 1) * height

    @property
    def size(self) -> int:
        return self._horizontal + self.width * (self.height + 1)

    def h(self, x: int, y: int) -> int:
        return (y - 1) * (self.width + 1) + x

    def u(self, x: int, y: int) -> int:
        return self._horizontal + y * self.width + (x - 1)

    def cell(self, x: int, y: int) -> Edges:
        return (self.u(x, y), self.h(x - 1, y), self.u(x, y - 1), self.h(x, y))


def _witness(
    p: Pattern, grid: EdgeGrid, uf: RollbackUnionFind, reps: Sequence[Edges], colors: Sequence[int]
) -> Tuple[TileSet, LSeed]:
    labels = uf.classes()

    def glue(var: int) -> str:
        return str(labels[var])

    tiles = tuple(
        TileType(glue(n), glue(w), glue(s), glue(e), color, f"c{i}")
        for i, ((n, w, s, e), color) in enumerate(zip(reps, colors))
    )
    x_north = [glue(grid.u(x, 0)) for x in range(1, p.width + 1)]
    y_east = [glue(grid.h(0, y)) for y in range(1, p.height + 1)]
    return TileSet(tiles), LSeed.of(x_north, y_east)


def _keys_distinct(uf: RollbackUnionFind, reps: Sequence[Edges]) -> bool:
    seen = set()
    for _, w, s, _ in reps:
        key = (uf.find(w), uf.find(s))
        if key in seen:
            return False
        seen.add(key)
    return True


def _reproduces(p: Pattern, ts: TileSet, seed: LSeed) -> bool:
    outcome = simulate(ts, seed)
    return isinstance(outcome, Completed) and pattern_of(outcome.assembly) == p


def partition_feasible(p: Pattern, part: CellPartition) -> Optional[Tuple[TileSet, LSeed]]:
    if not part.color_respecting(p):
        return None
    grid = EdgeGrid(p.width, p.height)
    uf = RollbackUnionFind(grid.size)
    reps: Dict[int, Edges] = {}
    colors: Dict[int, int] = {}
    for y in range(1, p.height + 1):
        for x in range(1, p.width + 1):
            cls = part.at(x, y)
            edges = grid.cell(x, y)
            if cls not in reps:
                reps[cls] = edges
                colors[cls] = p.at(x, y)
                continue
            for mine, theirs in zip(edges, reps[cls]):
                uf.union(mine, theirs)
    order = sorted(reps)
    rep_list = [reps[c] for c in order]
    if not _keys_distinct(uf, rep_list):
        return None
    ts, seed = _witness(p, grid, uf, rep_list, [colors[c] for c in order])
    if not is_directed(ts) or not _reproduces(p, ts, seed):
        return None
    return ts, seed


# --- branch and bound ------------------------------------------------------


class _PartitionSearch:
    def __init__(self, p: Pattern, bound: int, node_budget: int):
        self.p = p
        self.bound = bound
        self.node_budget = node_budget
        self.nodes = 0
        self.grid = EdgeGrid(p.width, p.height)
        self.uf = RollbackUnionFind(self.grid.size)
        self.order = list(sweep_order(p.width, p.height))
        self.colors = [p.at(x, y) for x, y in self.order]
        self.suffix_colors: List[frozenset] = [frozenset()] * (len(self.order) + 1)
        for i in range(len(self.order) - 1, -1, -1):
            self.suffix_colors[i] = self.suffix_colors[i + 1] | {self.colors[i]}
        self.reps: List[Edges] = []
        self.class_color: List[int] = []
        self.assign: List[int] = [-1] * len(self.order)

    def run(self) -> Optional[List[int]]:
        return list(self.assign) if self._dfs(0) else None

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise SearchSpaceExceeded(self.nodes)

    def _dfs(self, i: int) -> bool:
        self._tick()
        if i == len(self.order):
            return True
        unopened = self.suffix_colors[i] - set(self.class_color)
        if len(self.reps) + len(unopened) > self.bound:
            return False
        x, y = self.order[i]
        edges = self.grid.cell(x, y)
        color = self.colors[i]
        find = self.uf.find
        key = (find(edges[1]), find(edges[2]))
        for cls, rep in enumerate(self.reps):
            if (find(rep[1]), find(rep[2])) == key:
                # a directed system has no choice here
                return self.class_color[cls] == color and self._join(i, cls, edges)
        for cls in range(len(self.reps)):
            if self.class_color[cls] == color and self._join(i, cls, edges):
                return True
        if len(self.reps) < self.bound:
            self.reps.append(edges)
            self.class_color.append(color)
            self.assign[i] = len(self.reps) - 1
            if self._dfs(i + 1):
                return True
            self.reps.pop()
            self.class_color.pop()
            self.assign[i] = -1
        return False

    def _join(self, i: int, cls: int, edges: Edges) -> bool:
        mark = self.uf.mark()
        for mine, theirs in zip(edges, self.reps[cls]):
            self.uf.union(mine, theirs)
        if _keys_distinct(self.uf, self.reps):
            self.assign[i] = cls
            if self._dfs(i + 1):
                return True
            self.assign[i] = -1
        self.uf.rollback(mark)
        return False

    def partition(self, assign: Sequence[int]) -> CellPartition:
        grid = np.empty((self.p.height, self.p.width), dtype=np.int64)
        for (x, y), cls in zip(self.order, assign):
            grid[y - 1, x - 1] = cls
        return CellPartition(grid, max(assign) + 1)


def min_tileset(
    p: Pattern, budget: Optional[int] = None, node_limit: Optional[int] = None
) -> Optional[Solution]:
    """Smallest directed system assembling `p`, or None if none fits `budget`.

    Iterative deepening on the class count; the first bound that admits a
    partition is optimal and its first partition (classes opened in sweep
    order, existing classes tried before new ones) is returned.
    """
    cells = p.width * p.height
    if cells > MAX_SEARCH_CELLS:
        raise InstanceTooLarge(f"pattern has {cells} cells, search is limited to {MAX_SEARCH_CELLS}")
    limit = node_limit if node_limit is not None else get_settings().node_limit
    ceiling = cells if budget is None else min(budget, cells)
    spent = 0
    for bound in range(len(p.color_set()), ceiling + 1):
        search = _PartitionSearch(p, bound, limit - spent)
        try:
            assign = search.run()
        except SearchSpaceExceeded:
            raise SearchSpaceExceeded(spent + search.nodes) from None
        spent += search.nodes
        logger.debug("bound %d: %d nodes, %s", bound, search.nodes, "found" if assign else "none")
        if assign is None:
            continue
        part = search.partition(assign)
        witness = partition_feasible(p, part)
        if witness is None:
            raise PatsforgeError(f"search returned an infeasible partition at bound {bound}")
        ts, seed = witness
        return Solution(ts, seed, len(ts), part)
    return None


# --- oracle ----------------------------------------------------------------


def _color_partitions(colors: Sequence[int], classes: int) -> Iterator[List[int]]:
    """Color-respecting restricted growth strings with exactly `classes` blocks."""
    n = len(colors)
    assign = [0] * n
    class_color: List[int] = []

    def grow(i: int) -> Iterator[List[int]]:
        if len(class_color) + (n - i) < classes:
            return
        if i == n:
            if len(class_color) == classes:
                yield list(assign)
            return
        for cls, color in enumerate(class_color):
            if color == colors[i]:
                assign[i] = cls
                yield from grow(i + 1)
        if len(class_color) < classes:
            class_color.append(colors[i])
            assign[i] = len(class_color) - 1
            yield from grow(i + 1)
            class_color.pop()

    yield from grow(0)


def brute_force_min(
    p: Pattern, max_classes: Optional[int] = None, max_cells: Optional[int] = None
) -> Optional[int]:
    cells = p.width * p.height
    limit = max_cells if max_cells is not None else get_settings().brute_force_max_cells
    if cells > limit:
        raise InstanceTooLarge(f"instance too large: {cells} cells > {limit}")
    order = [(x, y) for y in range(1, p.height + 1) for x in range(1, p.width + 1)]
    colors = [p.at(x, y) for x, y in order]
    ceiling = cells if max_classes is None else min(max_classes, cells)
    for classes in range(len(set(colors)), ceiling + 1):
        for assign in _color_partitions(colors, classes):
            grid = np.empty((p.height, p.width), dtype=np.int64)
            for (x, y), cls in zip(order, assign):
                grid[y - 1, x - 1] = cls
            if partition_feasible(p, CellPartition(grid, classes)) is not None:
                return classes
    return None


# --- one-dimensional strips ------------------------------------------------


Budget = Union[int, Dict[int, int]]


def strip_admits(
    glues: Sequence[str], colors: Sequence[int], budget: Budget
) -> Optional[Dict[Tuple[int, str], Tuple[int, int]]]:
    """Can one row of tiles read `glues` from the side and show `colors`?

    The glue carried along the strip is an abstract state starting at 0; a
    tile is a (state, side glue) pair mapped to (next state, color). `budget`
    caps the number of tiles, in total or per color (colors absent from the
    dict are unlimited). Returns a witness transition table or None.
    """
    if len(glues) != len(colors):
        raise PatsforgeError("strip glues and colors differ in length")
    table: Dict[Tuple[int, str], Tuple[int, int]] = {}
    used: Counter = Counter()

    def fits(color: int) -> bool:
        if isinstance(budget, int):
            return len(table) < budget
        cap = budget.get(color)
        return cap is None or used[color] < cap

    def walk(i: int, state: int, states: int) -> bool:
        if i == len(glues):
            return True
        key = (state, glues[i])
        if key in table:
            nxt, color = table[key]
            return color == colors[i] and walk(i + 1, nxt, states)
        color = colors[i]
        if not fits(color):
            return False
        used[color] += 1
        for nxt in range(states + 1):
            table[key] = (nxt, color)
            if walk(i + 1, nxt, max(states, nxt + 1)):
                return True
        del table[key]
        used[color] -= 1
        return False

    return dict(table) if walk(0, 0, 1) else None


# --- binary counter ---------------------------------------------------------


def half_adder_set() -> TileSet:
    """North = west xor south, east = west and south; black iff north is 1."""
    return TileSet(
        (
            TileType("0", "0", "0", "0", WHITE, "ha00"),
            TileType("1", "1", "0", "0", BLACK, "ha10"),
            TileType("1", "0", "1", "0", BLACK, "ha01"),
            TileType("0", "1", "1", "1", WHITE, "ha11"),
        )
    )


def counter_seed(width: int, height: int) -> LSeed:
    return LSeed.of(["0"] * width, ["1"] * height)


def counter_pattern(width: int, height: int) -> Pattern:
    """Row y shows y in binary, least significant bit at x = 1."""
    grid = np.array(
        [[BLACK if (y >> x) & 1 else WHITE for x in range(width)] for y in range(1, height + 1)],
        dtype=np.int64,
    )
    return Pattern(grid)


def strip_admits_some(
    colors: Sequence[int],
    budget: Budget,
    alphabet: Sequence[str] = ("0", "1"),
    forbidden: Sequence[Tuple[str, str]] = (("1", "1"),),
) -> Optional[Tuple[List[str], Dict[Tuple[int, str], Tuple[int, int]]]]:
    """Like `strip_admits`, but the side word is chosen by the search too.

    Consecutive side glues may not form a pair in `forbidden`. Returns the
    first (word, table) found, or None when no word admits the colors.
    """
    banned = set(forbidden)
    table: Dict[Tuple[int, str], Tuple[int, int]] = {}
    used: Counter = Counter()
    word: List[str] = []
    dead = set()

    def fits(color: int) -> bool:
        if isinstance(budget, int):
            return len(table) < budget
        cap = budget.get(color)
        return cap is None or used[color] < cap

    def walk(i: int, state: int, states: int) -> bool:
        if i == len(colors):
            return True
        prev = word[-1] if word else None
        memo = (i, state, states, prev, frozenset(table.items()))
        if memo in dead:
            return False
        for glue in alphabet:
            if (prev, glue) in banned:
                continue
            word.append(glue)
            key = (state, glue)
            if key in table:
                nxt, color = table[key]
                if color == colors[i] and walk(i + 1, nxt, states):
                    return True
            elif fits(colors[i]):
                used[colors[i]] += 1
                for nxt in range(states + 1):
                    table[key] = (nxt, colors[i])
                    if walk(i + 1, nxt, max(states, nxt + 1)):
                        return True
                del table[key]
                used[colors[i]] -= 1
            word.pop()
        dead.add(memo)
        return False

    if walk(0, 0, 1):
        return list(word), dict(table)
    return None

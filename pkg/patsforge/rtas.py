"""Rectilinear tile assembly: tiles, L-shaped seeds, the tiling rule.

Coordinates follow the model: (1, 1) is the south-west cell and y grows
northward. The seed is not made of tiles; it only exposes north glues along
row 0 (x = 1..w) and east glues along column 0 (y = 1..h). Grids are stored as
numpy arrays of shape (height, width) with array row 0 holding y = 1.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import PatsforgeError


logger = logging.getLogger(__name__)

Glue = str
Position = Tuple[int, int]


@dataclass(frozen=True)
class TileType:
    north: Glue
    west: Glue
    south: Glue
    east: Glue
    color: int
    name: Optional[str] = field(default=None, compare=False)

    @property
    def glues(self) -> Tuple[Glue, Glue, Glue, Glue]:
        return (self.north, self.west, self.south, self.east)

    def label(self) -> str:
        return self.name or f"({self.north},{self.west},{self.south},{self.east})"


@dataclass(frozen=True)
class TileSet:
    types: Tuple[TileType, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "types", tuple(self.types))
        seen = set()
        for t in self.types:
            if t in seen:
                raise PatsforgeError(f"duplicate tile type {t.label()}")
            seen.add(t)

    def __len__(self) -> int:
        return len(self.types)

    def __iter__(self) -> Iterator[TileType]:
        return iter(self.types)

    def __getitem__(self, index: int) -> TileType:
        return self.types[index]

    @cached_property
    def _by_input(self) -> Dict[Tuple[Glue, Glue], Tuple[int, ...]]:
        table: Dict[Tuple[Glue, Glue], List[int]] = {}
        for i, t in enumerate(self.types):
            table.setdefault((t.west, t.south), []).append(i)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def _by_name(self) -> Dict[str, int]:
        return {t.name: i for i, t in enumerate(self.types) if t.name}

    def index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"no tile named {name!r}") from None

    def by_name(self, name: str) -> TileType:
        return self.types[self.index(name)]


@dataclass(frozen=True)
class LSeed:
    width: int
    height: int
    x_north: Tuple[Glue, ...]
    y_east: Tuple[Glue, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "x_north", tuple(self.x_north))
        object.__setattr__(self, "y_east", tuple(self.y_east))
        if self.width < 1 or self.height < 1:
            raise PatsforgeError("seed dimensions must be positive")
        if len(self.x_north) != self.width:
            raise PatsforgeError(f"x_north has {len(self.x_north)} glues, width is {self.width}")
        if len(self.y_east) != self.height:
            raise PatsforgeError(f"y_east has {len(self.y_east)} glues, height is {self.height}")

    @classmethod
    def of(cls, x_north: Sequence[Glue], y_east: Sequence[Glue]) -> "LSeed":
        return cls(len(x_north), len(y_east), tuple(x_north), tuple(y_east))


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.int64, copy=True)
    if out.ndim != 2 or out.size == 0:
        raise PatsforgeError("grid must be a non-empty 2D array")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Pattern:
    colors: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", _frozen(self.colors))

    @classmethod
    def from_rows(cls, rows_top_first: Sequence[Sequence[int]]) -> "Pattern":
        return cls(np.array(rows_top_first, dtype=np.int64)[::-1])

    @classmethod
    def uniform(cls, width: int, height: int, color: int) -> "Pattern":
        return cls(np.full((height, width), color, dtype=np.int64))

    @property
    def width(self) -> int:
        return int(self.colors.shape[1])

    @property
    def height(self) -> int:
        return int(self.colors.shape[0])

    def at(self, x: int, y: int) -> int:
        return int(self.colors[y - 1, x - 1])

    def color_set(self) -> List[int]:
        return sorted(int(c) for c in np.unique(self.colors))

    def rows_top_first(self) -> List[List[int]]:
        return [[int(c) for c in row] for row in self.colors[::-1]]

    def crop(self, x0: int, y0: int, x1: int, y1: int) -> "Pattern":
        """Inclusive 1-based box."""
        return Pattern(self.colors[y0 - 1 : y1, x0 - 1 : x1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.colors.shape == other.colors.shape and bool(np.array_equal(self.colors, other.colors))

    def __hash__(self) -> int:
        return hash((self.colors.shape, self.colors.tobytes()))


@dataclass(frozen=True, eq=False)
class Assembly:
    tileset: TileSet
    seed: LSeed
    cells: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", _frozen(self.cells))

    @property
    def width(self) -> int:
        return int(self.cells.shape[1])

    @property
    def height(self) -> int:
        return int(self.cells.shape[0])

    def index_at(self, x: int, y: int) -> int:
        return int(self.cells[y - 1, x - 1])

    def tile_at(self, x: int, y: int) -> TileType:
        return self.tileset[self.index_at(x, y)]

    def glue_grid(self, side: str) -> List[List[Glue]]:
        """Glues on one side ("north", "west", "south", "east") per cell, bottom row first."""
        return [[getattr(self.tileset[int(i)], side) for i in row] for row in self.cells]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assembly):
            return NotImplemented
        return (
            self.tileset == other.tileset
            and self.seed == other.seed
            and bool(np.array_equal(self.cells, other.cells))
        )

    def __hash__(self) -> int:
        return hash((self.seed, self.cells.tobytes()))


@dataclass(frozen=True)
class Completed:
    assembly: Assembly
    kind: str = field(default="completed", init=False)


@dataclass(frozen=True)
class Stuck:
    position: Position
    west: Glue
    south: Glue
    kind: str = field(default="stuck", init=False)

    def describe(self) -> str:
        x, y = self.position
        return f"stuck at ({x},{y}): west={self.west} south={self.south}"


@dataclass(frozen=True)
class Ambiguous:
    position: Position
    candidates: Tuple[int, ...]
    kind: str = field(default="ambiguous", init=False)

    def describe(self) -> str:
        x, y = self.position
        return f"ambiguous at ({x},{y}): candidates {list(self.candidates)}"


SimOutcome = Union[Completed, Stuck, Ambiguous]
FillOrder = Union[str, random.Random]


def sweep_key(pos: Position) -> Tuple[int, int]:
    x, y = pos
    return (x + y, x)


def sweep_order(width: int, height: int) -> Iterator[Position]:
    """Anti-diagonal order: x + y ascending, then x ascending."""
    for d in range(2, width + height + 1):
        for x in range(max(1, d - height), min(width, d - 1) + 1):
            yield (x, d - x)


def _row_order(width: int, height: int) -> Iterator[Position]:
    for y in range(1, height + 1):
        for x in range(1, width + 1):
            yield (x, y)


def _random_order(width: int, height: int, rng: random.Random) -> Iterator[Position]:
    # a cell becomes ready once its west and south neighbors were visited
    waiting = {}
    ready = [(1, 1)]
    while ready:
        i = rng.randrange(len(ready))
        ready[i], ready[-1] = ready[-1], ready[i]
        x, y = ready.pop()
        yield (x, y)
        for nx, ny in ((x + 1, y), (x, y + 1)):
            if nx > width or ny > height:
                continue
            need = (nx > 1) + (ny > 1)
            got = waiting.get((nx, ny), 0) + 1
            if got == need:
                waiting.pop((nx, ny), None)
                ready.append((nx, ny))
            else:
                waiting[(nx, ny)] = got


def _fill_order(width: int, height: int, order: FillOrder) -> Iterable[Position]:
    if isinstance(order, random.Random):
        return _random_order(width, height, order)
    if order == "sweep":
        return sweep_order(width, height)
    if order == "row":
        return _row_order(width, height)
    raise PatsforgeError(f"unknown fill order {order!r}")


def is_directed(ts: TileSet) -> bool:
    return all(len(group) == 1 for group in ts._by_input.values())


def attachable(ts: TileSet, west: Glue, south: Glue) -> List[int]:
    return list(ts._by_input.get((west, south), ()))


def simulate(
    ts: TileSet,
    seed: LSeed,
    order: FillOrder = "sweep",
    target: Optional[Pattern] = None,
) -> SimOutcome:
    """Run the tiling rule over the seed rectangle.

    With `target`, a candidate whose color differs from the target cell is
    treated as not attachable, so the outcome answers whether the system
    uniquely assembles that pattern. Failures never place a tile; cells that
    depend on a failed cell stay empty, so the set of failing cells (and the
    first one in sweep order, which is what gets reported) does not depend on
    `order`.
    """
    w, h = seed.width, seed.height
    if target is not None and (target.width, target.height) != (w, h):
        raise PatsforgeError(
            f"target is {target.width}x{target.height}, seed is {w}x{h}"
        )
    lookup = ts._by_input
    types = ts.types
    tcolors = target.colors if target is not None else None
    grid = [[-1] * w for _ in range(h)]
    failures: List[Tuple[Tuple[int, int], SimOutcome]] = []

    for x, y in _fill_order(w, h, order):
        if x > 1:
            left = grid[y - 1][x - 2]
            if left < 0:
                continue
            west = types[left].east
        else:
            west = seed.y_east[y - 1]
        if y > 1:
            below = grid[y - 2][x - 1]
            if below < 0:
                continue
            south = types[below].north
        else:
            south = seed.x_north[x - 1]
        candidates = lookup.get((west, south), ())
        if tcolors is not None:
            want = tcolors[y - 1, x - 1]
            candidates = tuple(i for i in candidates if types[i].color == want)
        if len(candidates) == 1:
            grid[y - 1][x - 1] = candidates[0]
        elif not candidates:
            failures.append((sweep_key((x, y)), Stuck((x, y), west, south)))
        else:
            failures.append((sweep_key((x, y)), Ambiguous((x, y), tuple(candidates))))

    if failures:
        outcome = min(failures, key=lambda item: item[0])[1]
        logger.debug("simulation failed: %s", outcome)
        return outcome
    return Completed(Assembly(ts, seed, np.array(grid, dtype=np.int64)))


def pattern_of(a: Assembly, ts: Optional[TileSet] = None) -> Pattern:
    ts = ts or a.tileset
    palette = np.array([t.color for t in ts.types], dtype=np.int64)
    return Pattern(palette[a.cells])


def first_mismatch(a: Union[Assembly, Pattern], p: Pattern) -> Optional[Position]:
    q = pattern_of(a) if isinstance(a, Assembly) else a
    if (q.width, q.height) != (p.width, p.height):
        return (1, 1)
    diff = np.argwhere(q.colors != p.colors)
    if diff.size == 0:
        return None
    cells = [(int(col) + 1, int(row) + 1) for row, col in diff]
    return min(cells, key=sweep_key)


def assembly_consistent(ts: TileSet, seed: LSeed, a: Assembly) -> bool:
    if (a.width, a.height) != (seed.width, seed.height):
        return False
    for y in range(1, a.height + 1):
        for x in range(1, a.width + 1):
            idx = a.index_at(x, y)
            if not 0 <= idx < len(ts):
                return False
            t = ts[idx]
            west = ts[a.index_at(x - 1, y)].east if x > 1 else seed.y_east[y - 1]
            south = ts[a.index_at(x, y - 1)].north if y > 1 else seed.x_north[x - 1]
            if t.west != west or t.south != south:
                return False
    return True


def north_exposure(a: Assembly) -> List[Glue]:
    return [a.tile_at(x, a.height).north for x in range(1, a.width + 1)]


def east_exposure(a: Assembly) -> List[Glue]:
    return [a.tile_at(a.width, y).east for y in range(1, a.height + 1)]


def color_census(ts: TileSet) -> Dict[int, int]:
    return dict(sorted(Counter(t.color for t in ts).items()))


def glue_alphabet(ts: TileSet) -> List[Glue]:
    return sorted({g for t in ts for g in t.glues})


# --- canonical forms ------------------------------------------------------


def _encode(t: TileType, names: Dict[Glue, int]) -> Tuple[Tuple[int, ...], Dict[Glue, int]]:
    fresh = dict(names)
    code = [t.color]
    for g in t.glues:
        if g not in fresh:
            fresh[g] = len(fresh)
        code.append(fresh[g])
    return tuple(code), fresh


def canonicalize(ts: TileSet) -> TileSet:
    """Least encoding over color-preserving tile orders.

    Tiles are laid out by ascending color; glues are renamed to the index of
    their first occurrence (one numbering shared by all four sides). The
    search keeps only partial orders whose encoding prefix is minimal, which
    is exact because the least full encoding has a least prefix at every
    length.
    """
    slots = sorted(t.color for t in ts)
    # frontier: (unused tile indices, glue renaming)
    frontier: List[Tuple[frozenset, Dict[Glue, int]]] = [(frozenset(range(len(ts))), {})]
    encoding: List[Tuple[int, ...]] = []
    for color in slots:
        best: Optional[Tuple[int, ...]] = None
        nxt: Dict[Tuple[frozenset, Tuple[Tuple[Glue, int], ...]], Tuple[frozenset, Dict[Glue, int]]] = {}
        for unused, names in frontier:
            for i in unused:
                t = ts[i]
                if t.color != color:
                    continue
                code, fresh = _encode(t, names)
                if best is not None and code > best:
                    continue
                if best is None or code < best:
                    best = code
                    nxt = {}
                rest = unused - {i}
                key = (rest, tuple(sorted(fresh.items())))
                nxt.setdefault(key, (rest, fresh))
        assert best is not None
        encoding.append(best)
        frontier = list(nxt.values())
    logger.debug("canonicalized %d tiles, %d tied orders remain", len(ts), len(frontier))
    return TileSet(
        tuple(TileType(str(n), str(w), str(s), str(e), c) for c, n, w, s, e in encoding)
    )


def isomorphic(a: TileSet, b: TileSet) -> bool:
    if len(a) != len(b):
        return False
    if sorted(t.color for t in a) != sorted(t.color for t in b):
        return False
    return canonicalize(a) == canonicalize(b)


def rename_glues(ts: TileSet, mapping: Dict[Glue, Glue]) -> TileSet:
    return TileSet(
        tuple(
            TileType(
                mapping.get(t.north, t.north),
                mapping.get(t.west, t.west),
                mapping.get(t.south, t.south),
                mapping.get(t.east, t.east),
                t.color,
                t.name,
            )
            for t in ts
        )
    )

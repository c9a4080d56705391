import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patsforge.errors import InstanceTooLarge, SearchSpaceExceeded
from patsforge.palette import BLACK, WHITE
from patsforge.rtas import Completed, Pattern, is_directed, pattern_of, simulate
from patsforge.solver import (
    CellPartition,
    EdgeGrid,
    brute_force_min,
    counter_pattern,
    counter_seed,
    half_adder_set,
    min_tileset,
    partition_feasible,
    strip_admits,
    strip_admits_some,
)
from patsforge.unionfind import RollbackUnionFind


def _patterns(width: int, height: int, colors: int):
    for cells in itertools.product(range(colors), repeat=width * height):
        yield Pattern(np.array(cells, dtype=np.int64).reshape(height, width))


def _assert_solution(p: Pattern, solution) -> None:
    assert is_directed(solution.tileset)
    outcome = simulate(solution.tileset, solution.seed)
    assert isinstance(outcome, Completed)
    assert pattern_of(outcome.assembly) == p
    assert solution.size == len(solution.tileset)


def test_union_find_rollback() -> None:
    uf = RollbackUnionFind(5)
    uf.union(0, 1)
    mark = uf.mark()
    uf.union(1, 2)
    uf.union(3, 4)
    assert uf.same(0, 2)
    uf.rollback(mark)
    assert uf.same(0, 1)
    assert not uf.same(0, 2)
    assert not uf.same(3, 4)
    assert uf.classes() == [0, 0, 1, 2, 3]
    assert uf.add() == 5


def test_edge_grid_ids_are_distinct() -> None:
    grid = EdgeGrid(3, 2)
    ids = [grid.h(x, y) for x in range(0, 4) for y in range(1, 3)]
    ids += [grid.u(x, y) for x in range(1, 4) for y in range(0, 3)]
    assert sorted(ids) == list(range(grid.size))
    n, w, s, e = grid.cell(2, 2)
    assert (w, e) == (grid.h(1, 2), grid.h(2, 2))
    assert (s, n) == (grid.u(2, 1), grid.u(2, 2))


def test_uniform_pattern_needs_one_type() -> None:
    p = Pattern.uniform(4, 3, 5)
    solution = min_tileset(p)
    assert solution is not None
    assert solution.size == 1
    _assert_solution(p, solution)


def test_budget_below_optimum_gives_none() -> None:
    p = Pattern.from_rows([[0, 1], [1, 0]])
    best = min_tileset(p)
    assert best is not None
    assert min_tileset(p, budget=best.size - 1) is None


def test_partition_feasible_rejects_color_mixing() -> None:
    p = Pattern.from_rows([[0, 1]])
    assert partition_feasible(p, CellPartition(np.zeros((1, 2), dtype=np.int64), 1)) is None
    witness = partition_feasible(p, CellPartition(np.array([[0, 1]]), 2))
    assert witness is not None


def test_half_adder_counts() -> None:
    outcome = simulate(half_adder_set(), counter_seed(5, 9))
    assert isinstance(outcome, Completed)
    assert pattern_of(outcome.assembly) == counter_pattern(5, 9)
    assert counter_pattern(3, 5).rows_top_first()[0] == [BLACK, WHITE, BLACK]


def test_counter_needs_four_types() -> None:
    p = counter_pattern(5, 9)
    solution = min_tileset(p)
    assert solution is not None
    assert solution.size == 4
    assert len(half_adder_set()) == 4
    _assert_solution(p, solution)


def test_node_limit_raises() -> None:
    with pytest.raises(SearchSpaceExceeded):
        min_tileset(counter_pattern(5, 9), node_limit=3)


def test_oracle_guards_size() -> None:
    with pytest.raises(InstanceTooLarge):
        brute_force_min(Pattern.uniform(4, 4, 0), max_cells=12)


@pytest.mark.parametrize("width,height", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 2)])
def test_search_agrees_with_oracle_on_small_grids(width: int, height: int) -> None:
    for p in _patterns(width, height, 2):
        solution = min_tileset(p)
        assert solution is not None
        assert solution.size == brute_force_min(p)
        _assert_solution(p, solution)


@pytest.mark.slow
def test_search_agrees_with_oracle_on_all_two_color_3x3() -> None:
    for p in _patterns(3, 3, 2):
        assert min_tileset(p).size == brute_force_min(p)


@pytest.mark.slow
def test_search_agrees_with_oracle_on_random_three_color_3x3() -> None:
    rng = random.Random(7)
    for _ in range(200):
        p = Pattern(np.array([[rng.randrange(3) for _ in range(3)] for _ in range(3)], dtype=np.int64))
        assert min_tileset(p).size == brute_force_min(p)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=2, max_size=2))
def test_witness_reassembles_pattern(rows) -> None:
    p = Pattern.from_rows(rows)
    solution = min_tileset(p)
    assert solution is not None
    _assert_solution(p, solution)
    assert solution.partition.color_respecting(p)


def test_strip_admission() -> None:
    assert strip_admits(list("000"), [1, 1, 1], 1) is not None
    assert strip_admits(list("000"), [1, 2, 1], 1) is None
    table = strip_admits(list("000"), [1, 2, 1], 2)
    assert table is not None
    assert len(table) == 2
    assert strip_admits(list("01"), [1, 2], {1: 1, 2: 1}) is not None


def test_strip_search_respects_forbidden_pairs() -> None:
    found = strip_admits_some([1, 2, 1, 2], 2)
    assert found is not None
    word, table = found
    assert "11" not in "".join(word)
    assert strip_admits(word, [1, 2, 1, 2], 2) is not None
    assert strip_admits_some([1, 2, 3], 2) is None


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=2, max_size=2),
    st.integers(0, 2),
    st.integers(0, 2),
)
def test_merging_colors_never_costs_more(rows, keep: int, drop: int) -> None:
    p = Pattern.from_rows(rows)
    merged = Pattern.from_rows([[keep if c == drop else c for c in row] for row in rows])
    assert min_tileset(merged).size <= min_tileset(p).size

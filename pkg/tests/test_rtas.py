import dataclasses
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patsforge.errors import PatsforgeError
from patsforge.rtas import (
    Ambiguous,
    Completed,
    LSeed,
    Pattern,
    Stuck,
    TileSet,
    TileType,
    assembly_consistent,
    attachable,
    canonicalize,
    east_exposure,
    first_mismatch,
    is_directed,
    isomorphic,
    north_exposure,
    pattern_of,
    rename_glues,
    simulate,
    sweep_order,
)
from patsforge.teval import t_eval


def test_duplicate_tile_types_rejected() -> None:
    t = TileType("a", "b", "c", "d", 0)
    with pytest.raises(PatsforgeError):
        TileSet((t, TileType("a", "b", "c", "d", 0, "other-name")))


def test_seed_lengths_checked() -> None:
    with pytest.raises(PatsforgeError):
        LSeed(2, 1, ("0",), ("0",))
    assert LSeed.of("01", "1").width == 2


def test_xor_set_is_directed(xor_set: TileSet) -> None:
    assert is_directed(xor_set)
    clash = TileSet(tuple(xor_set) + (TileType("1", "0", "0", "1", 1),))
    assert not is_directed(clash)


def test_sierpinski_triangle(xor_set: TileSet) -> None:
    seed = LSeed.of(["1", "0", "0", "0"], ["0", "0", "0", "0"])
    outcome = simulate(xor_set, seed)
    assert isinstance(outcome, Completed)
    p = pattern_of(outcome.assembly)
    assert p.rows_top_first() == [
        [1, 0, 0, 0],
        [1, 1, 0, 0],
        [1, 0, 1, 0],
        [1, 1, 1, 1],
    ]
    assert assembly_consistent(xor_set, seed, outcome.assembly)
    assert north_exposure(outcome.assembly) == ["1", "0", "0", "0"]
    assert east_exposure(outcome.assembly) == ["1", "0", "0", "0"]


def test_cell_level_accessors(xor_set: TileSet) -> None:
    assert attachable(xor_set, "0", "1") == [1]
    assert attachable(xor_set, "0", "z") == []
    outcome = simulate(xor_set, LSeed.of(["1", "0", "0", "0"], ["0", "0", "0", "0"]))
    a = outcome.assembly
    assert a.tile_at(1, 1).name == "x01"
    assert a.glue_grid("east")[0] == ["1", "1", "1", "1"]
    assert a.glue_grid("north")[3] == ["1", "0", "0", "0"]


def test_stuck_reports_first_cell_in_sweep_order() -> None:
    ts = TileSet((TileType("a", "a", "a", "a", 0),))
    outcome = simulate(ts, LSeed.of("aab", "aba"))
    assert isinstance(outcome, Stuck)
    # (1,2) and (3,1) both fail; (1,2) is on the earlier anti-diagonal
    assert outcome.position == (1, 2)
    assert (outcome.west, outcome.south) == ("b", "a")
    assert outcome.describe().startswith("stuck at (")


def test_ambiguous_when_two_types_share_inputs() -> None:
    ts = TileSet((TileType("a", "a", "a", "a", 0), TileType("b", "a", "a", "b", 1)))
    outcome = simulate(ts, LSeed.of("a", "a"))
    assert isinstance(outcome, Ambiguous)
    assert outcome.position == (1, 1)
    assert set(outcome.candidates) == {0, 1}


def test_target_filters_candidates_by_color() -> None:
    ts = TileSet((TileType("a", "a", "a", "a", 0), TileType("b", "a", "a", "b", 1)))
    outcome = simulate(ts, LSeed.of("a", "a"), target=Pattern.uniform(1, 1, 1))
    assert isinstance(outcome, Completed)
    assert outcome.assembly.tile_at(1, 1).color == 1


def test_sweep_order_visits_every_cell_once() -> None:
    cells = list(sweep_order(4, 3))
    assert len(cells) == len(set(cells)) == 12
    assert cells[0] == (1, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**16), st.integers(1, 6), st.integers(1, 6))
def test_outcome_does_not_depend_on_fill_order(xor_seed: int, w: int, h: int) -> None:
    rng = random.Random(xor_seed)
    tiles = []
    for wg in "01":
        for sg in "01":
            out = str(int(wg) ^ int(sg))
            tiles.append(TileType(out, wg, sg, out, int(out)))
    ts = TileSet(tuple(tiles))
    seed = LSeed.of([rng.choice("01") for _ in range(w)], [rng.choice("01") for _ in range(h)])
    sweep = simulate(ts, seed)
    assert simulate(ts, seed, order="row") == sweep
    assert simulate(ts, seed, order=random.Random(xor_seed)) == sweep


def test_pattern_rows_and_crop() -> None:
    p = Pattern.from_rows([[1, 2, 3], [4, 5, 6]])
    assert p.at(1, 1) == 4
    assert p.at(3, 2) == 3
    assert p.crop(2, 1, 3, 2).rows_top_first() == [[2, 3], [5, 6]]
    assert p.color_set() == [1, 2, 3, 4, 5, 6]
    with pytest.raises(ValueError):
        p.colors[0, 0] = 9


def test_first_mismatch_uses_sweep_order() -> None:
    a = Pattern(np.zeros((3, 3), dtype=np.int64))
    grid = np.zeros((3, 3), dtype=np.int64)
    grid[2, 0] = 1  # (1,3)
    grid[1, 1] = 1  # (2,2)
    b = Pattern(grid)
    assert first_mismatch(a, b) == (1, 3)
    assert first_mismatch(a, a) is None


def test_canonical_form_ignores_names_order_and_glue_labels(xor_set: TileSet) -> None:
    renamed = rename_glues(xor_set, {"0": "zero", "1": "one"})
    shuffled = TileSet(tuple(reversed(renamed.types)))
    assert canonicalize(shuffled) == canonicalize(xor_set)
    assert isomorphic(shuffled, xor_set)


def test_canonical_form_keeps_colors() -> None:
    a = TileSet((TileType("x", "y", "x", "y", 0),))
    b = TileSet((TileType("x", "y", "x", "y", 1),))
    assert not isomorphic(a, b)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(*[st.sampled_from("abc")] * 4, st.integers(0, 2)), min_size=1, max_size=5, unique=True))
def test_canonicalize_is_invariant_under_permutation(quads) -> None:
    ts = TileSet(tuple(TileType(n, w, s, e, c) for n, w, s, e, c in quads))
    perm = TileSet(tuple(reversed(ts.types)))
    mapping = {"a": "q", "b": "a", "c": "b"}
    assert canonicalize(rename_glues(perm, mapping)) == canonicalize(ts)


small_tilesets = st.lists(
    st.tuples(*[st.sampled_from("abc")] * 4, st.integers(0, 1)), min_size=1, max_size=4, unique=True
).map(lambda quads: TileSet(tuple(TileType(n, w, s, e, c) for n, w, s, e, c in quads)))


@settings(max_examples=40, deadline=None)
@given(small_tilesets)
def test_canonicalize_is_idempotent(ts: TileSet) -> None:
    once = canonicalize(ts)
    assert canonicalize(once) == once


@settings(max_examples=40, deadline=None)
@given(small_tilesets, small_tilesets, small_tilesets)
def test_isomorphism_is_an_equivalence(a: TileSet, b: TileSet, c: TileSet) -> None:
    assert isomorphic(a, a)
    assert isomorphic(a, b) == isomorphic(b, a)
    renamed = rename_glues(a, {"a": "x", "b": "y", "c": "z"})
    assert isomorphic(a, renamed)
    if isomorphic(a, b) and isomorphic(b, c):
        assert isomorphic(a, c)
    assert isomorphic(renamed, b) == isomorphic(a, b)


def test_swapping_teval_wests_breaks_isomorphism() -> None:
    ts = t_eval()
    t_f, t_t = ts.by_name("t_F"), ts.by_name("t_T")
    swapped = TileSet(
        tuple(
            dataclasses.replace(t, west=t_t.west) if t == t_f
            else dataclasses.replace(t, west=t_f.west) if t == t_t
            else t
            for t in ts
        )
    )
    assert isomorphic(ts, t_eval())
    assert not isomorphic(ts, swapped)

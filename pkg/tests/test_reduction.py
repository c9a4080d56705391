import itertools
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patsforge.errors import FormatError, FormulaError, InstanceTooLarge
from patsforge.reduction import (
    Assignment,
    CircuitLayout,
    Formula,
    all_satisfying,
    assembles_reduction,
    build_circuit_seed,
    circuit_colors,
    encode_x,
    encode_y,
    evaluate,
    paint_circuit,
    parse_assignment,
    parse_formula,
    random_formula,
    reduce,
    satisfies_1in3,
    solve_1in3_bruteforce,
    write_assignment,
    write_formula,
)
from patsforge.palette import DGNL_BLACK, DGNL_WHITE
from patsforge.render import RenderSpec, render
from patsforge.rtas import Completed, Stuck, pattern_of, simulate
from patsforge.teval import t_eval


ALL_ASSIGNMENTS = ["".join(bits) for bits in itertools.product("TF", repeat=4)]


def test_parse_example_formula(phi_ex: Formula) -> None:
    assert phi_ex.m == 4
    assert phi_ex.k == 2
    assert phi_ex.clauses == ((1, 2, 3), (1, 2, 4))
    assert parse_formula(write_formula(phi_ex)) == phi_ex


def test_non_monotone_clause_rejected() -> None:
    with pytest.raises(FormulaError, match="line 2"):
        parse_formula("p mono13 3 1\n1 1 2\n")
    with pytest.raises(FormulaError):
        parse_formula("p mono13 3 1\n1 2 4\n")


def test_malformed_formula_files() -> None:
    with pytest.raises(FormatError):
        parse_formula("p cnf 3 1\n1 2 3\n")
    with pytest.raises(FormatError, match="line 2"):
        parse_formula("p mono13 3 1\n1 2 x\n")
    with pytest.raises(FormatError):
        parse_formula("p mono13 3 2\n1 2 3\n")


def test_assignment_tokens() -> None:
    a = parse_assignment("F F\nT T  # comment\n")
    assert str(a) == "FFTT"
    assert parse_assignment(write_assignment(a)) == a
    with pytest.raises(FormatError):
        Assignment.from_string("FX")


def test_one_in_three_semantics(phi_ex: Formula) -> None:
    assert satisfies_1in3(phi_ex, Assignment.from_string("FFTT"))
    assert not satisfies_1in3(phi_ex, Assignment.from_string("TFTF"))
    assert str(solve_1in3_bruteforce(phi_ex)) == "TFFF"
    assert {str(a) for a in all_satisfying(phi_ex)} == {"TFFF", "FTFF", "FFTT"}


def test_unsatisfiable_formula_has_no_assignment() -> None:
    f = parse_formula("p mono13 4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n")
    assert solve_1in3_bruteforce(f) is None


def test_oracle_guard() -> None:
    f = Formula(30, ((1, 2, 3),))
    with pytest.raises(InstanceTooLarge):
        solve_1in3_bruteforce(f, max_vars=24)


def test_clause_template(phi_ex: Formula) -> None:
    assert " ".join(encode_x(phi_ex, 3)) == "c n n n v v v n c n n n v v n v n c"
    assert encode_y(Assignment.from_string("FFTT"), 2) == ["F", "F", "T", "T", "F", "F"]


def test_circuit_seed_dimensions(phi_ex: Formula) -> None:
    seed = build_circuit_seed(phi_ex, Assignment.from_string("FFTT"), 3)
    assert (seed.width, seed.height) == (23, 9)
    with pytest.raises(FormulaError):
        build_circuit_seed(phi_ex, Assignment.from_string("FFT"), 3)


def test_satisfying_assignment_assembles_the_circuit(phi_ex: Formula) -> None:
    seed = build_circuit_seed(phi_ex, Assignment.from_string("FFTT"), 3)
    outcome = simulate(t_eval(), seed)
    assert isinstance(outcome, Completed)
    assert pattern_of(outcome.assembly) == paint_circuit(phi_ex, 3)


def test_circuit_golden_render(phi_ex: Formula, golden: Path) -> None:
    expected = (golden / "circuit_phi_ex_h3.txt").read_bytes()
    assert render(paint_circuit(phi_ex, 3), RenderSpec(format="ascii")) == expected


def test_circuit_uses_nine_colors(phi_ex: Formula) -> None:
    assert len(circuit_colors(phi_ex)) == 9


@pytest.mark.parametrize("word", ALL_ASSIGNMENTS)
def test_dichotomy_on_example(phi_ex: Formula, word: str) -> None:
    report = evaluate(phi_ex, Assignment.from_string(word), h=3)
    assert report.satisfies == (word in {"TFFF", "FTFF", "FFTT"})
    assert report.matches_circuit == report.satisfies


def test_two_true_clause_jams_on_satisfied_signal(phi_ex: Formula) -> None:
    report = evaluate(phi_ex, Assignment.from_string("TFTF"), h=3)
    assert report.outcome == "stuck"
    assert report.position == (12, 8)
    assert (report.west, report.south) == ("s", "T")
    assert "west=s south=T" in report.summary()


def test_zero_true_clause_has_no_sat_tile(phi_ex: Formula) -> None:
    seed = build_circuit_seed(phi_ex, Assignment.from_string("FFFF"), 3)
    outcome = simulate(t_eval(), seed, target=paint_circuit(phi_ex, 3))
    assert isinstance(outcome, Stuck)
    assert (outcome.west, outcome.south) == ("f", "c")


def planted_formula(rng: random.Random, m: int, k: int) -> Formula:
    """Random formula with exactly one true variable per clause under a hidden assignment."""
    true_vars = rng.sample(range(1, m + 1), rng.randint(1, m - 2))
    false_vars = [v for v in range(1, m + 1) if v not in true_vars]
    clauses = [tuple(sorted([rng.choice(true_vars)] + rng.sample(false_vars, 2))) for _ in range(k)]
    return Formula(m, tuple(clauses))


def test_satisfying_assignments_are_invisible() -> None:
    rng = random.Random(2024)
    for _ in range(100):
        f = planted_formula(rng, rng.randint(3, 8), rng.randint(1, 4))
        solutions = all_satisfying(f)
        assert solutions
        target = paint_circuit(f, 3)
        for a in solutions:
            outcome = simulate(t_eval(), build_circuit_seed(f, a, 3))
            assert isinstance(outcome, Completed)
            assert pattern_of(outcome.assembly) == target, (write_formula(f), str(a))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 8), st.integers(1, 4), st.integers(3, 5))
def test_invisibility_for_other_gadget_heights(rng_seed: int, m: int, k: int, h: int) -> None:
    f = planted_formula(random.Random(rng_seed), m, k)
    target = paint_circuit(f, h)
    for a in all_satisfying(f):
        outcome = simulate(t_eval(), build_circuit_seed(f, a, h))
        assert isinstance(outcome, Completed)
        assert pattern_of(outcome.assembly) == target


def test_circuit_completes_exactly_for_solutions() -> None:
    rng = random.Random(7)
    checked = 0
    for _ in range(30):
        f = random_formula(rng, rng.randint(3, 5), rng.randint(1, 3))
        target = paint_circuit(f, 3)
        for bits in itertools.product([True, False], repeat=f.m):
            a = Assignment(tuple(bits))
            outcome = simulate(t_eval(), build_circuit_seed(f, a, 3))
            assembled = isinstance(outcome, Completed) and pattern_of(outcome.assembly) == target
            assert assembled == satisfies_1in3(f, a), (write_formula(f), str(a))
            checked += 1
    assert checked >= 30 * 2**3


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 9), st.integers(0, 6), st.integers(1, 6))
def test_circuit_size_is_polynomial(rng_seed: int, m: int, k: int, h: int) -> None:
    f = random_formula(random.Random(rng_seed), m, k)
    p = paint_circuit(f, h)
    assert p.width == CircuitLayout.expected_width(m, k, h)
    assert p.height == h + m + k


def test_diagonal_rows_hold_the_dgnl_tiles(phi_ex: Formula) -> None:
    layout = CircuitLayout.of(phi_ex, 3)
    p = paint_circuit(phi_ex, 3)
    for x in range(1, layout.width + 1):
        d = layout.diagonal_row(x)
        if d is None:
            assert not {p.at(x, y) for y in range(1, p.height + 1)} & {DGNL_WHITE, DGNL_BLACK}
        else:
            assert p.at(x, d) in (DGNL_WHITE, DGNL_BLACK)
    assert layout.diagonal_row(1) == 3
    assert layout.diagonal_row(layout.width) is None


def test_reduced_pattern_has_eleven_colors(phi_ex: Formula, scaled_blueprint) -> None:
    p = reduce(phi_ex, scaled_blueprint)
    bp = scaled_blueprint
    assert p.width == bp.width + CircuitLayout.expected_width(phi_ex.m, phi_ex.k, bp.height)
    assert p.height == bp.height + phi_ex.m + phi_ex.k
    assert len(p.color_set()) == 11


def test_reduced_pattern_size_on_random_formulas(scaled_blueprint) -> None:
    bp = scaled_blueprint
    rng = random.Random(11)
    for _ in range(50):
        m, k = rng.randint(3, 8), rng.randint(0, 4)
        p = reduce(random_formula(rng, m, k), bp)
        assert p.width == bp.width + (m + 1) + (k + 1) + k * (bp.height + m) + k * (k - 1) // 2
        assert p.height == bp.height + m + k


@pytest.mark.slow
def test_reduction_assembles_only_for_solutions(phi_ex: Formula, scaled_blueprint) -> None:
    assert assembles_reduction(phi_ex, Assignment.from_string("FFTT"), scaled_blueprint)
    assert not assembles_reduction(phi_ex, Assignment.from_string("TFTF"), scaled_blueprint)

"""Monotone 1-in-3-SAT instances and the pattern they reduce to.

The circuit region reads an assignment along the y-axis and evaluates each
clause on its own row; the painter below draws the same region without ever
looking at an assignment.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from .config import get_settings
from .errors import FormatError, FormulaError, InstanceTooLarge
from .formats import content_lines, positive_int
from .gadget import GadgetBlueprint, gadget_pattern
from .palette import BLACK, CE, CYAN, DGNL_BLACK, DGNL_WHITE, INIT, RED, SAT, WHITE
from .rtas import Completed, LSeed, Pattern, Stuck, first_mismatch, pattern_of, simulate
from .teval import t_eval


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Formula:
    m: int
    clauses: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.m < 1:
            raise FormulaError("formula needs at least one variable")
        for j, clause in enumerate(self.clauses, start=1):
            if len(clause) != 3:
                raise FormulaError(f"clause {j} must have exactly three literals")
            if any(v < 1 for v in clause) or len(set(clause)) != 3:
                raise FormulaError(f"non-monotone clause {j}: {list(clause)}")
            if any(v > self.m for v in clause):
                raise FormulaError(f"variable index out of range in clause {j}: {list(clause)}")

    @property
    def k(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class Assignment:
    bits: Tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))

    @classmethod
    def from_string(cls, text: str) -> "Assignment":
        letters = "".join(text.split())
        if any(ch not in "TF" for ch in letters):
            raise FormatError("assignment tokens must be T or F")
        return cls(tuple(ch == "T" for ch in letters))

    def __str__(self) -> str:
        return "".join("T" if b else "F" for b in self.bits)

    def __len__(self) -> int:
        return len(self.bits)


# --- parsing ---------------------------------------------------------------


def parse_formula(text: str) -> Formula:
    lines = content_lines(text)
    if not lines:
        raise FormatError("empty formula file")
    lineno, tokens = lines[0]
    if len(tokens) != 4 or tokens[:2] != ["p", "mono13"]:
        raise FormatError("expected `p mono13 <m> <k>` header", lineno)
    m = positive_int(tokens[2], lineno, "variable count")
    k = positive_int(tokens[3], lineno, "clause count")
    body = lines[1:]
    if len(body) != k:
        raise FormatError(f"header declares {k} clauses, found {len(body)}", lineno)
    clauses = []
    for clause_lineno, toks in body:
        if len(toks) != 3:
            raise FormatError("a clause has exactly three variables", clause_lineno)
        try:
            triple = tuple(int(t) for t in toks)
        except ValueError:
            raise FormatError(f"bad variable index in {toks}", clause_lineno) from None
        if any(v < 1 for v in triple) or len(set(triple)) != 3:
            raise FormulaError(f"line {clause_lineno}: non-monotone clause {list(triple)}")
        if any(v > m for v in triple):
            raise FormulaError(f"line {clause_lineno}: variable index out of range {list(triple)}")
        clauses.append(triple)
    return Formula(m, tuple(clauses))


def write_formula(f: Formula) -> str:
    out = [f"p mono13 {f.m} {f.k}"]
    out.extend(" ".join(str(v) for v in clause) for clause in f.clauses)
    return "\n".join(out) + "\n"


def parse_assignment(text: str) -> Assignment:
    letters = [tok for _, toks in content_lines(text) for tok in toks]
    return Assignment.from_string("".join(letters))


def write_assignment(a: Assignment) -> str:
    return " ".join("T" if b else "F" for b in a.bits) + "\n"


def random_formula(rng: random.Random, m: int, k: int) -> Formula:
    if m < 3 and k > 0:
        raise FormulaError("clauses need at least three variables")
    return Formula(m, tuple(tuple(sorted(rng.sample(range(1, m + 1), 3))) for _ in range(k)))


# --- satisfiability --------------------------------------------------------


def satisfies_1in3(f: Formula, a: Assignment) -> bool:
    if len(a) != f.m:
        raise FormulaError(f"assignment has {len(a)} bits, formula has {f.m} variables")
    return all(sum(a.bits[v - 1] for v in clause) == 1 for clause in f.clauses)


def solve_1in3_bruteforce(f: Formula, max_vars: Optional[int] = None) -> Optional[Assignment]:
    """First satisfying assignment, enumerating true before false per variable."""
    limit = max_vars if max_vars is not None else get_settings().oracle_max_vars
    if f.m > limit:
        raise InstanceTooLarge(f"instance too large for oracle: {f.m} variables > {limit}")
    for bits in itertools.product((True, False), repeat=f.m):
        a = Assignment(bits)
        if satisfies_1in3(f, a):
            return a
    return None


def all_satisfying(f: Formula, max_vars: Optional[int] = None) -> List[Assignment]:
    limit = max_vars if max_vars is not None else get_settings().oracle_max_vars
    if f.m > limit:
        raise InstanceTooLarge(f"instance too large for oracle: {f.m} variables > {limit}")
    found = []
    for bits in itertools.product((True, False), repeat=f.m):
        a = Assignment(bits)
        if satisfies_1in3(f, a):
            found.append(a)
    return found


# --- encodings -------------------------------------------------------------


def encode_x(f: Formula, h: int) -> List[str]:
    glues: List[str] = []
    for j, clause in enumerate(f.clauses, start=1):
        glues.append("c")
        glues.extend("n" * h)
        glues.extend("v" if i in clause else "n" for i in range(1, f.m + 1))
        glues.extend("n" * (j - 1))
    glues.append("c")
    return glues


def encode_y(a: Assignment, k: int) -> List[str]:
    return ["T" if b else "F" for b in a.bits] + ["F"] * k


def joint_x(f: Formula) -> List[str]:
    return ["n"] * (f.m + 1)


def build_circuit_seed(f: Formula, a: Assignment, h: int) -> LSeed:
    """Seed whose y-axis mimics the gadget's east face: f below, F on top."""
    if h < 1:
        raise FormulaError("h must be at least 1")
    if len(a) != f.m:
        raise FormulaError(f"assignment has {len(a)} bits, formula has {f.m} variables")
    x = joint_x(f) + encode_x(f, h)
    y = ["f"] * (h - 1) + ["F"] + encode_y(a, f.k)
    return LSeed.of(x, y)


# --- layout and painter ----------------------------------------------------


@dataclass(frozen=True)
class Column:
    kind: str  # joint | clause | prepad | member | postpad | trailing
    clause: int  # 0 for joint columns
    offset: int  # joint index q, or offset within the clause block
    glue: str


@dataclass(frozen=True)
class CircuitLayout:
    h: int
    m: int
    k: int
    columns: Tuple[Column, ...]

    @classmethod
    def of(cls, f: Formula, h: int) -> "CircuitLayout":
        cols: List[Column] = [Column("joint", 0, q, "n") for q in range(1, f.m + 2)]
        for j, clause in enumerate(f.clauses, start=1):
            cols.append(Column("clause", j, 0, "c"))
            cols.extend(Column("prepad", j, o, "n") for o in range(1, h + 1))
            cols.extend(
                Column("member", j, h + i, "v" if i in clause else "n") for i in range(1, f.m + 1)
            )
            cols.extend(Column("postpad", j, h + f.m + p, "n") for p in range(1, j))
        cols.append(Column("trailing", f.k + 1, 0, "c"))
        return cls(h, f.m, f.k, tuple(cols))

    @property
    def width(self) -> int:
        return len(self.columns)

    @property
    def height(self) -> int:
        return self.h + self.m + self.k

    @staticmethod
    def expected_width(m: int, k: int, h: int) -> int:
        return (m + 1) + (k + 1) + k * (h + m) + k * (k - 1) // 2

    def diagonal_row(self, column: int) -> Optional[int]:
        """Row of the DGNL tile in a 1-based column, None for `c` columns."""
        col = self.columns[column - 1]
        if col.kind == "joint":
            return self.h + col.offset - 1
        if col.kind in ("clause", "trailing"):
            return None
        return col.offset


def _paint_column(layout: CircuitLayout, index: int) -> np.ndarray:
    col = layout.columns[index - 1]
    h, m, k = layout.h, layout.m, layout.k
    top = h + m + k
    out = np.empty(top, dtype=np.int64)
    if col.kind in ("clause", "trailing"):
        j = col.clause
        if j == 1:
            out[: h + m] = INIT
            out[h + m :] = RED
        else:
            out[: h + m + j - 2] = INIT
            out[h + m + j - 2] = SAT
            out[h + m + j - 1 :] = CE
        return out
    d = layout.diagonal_row(index)
    if col.kind == "joint":
        out[: d - 1] = WHITE
        out[d - 1] = DGNL_WHITE
        out[d:] = CYAN
        return out
    black = col.glue == "v"
    out[: d - 1] = BLACK if black else WHITE
    out[d - 1] = DGNL_BLACK if black else DGNL_WHITE
    out[d : h + m + col.clause - 1] = CYAN
    out[h + m + col.clause - 1 :] = CE
    return out


def paint_circuit(f: Formula, h: int) -> Pattern:
    if h < 1:
        raise FormulaError("h must be at least 1")
    layout = CircuitLayout.of(f, h)
    grid = np.stack([_paint_column(layout, i) for i in range(1, layout.width + 1)], axis=1)
    return Pattern(grid)


# --- evaluation ------------------------------------------------------------


class EvalReport(BaseModel):
    formula_m: int
    formula_k: int
    assignment: str
    satisfies: bool
    outcome: str
    matches_circuit: bool
    position: Optional[Tuple[int, int]] = None
    west: Optional[str] = None
    south: Optional[str] = None
    mismatch: Optional[Tuple[int, int]] = None

    def summary(self) -> str:
        verdict = "satisfies" if self.satisfies else "does not satisfy"
        line = f"{self.assignment} {verdict} the formula; circuit {self.outcome}"
        if self.position is not None:
            x, y = self.position
            line += f" at ({x},{y}): west={self.west} south={self.south}"
        if self.mismatch is not None:
            x, y = self.mismatch
            line += f"; unguided run first differs at ({x},{y})"
        return line


def evaluate(f: Formula, a: Assignment, h: int = 3) -> EvalReport:
    seed = build_circuit_seed(f, a, h)
    target = paint_circuit(f, h)
    guided = simulate(t_eval(), seed, target=target)
    plain = simulate(t_eval(), seed)
    report = EvalReport(
        formula_m=f.m,
        formula_k=f.k,
        assignment=str(a),
        satisfies=satisfies_1in3(f, a),
        outcome=guided.kind,
        matches_circuit=isinstance(guided, Completed),
    )
    if isinstance(guided, Stuck):
        report.position = guided.position
        report.west = guided.west
        report.south = guided.south
    if isinstance(plain, Completed):
        report.mismatch = first_mismatch(plain.assembly, target)
    logger.debug("evaluated %s: %s", a, report.outcome)
    return report


# --- full reduced pattern --------------------------------------------------


def reduce(f: Formula, bp: GadgetBlueprint) -> Pattern:
    """GADGET in the south-west, cyan above it, the circuit to the east."""
    gadget = gadget_pattern(bp)
    h = gadget.height
    circuit = paint_circuit(f, h)
    total_h = circuit.height
    west = np.full((total_h, gadget.width), CYAN, dtype=np.int64)
    west[:h, :] = gadget.colors
    return Pattern(np.concatenate([west, circuit.colors], axis=1))


def build_seed(f: Formula, a: Assignment, bp: GadgetBlueprint) -> LSeed:
    if len(a) != f.m:
        raise FormulaError(f"assignment has {len(a)} bits, formula has {f.m} variables")
    x = list(bp.x_north) + joint_x(f) + encode_x(f, bp.height)
    y = list(bp.y_east) + encode_y(a, f.k)
    return LSeed.of(x, y)


def assembles_reduction(f: Formula, a: Assignment, bp: GadgetBlueprint) -> bool:
    """Whether T_eval over build_seed uniquely assembles reduce(f, bp)."""
    target = reduce(f, bp)
    outcome = simulate(t_eval(), build_seed(f, a, bp), target=target)
    return isinstance(outcome, Completed) and pattern_of(outcome.assembly) == target


def circuit_colors(f: Formula, h: int = 3) -> Sequence[int]:
    return paint_circuit(f, h).color_set()

"""Action selection: the two-action selector tables and the j-action rule."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .kernel import ConnectiveTable, LogicSystem, TruthDomain

__all__ = [
    "NoSelection",
    "NO_SELECTION_CASES",
    "ActionSet",
    "build_selector_tables",
    "select_rational",
    "selector_consistency_check",
]

NO_SELECTION_CASES = ("all-true", "all-false", "all-unknown", "multi-true", "multi-unknown")

_T0 = TruthDomain("T0", ("T", "F", "U"))
_T1 = TruthDomain("T1", ("t", "f", "u"))

# rows: belief in A1; columns: belief in A0 (both in T, F, U order)
_SELECT_A1 = ("utt", "fuf", "ftu")
_SELECT_A0 = ("uff", "tut", "tfu")


@dataclass(frozen=True)
class NoSelection:
    """Outcome when no action can be selected; ``reason`` names the pattern."""

    reason: str

    def __bool__(self):
        return False

    def __str__(self):
        return f"no-selection({self.reason})"


@dataclass(frozen=True)
class ActionSet:
    actions: tuple[str, ...]

    def __post_init__(self):
        actions = tuple(self.actions)
        object.__setattr__(self, "actions", actions)
        if len(actions) < 2:
            raise ValueError("an action set needs at least two actions")
        if len(set(actions)) != len(actions):
            raise ValueError("action ids must be distinct")

    def __iter__(self):
        return iter(self.actions)

    def __len__(self):
        return len(self.actions)


def _grid_table(name, symbol, grid, interp, val) -> ConnectiveTable:
    rows = {}
    for i, a1 in enumerate(interp.values):
        for j, a0 in enumerate(interp.values):
            rows[(a1, a0)] = val.values[_T1.values.index(grid[i][j])]
    return ConnectiveTable(name, 2, interp, val, rows, symbol)


def build_selector_tables(system: LogicSystem | None = None) -> dict[str, ConnectiveTable]:
    """The risk-averse selector connectives, both applied as ``(A1 op A0)``.

    ``select_A1`` is ``t`` when A1 is necessarily selected and ``select_A0``
    likewise for A0.  With ``system`` given the tables use its domains,
    which must be three-valued and ordered like T, F, U / t, f, u.
    """
    interp, val = (_T0, _T1) if system is None else (system.interp_domain, system.valuation_domain)
    if len(interp) != 3 or len(val) != 3:
        return {}
    return {
        "select_A1": _grid_table("select_A1", "⊕A1", _SELECT_A1, interp, val),
        "select_A0": _grid_table("select_A0", "⊕A0", _SELECT_A0, interp, val),
    }


def select_rational(beliefs: Mapping[str, str]) -> str | NoSelection:
    """Pick the unique action believed true while all others are false or unknown,
    or the unique action believed unknown while all others are false.

    Otherwise return the no-selection pattern the profile falls into.
    """
    values = list(beliefs.values())
    for v in values:
        if v not in ("T", "F", "U"):
            raise ValueError(f"subjective value must be T, F or U, not {v!r}")
    n = len(values)
    if n < 2:
        raise ValueError("need at least two actions")
    n_true = values.count("T")
    n_unknown = values.count("U")
    if n_true == 1:
        return next(a for a, v in beliefs.items() if v == "T")
    if n_true == 0 and n_unknown == 1:
        return next(a for a, v in beliefs.items() if v == "U")
    if n_true == n:
        return NoSelection("all-true")
    if n_true >= 2:
        return NoSelection("multi-true")
    if n_unknown == 0:
        return NoSelection("all-false")
    if n_unknown == n:
        return NoSelection("all-unknown")
    return NoSelection("multi-unknown")


@dataclass(frozen=True)
class ConsistencyCell:
    a1: str
    a0: str
    select_a1: str
    select_a0: str
    rule: str | NoSelection
    consistent: bool


@dataclass(frozen=True)
class ConsistencyReport:
    cells: tuple[ConsistencyCell, ...]

    @property
    def consistent(self) -> bool:
        return all(c.consistent for c in self.cells)

    def cell(self, a1: str, a0: str) -> ConsistencyCell:
        return next(c for c in self.cells if (c.a1, c.a0) == (a1, a0))


def selector_consistency_check(
    tables: Mapping[str, ConnectiveTable] | None = None,
    rule: Callable[[Mapping[str, str]], str | NoSelection] = select_rational,
    values: Sequence[str] = ("T", "F", "U"),
) -> ConsistencyReport:
    """Sweep every two-action belief pair and compare the tables with ``rule``.

    A cell is consistent when each table reads ``t`` exactly when the rule
    picks its action, and both tables read ``u`` exactly when the rule
    makes no selection.
    """
    tables = tables or build_selector_tables()
    s1, s0 = tables["select_A1"], tables["select_A0"]
    cells = []
    for a1 in values:
        for a0 in values:
            v1, v0 = s1(a1, a0), s0(a1, a0)
            picked = rule({"A0": a0, "A1": a1})
            ambiguous = isinstance(picked, NoSelection)
            ok = (
                (v1 == "t") == (picked == "A1")
                and (v0 == "t") == (picked == "A0")
                and (v1 == "u" and v0 == "u") == ambiguous
            )
            cells.append(ConsistencyCell(a1, a0, v1, v0, picked, ok))
    return ConsistencyReport(tuple(cells))

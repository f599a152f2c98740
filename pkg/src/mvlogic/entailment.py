"""Semantic entailment by exhaustive enumeration of interpretations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import CorpusParseError, LogicError, TooManyAtoms
from .formula import (
    AllOf,
    AnyOf,
    InterpOf,
    PremiseExpr,
    parse_premise_expr,
    premise_atoms,
)
from .kernel import Interpretation, LogicSystem, bundled_path, equiv_valuate, interpret, valuate

__all__ = [
    "MAX_ATOMS",
    "PremiseSet",
    "EntailmentResult",
    "satisfies",
    "entails",
    "CorpusEntry",
    "CorpusOutcome",
    "CorpusReport",
    "parse_corpus",
    "load_corpus",
    "run_corpus",
]

MAX_ATOMS = 12

VALID = "valid"
INVALID = "invalid"
VACUOUS = "vacuous"
VERDICTS = (VALID, INVALID, VACUOUS)


@dataclass(frozen=True)
class PremiseSet:
    premises: tuple[PremiseExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    @property
    def atoms(self) -> list[str]:
        seen: dict[str, None] = {}
        for p in self.premises:
            seen.update(dict.fromkeys(premise_atoms(p)))
        return list(seen)

    def __iter__(self):
        return iter(self.premises)

    def __len__(self):
        return len(self.premises)


def satisfies(interp: Interpretation, p: PremiseExpr, system: LogicSystem) -> bool:
    """Reference check of one premise under one interpretation."""
    if isinstance(p, AllOf):
        return all(satisfies(interp, x, system) for x in p.items)
    if isinstance(p, AnyOf):
        return any(satisfies(interp, x, system) for x in p.items)
    if isinstance(p.subject, InterpOf):
        value = interpret(interp, p.subject.atom)
        domain = system.interp_domain
    else:
        value = valuate(system, p.subject.formula, interp)
        domain = system.valuation_domain
    return equiv_valuate(value, p.target, domain) is p.claimed


@dataclass(frozen=True)
class EntailmentResult:
    verdict: str
    counterexample: Interpretation | None = None
    visited: int = 0
    atoms: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return self.verdict == VALID

    def __str__(self):
        if self.counterexample is None:
            return self.verdict
        pairs = ", ".join(f"{a}={v}" for a, v in self.counterexample.items())
        return f"{self.verdict} ({pairs})"


def entails(
    gamma: PremiseSet | Iterable[PremiseExpr],
    conclusion: PremiseExpr,
    system: LogicSystem,
    *,
    backend: str | None = None,
) -> EntailmentResult:
    """Decide whether every interpretation satisfying ``gamma`` satisfies ``conclusion``.

    Atoms are enumerated in sorted order and values in domain order, so the
    returned counterexample is the lexicographically first one.
    """
    if not isinstance(gamma, PremiseSet):
        gamma = PremiseSet(tuple(gamma))
    atoms = sorted(set(gamma.atoms) | set(premise_atoms(conclusion)))
    if len(atoms) > MAX_ATOMS:
        raise TooManyAtoms(f"{len(atoms)} atoms exceeds the limit of {MAX_ATOMS}")
    prem_prog = _kernels.compile_premises(gamma.premises, system, atoms)
    concl_prog = _kernels.compile_premises([conclusion], system, atoms)
    sat = _kernels.evaluate(prem_prog, backend)
    holds = _kernels.evaluate(concl_prog, backend)
    visited = sat.size
    if not sat.any():
        return EntailmentResult(VACUOUS, None, visited, tuple(atoms))
    bad = sat & ~holds
    if bad.any():
        first = int(np.argmax(bad))
        witness = Interpretation(_kernels.decode(first, atoms, system.interp_domain.values))
        return EntailmentResult(INVALID, witness, visited, tuple(atoms))
    return EntailmentResult(VALID, None, visited, tuple(atoms))


# -- corpus ----------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    given: tuple[str, ...]
    infer: str
    expect: str
    line: int = 0


@dataclass(frozen=True)
class CorpusOutcome:
    entry: CorpusEntry
    result: EntailmentResult | None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.result is not None and self.result.verdict == self.entry.expect


@dataclass
class CorpusReport:
    system: str
    outcomes: list[CorpusOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    @property
    def failures(self) -> list[CorpusOutcome]:
        return [o for o in self.outcomes if not o.passed]

    def lines(self) -> list[str]:
        out = []
        for o in self.outcomes:
            status = "PASS" if o.passed else "FAIL"
            got = o.error if o.error else str(o.result)
            out.append(f"{status} {o.entry.name}: expected {o.entry.expect}, got {got}")
        out.append(f"{len(self.outcomes) - len(self.failures)}/{len(self.outcomes)} passed")
        return out

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "passed": self.passed,
            "entries": [
                {
                    "name": o.entry.name,
                    "expect": o.entry.expect,
                    "verdict": o.result.verdict if o.result else None,
                    "counterexample": o.result.counterexample.as_dict()
                    if o.result and o.result.counterexample
                    else None,
                    "error": o.error,
                    "passed": o.passed,
                }
                for o in self.outcomes
            ],
        }


_KEY = re.compile(r"^(name|given|infer|expect)\s*:\s*(.*)$")


def parse_corpus(text: str) -> list[CorpusEntry]:
    """Parse blank-line separated blocks of ``name:``/``given:``/``infer:``/``expect:`` lines."""
    entries = []
    block: dict = {}
    start = 0

    def flush():
        if not block:
            return
        if "infer" not in block or "expect" not in block:
            raise CorpusParseError(f"line {start}: block needs infer: and expect:")
        if block["expect"] not in VERDICTS:
            raise CorpusParseError(f"line {start}: unknown verdict {block['expect']!r}")
        name = block.get("name") or f"entry-{len(entries) + 1}"
        entries.append(CorpusEntry(name, tuple(block.get("given", ())), block["infer"], block["expect"], start))
        block.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if not raw.strip():
                flush()
            continue
        m = _KEY.match(line)
        if not m:
            raise CorpusParseError(f"line {lineno}: cannot parse {raw!r}")
        if not block:
            start = lineno
        key, value = m.groups()
        if key == "given":
            block.setdefault("given", []).append(value)
        elif key in block:
            raise CorpusParseError(f"line {lineno}: repeated {key}:")
        else:
            block[key] = value
    flush()
    return entries


def load_corpus(path=None) -> list[CorpusEntry]:
    path = Path(path) if path is not None else bundled_path("corpus.txt")
    return parse_corpus(path.read_text(encoding="utf-8"))


def run_corpus(
    system: LogicSystem,
    entries: Sequence[CorpusEntry] | None = None,
    *,
    filter: str | None = None,
    backend: str | None = None,
) -> CorpusReport:
    """Run each corpus entry through :func:`entails`.

    The two-action selector connectives are added to ``system`` when it does
    not already define them, so the bundled corpus runs against any system
    with the three-valued domains.
    """
    from .selection import build_selector_tables

    if entries is None:
        entries = load_corpus()
    missing = [t for t in build_selector_tables(system).values() if not system.has_connective(t.name)]
    if missing:
        system = system.with_connectives(missing)
    report = CorpusReport(system.name)
    for entry in entries:
        if filter and filter not in entry.name:
            continue
        try:
            gamma = [parse_premise_expr(g, system) for g in entry.given]
            concl = parse_premise_expr(entry.infer, system)
            result = entails(gamma, concl, system, backend=backend)
        except LogicError as exc:
            report.outcomes.append(CorpusOutcome(entry, None, f"{type(exc).__name__}: {exc}"))
        else:
            report.outcomes.append(CorpusOutcome(entry, result))
    return report

"""Truth domains, connective tables, logic systems and their semantics.

Atoms are interpreted into one domain (the interpretation domain) while
complex sentences are valued into another (the valuation domain).  The two
may be linked by a bijective correspondence, which is what lets a complex
sentence appear as the argument of another connective.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    DomainMismatch,
    MissingCorrespondence,
    SystemFormatError,
    TableError,
    UnknownAtom,
    UnknownConnective,
)

__all__ = [
    "Equiv",
    "TruthDomain",
    "ConnectiveTable",
    "LogicSystem",
    "Interpretation",
    "interpret",
    "valuate",
    "equiv_valuate",
    "invert_valuation",
    "table_output_bound",
    "load_system",
    "system_from_dict",
    "system_to_dict",
    "bundled_path",
]


class Equiv(enum.Enum):
    """The two-valued codomain of the equivalence valuation."""

    TRUE = "𝔗"
    FALSE = "𝔉"

    def __bool__(self):
        return self is Equiv.TRUE

    @classmethod
    def of(cls, flag: bool) -> "Equiv":
        return cls.TRUE if flag else cls.FALSE


@dataclass(frozen=True)
class TruthDomain:
    name: str
    values: tuple[str, ...]

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise SystemFormatError(f"domain {self.name!r} is empty")
        if len(set(values)) != len(values):
            raise SystemFormatError(f"domain {self.name!r} repeats a value")

    def __contains__(self, value) -> bool:
        return value in self.values

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def index(self, value: str) -> int:
        try:
            return self.values.index(value)
        except ValueError:
            raise DomainMismatch(f"{value!r} is not in domain {self.name!r}") from None


@dataclass(frozen=True, eq=False)
class ConnectiveTable:
    """Total function from ``arity``-tuples of input values to one output value.

    Rows are kept in lexicographic order of the input domain's declared
    value order, which is also the order of :meth:`rows_in_order`.
    """

    name: str
    arity: int
    input_domain: TruthDomain
    output_domain: TruthDomain
    rows: Mapping[tuple[str, ...], str]
    symbol: str | None = None

    def __post_init__(self):
        if self.arity < 1:
            raise TableError(f"{self.name}: arity must be positive")
        rows = {tuple(k): v for k, v in dict(self.rows).items()}
        expected = list(itertools.product(self.input_domain.values, repeat=self.arity))
        missing = [k for k in expected if k not in rows]
        if missing:
            raise TableError(f"{self.name}: no row for {missing[0]}")
        extra = [k for k in rows if k not in set(expected)]
        if extra:
            raise TableError(f"{self.name}: row {extra[0]} is outside the input domain")
        for key, out in rows.items():
            if out not in self.output_domain:
                raise TableError(f"{self.name}: output {out!r} for {key} not in {self.output_domain.name!r}")
        ordered = {k: rows[k] for k in expected}
        object.__setattr__(self, "rows", MappingProxyType(ordered))

    def __call__(self, *args: str) -> str:
        if len(args) != self.arity:
            raise ArityMismatch(f"{self.name} takes {self.arity} argument(s), got {len(args)}")
        try:
            return self.rows[tuple(args)]
        except KeyError:
            bad = next(a for a in args if a not in self.input_domain)
            raise DomainMismatch(f"{bad!r} is not in domain {self.input_domain.name!r}") from None

    def __eq__(self, other):
        if not isinstance(other, ConnectiveTable):
            return NotImplemented
        return (
            self.name == other.name
            and self.arity == other.arity
            and self.input_domain == other.input_domain
            and self.output_domain == other.output_domain
            and dict(self.rows) == dict(other.rows)
        )

    def __hash__(self):
        return hash((self.name, self.arity, tuple(self.rows.items())))

    def rows_in_order(self) -> list[tuple[tuple[str, ...], str]]:
        return list(self.rows.items())

    def with_row(self, inputs: Sequence[str], output: str) -> "ConnectiveTable":
        """Copy of this table with one cell replaced."""
        rows = dict(self.rows)
        key = tuple(inputs)
        if key not in rows:
            raise TableError(f"{self.name}: no row {key}")
        rows[key] = output
        return ConnectiveTable(self.name, self.arity, self.input_domain, self.output_domain, rows, self.symbol)

    def lookup_array(self) -> np.ndarray:
        """Output codes as a flat int64 array indexed by the base-n encoding of the inputs."""
        out = self.output_domain
        return np.array([out.index(v) for v in self.rows.values()], dtype=np.int64)

    def to_dict(self, full: bool = False) -> dict:
        """Row-list form used in system files; ``full`` also embeds both domains."""
        d = {"name": self.name, "arity": self.arity}
        if self.symbol:
            d["symbol"] = self.symbol
        if full:
            d["input_domain"] = {"name": self.input_domain.name, "values": list(self.input_domain.values)}
            d["output_domain"] = {"name": self.output_domain.name, "values": list(self.output_domain.values)}
        d["rows"] = [{"in": list(k), "out": v} for k, v in self.rows.items()]
        return d

    @classmethod
    def from_dict(cls, data: Mapping, input_domain=None, output_domain=None) -> "ConnectiveTable":
        if input_domain is None:
            input_domain = TruthDomain(data["input_domain"]["name"], tuple(data["input_domain"]["values"]))
        if output_domain is None:
            output_domain = TruthDomain(data["output_domain"]["name"], tuple(data["output_domain"]["values"]))
        rows = {}
        for row in data["rows"]:
            key = tuple(row["in"])
            if key in rows:
                raise TableError(f"{data['name']}: duplicate row {key}")
            rows[key] = row["out"]
        return cls(data["name"], int(data["arity"]), input_domain, output_domain, rows, data.get("symbol"))


@dataclass(frozen=True, eq=False)
class LogicSystem:
    name: str
    interp_domain: TruthDomain
    valuation_domain: TruthDomain
    correspondence: Mapping[str, str] | None
    connectives: Mapping[str, ConnectiveTable] = field(default_factory=dict)

    def __post_init__(self):
        conns = self.connectives
        if not isinstance(conns, Mapping):
            conns = {c.name: c for c in conns}
        for c in conns.values():
            if c.input_domain != self.interp_domain or c.output_domain != self.valuation_domain:
                raise SystemFormatError(
                    f"connective {c.name!r} must map {self.interp_domain.name!r} "
                    f"to {self.valuation_domain.name!r}"
                )
        object.__setattr__(self, "connectives", MappingProxyType(dict(conns)))
        if self.correspondence is not None:
            corr = dict(self.correspondence)
            if set(corr) != set(self.interp_domain.values) or set(corr.values()) != set(
                self.valuation_domain.values
            ) or len(set(corr.values())) != len(corr):
                raise SystemFormatError("correspondence must be a bijection over the full domains")
            object.__setattr__(self, "correspondence", MappingProxyType(corr))
            object.__setattr__(self, "_inverse", MappingProxyType({v: k for k, v in corr.items()}))
        else:
            object.__setattr__(self, "_inverse", None)
        symbols = {}
        for c in self.connectives.values():
            if c.symbol:
                symbols[c.symbol] = c.name
        object.__setattr__(self, "_symbols", MappingProxyType(symbols))

    def __eq__(self, other):
        if not isinstance(other, LogicSystem):
            return NotImplemented
        return system_to_dict(self) == system_to_dict(other)

    def __hash__(self):
        return hash(self.name)

    @property
    def inverse_correspondence(self) -> Mapping[str, str] | None:
        return self._inverse

    @property
    def symbols(self) -> Mapping[str, str]:
        """Map from connective symbol (e.g. ``∧``) to connective name."""
        return self._symbols

    def connective(self, key: str) -> ConnectiveTable:
        """Look a connective up by name or symbol."""
        if key in self.connectives:
            return self.connectives[key]
        if key in self._symbols:
            return self.connectives[self._symbols[key]]
        raise UnknownConnective(key)

    def has_connective(self, key: str) -> bool:
        return key in self.connectives or key in self._symbols

    def with_connectives(self, tables: Iterable[ConnectiveTable], name: str | None = None) -> "LogicSystem":
        conns = dict(self.connectives)
        for t in tables:
            conns[t.name] = t
        return LogicSystem(name or self.name, self.interp_domain, self.valuation_domain, self.correspondence, conns)

    def with_row(self, connective: str, inputs: Sequence[str], output: str) -> "LogicSystem":
        table = self.connective(connective).with_row(inputs, output)
        return self.with_connectives([table])

    def to_valuation(self, value: str) -> str:
        if self.correspondence is None:
            raise MissingCorrespondence(f"system {self.name!r} declares no correspondence")
        return self.correspondence[value]

    def to_interp(self, value: str) -> str:
        if self._inverse is None:
            raise MissingCorrespondence(
                f"system {self.name!r} declares no correspondence, so complex sentences cannot be nested"
            )
        return self._inverse[value]


@dataclass(frozen=True)
class Interpretation:
    """Assignment of one truth value to each atom."""

    assignments: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "assignments", MappingProxyType(dict(self.assignments)))

    def __getitem__(self, atom: str) -> str:
        return interpret(self, atom)

    def __contains__(self, atom) -> bool:
        return atom in self.assignments

    def __iter__(self):
        return iter(self.assignments)

    def __len__(self):
        return len(self.assignments)

    def items(self):
        return self.assignments.items()

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignments)


def interpret(interp: Interpretation, atom: str) -> str:
    try:
        return interp.assignments[atom]
    except KeyError:
        raise UnknownAtom(atom) from None


def valuate(system: LogicSystem, formula, interp: Interpretation | Mapping[str, str]) -> str:
    """Value ``formula`` bottom-up under ``interp``.

    A connective node reads its atom children straight from the
    interpretation.  A child that is itself a connective application is
    valued first and mapped back into the interpretation domain through the
    inverse correspondence.  A bare atom is mapped forward through the
    correspondence.
    """
    # deferred: formula imports kernel
    from .formula import Atom

    if not isinstance(interp, Interpretation):
        interp = Interpretation(interp)
    if isinstance(formula, Atom):
        return system.to_valuation(_atom_value(system, interp, formula.name))
    return _value_apply(system, formula, interp)


def _atom_value(system: LogicSystem, interp: Interpretation, atom: str) -> str:
    value = interpret(interp, atom)
    if value not in system.interp_domain:
        raise DomainMismatch(f"I({atom}) = {value!r} is not in {system.interp_domain.name!r}")
    return value


def _value_apply(system: LogicSystem, node, interp: Interpretation) -> str:
    from .formula import Atom

    table = system.connective(node.connective)
    if len(node.args) != table.arity:
        raise ArityMismatch(f"{table.name} takes {table.arity} argument(s), got {len(node.args)}")
    args = []
    for child in node.args:
        if isinstance(child, Atom):
            args.append(_atom_value(system, interp, child.name))
        else:
            args.append(system.to_interp(_value_apply(system, child, interp)))
    return table.rows[tuple(args)]


def equiv_valuate(subject: str, target: str, domain: TruthDomain | None = None) -> Equiv:
    """Binary judgement of whether ``subject`` is the truth value ``target``.

    With ``domain`` given, both values must belong to it.
    """
    if domain is not None:
        for v in (subject, target):
            if v not in domain:
                raise DomainMismatch(f"{v!r} is not in domain {domain.name!r}")
    return Equiv.of(subject == target)


def invert_valuation(table: ConnectiveTable, output: str) -> set[tuple[str, ...]]:
    return {k for k, v in table.rows.items() if v == output}


def table_output_bound(table: ConnectiveTable) -> int:
    """Largest number of distinguishable outputs: ``n ** arity``."""
    bound = len(table.input_domain) ** table.arity
    assert len(set(table.rows.values())) <= bound
    return bound


# -- serialization ---------------------------------------------------------


def system_from_dict(data: Mapping) -> LogicSystem:
    try:
        domains = {d["name"]: TruthDomain(d["name"], tuple(d["values"])) for d in data["domains"]}
        interp = domains[data["interp_domain"]]
        val = domains[data["valuation_domain"]]
        tables = [ConnectiveTable.from_dict(c, interp, val) for c in data.get("connectives", [])]
        return LogicSystem(data["name"], interp, val, data.get("correspondence"), {t.name: t for t in tables})
    except (KeyError, TypeError) as exc:
        raise SystemFormatError(f"malformed system definition: {exc!r}") from exc


def system_to_dict(system: LogicSystem) -> dict:
    domains = [system.interp_domain]
    if system.valuation_domain != system.interp_domain:
        domains.append(system.valuation_domain)
    return {
        "name": system.name,
        "domains": [{"name": d.name, "values": list(d.values)} for d in domains],
        "interp_domain": system.interp_domain.name,
        "valuation_domain": system.valuation_domain.name,
        "correspondence": dict(system.correspondence) if system.correspondence is not None else None,
        "connectives": [c.to_dict() for c in system.connectives.values()],
    }


def bundled_path(filename: str) -> Path:
    return Path(str(resources.files("mvlogic") / "data" / filename))


def load_system(source) -> LogicSystem:
    """Load a system from a path, a bundled name (``"svl"``) or a dict."""
    if isinstance(source, Mapping):
        return system_from_dict(source)
    path = Path(source)
    if not path.exists():
        candidate = bundled_path(path.name if path.suffix else f"{path.name}.json")
        if not candidate.exists():
            raise FileNotFoundError(source)
        path = candidate
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SystemFormatError(f"{path}: {exc}") from exc
    return system_from_dict(data)

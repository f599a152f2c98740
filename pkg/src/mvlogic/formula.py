"""Concrete syntax for formulas and equivalence-valuation premises.

Grammar::

    formula   := atom
               | conn '(' formula {',' formula} ')'
               | '(' formula infix formula ')'
               | prefix formula
    premise   := ('all' | 'any') '(' premise {',' premise} ')'
               | ('v' | '𝔳') '(' subject ',' value ')' '=' claim
    subject   := 'I' '(' atom ')' | 'V' '(' formula [infix formula] ')'
    claim     := 'T' | 'F' | '𝔗' | '𝔉'

Binary connectives are written infix and always parenthesised; there is no
precedence table.  Connectives are referred to by name (``not``, ``and``)
or by symbol (``¬``, ``∧``).  The printer always emits names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import ArityMismatch, DomainMismatch, ParseError
from .kernel import Equiv, LogicSystem

__all__ = [
    "Atom",
    "Apply",
    "Formula",
    "InterpOf",
    "ValuationOf",
    "PremiseAssertion",
    "AllOf",
    "AnyOf",
    "PremiseExpr",
    "parse_formula",
    "print_formula",
    "parse_premise",
    "parse_premise_expr",
    "print_premise",
    "parse_premise_lines",
    "formula_atoms",
    "premise_atoms",
]


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom names must be non-empty")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Apply:
    connective: str
    args: tuple["Formula", ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        return print_formula(self)


Formula = Union[Atom, Apply]


@dataclass(frozen=True)
class InterpOf:
    atom: str


@dataclass(frozen=True)
class ValuationOf:
    formula: Formula


@dataclass(frozen=True)
class PremiseAssertion:
    """Claim that ``v(subject, target)`` equals ``claimed``."""

    subject: InterpOf | ValuationOf
    target: str
    claimed: Equiv = Equiv.TRUE

    def __str__(self):
        return print_premise(self)


@dataclass(frozen=True)
class AllOf:
    items: tuple["PremiseExpr", ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class AnyOf:
    items: tuple["PremiseExpr", ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


PremiseExpr = Union[PremiseAssertion, AllOf, AnyOf]

_CLAIMS = {"T": Equiv.TRUE, "F": Equiv.FALSE, "𝔗": Equiv.TRUE, "𝔉": Equiv.FALSE}
_WORD = re.compile(r"\w+")
_PUNCT = "(),="


@dataclass(frozen=True)
class _Tok:
    kind: str  # "word", "sym", one of _PUNCT, or "end"
    text: str
    pos: int


def _tokenize(text: str, symbols) -> list[_Tok]:
    syms = sorted(symbols, key=len, reverse=True)
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            out.append(_Tok(ch, ch, i))
            i += 1
            continue
        for s in syms:
            if text.startswith(s, i):
                out.append(_Tok("sym", s, i))
                i += len(s)
                break
        else:
            m = _WORD.match(text, i)
            if m:
                out.append(_Tok("word", m.group(), i))
                i = m.end()
            else:
                out.append(_Tok("sym", ch, i))
                i += 1
    out.append(_Tok("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, system: LogicSystem):
        self.text = text
        self.system = system
        self.toks = _tokenize(text, system.symbols)
        self.i = 0

    def error(self, message, tok=None):
        tok = tok or self.peek()
        offset = len(self.text[: tok.pos].encode("utf-8"))
        where = "end of input" if tok.kind == "end" else repr(tok.text)
        return ParseError(f"{message} (found {where})", self.text, offset)

    def peek(self, k=0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> _Tok:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind, what=None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            raise self.error(f"expected {what or kind!r}")
        return self.next()

    def expect_word(self, *choices) -> _Tok:
        tok = self.peek()
        if tok.kind != "word" or (choices and tok.text not in choices):
            raise self.error("expected " + (" or ".join(map(repr, choices)) if choices else "a name"))
        return self.next()

    def finish(self):
        if self.peek().kind != "end":
            raise self.error("unexpected trailing input")

    # formulas

    def formula(self) -> Formula:
        tok = self.peek()
        if tok.kind == "(":
            self.next()
            left = self.formula()
            op = self.peek()
            if op.kind not in ("word", "sym"):
                raise self.error("expected an infix connective")
            table = self._connective(op)
            self.next()
            if table.arity != 2:
                raise ArityMismatch(f"{table.name} has arity {table.arity} and cannot be used infix")
            right = self.formula()
            self.expect(")", ")")
            return Apply(table.name, (left, right))
        if tok.kind == "sym" or (tok.kind == "word" and self.system.has_connective(tok.text)):
            table = self._connective(tok)
            self.next()
            if self.peek().kind == "(":
                save = self.i
                try:
                    args = self._call_args()
                except ParseError:
                    if table.arity != 1:
                        raise
                    self.i = save
                else:
                    if len(args) != table.arity:
                        raise ArityMismatch(f"{table.name} takes {table.arity} argument(s), got {len(args)}")
                    return Apply(table.name, tuple(args))
            if table.arity != 1:
                raise self.error(f"{table.name} takes {table.arity} arguments; use infix or call syntax")
            return Apply(table.name, (self.formula(),))
        if tok.kind == "word":
            self.next()
            return Atom(tok.text)
        raise self.error("expected a formula")

    def _connective(self, tok):
        return self.system.connective(tok.text)

    def _call_args(self) -> list[Formula]:
        self.expect("(")
        args = [self.formula()]
        while self.peek().kind == ",":
            self.next()
            args.append(self.formula())
        self.expect(")", ")")
        return args

    # premises

    def premise_expr(self) -> PremiseExpr:
        tok = self.peek()
        if tok.kind == "word" and tok.text in ("all", "any") and self.peek(1).kind == "(":
            self.next()
            self.next()
            items = [self.premise_expr()]
            while self.peek().kind == ",":
                self.next()
                items.append(self.premise_expr())
            self.expect(")", ")")
            return AllOf(tuple(items)) if tok.text == "all" else AnyOf(tuple(items))
        return self.assertion()

    def assertion(self) -> PremiseAssertion:
        self.expect_word("v", "𝔳")
        self.expect("(", "(")
        kind = self.expect_word("I", "V").text
        self.expect("(", "(")
        if kind == "I":
            atom_tok = self.expect_word()
            subject = InterpOf(atom_tok.text)
        else:
            f = self.formula()
            if self.peek().kind in ("word", "sym"):
                # V(a op b): the call parentheses also delimit the infix form
                table = self._connective(self.next())
                if table.arity != 2:
                    raise ArityMismatch(f"{table.name} has arity {table.arity} and cannot be used infix")
                f = Apply(table.name, (f, self.formula()))
            subject = ValuationOf(f)
        self.expect(")", ")")
        self.expect(",", ",")
        value_tok = self.peek()
        if value_tok.kind not in ("word", "sym"):
            raise self.error("expected a truth value")
        self.next()
        self.expect(")", ")")
        self.expect("=", "=")
        claim_tok = self.peek()
        if claim_tok.text not in _CLAIMS:
            raise self.error("expected T or F")
        self.next()
        target = value_tok.text
        domain = self.system.interp_domain if kind == "I" else self.system.valuation_domain
        if target not in domain:
            raise DomainMismatch(f"{target!r} is not in domain {domain.name!r} required by {kind}(...)")
        return PremiseAssertion(subject, target, _CLAIMS[claim_tok.text])


def parse_formula(text: str, system: LogicSystem) -> Formula:
    if not text.strip():
        raise ParseError("empty formula", text, 0)
    p = _Parser(text, system)
    f = p.formula()
    p.finish()
    return f


def parse_premise_expr(text: str, system: LogicSystem) -> PremiseExpr:
    p = _Parser(text, system)
    expr = p.premise_expr()
    p.finish()
    return expr


def parse_premise(text: str, system: LogicSystem) -> PremiseAssertion:
    p = _Parser(text, system)
    a = p.assertion()
    p.finish()
    return a


def parse_premise_lines(text: str, system: LogicSystem) -> list[PremiseExpr]:
    """Parse a premise file: one premise per line, ``#`` starts a comment."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_premise_expr(line, system))
    return out


def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if len(f.args) == 1:
        return f"{f.connective} {print_formula(f.args[0])}"
    if len(f.args) == 2:
        return f"({print_formula(f.args[0])} {f.connective} {print_formula(f.args[1])})"
    return f"{f.connective}({', '.join(print_formula(a) for a in f.args)})"


def print_premise(p: PremiseExpr) -> str:
    if isinstance(p, AllOf):
        return f"all({', '.join(print_premise(x) for x in p.items)})"
    if isinstance(p, AnyOf):
        return f"any({', '.join(print_premise(x) for x in p.items)})"
    if isinstance(p.subject, InterpOf):
        subject = f"I({p.subject.atom})"
    else:
        f = p.subject.formula
        inner = print_formula(f)
        if isinstance(f, Apply) and len(f.args) == 2:
            inner = inner[1:-1]
        subject = f"V({inner})"
    claim = "T" if p.claimed is Equiv.TRUE else "F"
    return f"v({subject}, {p.target}) = {claim}"


def _walk_atoms(f: Formula) -> Iterator[str]:
    if isinstance(f, Atom):
        yield f.name
    else:
        for a in f.args:
            yield from _walk_atoms(a)


def formula_atoms(f: Formula) -> list[str]:
    return list(dict.fromkeys(_walk_atoms(f)))


def premise_atoms(p: PremiseExpr) -> list[str]:
    if isinstance(p, (AllOf, AnyOf)):
        seen = {}
        for item in p.items:
            seen.update(dict.fromkeys(premise_atoms(item)))
        return list(seen)
    if isinstance(p.subject, InterpOf):
        return [p.subject.atom]
    return formula_atoms(p.subject.formula)

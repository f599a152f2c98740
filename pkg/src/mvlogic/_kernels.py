"""Batch evaluation of premise expressions over every interpretation.

A premise expression is compiled into a small stack program.  Interpretation
number ``i`` assigns atom ``a`` the value code given by digit ``a`` of ``i``
written in base ``n`` (atom 0 most significant), so index order is the
lexicographic order of interpretations.  Two interchangeable evaluators run
the program: a numba kernel that runs each instruction over cache-sized
blocks of interpretations, and a numpy version that runs each instruction
across a whole chunk at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import choose_backend, njit
from .errors import ArityMismatch, MissingCorrespondence
from .formula import AllOf, AnyOf, Atom, InterpOf, PremiseAssertion
from .kernel import Equiv, LogicSystem

LOAD, APPLY, BACK, FWD, TEST, ALL, ANY, CONST = range(8)

CHUNK = 1 << 18


@dataclass(frozen=True)
class Program:
    code: np.ndarray  # (length, 3) int64: opcode, x, y
    lut: np.ndarray
    offsets: np.ndarray
    arities: np.ndarray
    corr: np.ndarray
    corr_inv: np.ndarray
    n: int
    m: int

    @property
    def size(self) -> int:
        return self.n**self.m


class _Compiler:
    def __init__(self, system: LogicSystem, atoms: list[str]):
        self.system = system
        self.atom_index = {a: i for i, a in enumerate(atoms)}
        self.tables: dict[str, int] = {}
        self.code: list[tuple[int, int, int]] = []

    def table_id(self, name: str) -> int:
        if name not in self.tables:
            self.tables[name] = len(self.tables)
        return self.tables[name]

    def arg(self, f):
        if isinstance(f, Atom):
            self.code.append((LOAD, self.atom_index[f.name], 0))
        else:
            self.value(f)
            if self.system.correspondence is None:
                raise MissingCorrespondence(f"system {self.system.name!r} cannot nest complex sentences")
            self.code.append((BACK, 0, 0))

    def value(self, f):
        table = self.system.connective(f.connective)
        if len(f.args) != table.arity:
            raise ArityMismatch(f"{table.name} takes {table.arity} argument(s), got {len(f.args)}")
        for a in f.args:
            self.arg(a)
        self.code.append((APPLY, self.table_id(table.name), 0))

    def premise(self, p):
        if isinstance(p, (AllOf, AnyOf)):
            for item in p.items:
                self.premise(item)
            self.code.append((ALL if isinstance(p, AllOf) else ANY, len(p.items), 0))
            return
        assert isinstance(p, PremiseAssertion)
        claimed = 1 if p.claimed is Equiv.TRUE else 0
        if isinstance(p.subject, InterpOf):
            self.code.append((LOAD, self.atom_index[p.subject.atom], 0))
            target = self.system.interp_domain.index(p.target)
        else:
            f = p.subject.formula
            if isinstance(f, Atom):
                if self.system.correspondence is None:
                    raise MissingCorrespondence(f"system {self.system.name!r} cannot value a bare atom")
                self.code.append((LOAD, self.atom_index[f.name], 0))
                self.code.append((FWD, 0, 0))
            else:
                self.value(f)
            target = self.system.valuation_domain.index(p.target)
        self.code.append((TEST, target, claimed))


def compile_premises(premises, system: LogicSystem, atoms: list[str]) -> Program:
    """Compile the conjunction of ``premises`` (empty means always true)."""
    c = _Compiler(system, atoms)
    premises = list(premises)
    if premises:
        for p in premises:
            c.premise(p)
        c.code.append((ALL, len(premises), 0))
    else:
        c.code.append((CONST, 1, 0))
    interp = system.interp_domain
    val = system.valuation_domain
    luts, offsets, arities = [], [], []
    pos = 0
    for name in c.tables:
        t = system.connective(name)
        arr = t.lookup_array()
        luts.append(arr)
        offsets.append(pos)
        arities.append(t.arity)
        pos += arr.size
    if system.correspondence is not None:
        corr = np.array([val.index(system.correspondence[v]) for v in interp.values], dtype=np.int64)
        inv = system.inverse_correspondence
        corr_inv = np.array([interp.index(inv[v]) for v in val.values], dtype=np.int64)
    else:
        corr = np.zeros(0, dtype=np.int64)
        corr_inv = np.zeros(0, dtype=np.int64)
    return Program(
        code=np.array(c.code, dtype=np.int64).reshape(-1, 3),
        lut=np.concatenate(luts) if luts else np.zeros(0, dtype=np.int64),
        offsets=np.array(offsets, dtype=np.int64),
        arities=np.array(arities, dtype=np.int64),
        corr=corr,
        corr_inv=corr_inv,
        n=len(interp),
        m=len(atoms),
    )


BLOCK = 512


@njit
def _run_numba(code, lut, offsets, arities, corr, corr_inv, n, m, start, out):
    # instruction-major over blocks small enough to stay in cache
    depth = code.shape[0] + 1
    stack = np.empty((depth, BLOCK), dtype=np.int64)
    digits = np.empty((max(m, 1), BLOCK), dtype=np.int64)
    total = out.shape[0]
    for base in range(0, total, BLOCK):
        count = min(BLOCK, total - base)
        for i in range(count):
            r = start + base + i
            for a in range(m - 1, -1, -1):
                digits[a, i] = r % n
                r //= n
        sp = 0
        for pc in range(code.shape[0]):
            op = code[pc, 0]
            x = code[pc, 1]
            if op == 0:
                for i in range(count):
                    stack[sp, i] = digits[x, i]
                sp += 1
            elif op == 1:
                k = arities[x]
                off = offsets[x]
                lo = sp - k
                for i in range(count):
                    idx = 0
                    for j in range(k):
                        idx = idx * n + stack[lo + j, i]
                    stack[lo, i] = lut[off + idx]
                sp = lo + 1
            elif op == 2:
                for i in range(count):
                    stack[sp - 1, i] = corr_inv[stack[sp - 1, i]]
            elif op == 3:
                for i in range(count):
                    stack[sp - 1, i] = corr[stack[sp - 1, i]]
            elif op == 4:
                want = code[pc, 2]
                for i in range(count):
                    eq = 1 if stack[sp - 1, i] == x else 0
                    stack[sp - 1, i] = 1 if eq == want else 0
            elif op == 5 or op == 6:
                lo = sp - x
                for i in range(count):
                    v = stack[lo, i]
                    for j in range(1, x):
                        if op == 5:
                            v &= stack[lo + j, i]
                        else:
                            v |= stack[lo + j, i]
                    stack[lo, i] = v
                sp = lo + 1
            else:
                for i in range(count):
                    stack[sp, i] = x
                sp += 1
        for i in range(count):
            out[base + i] = stack[0, i]


def _run_numpy(prog: Program, start: int, count: int) -> np.ndarray:
    n, m = prog.n, prog.m
    idx = np.arange(start, start + count, dtype=np.int64)
    digits = [(idx // n ** (m - 1 - a)) % n for a in range(m)]
    stack: list[np.ndarray] = []
    for op, x, y in prog.code.tolist():
        if op == LOAD:
            stack.append(digits[x])
        elif op == APPLY:
            k = int(prog.arities[x])
            args = stack[-k:]
            del stack[-k:]
            lin = np.zeros(count, dtype=np.int64)
            for a in args:
                lin = lin * n + a
            stack.append(prog.lut[prog.offsets[x] + lin])
        elif op == BACK:
            stack[-1] = prog.corr_inv[stack[-1]]
        elif op == FWD:
            stack[-1] = prog.corr[stack[-1]]
        elif op == TEST:
            stack[-1] = ((stack[-1] == x) == bool(y)).astype(np.int64)
        elif op in (ALL, ANY):
            items = stack[-x:]
            del stack[-x:]
            combine = np.logical_and if op == ALL else np.logical_or
            stack.append(combine.reduce(np.stack(items), axis=0).astype(np.int64))
        else:
            stack.append(np.full(count, x, dtype=np.int64))
    return stack[0].astype(np.bool_)


def evaluate(prog: Program, backend: str | None = None) -> np.ndarray:
    """Truth of ``prog`` under every interpretation, as a boolean array in index order."""
    size = prog.size
    which = choose_backend(size, backend)
    out = np.empty(size, dtype=np.bool_)
    for start in range(0, size, CHUNK):
        count = min(CHUNK, size - start)
        if which == "numba":
            buf = np.empty(count, dtype=np.int64)
            _run_numba(prog.code, prog.lut, prog.offsets, prog.arities, prog.corr, prog.corr_inv,
                       prog.n, prog.m, start, buf)
            out[start:start + count] = buf.astype(np.bool_)
        else:
            out[start:start + count] = _run_numpy(prog, start, count)
    return out


def decode(index: int, atoms: list[str], values: tuple[str, ...]) -> dict[str, str]:
    n = len(values)
    out = {}
    for a in range(len(atoms) - 1, -1, -1):
        out[atoms[a]] = values[index % n]
        index //= n
    return {a: out[a] for a in atoms}

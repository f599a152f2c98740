import itertools
import string

import pytest
from hypothesis import strategies as st

from mvlogic import ConnectiveTable, LogicSystem, TruthDomain, load_system
from mvlogic.dynamics import VALUES, DualBelief, WorldState
from mvlogic.formula import Apply, Atom


@pytest.fixture(scope="session")
def svl():
    return load_system("svl")


@pytest.fixture(scope="session")
def oplus0():
    return load_system("oplus0")


ATOM_NAMES = ("phi", "psi", "chi", "p", "q", "r")
SVL_CONNECTIVES = {"not": 1, "and": 2, "or": 2, "then": 2}


def formulas(connectives=SVL_CONNECTIVES, atoms=ATOM_NAMES, max_leaves=8):
    leaves = st.sampled_from(atoms).map(Atom)

    def extend(children):
        options = []
        for name, arity in sorted(connectives.items()):
            options.append(st.tuples(*[children] * arity).map(lambda args, name=name: Apply(name, args)))
        return st.one_of(options)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@st.composite
def random_systems(draw, max_values=4, max_arity=3):
    """Random total systems with a correspondence between equally sized domains."""
    n = draw(st.integers(2, max_values))
    interp = TruthDomain("I", tuple(string.ascii_uppercase[:n]))
    val = TruthDomain("V", tuple(string.ascii_lowercase[:n]))
    corr = dict(zip(interp.values, draw(st.permutations(val.values))))
    tables = []
    for i in range(draw(st.integers(1, 3))):
        arity = draw(st.integers(1, max_arity))
        rows = {}
        for key in itertools.product(interp.values, repeat=arity):
            rows[key] = draw(st.sampled_from(val.values))
        tables.append(ConnectiveTable(f"c{i}", arity, interp, val, rows))
    return LogicSystem("random", interp, val, corr, tuple(tables))


belief_values = st.sampled_from(VALUES)


@st.composite
def dual_states(draw, min_actions=2, max_actions=6):
    n = draw(st.integers(min_actions, max_actions))
    beliefs = {f"A{i}": DualBelief(draw(belief_values), draw(belief_values)) for i in range(n)}
    return WorldState(draw(st.integers(0, 20)), beliefs)

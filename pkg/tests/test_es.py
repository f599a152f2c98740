import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvlogic import NoSelection, ProbBelief, WorldState, select_es, select_rational, step_es
from mvlogic.dynamics import Update, run, scenario_from_dict
from mvlogic.errors import NoSelectionError
from mvlogic.es import DISCRETE_EMBEDDING


def test_selected_transmits_objective():
    s = WorldState(0, {"A": ProbBelief(0.9, 0.2), "B": ProbBelief(0.4, 0.6)})
    nxt = step_es(s)
    assert nxt.beliefs["A"] == ProbBelief(0.2, 0.2)
    assert nxt.beliefs["B"] == ProbBelief(0.4, 0.6)


def test_env_raises_objective():
    s = WorldState(0, {"A": ProbBelief(0.5, 0.8), "B": ProbBelief(0.1, 0.1)})
    nxt = step_es(s, lambda t, st_, picked: {"A": Update(objective=1.0)})
    assert nxt.beliefs["A"] == ProbBelief(0.8, 1.0)


def test_ties_are_exact():
    assert select_es({"A": 0.5, "B": 0.5}) == NoSelection("tie")
    assert select_es({"A": 0.5, "B": math.nextafter(0.5, 1.0)}) == "B"
    with pytest.raises(NoSelectionError):
        step_es(WorldState(0, {"A": ProbBelief(0.3, 0.3), "B": ProbBelief(0.3, 0.1)}))


def test_bounds_checked():
    with pytest.raises(ValueError):
        ProbBelief(1.2, 0.0)
    with pytest.raises(ValueError):
        ProbBelief(float("nan"), 0.0)


def test_es_scenario_runs():
    sc = scenario_from_dict(
        {
            "theory": "es",
            "actions": ["A", "B"],
            "initial": {"A": {"s": 0.9, "o": 0.2}, "B": {"s": 0.4, "o": 0.6}},
        }
    )
    trace = run(sc)
    assert trace.selections == ["A", "B", "B"]
    assert trace.status == "equilibrium"


unit = st.floats(0.0, 1.0, allow_nan=False)
profiles = st.lists(unit, min_size=2, max_size=6)
transforms = st.sampled_from(
    [
        lambda x: x,
        lambda x: x**3,
        lambda x: math.sqrt(x),
        lambda x: 2 * x + 1,
        lambda x: math.exp(x),
    ]
)


@settings(max_examples=1000, deadline=None)
@given(values=profiles, g=transforms)
def test_argmax_invariance(values, g):
    beliefs = {f"A{i}": v for i, v in enumerate(values)}
    moved = {a: g(v) for a, v in beliefs.items()}
    # a monotone map can merge floats that were distinct; only compare when it stays injective
    if len(set(moved.values())) == len(set(values)):
        assert select_es(beliefs) == select_es(moved)


@settings(max_examples=1000, deadline=None)
@given(values=profiles)
def test_unique_max_iff_selection(values):
    beliefs = {f"A{i}": v for i, v in enumerate(values)}
    out = select_es(beliefs)
    top = max(values)
    if values.count(top) == 1:
        assert out == f"A{values.index(top)}"
    else:
        assert out == NoSelection("tie")


@settings(max_examples=500, deadline=None)
@given(values=st.lists(st.tuples(unit, unit), min_size=2, max_size=5), new_o=unit)
def test_step_keeps_bounds(values, new_o):
    s = WorldState(0, {f"A{i}": ProbBelief(*v) for i, v in enumerate(values)})
    if isinstance(select_es(s.beliefs), NoSelection):
        return
    nxt = step_es(s, lambda t, st_, picked: {picked: Update(objective=new_o)})
    for b in nxt.beliefs.values():
        assert 0.0 <= b.subjective <= 1.0 and 0.0 <= b.objective <= 1.0


def test_discrete_embedding_agrees_exhaustively():
    for n in range(2, 5):
        for values in itertools.product("TFU", repeat=n):
            beliefs = {f"A{i}": v for i, v in enumerate(values)}
            picked = select_rational(beliefs)
            if isinstance(picked, NoSelection):
                continue
            assert select_es({a: DISCRETE_EMBEDDING[v] for a, v in beliefs.items()}) == picked

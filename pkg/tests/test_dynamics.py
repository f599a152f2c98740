import json

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mvlogic import (
    DualBelief,
    NoSelection,
    Trace,
    WorldState,
    is_equilibrium,
    load_scenario,
    run,
    select_rational,
    step_lenient,
    step_omniscient,
    step_preservative,
)
from mvlogic.dynamics import VALUES, Update, scenario_from_dict
from mvlogic.errors import MirrorViolation, NoSelectionError, ScenarioError

from conftest import dual_states


def state(**beliefs):
    return WorldState(0, {a: DualBelief(*v) for a, v in beliefs.items()})


def const_env(changes):
    return lambda t, s, picked: changes


def test_preservative_examples():
    s = state(A0=("U", "F"), A1=("T", "F"))
    nxt = step_preservative(s, const_env({"A0": Update(objective="T")}))
    assert nxt.t == 1
    assert nxt.beliefs["A1"] == DualBelief("F", "F")
    assert nxt.beliefs["A0"] == DualBelief("U", "T")


def test_preservative_needs_selection():
    with pytest.raises(NoSelectionError) as err:
        step_preservative(state(A=("T", "T"), B=("T", "F")))
    assert err.value.outcome.reason == "all-true"


def test_preservative_rejects_subjective_updates():
    with pytest.raises(ScenarioError):
        step_preservative(state(A=("T", "T"), B=("F", "F")), const_env({"B": Update(subjective="T")}))


def test_omniscient_requires_mirror():
    with pytest.raises(MirrorViolation):
        step_omniscient(state(A=("T", "F"), B=("F", "F")))
    nxt = step_omniscient(state(A=("T", "T"), B=("F", "F")), const_env({"A": Update(objective="U")}))
    assert nxt.beliefs["A"] == DualBelief("U", "U")


def test_lenient_rewrites_anything():
    nxt = step_lenient(state(A=("T", "F"), B=("U", "F")), const_env({"B": Update("F", "T")}))
    assert nxt.beliefs["B"] == DualBelief("F", "T")
    assert nxt.beliefs["A"] == DualBelief("T", "F")


def test_is_equilibrium():
    assert is_equilibrium(state(A=("T", "T"), B=("F", "F")))
    assert not is_equilibrium(state(A=("T", "F"), B=("F", "F")))
    assert not is_equilibrium(state(A=("F", "F"), B=("F", "F")))


def test_complementary_goods_trace():
    trace = run(load_scenario("complementary_goods"))
    assert trace.status == "equilibrium"
    assert trace.selections == ["A1", "A0", "A0"]
    t1 = trace.entries[1].state.beliefs
    assert t1["A1"] == DualBelief("F", "F") and t1["A0"] == DualBelief("U", "T")
    assert trace.entries[2].state.beliefs["A0"] == DualBelief("T", "T")


def test_monty_hall_trace():
    trace = run(load_scenario("monty_hall"))
    assert trace.selections[:2] == ["D3", "D3"]
    assert trace.entries[1].state.beliefs["D2"] == DualBelief("F", "F")
    # starting with D1 and D2 already doubted, opening D2 changes nothing
    doubtful = run(load_scenario("monty_hall", flags=["doubtful_start"]))
    assert doubtful.status == "equilibrium"
    assert set(doubtful.selections) == {"D3"}


def test_all_true_start_stops_immediately():
    sc = scenario_from_dict({"actions": ["A", "B"], "initial": {"A": {"s": "T", "o": "T"}, "B": {"s": "T", "o": "F"}}})
    trace = run(sc)
    assert len(trace.entries) == 1
    assert trace.status == "no-selection" and trace.reason == "all-true"


def test_step_limit():
    # the environment flips A's objective every step so nothing settles
    sc = scenario_from_dict(
        {
            "actions": ["A", "B"],
            "initial": {"A": {"s": "T", "o": "U"}, "B": {"s": "F", "o": "F"}},
            "env": [{"when_selected": "A", "set": {"A": {"o": "T"}}}],
            "step_limit": 1,
        }
    )
    trace = run(sc)
    assert trace.status == "step-limit"


def test_scenario_validation():
    with pytest.raises(ScenarioError):
        scenario_from_dict({"actions": ["A", "B"], "initial": {"A": {"s": "T", "o": "T"}}})
    with pytest.raises(ScenarioError):
        scenario_from_dict(
            {
                "actions": ["A", "B"],
                "initial": {"A": {"s": "T", "o": "T"}, "B": {"s": "F", "o": "F"}},
                "env": [{"set": {"A": {"s": "F"}}}],
            }
        )
    with pytest.raises(ScenarioError):
        load_scenario("monty_hall", flags=["nope"])


def test_trace_json_round_trip():
    trace = run(load_scenario("complementary_goods"))
    again = Trace.from_dict(json.loads(trace.to_json()))
    assert again.lines() == trace.lines()
    assert again.to_dict() == trace.to_dict()


def test_determinism():
    a = run(load_scenario("monty_hall")).to_json()
    b = run(load_scenario("monty_hall")).to_json()
    assert a == b


updates = st.dictionaries(
    st.sampled_from([f"A{i}" for i in range(6)]),
    st.builds(Update, st.none(), st.sampled_from(VALUES)),
)


def _env_for(state, ups):
    return const_env({a: u for a, u in ups.items() if a in state.beliefs})


def _selects(s):
    return not isinstance(select_rational(s.subjective()), NoSelection)


@settings(max_examples=1000, deadline=None)
@given(s=dual_states(), ups=updates)
def test_preservative_properties(s, ups):
    assume(_selects(s))
    picked = select_rational(s.subjective())
    nxt = step_preservative(s, _env_for(s, ups))
    for a, b in s.beliefs.items():
        nb = nxt.beliefs[a]
        # each belief keeps exactly one subjective and one objective value
        assert nb.subjective in VALUES and nb.objective in VALUES
        if a == picked:
            assert nb.subjective == b.objective
        else:
            assert nb.subjective == b.subjective


@settings(max_examples=1000, deadline=None)
@given(s=dual_states(), ups=updates)
def test_omniscient_mirrors(s, ups):
    mirrored = WorldState(s.t, {a: DualBelief(b.objective, b.objective) for a, b in s.beliefs.items()})
    nxt = step_omniscient(mirrored, _env_for(s, ups))
    assert all(b.subjective == b.objective for b in nxt.beliefs.values())


@settings(max_examples=300, deadline=None)
@given(s=dual_states())
def test_equilibrium_absorbs(s):
    assume(_selects(s))
    if is_equilibrium(s):
        assert step_preservative(s).same_beliefs(s)

"""The dynamic six-valued system: dual beliefs evolving under repeated selection.

Each action carries a subjective value (what the agent believes) and an
objective value (what the environment makes true), both drawn from
``T``, ``F``, ``U``.  Selection reads only subjective values.  After a
selection the environment rule supplies new objective values, and the
chosen regime decides how subjective values follow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Any, Callable, Mapping, Protocol

from .errors import MirrorViolation, NoSelectionError, ScenarioError
from .kernel import bundled_path
from .selection import ActionSet, NoSelection, select_rational

__all__ = [
    "VALUES",
    "REGIMES",
    "DEFAULT_STEP_LIMIT",
    "DualBelief",
    "WorldState",
    "Update",
    "EnvironmentRule",
    "EnvEntry",
    "ScheduledEnvironment",
    "identity_env",
    "step_preservative",
    "step_omniscient",
    "step_lenient",
    "is_equilibrium",
    "Scenario",
    "TraceEntry",
    "Trace",
    "run",
    "load_scenario",
    "scenario_from_dict",
]

VALUES = ("T", "F", "U")
REGIMES = ("preservative", "omniscient", "lenient")
DEFAULT_STEP_LIMIT = 64


@dataclass(frozen=True)
class DualBelief:
    subjective: str
    objective: str

    def __post_init__(self):
        for v in (self.subjective, self.objective):
            if v not in VALUES:
                raise ValueError(f"belief components must be one of {VALUES}, not {v!r}")

    def __str__(self):
        return f"[{self.subjective}/{self.objective}]"

    def to_dict(self) -> dict:
        return {"s": self.subjective, "o": self.objective}


@dataclass(frozen=True)
class WorldState:
    t: int
    beliefs: Mapping[str, Any]

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("t must be non-negative")
        object.__setattr__(self, "beliefs", MappingProxyType(dict(self.beliefs)))

    def subjective(self) -> dict:
        return {a: b.subjective for a, b in self.beliefs.items()}

    def objective(self) -> dict:
        return {a: b.objective for a, b in self.beliefs.items()}

    def same_beliefs(self, other: "WorldState") -> bool:
        return dict(self.beliefs) == dict(other.beliefs)

    def describe(self) -> str:
        return " ".join(f"{a}={b}" for a, b in self.beliefs.items())


@dataclass(frozen=True)
class Update:
    """New values for one action; ``None`` keeps the current component."""

    subjective: Any = None
    objective: Any = None


class EnvironmentRule(Protocol):
    def __call__(self, t: int, state: WorldState, selected: str | None) -> Mapping[str, Update]: ...


def identity_env(t: int, state: WorldState, selected: str | None) -> Mapping[str, Update]:
    return {}


@dataclass(frozen=True)
class EnvEntry:
    set: Mapping[str, Update]
    at_t: int | None = None
    when_selected: str | None = None

    def matches(self, t: int, selected: str | None) -> bool:
        if self.at_t is not None and self.at_t != t:
            return False
        if self.when_selected is not None and self.when_selected != selected:
            return False
        return True


@dataclass(frozen=True)
class ScheduledEnvironment:
    """Deterministic environment driven by a list of entries.

    Every entry matching the current step and selection contributes its
    updates; later entries override earlier ones component-wise.
    """

    entries: tuple[EnvEntry, ...] = ()

    def __call__(self, t, state, selected):
        out: dict[str, Update] = {}
        for e in self.entries:
            if not e.matches(t, selected):
                continue
            for action, upd in e.set.items():
                prev = out.get(action, Update())
                out[action] = Update(
                    upd.subjective if upd.subjective is not None else prev.subjective,
                    upd.objective if upd.objective is not None else prev.objective,
                )
        return out

    @property
    def sets_subjective(self) -> bool:
        return any(u.subjective is not None for e in self.entries for u in e.set.values())


def _selected_or_raise(state: WorldState, select=select_rational) -> str:
    picked = select(state.subjective())
    if isinstance(picked, NoSelection):
        raise NoSelectionError(picked)
    return picked


def _check_changes(state, changes):
    for a in changes:
        if a not in state.beliefs:
            raise ScenarioError(f"environment updates unknown action {a!r}")


def step_preservative(state: WorldState, env: EnvironmentRule = identity_env) -> WorldState:
    """Non-selected actions keep their subjective value; the selected action's
    subjective value becomes its previous objective value.  Objective values
    come from ``env`` (unchanged where it is silent).
    """
    picked = _selected_or_raise(state)
    changes = env(state.t, state, picked)
    _check_changes(state, changes)
    beliefs = {}
    for a, b in state.beliefs.items():
        upd = changes.get(a, Update())
        if upd.subjective is not None:
            raise ScenarioError("the preservative regime does not let the environment set subjective values")
        new_o = upd.objective if upd.objective is not None else b.objective
        new_s = b.objective if a == picked else b.subjective
        beliefs[a] = type(b)(new_s, new_o)
    return WorldState(state.t + 1, beliefs)


def step_omniscient(state: WorldState, env: EnvironmentRule = identity_env) -> WorldState:
    for a, b in state.beliefs.items():
        if b.subjective != b.objective:
            raise MirrorViolation(f"{a}={b}: omniscient agents must hold their objective value")
    picked = select_rational(state.subjective())
    changes = env(state.t, state, picked if not isinstance(picked, NoSelection) else None)
    _check_changes(state, changes)
    beliefs = {}
    for a, b in state.beliefs.items():
        upd = changes.get(a, Update())
        new_o = upd.objective if upd.objective is not None else b.objective
        beliefs[a] = DualBelief(new_o, new_o)
    return WorldState(state.t + 1, beliefs)


def step_lenient(state: WorldState, env: EnvironmentRule = identity_env) -> WorldState:
    """The environment may rewrite any component of any action."""
    picked = select_rational(state.subjective())
    changes = env(state.t, state, picked if not isinstance(picked, NoSelection) else None)
    _check_changes(state, changes)
    beliefs = {}
    for a, b in state.beliefs.items():
        upd = changes.get(a, Update())
        beliefs[a] = DualBelief(
            upd.subjective if upd.subjective is not None else b.subjective,
            upd.objective if upd.objective is not None else b.objective,
        )
    return WorldState(state.t + 1, beliefs)


STEPS: dict[str, Callable[[WorldState, EnvironmentRule], WorldState]] = {
    "preservative": step_preservative,
    "omniscient": step_omniscient,
    "lenient": step_lenient,
}


def is_equilibrium(state: WorldState, env: EnvironmentRule = identity_env, regime: str = "preservative") -> bool:
    """True when an action is selected and one more step leaves every belief unchanged.

    With a deterministic environment a one-step fixed point repeats forever.
    """
    if isinstance(select_rational(state.subjective()), NoSelection):
        return False
    return STEPS[regime](state, env).same_beliefs(state)


# -- scenarios and traces ----------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    name: str
    actions: ActionSet
    initial: WorldState
    regime: str = "preservative"
    env: EnvironmentRule = identity_env
    step_limit: int = DEFAULT_STEP_LIMIT
    theory: str = "rational"

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ScenarioError(f"unknown regime {self.regime!r}")
        if self.theory not in ("rational", "es"):
            raise ScenarioError(f"unknown theory {self.theory!r}")
        if self.theory == "es" and self.regime != "preservative":
            raise ScenarioError("the empirical-skepticism theory only updates preservatively")
        if self.step_limit < 1:
            raise ScenarioError("step_limit must be at least 1")
        if set(self.initial.beliefs) != set(self.actions):
            raise ScenarioError("initial beliefs must cover exactly the action set")


@dataclass(frozen=True)
class TraceEntry:
    state: WorldState
    outcome: str | NoSelection
    regime: str


@dataclass(frozen=True)
class Trace:
    scenario: str
    entries: tuple[TraceEntry, ...]
    status: str  # "equilibrium" | "no-selection" | "step-limit"
    reason: str | None = None
    theory: str = "rational"
    regime: str = "preservative"

    @property
    def final(self) -> TraceEntry:
        return self.entries[-1]

    @property
    def selections(self) -> list[str | NoSelection]:
        return [e.outcome for e in self.entries]

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            if isinstance(e.outcome, NoSelection):
                tail = f"no-selection ({e.outcome.reason})"
            else:
                tail = f"select {e.outcome}"
            out.append(f"t={e.state.t} {e.state.describe()} -> {tail}")
        final = self.final
        if self.status == "equilibrium":
            out.append(f"equilibrium: {final.outcome}={final.state.beliefs[final.outcome]}")
        else:
            out.append(f"{self.status}: {self.reason}")
        return out

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "theory": self.theory,
            "regime": self.regime,
            "status": self.status,
            "reason": self.reason,
            "states": [
                {
                    "t": e.state.t,
                    "beliefs": {a: {"s": b.subjective, "o": b.objective} for a, b in e.state.beliefs.items()},
                    "selected": None if isinstance(e.outcome, NoSelection) else e.outcome,
                    "no_selection": e.outcome.reason if isinstance(e.outcome, NoSelection) else None,
                }
                for e in self.entries
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Trace":
        belief_type = _belief_type(data.get("theory", "rational"))
        entries = []
        for s in data["states"]:
            state = WorldState(s["t"], {a: belief_type(b["s"], b["o"]) for a, b in s["beliefs"].items()})
            outcome = s["selected"] if s["selected"] is not None else NoSelection(s["no_selection"])
            entries.append(TraceEntry(state, outcome, data.get("regime", "preservative")))
        return cls(
            data["scenario"],
            tuple(entries),
            data["status"],
            data.get("reason"),
            data.get("theory", "rational"),
            data.get("regime", "preservative"),
        )


def _belief_type(theory: str):
    if theory == "es":
        from .es import ProbBelief

        return ProbBelief
    return DualBelief


def _machinery(scenario: Scenario):
    if scenario.theory == "es":
        from .es import select_es, step_es

        return (lambda st: select_es(st.beliefs)), step_es
    return (lambda st: select_rational(st.subjective())), STEPS[scenario.regime]


def run(scenario: Scenario, step_limit: int | None = None) -> Trace:
    """Select and step until equilibrium, no selection, or the step limit."""
    limit = step_limit if step_limit is not None else scenario.step_limit
    select, step = _machinery(scenario)
    state = scenario.initial
    entries = []
    steps = 0
    while True:
        picked = select(state)
        entries.append(TraceEntry(state, picked, scenario.regime))
        if isinstance(picked, NoSelection):
            status, reason = "no-selection", picked.reason
            break
        if steps >= limit:
            status, reason = "step-limit", str(limit)
            break
        nxt = step(state, scenario.env)
        if nxt.same_beliefs(state):
            status, reason = "equilibrium", None
            break
        state = nxt
        steps += 1
    return Trace(scenario.name, tuple(entries), status, reason, scenario.theory, scenario.regime)


# -- scenario files ----------------------------------------------------------


def _discrete(value, where) -> str:
    if not isinstance(value, str):
        raise ScenarioError(f"{where}: expected T, F or U, got {value!r}")
    v = value[:-2] if value.endswith(("_s", "_o")) else value
    if v not in VALUES:
        raise ScenarioError(f"{where}: expected T, F or U, got {value!r}")
    return v


def _numeric(value, where) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where}: expected a number in [0, 1], got {value!r}")
    v = float(value)
    if not 0.0 <= v <= 1.0:
        raise ScenarioError(f"{where}: {v} is outside [0, 1]")
    return v


def scenario_from_dict(data: Mapping, flags=()) -> Scenario:
    """Build a scenario from its JSON form, applying any named ``flags`` overlays."""
    try:
        theory = data.get("theory", "rational")
        conv = _numeric if theory == "es" else _discrete
        belief_type = _belief_type(theory)
        actions = ActionSet(tuple(data["actions"]))
        initial = {a: dict(v) for a, v in data["initial"].items()}
        available = data.get("flags", {})
        for flag in flags:
            if flag not in available:
                raise ScenarioError(f"unknown scenario flag {flag!r}")
            for a, v in available[flag].get("initial", {}).items():
                initial.setdefault(a, {}).update(v)
        for a in initial:
            if a not in actions.actions:
                raise ScenarioError(f"initial belief for unknown action {a!r}")
        beliefs = {}
        for a in actions:
            if a not in initial:
                raise ScenarioError(f"no initial belief for {a!r}")
            b = initial[a]
            beliefs[a] = belief_type(conv(b.get("s"), f"{a}.s"), conv(b.get("o"), f"{a}.o"))
        entries = []
        for i, e in enumerate(data.get("env", [])):
            sets = {}
            for a, v in e.get("set", {}).items():
                if a not in actions.actions:
                    raise ScenarioError(f"env[{i}] sets unknown action {a!r}")
                sets[a] = Update(
                    conv(v["s"], f"env[{i}].{a}.s") if "s" in v else None,
                    conv(v["o"], f"env[{i}].{a}.o") if "o" in v else None,
                )
            when = e.get("when_selected")
            if when is not None and when not in actions.actions:
                raise ScenarioError(f"env[{i}] refers to unknown action {when!r}")
            entries.append(EnvEntry(sets, e.get("at_t"), when))
        env = ScheduledEnvironment(tuple(entries))
        regime = data.get("regime", "preservative")
        if env.sets_subjective and regime != "lenient":
            raise ScenarioError("only the lenient regime lets the environment set subjective values")
        return Scenario(
            name=data.get("name", "scenario"),
            actions=actions,
            initial=WorldState(0, beliefs),
            regime=regime,
            env=env,
            step_limit=int(data.get("step_limit", DEFAULT_STEP_LIMIT)),
            theory=theory,
        )
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ScenarioError(f"malformed scenario: {exc}") from exc


def load_scenario(source, flags=()) -> Scenario:
    """Load a scenario from a path or a bundled name such as ``"monty_hall"``."""
    path = Path(source)
    if not path.exists():
        candidate = bundled_path(path.name if path.suffix else f"{path.name}.json")
        if not candidate.exists():
            raise FileNotFoundError(source)
        path = candidate
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc
    return scenario_from_dict(data, flags)

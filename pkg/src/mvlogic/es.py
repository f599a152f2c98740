"""Empirical skepticism: selection over graded beliefs in [0, 1].

An action is chosen when its subjective value strictly exceeds every other
action's.  Updates follow the preservative pattern with real values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .dynamics import EnvironmentRule, Update, WorldState, identity_env
from .errors import NoSelectionError, ScenarioError
from .selection import NoSelection

__all__ = ["ProbBelief", "select_es", "step_es", "DISCRETE_EMBEDDING"]

# discrete subjective values placed on the unit interval
DISCRETE_EMBEDDING = {"T": 1.0, "U": 0.5, "F": 0.0}


@dataclass(frozen=True)
class ProbBelief:
    subjective: float
    objective: float

    def __post_init__(self):
        for v in (self.subjective, self.objective):
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"belief components must be finite reals, not {v!r}")
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"belief component {v} is outside [0, 1]")

    def __str__(self):
        return f"[{self.subjective:g}/{self.objective:g}]"

    def to_dict(self) -> dict:
        return {"s": self.subjective, "o": self.objective}


def _subjective(b) -> float:
    return b.subjective if isinstance(b, ProbBelief) else float(b)


def select_es(beliefs: Mapping[str, ProbBelief | float]) -> str | NoSelection:
    """Return the action whose subjective value is a strict unique maximum.

    Plain floats are accepted in place of :class:`ProbBelief`.  Ties are
    exact comparisons; no tolerance is applied.
    """
    if len(beliefs) < 2:
        raise ValueError("need at least two actions")
    best = None
    best_value = -math.inf
    tied = False
    for action, b in beliefs.items():
        v = _subjective(b)
        if v > best_value:
            best, best_value, tied = action, v, False
        elif v == best_value:
            tied = True
    if tied:
        return NoSelection("tie")
    return best


def step_es(state: WorldState, env: EnvironmentRule = identity_env) -> WorldState:
    picked = select_es(state.beliefs)
    if isinstance(picked, NoSelection):
        raise NoSelectionError(picked)
    changes = env(state.t, state, picked)
    beliefs = {}
    for a, b in state.beliefs.items():
        upd = changes.get(a, Update())
        if upd.subjective is not None:
            raise ScenarioError("the environment may only set objective values here")
        new_o = upd.objective if upd.objective is not None else b.objective
        new_s = b.objective if a == picked else b.subjective
        beliefs[a] = ProbBelief(new_s, new_o)
    return WorldState(state.t + 1, beliefs)

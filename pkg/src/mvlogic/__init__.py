"""Configurable many-valued propositional logic with belief dynamics.

The six-valued system ships as ``load_system("svl")``.
"""

from .dynamics import (
    DualBelief,
    Scenario,
    Trace,
    WorldState,
    is_equilibrium,
    load_scenario,
    run,
    step_lenient,
    step_omniscient,
    step_preservative,
)
from .entailment import PremiseSet, entails, run_corpus, satisfies
from .errors import LogicError, ParseError
from .es import ProbBelief, select_es, step_es
from .formula import (
    Apply,
    Atom,
    PremiseAssertion,
    parse_formula,
    parse_premise,
    parse_premise_expr,
    print_formula,
    print_premise,
)
from .kernel import (
    ConnectiveTable,
    Equiv,
    Interpretation,
    LogicSystem,
    TruthDomain,
    equiv_valuate,
    interpret,
    invert_valuation,
    load_system,
    table_output_bound,
    valuate,
)
from .selection import NoSelection, build_selector_tables, select_rational, selector_consistency_check

__all__ = [
    "Apply",
    "Atom",
    "build_selector_tables",
    "ConnectiveTable",
    "DualBelief",
    "entails",
    "Equiv",
    "equiv_valuate",
    "interpret",
    "Interpretation",
    "invert_valuation",
    "is_equilibrium",
    "load_scenario",
    "load_system",
    "LogicError",
    "LogicSystem",
    "NoSelection",
    "parse_formula",
    "parse_premise",
    "parse_premise_expr",
    "ParseError",
    "PremiseAssertion",
    "PremiseSet",
    "print_formula",
    "print_premise",
    "ProbBelief",
    "run",
    "run_corpus",
    "satisfies",
    "Scenario",
    "select_es",
    "select_rational",
    "selector_consistency_check",
    "step_es",
    "step_lenient",
    "step_omniscient",
    "step_preservative",
    "table_output_bound",
    "Trace",
    "TruthDomain",
    "valuate",
    "WorldState",
]

__version__ = "0.1.0"

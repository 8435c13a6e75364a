from .base import Automaton
from .dfa import (
    Dfa, DfaBuilder, run_dfa, accepts, complete, complement, product, shortest_accepted,
    coreachable_states, restrict, trim, with_alphabet, minimize_dfa,
)
from .mealy import (
    MealyMachine, MealyBuilder, mealy_run, state_cover, separating_word, distinguishing_word,
    reachable_part, minimize_mealy, minimize_and_isomorphic,
)
from .translate import TranslatedState, mealy_to_dfa, dfa_to_mealy


__all__ = [
    "Automaton",
    "Dfa",
    "DfaBuilder",
    "MealyMachine",
    "MealyBuilder",
    "TranslatedState",
    "run_dfa",
    "accepts",
    "complete",
    "complement",
    "product",
    "shortest_accepted",
    "coreachable_states",
    "restrict",
    "trim",
    "with_alphabet",
    "minimize_dfa",
    "mealy_run",
    "state_cover",
    "separating_word",
    "distinguishing_word",
    "reachable_part",
    "minimize_mealy",
    "minimize_and_isomorphic",
    "mealy_to_dfa",
    "dfa_to_mealy",
]

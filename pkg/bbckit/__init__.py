from .exceptions import *
from .utils import requires_complete

from .types import Symbol, Alphabet, Trace, QueryKind, QueryStats, Budget
from .automata import Dfa, MealyMachine, mealy_to_dfa, dfa_to_mealy
from .specs import SpecDfa, SpecSet, validate_spec, bug_automaton_to_spec, split_io_dfa, conjoin
from ._sut import SystemUnderTest, SimulatedSUT, QueryObserver
from .monitor import BugReport, MonitorState, SpecMonitor, ViolationRecorder, check_trace
from .learner import LSharpLearner, Hypothesis
from .checker import CheckVerdict, check, confirm_on_sut
from .mbt import ConformanceConfig, ConformanceTester, MbtMemory, derive_and_run_test, run_mbt_suite
from .engine import BbcConfig, BbcOutcome, BlackBoxChecker, Mode, PropertyStatus, run_bbc, run_learn_then_check


__all__ = [
    "Symbol",
    "Alphabet",
    "Trace",
    "QueryKind",
    "QueryStats",
    "Budget",
    "Dfa",
    "MealyMachine",
    "mealy_to_dfa",
    "dfa_to_mealy",
    "SpecDfa",
    "SpecSet",
    "validate_spec",
    "bug_automaton_to_spec",
    "split_io_dfa",
    "conjoin",
    "SystemUnderTest",
    "SimulatedSUT",
    "QueryObserver",
    "BugReport",
    "MonitorState",
    "SpecMonitor",
    "ViolationRecorder",
    "check_trace",
    "LSharpLearner",
    "Hypothesis",
    "CheckVerdict",
    "check",
    "confirm_on_sut",
    "ConformanceConfig",
    "ConformanceTester",
    "MbtMemory",
    "derive_and_run_test",
    "run_mbt_suite",
    "BbcConfig",
    "BbcOutcome",
    "BlackBoxChecker",
    "Mode",
    "PropertyStatus",
    "run_bbc",
    "run_learn_then_check",
    "requires_complete",

    "BbcKitException",
    "AutomatonError",
    "SpecificationError",
    "DotError",
    "SutError",
    "BudgetExhausted",
    "PropertyViolated",
    "LearnerError",
    "ModelCheckError",
    "ExperimentConfigError",
]


__version__ = "1.0.0"

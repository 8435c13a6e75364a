"""Model checking hypotheses against specifications, and confirming counterexamples on the system."""

import enum
import typing
import logging
import threading
import dataclasses

import cachetools

from . import configs, exceptions
from .automata import Dfa, MealyMachine, mealy_to_dfa, product, shortest_accepted, with_alphabet
from .learner import Hypothesis
from .monitor import BugReport, Discovery, check_trace
from .specs import SpecDfa, violations
from .types import QueryKind, Trace, Word


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Counterexample(object):
    """A behaviour of the hypothesis outside the specification.

    Attributes
    ----------
    word : tuple
        The shortest interleaved word accepted by the hypothesis and rejected by the specification.
    inputs : tuple
        Its input projection.
    predicted : bbckit.types.Trace
        What the hypothesis outputs on ``inputs``.

    """

    word: Word
    inputs: Word
    predicted: Trace


@dataclasses.dataclass(frozen=True)
class CheckVerdict(object):
    property_name: str
    satisfied: bool
    counterexample: typing.Optional[Counterexample] = None

    def __post_init__(self):
        if self.satisfied != (self.counterexample is None):
            raise ValueError("A verdict has a counterexample exactly when it is not satisfied.")


@cachetools.cached(cache=cachetools.LRUCache(maxsize=configs.HYPOTHESIS_CACHE_MAX_SIZE), lock=threading.RLock())
def _translated(hypothesis: Hypothesis) -> Dfa:
    return mealy_to_dfa(hypothesis.machine)


def translated(h) -> Dfa:
    """``mealy_to_dfa`` of a hypothesis (cached) or of a plain machine."""
    if isinstance(h, Hypothesis):
        return _translated(h)
    return mealy_to_dfa(h)


def check(h, s: SpecDfa) -> CheckVerdict:
    """Decides whether every interleaved behaviour of ``h``, a :py:class:`bbckit.learner.Hypothesis` or a
    :py:class:`bbckit.automata.MealyMachine`, lies in the language of ``s``.

    Raises
    ------
    bbckit.AlphabetMismatch
        When inputs or outputs of ``h`` and ``s`` differ.

    """
    machine: MealyMachine = h.machine if isinstance(h, Hypothesis) else h
    if machine.inputs != s.inputs or machine.outputs != s.outputs:
        raise exceptions.AlphabetMismatch(f"Machine and specification {s.name!r} use different alphabets.")
    bad = product(with_alphabet(translated(h), s.sigma), violations(s))
    found = shortest_accepted(bad)
    if found is None:
        return CheckVerdict(s.name, True)
    inputs = tuple(symbol for symbol in found if symbol in machine.inputs)
    return CheckVerdict(s.name, False, Counterexample(found, inputs, machine.run(inputs)))


class ConfirmationKind(enum.Enum):
    BUG = "bug"
    SPURIOUS = "spurious"


@dataclasses.dataclass(frozen=True)
class Confirmation(object):
    """Outcome of replaying a model checking counterexample on the system.

    Attributes
    ----------
    kind : ConfirmationKind
    trace : bbckit.types.Trace
        What the system did on the counterexample's inputs.
    report : BugReport or None
        Set for bugs.

    """

    kind: ConfirmationKind
    trace: Trace
    report: typing.Optional[BugReport] = None

    @property
    def is_bug(self) -> bool:
        return self.kind is ConfirmationKind.BUG


def confirm_on_sut(verdict: CheckVerdict, sut, spec: SpecDfa, enforce_budget=True) -> Confirmation:
    """Runs the inputs of the counterexample of ``verdict`` as a learning query. A violating trace is a bug;
    otherwise the trace differs from the hypothesis and is a counterexample for the learner.

    Raises
    ------
    bbckit.ModelCheckError
        When the system did what the hypothesis predicted and still satisfies the specification.

    """
    counterexample = verdict.counterexample
    if counterexample is None:
        raise ValueError("Only unsatisfied verdicts can be confirmed.")
    first_step = sut.global_step + 1
    trace = sut.query(counterexample.inputs, QueryKind.LEARNING, enforce_budget)
    report = check_trace(spec, trace, Discovery.MODEL_CHECK, sut.stats, first_step)
    if report is not None:
        logger.info("confirmed %s at step %d", report, report.step)
        return Confirmation(ConfirmationKind.BUG, trace, report)
    if trace == counterexample.predicted:
        raise exceptions.ModelCheckError(
            f"System followed the hypothesis on {trace} but no violation of {spec.name!r} was flagged."
        )
    logger.debug("spurious counterexample for %s: %s", spec.name, trace)
    return Confirmation(ConfirmationKind.SPURIOUS, trace)

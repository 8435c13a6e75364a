"""Testing: the conformance tester that checks hypotheses inside the loop, and the standalone tester that
derives tests from a specification alone.

"""

import typing
import logging
import threading
import dataclasses

import cachetools
import numpy

from . import configs, utils
from .automata import distinguishing_word, separating_word, state_cover
from .learner import Hypothesis
from .specs import SpecDfa
from .types import QueryKind, QueryStats, Trace, Word


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ConformanceConfig(object):
    """Settings of the conformance tester.

    Attributes
    ----------
    expected_infix_length : float
        Mean of the geometric distribution random infix lengths are drawn from.
    max_tests : int or None
        Cap on the tests of one round. Without a cap a round runs until it finds a counterexample, or is
        skipped when the hypothesis is equivalent to a simulated system.
    seed : int

    """

    expected_infix_length: float = configs.DEFAULT_EXPECTED_INFIX_LENGTH
    max_tests: typing.Optional[int] = None
    seed: int = configs.DEFAULT_SEED

    def __post_init__(self):
        if not self.expected_infix_length > 0:
            raise ValueError("The expected infix length must be positive.")
        if self.max_tests is not None and self.max_tests < 1:
            raise ValueError("max_tests must be positive when given.")


@cachetools.cached(cache=cachetools.LRUCache(maxsize=configs.HYPOTHESIS_CACHE_MAX_SIZE), lock=threading.RLock())
def _cover(hypothesis: Hypothesis) -> typing.Dict[int, Word]:
    return state_cover(hypothesis.machine)


@cachetools.cached(
    cache=cachetools.LRUCache(maxsize=configs.SEPARATING_WORD_CACHE_MAX_SIZE), lock=threading.RLock()
)
def _separating(hypothesis: Hypothesis, first: int, second: int) -> Word:
    return separating_word(hypothesis.machine, first, second) or ()


@dataclasses.dataclass(frozen=True)
class RoundOutcome(object):
    """Result of one conformance round; ``counterexample`` is None when every test passed."""

    counterexample: typing.Optional[Trace] = None
    tests: int = 0
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return self.counterexample is None


class ConformanceTester(object):
    """Random conformance testing of hypotheses against the system. A test is the access word of a random
    hypothesis state, a random infix and a word separating the state reached from another random state.

    """

    def __init__(self, sut, config: ConformanceConfig = None):
        self.sut = sut
        self.config = config or ConformanceConfig()
        self.rng = utils.make_rng(self.config.seed)

    def next_test(self, hypothesis: Hypothesis) -> Word:
        machine = hypothesis.machine
        cover = _cover(hypothesis)
        states = sorted(cover)
        access = cover[utils.choose(self.rng, states)]
        inputs = machine.inputs.symbols
        length = utils.geometric_length(self.rng, self.config.expected_infix_length)
        infix = tuple(inputs[k] for k in self.rng.integers(len(inputs), size=length)) if length else ()
        reached = machine.state_after(access + infix)
        others = [state for state in states if state != reached]
        suffix = _separating(hypothesis, reached, utils.choose(self.rng, others)) if others else ()
        return access + infix + suffix

    def run_round(self, hypothesis: Hypothesis, max_tests=None) -> RoundOutcome:
        """Runs testing queries until one disagrees with ``hypothesis`` or ``max_tests`` tests passed.

        Raises
        ------
        bbckit.BudgetExhausted
            When the step budget of the system ends.

        """
        max_tests = self.config.max_tests if max_tests is None else max_tests
        machine = getattr(self.sut, "machine", None)
        if max_tests is None and machine is not None and distinguishing_word(hypothesis.machine, machine) is None:
            logger.debug("hypothesis %d is equivalent to the system; round skipped", hypothesis.index)
            return RoundOutcome(skipped=True)
        tests = 0
        while max_tests is None or tests < max_tests:
            test = self.next_test(hypothesis)
            observed = self.sut.query(test, QueryKind.TESTING)
            tests += 1
            if observed != hypothesis.predict(test):
                logger.info("conformance counterexample after %d tests: %s", tests, observed)
                return RoundOutcome(observed, tests)
        return RoundOutcome(None, tests)


class MbtMemory(object):
    """Inputs already tried in each specification state, shared by the tests of one suite."""

    def __init__(self):
        self._tried = dict()

    def tried(self, state) -> typing.FrozenSet:
        return frozenset(self._tried.get(state, ()))

    def record(self, state, symbol):
        self._tried.setdefault(state, set()).add(symbol)


@dataclasses.dataclass(frozen=True)
class TestVerdict(object):
    """Verdict of one standalone test.

    Attributes
    ----------
    passed : bool
    trace : bbckit.types.Trace
        The executed trace.
    position : int or None
        One based index, in the interleaved trace, of the first symbol the specification does not allow.

    """

    __test__ = False

    passed: bool
    trace: Trace
    position: typing.Optional[int] = None


def derive_and_run_test(spec: SpecDfa, sut, memory: MbtMemory, max_steps: int, rng: numpy.random.Generator,
                        enforce_budget=True) -> TestVerdict:
    """Walks ``spec`` and the system together for at most ``max_steps`` inputs. In every specification state
    an enabled input not yet in ``memory`` is chosen uniformly, falling back to all enabled inputs. Each
    output symbol must have a transition in the specification, otherwise the test fails.

    """
    if max_steps < 1:
        raise ValueError("A test needs at least one step.")
    dfa = spec.dfa
    state = dfa.initial
    position = 0
    with sut.session(QueryKind.TESTING, max_steps, enforce_budget) as session:
        for _ in range(max_steps):
            enabled = [symbol for symbol in spec.inputs if dfa.successor(state, symbol) is not None]
            if not enabled:
                break
            tried = memory.tried(state)
            symbol = utils.choose(rng, [symbol for symbol in enabled if symbol not in tried] or enabled)
            memory.record(state, symbol)
            output = session.send(symbol)
            state = dfa.successor(state, symbol)
            position += 1
            for current in output:
                position += 1
                state = dfa.successor(state, current)
                if state is None:
                    return TestVerdict(False, session.trace(), position)
    return TestVerdict(True, session.trace())


@dataclasses.dataclass(frozen=True)
class SuiteReport(object):
    """Result of a standalone test suite.

    Attributes
    ----------
    property_name : str
    found : bool
    tests_to_bug : int or None
        Number of tests executed up to and including the failing one.
    verdicts : tuple
        The :py:class:`TestVerdict` of every executed test.
    stats : bbckit.types.QueryStats
        Counters of the system after the suite.

    """

    property_name: str
    found: bool
    tests_to_bug: typing.Optional[int]
    verdicts: typing.Tuple[TestVerdict, ...]
    stats: QueryStats

    @property
    def tests(self) -> int:
        return len(self.verdicts)


def run_mbt_suite(spec: SpecDfa, sut, n_tests: int, seed=configs.DEFAULT_SEED, max_steps=None) -> SuiteReport:
    """Runs up to ``n_tests`` tests with a shared memory and stops at the first failure. Tests are
    ``2 * len(spec)`` steps long unless ``max_steps`` is given.

    """
    if n_tests < 1:
        raise ValueError("A suite needs at least one test.")
    max_steps = configs.MBT_TEST_STEPS_FACTOR * len(spec) if max_steps is None else max_steps
    rng = utils.make_rng(seed)
    memory = MbtMemory()
    verdicts = []
    for _ in range(n_tests):
        verdict = derive_and_run_test(spec, sut, memory, max_steps, rng)
        verdicts.append(verdict)
        if not verdict.passed:
            logger.info("test %d failed %s at position %d", len(verdicts), spec.name, verdict.position)
            return SuiteReport(spec.name, True, len(verdicts), tuple(verdicts), sut.stats.snapshot())
    return SuiteReport(spec.name, False, None, tuple(verdicts), sut.stats.snapshot())

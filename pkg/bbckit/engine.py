import enum
import typing
import logging
import dataclasses

from . import configs, exceptions, utils
from .checker import check, confirm_on_sut
from .learner import Hypothesis, Learner, LSharpLearner
from .mbt import ConformanceConfig, ConformanceTester
from .monitor import BugReport, SpecMonitor, ViolationRecorder
from .specs import SpecDfa, SpecSet
from .types import Budget, QueryStats


logger = logging.getLogger(__name__)


class Mode(enum.Enum):
    BBC = configs.MODE_BBC
    LEARN_THEN_CHECK = configs.MODE_LEARN_THEN_CHECK


class PropertyStatus(enum.Enum):
    BUG = configs.RESOLVED_BUG
    NO_BUG = configs.RESOLVED_NO_BUG
    UNRESOLVED = configs.RESOLVED_UNRESOLVED


@dataclasses.dataclass(frozen=True)
class BbcConfig(object):
    """Settings of one black box checking run.

    Attributes
    ----------
    monitor_enabled : bool
        Attach aborting runtime monitors to learning queries. Only used in :py:attr:`Mode.BBC`.
    monitor_testing : bool
        Monitor testing queries as well.
    budget : bbckit.types.Budget
    conformance : bbckit.ConformanceConfig
        Tester settings. Its seed is replaced by :py:attr:`seed`, and a run with a step budget caps every
        round at ``BUDGETED_MAX_TESTS_PER_ROUND`` tests unless ``max_tests`` is given.
    seed : int
        Seed of the conformance tester.
    mode : Mode

    """

    monitor_enabled: bool = True
    monitor_testing: bool = False
    budget: Budget = dataclasses.field(default_factory=Budget)
    conformance: ConformanceConfig = dataclasses.field(default_factory=ConformanceConfig)
    seed: int = configs.DEFAULT_SEED
    mode: Mode = Mode.BBC

    @classmethod
    def from_mapping(cls, mapping, **overrides) -> "BbcConfig":
        """Builds a configuration from ``BBCKIT_*`` keys of ``mapping``, e.g. the environment. Explicit
        keyword arguments win over the mapping.

        """
        def read(key, convert, default=None):
            value = mapping.get(configs.BBCKIT_ENV_PREFIX + key)
            return default if value in (None, "") else convert(value)

        step_budget = read("STEP_BUDGET", int)
        max_tests = read("MAX_TESTS", int)
        if max_tests is None and step_budget is not None:
            max_tests = configs.BUDGETED_MAX_TESTS_PER_ROUND
        seed = read("SEED", int, configs.DEFAULT_SEED)
        values = dict(
            monitor_enabled=read("MONITOR", utils.switch, True),
            monitor_testing=read("MONITOR_TESTING", utils.switch, False),
            budget=Budget(step_budget),
            conformance=ConformanceConfig(
                read("EXPECTED_INFIX_LENGTH", float, configs.DEFAULT_EXPECTED_INFIX_LENGTH), max_tests, seed
            ),
            seed=seed,
            mode=Mode(read("MODE", str, configs.MODE_BBC)),
        )
        values.update(overrides)
        return cls(**values)


@dataclasses.dataclass
class PropertyOutcome(object):
    """What a run found out about one property.

    Attributes
    ----------
    name : str
    status : PropertyStatus
    report : bbckit.BugReport or None
    stats : bbckit.types.QueryStats or None
        Counters when the property was resolved.
    hypotheses : int
        Hypotheses emitted when the property was resolved.
    first_violation_step : int or None
        Global step of the first learning query step that executed a violating trace, monitored or not.

    """

    name: str
    status: PropertyStatus = PropertyStatus.UNRESOLVED
    report: typing.Optional[BugReport] = None
    stats: typing.Optional[QueryStats] = None
    hypotheses: int = 0
    first_violation_step: typing.Optional[int] = None

    @property
    def bug_step(self) -> typing.Optional[int]:
        return None if self.report is None else self.report.step


@dataclasses.dataclass
class BbcOutcome(object):
    """Result of a run.

    Attributes
    ----------
    properties : dict
        :py:class:`PropertyOutcome` by property name, in declaration order.
    hypothesis : bbckit.learner.Hypothesis or None
        The last hypothesis.
    stats : bbckit.types.QueryStats
    hypotheses_emitted : int
    full_model_stats : bbckit.types.QueryStats or None
        Counters when a conformance round first passed.
    budget_exhausted : bool

    """

    properties: typing.Dict[str, PropertyOutcome]
    hypothesis: typing.Optional[Hypothesis]
    stats: QueryStats
    hypotheses_emitted: int
    full_model_stats: typing.Optional[QueryStats] = None
    budget_exhausted: bool = False

    def __getitem__(self, name) -> PropertyOutcome:
        return self.properties[name]

    @property
    def bugs(self) -> typing.List[BugReport]:
        return [outcome.report for outcome in self.properties.values() if outcome.status is PropertyStatus.BUG]


class BlackBoxChecker(object):
    """Dispatches between learner, model checker, conformance tester and monitors until every property is
    resolved or the budget ends.

    Parameters
    ----------
    sut : bbckit.SystemUnderTest
        A fresh system; its counters are the counters of the run.
    specs : bbckit.SpecSet or iterable
    config : BbcConfig, optional
    learner : bbckit.learner.Learner, optional
        Defaults to :py:class:`bbckit.learner.LSharpLearner`.

    """

    def __init__(self, sut, specs, config: BbcConfig = None, learner: Learner = None):
        self.sut = sut
        self.specs = specs if isinstance(specs, SpecSet) else SpecSet(specs)
        self.config = config or BbcConfig()
        if self.specs.inputs is not None and (
                self.specs.inputs != sut.inputs or self.specs.outputs != sut.outputs):
            raise exceptions.AlphabetMismatch("Specifications and system use different alphabets.")
        if sut.budget.max_steps is None and self.config.budget.max_steps is not None:
            sut.budget = self.config.budget
        self.learner = learner or LSharpLearner(sut)
        self.tester = ConformanceTester(sut, self._conformance_config())
        self.outcomes = {spec.name: PropertyOutcome(spec.name) for spec in self.specs}
        self.hypotheses = 0
        self.full_model_stats = None
        self._open = [spec for spec in self.specs]
        self._monitors = {}
        self._recorders = {
            spec.name: ViolationRecorder(spec, self.config.monitor_testing) for spec in self.specs
        }

    @property
    def bbc(self) -> bool:
        return self.config.mode is Mode.BBC

    @property
    def max_tests(self):
        return self.tester.config.max_tests

    def _conformance_config(self) -> ConformanceConfig:
        """The tester settings of this run: seeded with the run seed, and capped whenever the system has a step
        budget.

        """
        conformance = dataclasses.replace(self.config.conformance, seed=self.config.seed)
        if conformance.max_tests is None:
            budget = self.sut.budget
            max_tests = budget.max_testing_queries_per_round
            if max_tests is None and budget.max_steps is not None:
                max_tests = configs.BUDGETED_MAX_TESTS_PER_ROUND
            conformance = dataclasses.replace(conformance, max_tests=max_tests)
        return conformance

    def run(self) -> BbcOutcome:
        exhausted = False
        for recorder in self._recorders.values():
            self.sut.add_observer(recorder)
        try:
            while self._open:
                self._sync_monitors()
                try:
                    self._round()
                except exceptions.PropertyViolated as e:
                    for report in e.reports:
                        self._resolve_bug(report)
                    if e.trace is not None:
                        self.learner.add_observation(e.trace)
        except exceptions.BudgetExhausted as e:
            logger.info("%s; final model checking sweep over %d properties", e, len(self._open))
            exhausted = True
            self._detach_monitors()
            self._final_sweep()
        finally:
            self._detach_monitors()
            for recorder in self._recorders.values():
                self.sut.remove_observer(recorder)

        for name, recorder in self._recorders.items():
            self.outcomes[name].first_violation_step = recorder.first_violation_step
        for spec in self._open:
            self.outcomes[spec.name].stats = self.sut.stats.snapshot()
            self.outcomes[spec.name].hypotheses = self.hypotheses
        return BbcOutcome(
            self.outcomes, self.learner.hypothesis, self.sut.stats.snapshot(), self.hypotheses,
            self.full_model_stats, exhausted,
        )

    # Monitors.

    def _sync_monitors(self):
        wanted = {spec.name for spec in self._open} if self.bbc and self.config.monitor_enabled else set()
        for name in list(self._monitors):
            if name not in wanted:
                self.sut.remove_observer(self._monitors.pop(name))
        for spec in self._open:
            if spec.name in wanted and spec.name not in self._monitors:
                self._monitors[spec.name] = SpecMonitor(spec, self.config.monitor_testing)
                self.sut.add_observer(self._monitors[spec.name])

    def _detach_monitors(self):
        for monitor in self._monitors.values():
            self.sut.remove_observer(monitor)
        self._monitors.clear()

    # Resolution.

    def _resolve_bug(self, report: BugReport):
        logger.info("bug found for %s after %d steps", report, report.step or 0)
        outcome = self.outcomes[report.property_name]
        outcome.status = PropertyStatus.BUG
        outcome.report = report
        outcome.stats = report.stats
        outcome.hypotheses = self.hypotheses
        if report.step is not None:
            self.sut.stats.mark_bug(report.step)
        self._open = [spec for spec in self._open if spec.name != report.property_name]
        monitor = self._monitors.pop(report.property_name, None)
        if monitor is not None:
            self.sut.remove_observer(monitor)

    def _resolve_no_bug(self, spec: SpecDfa):
        outcome = self.outcomes[spec.name]
        outcome.status = PropertyStatus.NO_BUG
        outcome.stats = self.sut.stats.snapshot()
        outcome.hypotheses = self.hypotheses

    # The loop.

    def _model_check(self, hypothesis: Hypothesis, enforce_budget=True) -> bool:
        """Checks open properties in declaration order. Returns False after feeding the learner a spurious
        counterexample, True when every remaining property holds on ``hypothesis``.

        """
        for spec in list(self._open):
            verdict = check(hypothesis, spec)
            if verdict.satisfied:
                continue
            confirmation = confirm_on_sut(verdict, self.sut, spec, enforce_budget)
            if confirmation.is_bug:
                self._resolve_bug(confirmation.report)
                continue
            if not enforce_budget:
                continue
            self.learner.process_counterexample(confirmation.trace)
            return False
        return True

    def _round(self):
        previous = self.learner.hypothesis
        hypothesis = self.learner.refine()
        if hypothesis is not previous:
            self.hypotheses += 1
        if self.bbc and not self._model_check(hypothesis):
            return
        if not self._open:
            return
        outcome = self.tester.run_round(hypothesis, self.max_tests)
        if not outcome.passed:
            self.learner.process_counterexample(outcome.counterexample)
            return
        if self.full_model_stats is None:
            self.full_model_stats = self.sut.stats.snapshot()
        if not self.bbc and not self._model_check(hypothesis):
            return
        for spec in self._open:
            self._resolve_no_bug(spec)
        self._open = []

    def _final_sweep(self):
        hypothesis = self.learner.hypothesis
        if hypothesis is None or not self._open:
            return
        self._model_check(hypothesis, enforce_budget=False)


def run_bbc(sut, specs, config: BbcConfig = None) -> BbcOutcome:
    """Black box checking: every hypothesis is model checked, and learning queries are monitored."""
    config = dataclasses.replace(config or BbcConfig(), mode=Mode.BBC)
    return BlackBoxChecker(sut, specs, config).run()


def run_learn_then_check(sut, specs, config: BbcConfig = None) -> BbcOutcome:
    """The baseline: learn until a conformance round passes, then model check the final hypothesis only."""
    config = dataclasses.replace(config or BbcConfig(), mode=Mode.LEARN_THEN_CHECK)
    return BlackBoxChecker(sut, specs, config).run()

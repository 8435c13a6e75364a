"""Runtime monitoring of observed traces against specifications."""

import enum
import typing
import dataclasses

from . import exceptions
from ._sut import QueryObserver
from .specs import SpecDfa, completed
from .types import QueryKind, QueryStats, Symbol, Trace, Word


class Discovery(enum.Enum):
    MONITOR = "monitor"
    MODEL_CHECK = "model-check-confirmation"


class MonitorVerdict(typing.NamedTuple):
    violated: bool
    position: typing.Optional[int] = None


OK = MonitorVerdict(False)


@dataclasses.dataclass(frozen=True)
class BugReport(object):
    """A violation of a property by an observed trace.

    Attributes
    ----------
    property_name : str
    witness : bbckit.types.Trace
        The trace up to and including the violating step.
    word : tuple
        The interleaved word up to and including the first symbol outside the specification.
    position : int
        One based index of that symbol, i.e. ``len(word)``.
    discovered_by : Discovery
    stats : bbckit.types.QueryStats
        Counters at the moment of discovery.
    step : int or None
        Global step index of the violating step, when known.

    """

    property_name: str
    witness: Trace
    word: Word
    position: int
    discovered_by: Discovery
    stats: QueryStats = dataclasses.field(default_factory=QueryStats)
    step: typing.Optional[int] = None

    def __str__(self):
        return f"{self.property_name}: {self.witness} ({self.discovered_by.value})"


class MonitorState(object):
    """Incremental acceptor running the completed specification over the interleaved word of a trace. Once
    violated it stays frozen on the violation.

    """

    def __init__(self, spec: SpecDfa):
        self.spec = spec
        self._dfa = completed(spec)
        self.current = self._dfa.initial
        self.position = 0
        self.violated_at = None

    @property
    def violated(self) -> bool:
        return self.violated_at is not None

    def reset(self):
        self.current = self._dfa.initial
        self.position = 0
        self.violated_at = None

    def clone(self) -> "MonitorState":
        other = MonitorState.__new__(MonitorState)
        other.__dict__.update(self.__dict__)
        return other

    def observe(self, symbol: Symbol, output: Word) -> MonitorVerdict:
        """Advances over ``symbol`` followed by every symbol of ``output``.

        Raises
        ------
        bbckit.AlphabetMismatch
            When a symbol is neither an input nor an output of the specification.

        """
        if self.violated:
            return MonitorVerdict(True, self.violated_at)
        for current in (symbol,) + tuple(output):
            self._dfa.sigma.check_word((current,))
            self.position += 1
            self.current = self._dfa.successor(self.current, current)
            if self.current not in self._dfa.finals:
                self.violated_at = self.position
                return MonitorVerdict(True, self.position)
        return OK


def check_trace(spec: SpecDfa, trace: Trace, discovered_by=Discovery.MONITOR, stats=None, first_step=None):
    """Runs ``trace`` through a fresh monitor and reports its first violation, or returns None.
    ``first_step`` is the global index of the trace's first step, used to fill :py:attr:`BugReport.step`.

    """
    state = MonitorState(spec)
    for index, (symbol, output) in enumerate(trace, start=1):
        verdict = state.observe(symbol, output)
        if verdict.violated:
            return BugReport(
                spec.name, trace.prefix(index), trace.interleave()[:verdict.position], verdict.position,
                discovered_by, stats.snapshot() if stats is not None else QueryStats(),
                None if first_step is None else first_step + index - 1,
            )
    return None


class _TraceWatcher(QueryObserver):

    def __init__(self, spec: SpecDfa, monitor_testing=False):
        self.spec = spec
        self.state = MonitorState(spec)
        self.kinds = frozenset([QueryKind.LEARNING, QueryKind.TESTING] if monitor_testing else [QueryKind.LEARNING])
        self._steps = []

    def on_query_start(self, sut, kind):
        self.state.reset()
        self._steps = []

    def _report(self, sut, symbol, output, position) -> BugReport:
        self._steps.append((symbol, output))
        witness = Trace(tuple(self._steps))
        return BugReport(
            self.spec.name, witness, witness.interleave()[:position], position,
            Discovery.MONITOR, sut.stats.snapshot(), sut.global_step,
        )

    def _observe(self, symbol, output) -> MonitorVerdict:
        verdict = self.state.observe(symbol, output)
        if not verdict.violated:
            self._steps.append((symbol, output))
        return verdict


class SpecMonitor(_TraceWatcher):
    """Aborting runtime monitor: raises :py:class:`bbckit.PropertyViolated` on the first step whose trace
    leaves the language of the specification.

    """

    def on_step(self, sut, kind, symbol, output):
        verdict = self._observe(symbol, output)
        if verdict.violated:
            raise exceptions.PropertyViolated(self._report(sut, symbol, output, verdict.position))


class ViolationRecorder(_TraceWatcher):
    """Passive monitor noting the first violating step without interfering with the query.

    Attributes
    ----------
    report : BugReport or None
        The first recorded violation.

    """

    def __init__(self, spec: SpecDfa, monitor_testing=False):
        super().__init__(spec, monitor_testing)
        self.report = None

    @property
    def first_violation_step(self) -> typing.Optional[int]:
        return None if self.report is None else self.report.step

    def wants(self, kind):
        return self.report is None and super().wants(kind)

    def on_step(self, sut, kind, symbol, output):
        if self.state.violated:
            return
        verdict = self._observe(symbol, output)
        if verdict.violated:
            self.report = self._report(sut, symbol, output, verdict.position)

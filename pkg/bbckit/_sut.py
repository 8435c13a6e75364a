import abc
import typing
import logging
import contextlib

from . import exceptions
from .automata import MealyMachine
from .types import Alphabet, Budget, QueryKind, QueryStats, Symbol, Trace, Word


logger = logging.getLogger(__name__)


class QueryObserver(abc.ABC):
    """Receives every step of the queries it is interested in. :py:meth:`on_step` may raise
    :py:class:`bbckit.PropertyViolated`; the running query is then aborted once every observer has seen
    that step.

    Attributes
    ----------
    kinds : frozenset
        The :py:class:`bbckit.types.QueryKind` values this observer wants to see.

    """

    kinds = frozenset([QueryKind.LEARNING])

    def wants(self, kind: QueryKind) -> bool:
        return kind in self.kinds

    def on_query_start(self, sut, kind: QueryKind):
        pass

    @abc.abstractmethod
    def on_step(self, sut, kind: QueryKind, symbol: Symbol, output: Word):
        raise NotImplementedError

    def on_query_end(self, sut, kind: QueryKind, trace: Trace):
        pass


class QuerySession(object):
    """One reset-then-inputs execution, driven step by step. Obtained from
    :py:meth:`SystemUnderTest.session`.

    """

    def __init__(self, sut, kind, observers):
        self.sut = sut
        self.kind = kind
        self._observers = observers
        self._steps = []

    def send(self, symbol) -> Word:
        symbol = Symbol(symbol)
        self.sut.inputs.check_word((symbol,))
        output = self.sut.step(symbol)
        self.sut.stats.count_step(self.kind)
        self._steps.append((symbol, output))
        # Every observer sees the step before the query is aborted.
        violated = []
        for observer in self._observers:
            try:
                observer.on_step(self.sut, self.kind, symbol, output)
            except exceptions.PropertyViolated as e:
                violated.extend(e.reports)
        if violated:
            raise exceptions.PropertyViolated(*violated, trace=self.trace())
        return output

    def trace(self) -> Trace:
        return Trace(tuple(self._steps))


class SystemUnderTest(abc.ABC):
    """An abstract system under test with reset semantics. Every query starts from the initial state and is
    accounted in :py:attr:`stats`. Subclasses implement :py:meth:`reset` and :py:meth:`step`.

    Attributes
    ----------
    budget : bbckit.types.Budget
        The limits checked before every query.
    stats : bbckit.types.QueryStats
        Counters of all queries and steps executed so far.
    observers : list
        Attached :py:class:`QueryObserver` instances, notified in attachment order.

    """

    def __init__(self, budget: Budget = None):
        self.budget = budget or Budget()
        self.stats = QueryStats()
        self.observers = []

    @property
    @abc.abstractmethod
    def inputs(self) -> Alphabet:
        raise NotImplementedError

    @property
    @abc.abstractmethod
    def outputs(self) -> Alphabet:
        raise NotImplementedError

    @abc.abstractmethod
    def reset(self):
        raise NotImplementedError

    @abc.abstractmethod
    def step(self, symbol: Symbol) -> Word:
        raise NotImplementedError

    @property
    def global_step(self) -> int:
        """Number of steps executed so far, learning and testing together."""
        return self.stats.total_steps

    def check_budget(self, requested_steps: int):
        """Raises :py:class:`bbckit.BudgetExhausted` if ``requested_steps`` more steps would cross the step
        budget.

        """
        max_steps = self.budget.max_steps
        if max_steps is not None and self.stats.total_steps + requested_steps > max_steps:
            raise exceptions.BudgetExhausted(max_steps, self.stats.total_steps, requested_steps)

    def add_observer(self, observer: QueryObserver):
        if observer not in self.observers:
            self.observers.append(observer)

    def remove_observer(self, observer: QueryObserver):
        if observer in self.observers:
            self.observers.remove(observer)

    @contextlib.contextmanager
    def observing(self, *observers):
        for observer in observers:
            self.add_observer(observer)
        try:
            yield self
        finally:
            for observer in observers:
                self.remove_observer(observer)

    @contextlib.contextmanager
    def session(self, kind=QueryKind.LEARNING, expected_steps=0, enforce_budget=True):
        """Starts a query: checks the budget against ``expected_steps``, counts the query and resets the
        system. Yields a :py:class:`QuerySession` whose :py:meth:`QuerySession.send` executes one step.

        """
        if enforce_budget:
            self.check_budget(expected_steps)
        kind = QueryKind(kind)
        self.stats.count_query(kind)
        observers = [observer for observer in self.observers if observer.wants(kind)]
        for observer in observers:
            observer.on_query_start(self, kind)
        self.reset()
        session = QuerySession(self, kind, observers)
        yield session
        trace = session.trace()
        for observer in observers:
            observer.on_query_end(self, kind, trace)

    def query(self, inputs, kind=QueryKind.LEARNING, enforce_budget=True) -> Trace:
        """Resets the system, sends ``inputs`` and returns the observed trace.

        Parameters
        ----------
        inputs : iterable
            The input word.
        kind : bbckit.types.QueryKind, optional
            Whether this is a learning or a testing query. Defaults to learning.
        enforce_budget : bool, optional
            When False the step budget is not checked, e.g. for the confirmation queries of the final model
            checking sweep.

        Raises
        ------
        bbckit.BudgetExhausted
            Before the query starts, if it would cross the step budget.
        bbckit.PropertyViolated
            After the violating step, if an aborting monitor is attached.

        """
        inputs = tuple(Symbol(symbol) for symbol in inputs)
        self.inputs.check_word(inputs)
        with self.session(kind, len(inputs), enforce_budget) as session:
            for symbol in inputs:
                session.send(symbol)
        trace = session.trace()
        logger.debug("%s query %s", kind.value, trace)
        return trace


class SimulatedSUT(SystemUnderTest):
    """A system under test simulated from a complete Mealy machine.

    Attributes
    ----------
    machine : bbckit.automata.MealyMachine
        The simulated machine.

    """

    def __init__(self, machine: MealyMachine, budget: Budget = None):
        super().__init__(budget)
        if not machine.is_complete():
            raise exceptions.SutConfigurationError(
                "A simulated system under test needs a complete Mealy machine."
            )
        self.machine = machine
        self._state = machine.initial

    @classmethod
    def from_dot(cls, path, budget: Budget = None) -> "SimulatedSUT":
        from .dot import load_mealy
        return cls(load_mealy(path), budget)

    @property
    def inputs(self) -> Alphabet:
        return self.machine.inputs

    @property
    def outputs(self) -> Alphabet:
        return self.machine.outputs

    def reset(self):
        self._state = self.machine.initial

    def step(self, symbol: Symbol) -> Word:
        step = self.machine.step(self._state, symbol)
        if step is None:
            raise exceptions.SutConfigurationError(f"No transition on {symbol!s} in state {self._state}.")
        self._state, output = step
        return output

    def __repr__(self):
        return f"<SimulatedSUT states={self.machine.num_states} steps={self.stats.total_steps}>"

import abc
import typing
import dataclasses

from .._sut import SystemUnderTest
from ..automata import MealyMachine
from ..types import QueryStats, Trace, Word


@dataclasses.dataclass(frozen=True, eq=False)
class Hypothesis(object):
    """A complete Mealy model of the system under test produced by a learner. Hypotheses compare and hash by
    identity so automata derived from them can be cached.

    Attributes
    ----------
    machine : bbckit.automata.MealyMachine
        The hypothesis, complete over the inputs of the system.
    access_words : tuple
        Access word of every hypothesis state, indexed by state.
    index : int
        One based number of the hypothesis within its learner.

    """

    machine: MealyMachine
    access_words: typing.Tuple[Word, ...]
    index: int = 1

    @property
    def num_states(self) -> int:
        return self.machine.num_states

    def predict(self, inputs: Word) -> Trace:
        return self.machine.run(inputs)

    def __repr__(self):
        return f"<Hypothesis {self.index} states={self.num_states}>"


class Learner(abc.ABC):
    """An abstract active learner of Mealy machines. Implementations talk to the system under test through
    learning queries only.

    Attributes
    ----------
    sut : bbckit.SystemUnderTest
        The system being learned.
    stats : bbckit.types.QueryStats
        The queries and steps this learner issued.

    """

    def __init__(self, sut: SystemUnderTest):
        self.sut = sut
        self.stats = QueryStats()

    @property
    @abc.abstractmethod
    def hypothesis(self) -> typing.Optional[Hypothesis]:
        """The latest hypothesis, or None before the first :py:meth:`refine`."""
        raise NotImplementedError

    @abc.abstractmethod
    def refine(self) -> Hypothesis:
        """Learns until the observations determine a hypothesis and returns it.

        Raises
        ------
        bbckit.BudgetExhausted
            When the step budget of the system under test ends.

        """
        raise NotImplementedError

    @abc.abstractmethod
    def process_counterexample(self, trace: Trace):
        """Incorporates ``trace``, observed on the system, on which the current hypothesis is wrong.

        Raises
        ------
        bbckit.NotACounterexample
            When the hypothesis already predicts ``trace``.

        """
        raise NotImplementedError

    @abc.abstractmethod
    def add_observation(self, trace: Trace):
        """Records ``trace``, observed on the system outside this learner's own queries, e.g. a query that a
        runtime monitor cut short.

        """
        raise NotImplementedError

    def output_query_count(self) -> QueryStats:
        return self.stats.snapshot()

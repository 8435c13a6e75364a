import enum
import typing
import dataclasses

from .symbols import Symbol, Word, format_word


class QueryKind(enum.Enum):
    LEARNING = "learning"
    TESTING = "testing"


@dataclasses.dataclass(frozen=True)
class Trace(object):
    """Alternating record of inputs and the output word each input produced.

    Operations
    ----------
    len(x)
        Number of inputs in the trace.
    iter(x)
        Iterates ``(input, output_word)`` steps.
    x == y
        Checks if two traces hold the same steps.

    Attributes
    ----------
    steps : tuple
        ``(input, output_word)`` pairs in the order they happened.

    """

    steps: typing.Tuple[typing.Tuple[Symbol, Word], ...] = ()

    @classmethod
    def from_pairs(cls, pairs) -> "Trace":
        return cls(tuple((Symbol(i), tuple(Symbol(o) for o in out)) for i, out in pairs))

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __str__(self):
        return " ".join(f"{i}/{','.join(out)}" for i, out in self.steps) or "ε"

    @property
    def inputs(self) -> Word:
        return tuple(i for i, _ in self.steps)

    @property
    def outputs(self) -> typing.Tuple[Word, ...]:
        return tuple(out for _, out in self.steps)

    def interleave(self) -> Word:
        """The word ``i1 w1 i2 w2 ...`` over inputs and outputs."""
        result = []
        for i, out in self.steps:
            result.append(i)
            result.extend(out)
        return tuple(result)

    def prefix(self, length: int) -> "Trace":
        return Trace(self.steps[:length])

    def extend(self, symbol, output) -> "Trace":
        return Trace(self.steps + ((symbol, tuple(output)),))

    def describe(self) -> str:
        return format_word(self.interleave())


@dataclasses.dataclass
class QueryStats(object):
    """Counters of every query and step executed on a system under test. A step is one input symbol sent;
    outputs are free.

    Attributes
    ----------
    learning_queries : int
    testing_queries : int
    learning_steps : int
    testing_steps : int
    bug_detection_step : int or None
        Global step index at which the first bug was detected. Set once.

    """

    learning_queries: int = 0
    testing_queries: int = 0
    learning_steps: int = 0
    testing_steps: int = 0
    bug_detection_step: typing.Optional[int] = None

    @property
    def total_queries(self) -> int:
        return self.learning_queries + self.testing_queries

    @property
    def total_steps(self) -> int:
        return self.learning_steps + self.testing_steps

    def count_query(self, kind: QueryKind):
        if kind is QueryKind.LEARNING:
            self.learning_queries += 1
        else:
            self.testing_queries += 1

    def count_step(self, kind: QueryKind):
        if kind is QueryKind.LEARNING:
            self.learning_steps += 1
        else:
            self.testing_steps += 1

    def mark_bug(self, step: int):
        if self.bug_detection_step is None:
            self.bug_detection_step = step

    def snapshot(self) -> "QueryStats":
        return dataclasses.replace(self)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class Budget(object):
    """Limits imposed on a run.

    Attributes
    ----------
    max_steps : int or None
        Cap on the total number of input symbols sent, learning and testing steps together.
    max_testing_queries_per_round : int or None
        Cap on the testing queries of one conformance round.

    """

    max_steps: typing.Optional[int] = None
    max_testing_queries_per_round: typing.Optional[int] = None

    def __post_init__(self):
        for name in ("max_steps", "max_testing_queries_per_round"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"Budget {name} must be positive, got {value}.")

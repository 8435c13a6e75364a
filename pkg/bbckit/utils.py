"""Few utility functions and decorators."""

import functools

import numpy

from . import exceptions


class Switch(object):
    """A boolean read from configuration text, written back as ``on``/``off``."""

    TRUTHY = ("on", "true", "yes", "1")
    FALSY = ("off", "false", "no", "0")

    def __init__(self, value):
        self.value = bool(value)

    def __bool__(self):
        return self.value

    def __str__(self):
        return "on" if self else "off"

    @classmethod
    def from_string(cls, value):
        if value.strip().lower() in cls.TRUTHY:
            return cls(True)
        if value.strip().lower() in cls.FALSY:
            return cls(False)
        raise ValueError(f"Expected one of {cls.TRUTHY + cls.FALSY}, got {value!r}.")


def switch(value) -> bool:
    if isinstance(value, str):
        return bool(Switch.from_string(value))
    return bool(Switch(value))


def make_rng(seed) -> numpy.random.Generator:
    """Every stochastic component draws from its own generator seeded here, so runs are reproducible."""
    return numpy.random.default_rng(seed)


def geometric_length(rng: numpy.random.Generator, mean: float) -> int:
    """Draws ``k >= 0`` with ``P(k) = (1 / (1 + mean)) * (mean / (1 + mean)) ** k``, whose mean is ``mean``."""
    # numpy's geometric distribution counts trials, starting at 1.
    return int(rng.geometric(1.0 / (1.0 + mean))) - 1


def choose(rng: numpy.random.Generator, items):
    """Uniform choice from a non empty sequence, keeping the item's own type."""
    return items[int(rng.integers(len(items)))]


# Decorators.

def requires_complete(operation):
    """A decorator for automata operations which raises :py:class:`bbckit.IncompleteAutomaton` if any
    automaton passed positionally has a partial transition function.

    """

    @functools.wraps(operation)
    def wrapper(*args, **kwargs):
        for argument in args:
            is_complete = getattr(argument, "is_complete", None)
            if is_complete is not None and not is_complete():
                raise exceptions.IncompleteAutomaton(
                    f"{operation.__name__} requires a complete automaton; complete it first."
                )
        return operation(*args, **kwargs)

    return wrapper

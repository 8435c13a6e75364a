"""Crafted systems and properties used by the tests, the documentation and ``bbckit generate``."""

import typing

import numpy

from . import utils
from .automata import Dfa, DfaBuilder, MealyBuilder, MealyMachine
from .specs import SpecDfa, bug_automaton_to_spec, io_alphabet, validate_spec
from .types import Alphabet, AlphabetKind, Symbol


class Benchmark(typing.NamedTuple):
    """A system together with its properties.

    Attributes
    ----------
    name : str
    machine : bbckit.automata.MealyMachine
    specs : tuple
        The properties as :py:class:`bbckit.SpecDfa`.
    sources : dict
        Property name to ``(kind, dfa)`` where kind is ``spec`` or ``bug_spec``; the raw automata as they
        would be written to files.

    """

    name: str
    machine: MealyMachine
    specs: typing.Tuple[SpecDfa, ...]
    sources: typing.Dict[str, typing.Tuple[str, Dfa]]


def _rng(seed) -> numpy.random.Generator:
    return seed if isinstance(seed, numpy.random.Generator) else utils.make_rng(seed)


def _alphabet(symbols, prefix, kind) -> Alphabet:
    if isinstance(symbols, int):
        symbols = [f"{prefix}{index}" for index in range(symbols)]
    return Alphabet(symbols, kind)


def random_mealy(num_states, inputs=2, outputs=2, seed=0, max_output_length=1) -> MealyMachine:
    """A complete Mealy machine whose states are all reachable. ``inputs`` and ``outputs`` are alphabets,
    symbol lists or sizes.

    """
    rng = _rng(seed)
    inputs = _alphabet(inputs, "i", AlphabetKind.INPUT)
    outputs = _alphabet(outputs, "o", AlphabetKind.OUTPUT)
    targets = {}
    for state in range(1, num_states):
        free = [(source, symbol) for source in range(state) for symbol in inputs if (source, symbol) not in targets]
        targets[utils.choose(rng, free)] = state
    builder = MealyBuilder(inputs, outputs)
    builder.add_states(num_states)
    for source in range(num_states):
        for symbol in inputs:
            target = targets.get((source, symbol))
            if target is None:
                target = int(rng.integers(num_states))
            length = int(rng.integers(1, max_output_length + 1))
            builder.add_transition(source, symbol, target, [utils.choose(rng, outputs.symbols) for _ in range(length)])
    return builder.build(0)


def random_dfa(num_states, sigma=2, seed=0, density=0.7, final_probability=0.5) -> Dfa:
    """A partial DFA where each transition exists with probability ``density``."""
    rng = _rng(seed)
    sigma = _alphabet(sigma, "a", AlphabetKind.MIXED)
    builder = DfaBuilder(sigma)
    for _ in range(num_states):
        builder.add_state(final=bool(rng.random() < final_probability))
    for source in range(num_states):
        for symbol in sigma:
            if rng.random() < density:
                builder.add_transition(source, symbol, int(rng.integers(num_states)))
    return builder.build(0)


def random_spec(inputs: Alphabet, outputs: Alphabet, num_states=3, seed=0, density=0.8, name="random") -> SpecDfa:
    """A random all final partial DFA over I ∪ O, which is always a specification."""
    rng = _rng(seed)
    builder = DfaBuilder(io_alphabet(inputs, outputs))
    for _ in range(num_states):
        builder.add_state(final=True)
    for source in range(num_states):
        for symbol in builder.sigma:
            if rng.random() < density:
                builder.add_transition(source, symbol, int(rng.integers(num_states)))
    return validate_spec(builder.build(0), inputs, outputs, name)


# Properties.

def forbid_output_spec(inputs: Alphabet, outputs: Alphabet, forbidden, name=None) -> SpecDfa:
    """Never output ``forbidden``."""
    forbidden = Symbol(forbidden)
    builder = DfaBuilder(io_alphabet(inputs, outputs))
    builder.add_state(final=True)
    for symbol in builder.sigma:
        if symbol != forbidden:
            builder.add_transition(0, symbol, 0)
    return validate_spec(builder.build(0), inputs, outputs, name or f"never-{forbidden}")


def forbid_after_input_spec(inputs: Alphabet, outputs: Alphabet, trigger, forbidden, name=None) -> SpecDfa:
    """Never output ``forbidden`` in response to input ``trigger``."""
    trigger, forbidden = Symbol(trigger), Symbol(forbidden)
    builder = DfaBuilder(io_alphabet(inputs, outputs))
    idle, triggered = builder.add_state(final=True), builder.add_state(final=True)
    for symbol in inputs:
        target = triggered if symbol == trigger else idle
        builder.add_transition(idle, symbol, target)
        builder.add_transition(triggered, symbol, target)
    for symbol in outputs:
        builder.add_transition(idle, symbol, idle)
        if symbol != forbidden:
            builder.add_transition(triggered, symbol, triggered)
    return validate_spec(builder.build(0), inputs, outputs, name or f"no-{forbidden}-after-{trigger}")


def after_bug_automaton(inputs: Alphabet, outputs: Alphabet, first, then) -> Dfa:
    """A bug automaton accepting every word in which ``then`` occurs after ``first``."""
    first, then = Symbol(first), Symbol(then)
    builder = DfaBuilder(io_alphabet(inputs, outputs))
    start, seen, bug = builder.add_state(), builder.add_state(), builder.add_state(final=True)
    for symbol in builder.sigma:
        builder.add_transition(start, symbol, seen if symbol == first else start)
        builder.add_transition(seen, symbol, bug if symbol == then else seen)
        builder.add_transition(bug, symbol, bug)
    return builder.build(start)


# Systems.

def crash_machine() -> Benchmark:
    """Input ``x`` in the initial state crashes."""
    builder = MealyBuilder(["x", "y"], ["ok", "crash"])
    builder.add_states(2)
    builder.add_transition(0, "x", 1, ["crash"])
    builder.add_transition(0, "y", 0, ["ok"])
    builder.add_transition(1, "x", 1, ["ok"])
    builder.add_transition(1, "y", 0, ["ok"])
    machine = builder.build(0)
    spec = forbid_output_spec(machine.inputs, machine.outputs, "crash")
    return Benchmark("crash", machine, (spec,), {spec.name: ("spec", spec.dfa)})


def combination_lock(secret_length=8, num_inputs=4, ring_size=120, seed=0) -> Benchmark:
    """A lock opened by a secret digit sequence. Every correct digit answers its progress ``p1 .. pn`` and a
    wrong one answers ``nok`` and relocks. Once unlocked, ``d0`` answers ``open`` (the bug), ``d1`` enters a
    ring of ``ring_size`` states that make the full model large, and other digits relock.

    """
    if num_inputs < 3:
        raise ValueError("The lock needs at least three digits.")
    rng = _rng(seed)
    secret = [int(digit) for digit in rng.integers(num_inputs, size=secret_length)]
    digits = [f"d{index}" for index in range(num_inputs)]
    outputs = (
        ["nok"] + [f"p{index}" for index in range(1, secret_length + 1)]
        + ["open", "tick"] + [f"r{index}" for index in range(ring_size)]
    )
    builder = MealyBuilder(digits, outputs)
    builder.add_states(secret_length + 1 + ring_size)
    unlocked = secret_length
    ring = [secret_length + 1 + index for index in range(ring_size)]
    for state in range(secret_length):
        for index, digit in enumerate(digits):
            if index == secret[state]:
                builder.add_transition(state, digit, state + 1, [f"p{state + 1}"])
            else:
                builder.add_transition(state, digit, 0, ["nok"])
    builder.add_transition(unlocked, digits[0], unlocked, ["open"])
    builder.add_transition(unlocked, digits[1], ring[0], ["tick"])
    for position, state in enumerate(ring):
        builder.add_transition(state, digits[0], ring[(position + 1) % ring_size], ["tick"])
        builder.add_transition(state, digits[1], state, [f"r{position}"])
    for state in [unlocked] + ring:
        for digit in digits[2:]:
            builder.add_transition(state, digit, 0, ["nok"])
    machine = builder.build(0)

    inputs, outputs = machine.inputs, machine.outputs
    bug = after_bug_automaton(inputs, outputs, "p1", "open")
    specs = (
        forbid_output_spec(inputs, outputs, "open", "never-open"),
        forbid_after_input_spec(inputs, outputs, digits[0], "open", "no-open-after-d0"),
        bug_automaton_to_spec(bug, inputs, outputs, "no-open-after-progress"),
    )
    sources = {specs[0].name: ("spec", specs[0].dfa), specs[1].name: ("spec", specs[1].dfa),
               specs[2].name: ("bug_spec", bug)}
    return Benchmark("lock", machine, specs, sources)


def shallow_bug_machine(num_states=200) -> Benchmark:
    """A counter of ``num_states - 1`` states that is expensive to learn, next to a bug two inputs away
    from the initial state: ``c`` then ``c`` crashes.

    """
    if num_states < 3:
        raise ValueError("The machine needs at least three states.")
    builder = MealyBuilder(["a", "b", "c"], ["x", "y", "crash"])
    builder.add_states(num_states)
    counter = num_states - 1
    special = counter
    for state in range(counter):
        last = state == counter - 1
        builder.add_transition(state, "a", (state + 1) % counter, ["y" if last else "x"])
        builder.add_transition(state, "b", 0, ["x"])
        builder.add_transition(state, "c", special if state == 0 else state, ["x"])
    builder.add_transition(special, "a", 1 % counter, ["x"])
    builder.add_transition(special, "b", 0, ["x"])
    builder.add_transition(special, "c", 0, ["crash"])
    machine = builder.build(0)
    spec = forbid_output_spec(machine.inputs, machine.outputs, "crash")
    return Benchmark("shallow", machine, (spec,), {spec.name: ("spec", spec.dfa)})


GENERATORS = {
    "crash": lambda seed: crash_machine(),
    "lock": lambda seed: combination_lock(seed=seed),
    "shallow": lambda seed: shallow_bug_machine(),
}

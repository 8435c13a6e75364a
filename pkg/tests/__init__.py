from bbckit.automata import DfaBuilder, MealyBuilder
from bbckit.specs import io_alphabet, validate_spec
from bbckit.types import Alphabet, AlphabetKind


def get_word_machine():
    """``q --i/o,o--> q'``, ``q --j/o--> q'`` and ``q' --j/--> q'``; partial, as drawn in the literature."""
    builder = MealyBuilder(["i", "j"], ["o"])
    builder.add_states(2)
    builder.add_transition(0, "i", 1, ["o", "o"])
    builder.add_transition(0, "j", 1, ["o"])
    builder.add_transition(1, "j", 1, [])
    return builder.build(0)


def get_complete_word_machine():
    """The machine above, completed with ``q' --i/o--> q`` so it can be simulated."""
    builder = MealyBuilder(["i", "j"], ["o"])
    builder.add_states(2)
    builder.add_transition(0, "i", 1, ["o", "o"])
    builder.add_transition(0, "j", 1, ["o"])
    builder.add_transition(1, "i", 0, ["o"])
    builder.add_transition(1, "j", 1, [])
    return builder.build(0)


def get_go_machine(crash_first=False):
    """One input ``go``; answers ``ok``, or ``crash`` on the very first ``go`` when ``crash_first``."""
    builder = MealyBuilder(["go"], ["ok", "crash"])
    builder.add_states(2)
    builder.add_transition(0, "go", 1, ["crash" if crash_first else "ok"])
    builder.add_transition(1, "go", 1, ["ok"])
    return builder.build(0)


def get_dfa(sigma, edges, finals, num_states=None, initial=0):
    """A DFA from ``(source, symbol, target)`` edges."""
    if not isinstance(sigma, Alphabet):
        sigma = Alphabet(sigma)
    builder = DfaBuilder(sigma)
    num_states = num_states or 1 + max([0] + [max(s, t) for s, _, t in edges])
    for state in range(num_states):
        builder.add_state(final=state in finals)
    for source, symbol, target in edges:
        builder.add_transition(source, symbol, target)
    return builder.build(initial)


def get_universal_spec(machine, name="anything"):
    """The specification allowing every behaviour of ``machine``'s alphabets."""
    sigma = io_alphabet(machine.inputs, machine.outputs)
    return validate_spec(
        get_dfa(sigma, [(0, symbol, 0) for symbol in sigma], {0}), machine.inputs, machine.outputs, name
    )


def inputs_of(*symbols):
    return Alphabet(symbols, AlphabetKind.INPUT)


def outputs_of(*symbols):
    return Alphabet(symbols, AlphabetKind.OUTPUT)

import itertools

import pytest

import bbckit
from bbckit import benchmarks
from bbckit.automata import (
    DfaBuilder, MealyBuilder, complement, complete, distinguishing_word, minimize_and_isomorphic, minimize_dfa,
    minimize_mealy, product, run_dfa, separating_word, shortest_accepted, state_cover, trim,
)
from bbckit.types import Alphabet, Trace, word
from bbckit.utils import make_rng

from . import get_dfa


def _words(sigma, max_length):
    for length in range(max_length + 1):
        yield from itertools.product(sigma.symbols, repeat=length)


def _random_pair(rng):
    sigma = int(rng.integers(1, 5))
    seeds = rng.integers(2 ** 31, size=2)
    first = benchmarks.random_dfa(int(rng.integers(1, 6)), sigma, int(seeds[0]))
    second = benchmarks.random_dfa(int(rng.integers(1, 6)), sigma, int(seeds[1]))
    return first, second


def _check_algebra(first, second, max_length):
    completed = complete(first)
    negated = complement(completed)
    both = product(first, second)
    minimal = minimize_dfa(first)
    accepted, accepted_by_both = [], []
    for value in _words(first.sigma, max_length):
        in_first = first.accepts(value)
        assert completed.accepts(value) == in_first
        assert negated.accepts(value) != in_first
        assert both.accepts(value) == (in_first and second.accepts(value))
        assert minimal.accepts(value) == in_first
        if in_first:
            accepted.append(value)
        if in_first and second.accepts(value):
            accepted_by_both.append(value)

    # Shortest words of automata with at most five states are shorter than five symbols.
    found = shortest_accepted(first)
    assert (found is None) == (not accepted)
    if found is not None:
        assert first.accepts(found)
        assert len(found) == min(len(value) for value in accepted)

    found = shortest_accepted(both)
    if accepted_by_both:
        assert found is not None and len(found) <= min(len(value) for value in accepted_by_both)
    if found is not None:
        assert first.accepts(found) and second.accepts(found)
    assert minimal.num_states <= first.num_states + 1


def test_algebra_agrees_with_enumeration():
    rng = make_rng(2024)
    for _ in range(60):
        first, second = _random_pair(rng)
        _check_algebra(first, second, 5)


@pytest.mark.slow
def test_algebra_agrees_with_enumeration_exhaustively():
    rng = make_rng(500)
    for _ in range(500):
        first, second = _random_pair(rng)
        _check_algebra(first, second, 8)


def test_complete_adds_sink_last():
    a = get_dfa(["a", "b"], [(0, "a", 1)], {1})
    assert run_dfa(a, word("a")) == 1 and run_dfa(a, word("b")) is None
    c = complete(a)
    sink = c.num_states - 1
    assert c.is_complete() and sink == 2
    assert c.successor(0, "b") == sink and sink not in c.finals
    assert c.successor(sink, "a") == sink


def test_complement_requires_complete():
    with pytest.raises(bbckit.IncompleteAutomaton):
        complement(get_dfa(["a"], [], {0}))


def test_product_needs_equal_alphabets():
    with pytest.raises(bbckit.AlphabetMismatch):
        product(get_dfa(["a"], [], {0}), get_dfa(["b"], [], {0}))


def test_run_rejects_foreign_symbols():
    a = get_dfa(["a"], [(0, "a", 0)], {0})
    assert a.accepts(word("a a"))
    assert run_dfa(a, word("a a")) == 0
    with pytest.raises(bbckit.AlphabetMismatch):
        a.accepts(word("b"))


def test_shortest_accepted_is_shortlex_smallest():
    a = get_dfa(["a", "b"], [(0, "b", 1), (0, "a", 2), (2, "a", 1)], {1})
    assert shortest_accepted(a) == word("b")
    assert shortest_accepted(get_dfa(["a"], [(0, "a", 0)], {0})) == ()
    assert shortest_accepted(get_dfa(["a"], [(0, "a", 1)], set())) is None


def test_trim_and_minimize():
    a = get_dfa(["a"], [(0, "a", 1), (1, "a", 2), (2, "a", 1), (0, "a", 1)], {1, 2}, num_states=4)
    assert trim(a).num_states == 3
    minimal = minimize_dfa(a)
    assert minimal.num_states == 2
    assert not minimal.accepts(()) and minimal.accepts(word("a a a"))
    assert trim(get_dfa(["a"], [(0, "a", 1)], set())).num_states == 1


def test_builder_rejects_conflicting_transitions():
    builder = DfaBuilder(Alphabet(["a"]))
    builder.add_state()
    builder.add_state()
    builder.add_transition(0, "a", 1)
    with pytest.raises(bbckit.AutomatonError):
        builder.add_transition(0, "a", 0)

    mealy = MealyBuilder(["i"], ["o"])
    mealy.add_states(1)
    mealy.add_transition(0, "i", 0, ["o"])
    with pytest.raises(bbckit.AutomatonError):
        mealy.add_transition(0, "i", 0, [])


def test_mealy_alphabets_must_be_disjoint():
    builder = MealyBuilder(["a"], ["a"])
    builder.add_states(1)
    builder.add_transition(0, "a", 0, ["a"])
    with pytest.raises(bbckit.AlphabetOverlap):
        builder.build()


def test_mealy_run_and_partiality(word_machine):
    assert word_machine.run(word("i j")) == Trace.from_pairs([("i", ["o", "o"]), ("j", [])])
    assert word_machine.state_after(word("i i")) is None
    with pytest.raises(bbckit.PartialityError):
        word_machine.run(word("j i"))
    with pytest.raises(bbckit.AlphabetMismatch):
        word_machine.run(word("k"))


def test_state_cover_and_separating_words(crash):
    machine = crash.machine
    assert state_cover(machine) == {0: (), 1: word("x")}
    assert separating_word(machine, 0, 1) == word("x")
    assert separating_word(machine, 0, 0) is None


def _always_crashing(machine):
    builder = MealyBuilder(machine.inputs, machine.outputs)
    builder.add_states(1)
    builder.add_transition(0, "x", 0, ["crash"])
    builder.add_transition(0, "y", 0, ["ok"])
    return builder.build()


def test_distinguishing_word(crash):
    machine = crash.machine
    assert distinguishing_word(machine, _always_crashing(machine)) == word("x x")
    assert distinguishing_word(machine, machine) is None
    with pytest.raises(bbckit.AlphabetMismatch):
        distinguishing_word(machine, benchmarks.random_mealy(2))


def test_minimize_mealy_merges_equivalent_states(crash):
    machine = crash.machine
    builder = MealyBuilder(machine.inputs, machine.outputs)
    builder.add_states(3)
    # State 2 is a copy of state 0.
    builder.add_transition(0, "x", 1, ["crash"])
    builder.add_transition(0, "y", 2, ["ok"])
    builder.add_transition(1, "x", 1, ["ok"])
    builder.add_transition(1, "y", 2, ["ok"])
    builder.add_transition(2, "x", 1, ["crash"])
    builder.add_transition(2, "y", 0, ["ok"])
    redundant = builder.build()
    assert minimize_mealy(redundant).num_states == 2
    assert minimize_and_isomorphic(redundant, machine)
    assert not minimize_and_isomorphic(redundant, _always_crashing(machine))


def test_mealy_minimisation_requires_complete(word_machine):
    with pytest.raises(bbckit.IncompleteAutomaton):
        minimize_mealy(word_machine)

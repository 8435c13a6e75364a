import pytest

import bbckit
from bbckit import benchmarks
from bbckit.automata import TranslatedState, dfa_to_mealy, mealy_to_dfa
from bbckit.types import word

from . import get_dfa


def test_word_machine_translation_shares_output_chains(word_machine):
    dfa = mealy_to_dfa(word_machine)
    # Giving every transition its own chain would need a fifth state for the second "o" after "i".
    assert dfa.num_states == 4
    assert dfa.finals == frozenset(range(4))
    assert list(dfa.sigma) == ["i", "j", "o"]
    assert set(dfa.transitions()) == {
        (0, "i", 2), (2, "o", 3), (3, "o", 1), (0, "j", 3), (1, "j", 1),
    }
    assert dfa.labels[3] == TranslatedState(1, word("o"))
    assert dfa.labels[3].is_auxiliary and not dfa.labels[1].is_auxiliary


def test_translation_accepts_interleaved_traces(word_machine):
    dfa = mealy_to_dfa(word_machine)
    assert dfa.accepts(word("i o o j j"))
    assert dfa.accepts(word("j o"))
    assert dfa.accepts(word("i o"))
    assert not dfa.accepts(word("i j"))
    assert not dfa.accepts(word("j o o"))


def test_translation_round_trip(word_machine):
    assert dfa_to_mealy(mealy_to_dfa(word_machine), word_machine.inputs, word_machine.outputs) == word_machine
    for seed in range(5):
        machine = benchmarks.random_mealy(6, 3, 3, seed=seed, max_output_length=3)
        assert dfa_to_mealy(mealy_to_dfa(machine), machine.inputs, machine.outputs) == machine


def test_translated_shape_is_checked(word_machine):
    # An output state with a second transition.
    broken = get_dfa(["i", "j", "o"], [(0, "i", 1), (1, "o", 0), (1, "j", 0)], {0, 1})
    with pytest.raises(bbckit.NotATranslatedMealy):
        dfa_to_mealy(broken, word_machine.inputs, word_machine.outputs)
    # An endless output chain.
    looping = get_dfa(["i", "j", "o"], [(0, "i", 1), (1, "o", 1)], {0, 1})
    with pytest.raises(bbckit.NotATranslatedMealy):
        dfa_to_mealy(looping, word_machine.inputs, word_machine.outputs)
    # The initial state emits.
    emitting = get_dfa(["i", "j", "o"], [(0, "o", 1)], {0, 1})
    with pytest.raises(bbckit.NotATranslatedMealy):
        dfa_to_mealy(emitting, word_machine.inputs, word_machine.outputs)

import pytest

import bbckit
from bbckit import benchmarks
from bbckit.specs import (
    SpecSet, SpecSource, bug_automaton_to_spec, conjoin, io_alphabet, split_io_dfa, split_pair_label,
    validate_spec, violations,
)
from bbckit.types import word

from . import get_dfa, inputs_of, outputs_of


I = inputs_of("x", "y")
O = outputs_of("ok", "crash")


def test_validate_spec_trims_nonfinal_states():
    raw = get_dfa(["x", "y", "ok", "crash"], [(0, "x", 1), (1, "ok", 0), (1, "crash", 2), (0, "y", 3)], {0, 1, 3})
    spec = validate_spec(raw, I, O, "never-crash")
    assert len(spec) == 3
    assert spec.source is SpecSource.PLAIN
    assert spec.accepts(word("x ok y"))
    assert not spec.accepts(word("x crash"))


def test_validate_spec_adds_missing_symbols():
    spec = validate_spec(get_dfa(["x"], [(0, "x", 0)], {0}), I, O)
    assert spec.sigma == io_alphabet(I, O)
    assert not spec.accepts(word("x ok"))


def test_validate_spec_rejects_non_prefix_closed():
    with pytest.raises(bbckit.NotPrefixClosed):
        validate_spec(get_dfa(["x"], [(0, "x", 1)], {1}), I, O)
    with pytest.raises(bbckit.NotPrefixClosed) as info:
        validate_spec(get_dfa(["x", "ok"], [(0, "x", 1), (1, "ok", 2)], {0, 2}), I, O)
    assert info.value.witness == (1, "ok", 2)


def test_validate_spec_rejects_foreign_symbols():
    with pytest.raises(bbckit.AlphabetMismatch):
        validate_spec(get_dfa(["boom"], [(0, "boom", 0)], {0}), I, O)


def test_violations_accept_exactly_the_forbidden_words():
    spec = benchmarks.forbid_output_spec(I, O, "crash")
    bad = violations(spec)
    assert bad.accepts(word("x crash"))
    assert bad.accepts(word("x crash y ok"))
    assert not bad.accepts(word("x ok y ok"))
    assert violations(spec) is bad


def test_bug_automaton_is_complemented():
    bug = benchmarks.after_bug_automaton(I, O, "x", "crash")
    spec = bug_automaton_to_spec(bug, I, O, "no-crash-after-x")
    assert spec.source is SpecSource.BUG_AUTOMATON
    assert spec.accepts(word("y crash y ok"))
    assert not spec.accepts(word("x ok y crash"))
    assert len(spec) == 2


def test_bug_states_must_trap():
    bug = get_dfa(["crash", "ok"], [(0, "crash", 1), (1, "ok", 0)], {1})
    with pytest.raises(bbckit.NonTrappingBugState) as info:
        bug_automaton_to_spec(bug, I, O)
    assert info.value.state == 1


def test_empty_bug_automaton_allows_everything():
    spec = bug_automaton_to_spec(get_dfa(["x"], [], set()), I, O)
    assert len(spec) == 1
    assert spec.accepts(word("x crash y ok"))


def test_split_pair_labels():
    assert split_pair_label("x/ok") == ("x", "ok")
    for label in ("x", "x/", "x/ok,crash", "a/b/c"):
        with pytest.raises(bbckit.NotAPairLabel):
            split_pair_label(label)
    with pytest.raises(bbckit.NotAPairLabel):
        split_pair_label("z/ok", I, O)


def test_split_io_dfa_shares_intermediate_states():
    pairs = get_dfa(["x/ok", "x/crash", "y/ok"], [(0, "x/ok", 0), (0, "y/ok", 0), (0, "x/crash", 1)], {0})
    spec = split_io_dfa(pairs, I, O, "pairs")
    assert spec.source is SpecSource.SPLIT_PRODUCT
    # The initial state and one intermediate state per input.
    assert len(spec) == 3
    assert spec.accepts(word("x ok y ok"))
    assert not spec.accepts(word("x crash"))
    assert not spec.accepts(word("y crash"))


def test_split_io_dfa_collects_alphabets():
    spec = split_io_dfa(get_dfa(["a/b"], [(0, "a/b", 0)], {0}))
    assert list(spec.inputs) == ["a"] and list(spec.outputs) == ["b"]


def test_spec_set_rules():
    first = benchmarks.forbid_output_spec(I, O, "crash")
    specs = SpecSet([first])
    assert specs.names == ["never-crash"] and "never-crash" in specs
    with pytest.raises(ValueError):
        specs.add(benchmarks.forbid_output_spec(I, O, "crash"))
    with pytest.raises(bbckit.AlphabetMismatch):
        specs.add(benchmarks.forbid_output_spec(inputs_of("x"), O, "crash", "other"))


def test_conjoin():
    never_crash = benchmarks.forbid_output_spec(I, O, "crash")
    never_ok_after_y = benchmarks.forbid_after_input_spec(I, O, "y", "ok")
    both = conjoin(SpecSet([never_crash, never_ok_after_y]))
    assert both.name == "conjunction" and both.source is SpecSource.CONJUNCTION
    assert both.accepts(word("x ok y"))
    assert not both.accepts(word("x crash"))
    assert not both.accepts(word("y ok"))
    with pytest.raises(bbckit.EmptySpecSet):
        conjoin(SpecSet())

import pytest

import bbckit
from bbckit.types import Alphabet, AlphabetKind, Budget, QueryKind, QueryStats, Symbol, Trace, format_word, word


def test_symbols_are_interned_strings():
    assert Symbol("go") == "go"
    assert Symbol(Symbol("go")) is Symbol("go")
    assert Symbol("go").id is Symbol("g" + "o").id
    with pytest.raises(ValueError):
        Symbol("")


def test_word_helpers():
    assert word("i o o") == word("i", "o", "o") == word(["i", "o", "o"])
    assert format_word(()) == "ε"
    assert format_word(word("i o")) == "i o"


def test_alphabet_equality_ignores_order():
    assert Alphabet(["a", "b"]) == Alphabet(["b", "a"], AlphabetKind.INPUT)
    assert Alphabet(["a"]) != Alphabet(["a", "b"])
    assert hash(Alphabet(["a", "b"])) == hash(Alphabet(["b", "a"]))


def test_alphabet_rejects_duplicates_and_unknown_symbols():
    with pytest.raises(bbckit.AlphabetMismatch):
        Alphabet(["a", "b", "a"])
    sigma = Alphabet(["a", "b"])
    assert sigma.index("b") == 1
    with pytest.raises(bbckit.AlphabetMismatch):
        sigma.index("c")
    with pytest.raises(bbckit.AlphabetMismatch):
        sigma.check_word(word("a c"))


def test_alphabet_union_and_shortlex():
    inputs = Alphabet(["i", "j"], AlphabetKind.INPUT)
    union = inputs.union(Alphabet(["o", "i"], AlphabetKind.OUTPUT))
    assert list(union) == ["i", "j", "o"]
    assert union.kind is AlphabetKind.MIXED
    assert inputs.isdisjoint(Alphabet(["o"]))
    ordered = sorted([word("j"), word("i i"), word("i"), ()], key=inputs.sort_key)
    assert ordered == [(), word("i"), word("j"), word("i i")]


def test_trace_views():
    trace = Trace.from_pairs([("i", ["o", "o"]), ("j", [])])
    assert len(trace) == 2
    assert str(trace) == "i/o,o j/"
    assert str(Trace()) == "ε"
    assert trace.inputs == word("i j")
    assert trace.outputs == (word("o o"), ())
    assert trace.interleave() == word("i o o j")
    assert trace.prefix(1) == Trace.from_pairs([("i", ["o", "o"])])
    assert trace.prefix(1).extend(Symbol("j"), ()) == trace
    assert trace.describe() == "i o o j"


def test_query_stats_counts_by_kind():
    stats = QueryStats()
    stats.count_query(QueryKind.LEARNING)
    stats.count_step(QueryKind.LEARNING)
    stats.count_query(QueryKind.TESTING)
    stats.count_step(QueryKind.TESTING)
    stats.count_step(QueryKind.TESTING)
    assert (stats.total_queries, stats.total_steps) == (2, 3)

    snapshot = stats.snapshot()
    stats.mark_bug(3)
    stats.mark_bug(7)
    assert stats.bug_detection_step == 3
    assert snapshot.bug_detection_step is None
    assert stats.to_dict()["testing_steps"] == 2


def test_budget_must_be_positive():
    assert Budget().max_steps is None
    with pytest.raises(ValueError):
        Budget(max_steps=0)
    with pytest.raises(ValueError):
        Budget(max_testing_queries_per_round=-1)

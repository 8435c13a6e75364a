import types

import pytest

import bbckit
from bbckit import QueryObserver, SimulatedSUT
from bbckit.types import Budget, QueryKind, Trace, word


class Recorder(QueryObserver):

    kinds = frozenset([QueryKind.LEARNING, QueryKind.TESTING])

    def __init__(self):
        self.events = []

    def on_query_start(self, sut, kind):
        self.events.append(("start", kind))

    def on_step(self, sut, kind, symbol, output):
        self.events.append(("step", symbol, output))

    def on_query_end(self, sut, kind, trace):
        self.events.append(("end", trace))


class Aborting(QueryObserver):

    def __init__(self, name):
        self.name = name
        self.steps = 0

    def on_step(self, sut, kind, symbol, output):
        self.steps += 1
        if "crash" in output:
            raise bbckit.PropertyViolated(types.SimpleNamespace(property_name=self.name))


def test_queries_reset_and_count(crash):
    sut = SimulatedSUT(crash.machine)
    assert sut.query(word("x x")) == Trace.from_pairs([("x", ["crash"]), ("x", ["ok"])])
    assert sut.query(word("x"), QueryKind.TESTING) == Trace.from_pairs([("x", ["crash"])])
    stats = sut.stats
    assert (stats.learning_queries, stats.learning_steps) == (1, 2)
    assert (stats.testing_queries, stats.testing_steps) == (1, 1)
    assert sut.global_step == 3


def test_empty_query_counts_without_steps(crash):
    sut = SimulatedSUT(crash.machine)
    assert sut.query(()) == Trace()
    assert (sut.stats.learning_queries, sut.stats.total_steps) == (1, 0)


def test_budget_is_checked_before_the_query(crash):
    sut = SimulatedSUT(crash.machine, Budget(max_steps=3))
    sut.query(word("y y"))
    with pytest.raises(bbckit.BudgetExhausted):
        sut.query(word("y y"))
    # Nothing of the refused query was executed.
    assert (sut.stats.learning_queries, sut.stats.total_steps) == (1, 2)
    sut.query(word("y"))
    assert sut.query(word("x x x"), enforce_budget=False).inputs == word("x x x")
    assert sut.stats.total_steps == 6


def test_foreign_inputs_are_rejected(crash):
    sut = SimulatedSUT(crash.machine)
    with pytest.raises(bbckit.AlphabetMismatch):
        sut.query(word("z"))
    assert sut.stats.total_queries == 0


def test_incomplete_machines_can_not_be_simulated(word_machine):
    with pytest.raises(bbckit.SutConfigurationError):
        SimulatedSUT(word_machine)


def test_observers_see_every_step(crash):
    sut = SimulatedSUT(crash.machine)
    recorder = Recorder()
    with sut.observing(recorder):
        sut.query(word("y"), QueryKind.TESTING)
    sut.query(word("y"))
    assert recorder.events == [
        ("start", QueryKind.TESTING), ("step", "y", ("ok",)), ("end", Trace.from_pairs([("y", ["ok"])])),
    ]
    assert sut.observers == []


def test_observers_only_get_the_kinds_they_want(crash):
    sut = SimulatedSUT(crash.machine)
    aborting = Aborting("never-crash")
    sut.add_observer(aborting)
    sut.query(word("x"), QueryKind.TESTING)
    assert aborting.steps == 0


def test_violation_aborts_after_every_observer_saw_the_step(crash):
    sut = SimulatedSUT(crash.machine)
    first, second = Aborting("first"), Aborting("second")
    sut.add_observer(first)
    sut.add_observer(second)
    with pytest.raises(bbckit.PropertyViolated) as info:
        sut.query(word("x x y"))
    assert [report.property_name for report in info.value.reports] == ["first", "second"]
    assert str(info.value) == "Property first, second violated."
    assert (first.steps, second.steps) == (1, 1)
    assert sut.stats.learning_steps == 1


def test_from_dot(tmp_path, crash):
    from bbckit.dot import dump
    dump(crash.machine, tmp_path / "crash.dot")
    sut = SimulatedSUT.from_dot(tmp_path / "crash.dot")
    assert sut.machine == crash.machine
    assert sut.inputs == crash.machine.inputs

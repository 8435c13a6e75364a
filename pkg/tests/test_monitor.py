import pytest

import bbckit
from bbckit import benchmarks
from bbckit.monitor import Discovery, MonitorState, SpecMonitor, ViolationRecorder, check_trace
from bbckit.types import QueryKind, QueryStats, Trace, word


@pytest.fixture
def never_crash(crash):
    return crash.specs[0]


def test_monitor_state_reports_one_based_positions(never_crash):
    state = MonitorState(never_crash)
    assert not state.observe("y", word("ok")).violated
    verdict = state.observe("x", word("crash"))
    assert verdict.violated and verdict.position == 4
    # Frozen on the first violation.
    assert state.observe("y", word("ok")) == verdict
    state.reset()
    assert not state.violated and state.position == 0


def test_monitor_state_clone_is_independent(never_crash):
    state = MonitorState(never_crash)
    state.observe("y", word("ok"))
    other = state.clone()
    other.observe("x", word("crash"))
    assert other.violated and not state.violated


def test_monitor_state_rejects_foreign_symbols(never_crash):
    with pytest.raises(bbckit.AlphabetMismatch):
        MonitorState(never_crash).observe("z", ())


def test_check_trace(never_crash):
    trace = Trace.from_pairs([("y", ["ok"]), ("x", ["crash"]), ("x", ["ok"])])
    report = check_trace(never_crash, trace, Discovery.MODEL_CHECK, QueryStats(), first_step=10)
    assert report.witness == trace.prefix(2)
    assert report.word == word("y ok x crash")
    assert report.position == 4
    assert report.step == 11
    assert report.discovered_by is Discovery.MODEL_CHECK
    assert check_trace(never_crash, trace.prefix(1)) is None


def test_spec_monitor_aborts_learning_queries(crash, never_crash):
    sut = bbckit.SimulatedSUT(crash.machine)
    sut.query(word("y y"))
    sut.add_observer(SpecMonitor(never_crash))
    with pytest.raises(bbckit.PropertyViolated) as info:
        sut.query(word("y x y"))
    report = info.value.report
    assert report.step == 4
    assert report.witness == Trace.from_pairs([("y", ["ok"]), ("x", ["crash"])])
    assert report.discovered_by is Discovery.MONITOR
    assert report.stats.total_steps == 4
    # Testing queries pass unless monitored too.
    sut.query(word("x"), QueryKind.TESTING)


def test_spec_monitor_on_testing_queries(crash, never_crash):
    sut = bbckit.SimulatedSUT(crash.machine)
    sut.add_observer(SpecMonitor(never_crash, monitor_testing=True))
    with pytest.raises(bbckit.PropertyViolated):
        sut.query(word("x"), QueryKind.TESTING)


def test_recorder_is_passive(crash, never_crash):
    sut = bbckit.SimulatedSUT(crash.machine)
    recorder = ViolationRecorder(never_crash)
    sut.add_observer(recorder)
    sut.query(word("y"))
    assert recorder.first_violation_step is None
    trace = sut.query(word("y x x"))
    assert len(trace) == 3
    assert recorder.first_violation_step == 3
    sut.query(word("x"))
    assert recorder.first_violation_step == 3


def test_every_monitor_sees_the_violating_step(crash):
    machine = crash.machine
    never_crash = crash.specs[0]
    after_x = benchmarks.forbid_after_input_spec(machine.inputs, machine.outputs, "x", "crash")
    sut = bbckit.SimulatedSUT(machine)
    recorder = ViolationRecorder(after_x)
    sut.add_observer(recorder)
    sut.add_observer(SpecMonitor(never_crash))
    sut.add_observer(SpecMonitor(after_x))
    with pytest.raises(bbckit.PropertyViolated) as info:
        sut.query(word("x"))
    assert [report.property_name for report in info.value.reports] == ["never-crash", "no-crash-after-x"]
    assert recorder.first_violation_step == 1

import numpy
import pytest

import bbckit
from bbckit import SimulatedSUT, benchmarks
from bbckit.automata import MealyBuilder
from bbckit.learner import Hypothesis, LSharpLearner
from bbckit.mbt import ConformanceConfig, ConformanceTester, MbtMemory, derive_and_run_test, run_mbt_suite
from bbckit.specs import validate_spec
from bbckit.types import Budget, word
from bbckit.utils import geometric_length, make_rng

from . import get_dfa, get_go_machine, get_universal_spec


def test_geometric_lengths_have_the_configured_mean():
    rng = make_rng(0)
    lengths = numpy.array([geometric_length(rng, 10.0) for _ in range(20000)])
    assert lengths.min() == 0
    assert abs(lengths.mean() - 10.0) < 0.5


def test_config_validation():
    with pytest.raises(ValueError):
        ConformanceConfig(expected_infix_length=0)
    with pytest.raises(ValueError):
        ConformanceConfig(max_tests=0)


def test_tests_of_a_single_state_hypothesis_are_pure_infixes(crash):
    learner = LSharpLearner(SimulatedSUT(crash.machine))
    hypothesis = learner.refine()
    tester = ConformanceTester(SimulatedSUT(crash.machine), ConformanceConfig(seed=3))
    for _ in range(50):
        test = tester.next_test(hypothesis)
        assert set(test) <= {"x", "y"}


def test_tests_start_with_an_access_word_and_end_separating(crash):
    hypothesis = Hypothesis(crash.machine, ((), word("x")))
    tester = ConformanceTester(SimulatedSUT(crash.machine), ConformanceConfig(expected_infix_length=1e-9))
    for _ in range(20):
        test = tester.next_test(hypothesis)
        # With empty infixes a test is an access word followed by the word separating its two states.
        assert test in (word("x"), word("x x"))


def test_same_seed_same_tests(crash):
    hypothesis = Hypothesis(crash.machine, ((), word("x")))
    first = ConformanceTester(SimulatedSUT(crash.machine), ConformanceConfig(seed=9))
    second = ConformanceTester(SimulatedSUT(crash.machine), ConformanceConfig(seed=9))
    assert [first.next_test(hypothesis) for _ in range(10)] == [second.next_test(hypothesis) for _ in range(10)]


def test_round_finds_counterexample(crash):
    sut = SimulatedSUT(crash.machine)
    hypothesis = LSharpLearner(SimulatedSUT(crash.machine)).refine()
    outcome = ConformanceTester(sut, ConformanceConfig(seed=1)).run_round(hypothesis, max_tests=1000)
    assert not outcome.passed
    assert outcome.counterexample != hypothesis.predict(outcome.counterexample.inputs)
    assert sut.stats.testing_queries == outcome.tests
    assert sut.stats.learning_queries == 0


def test_round_is_skipped_for_equivalent_hypotheses(crash):
    sut = SimulatedSUT(crash.machine)
    outcome = ConformanceTester(sut).run_round(Hypothesis(crash.machine, ((), word("x"))))
    assert outcome.passed and outcome.skipped
    assert sut.stats.total_queries == 0


def test_capped_round_passes(crash):
    sut = SimulatedSUT(crash.machine)
    outcome = ConformanceTester(sut).run_round(Hypothesis(crash.machine, ((), word("x"))), max_tests=25)
    assert outcome.passed and not outcome.skipped
    assert outcome.tests == sut.stats.testing_queries == 25


def test_mbt_never_fails_on_a_correct_system():
    machine = get_go_machine()
    spec = benchmarks.forbid_output_spec(machine.inputs, machine.outputs, "crash")
    report = run_mbt_suite(spec, SimulatedSUT(machine), 10)
    assert not report.found and report.tests == 10
    assert all(verdict.passed for verdict in report.verdicts)
    assert report.stats.testing_steps == 20


def test_mbt_reports_the_failing_position():
    machine = get_go_machine(crash_first=True)
    spec = benchmarks.forbid_output_spec(machine.inputs, machine.outputs, "crash")
    report = run_mbt_suite(spec, SimulatedSUT(machine), 10)
    assert report.found and report.tests_to_bug == 1
    assert report.verdicts[-1].position == 2
    assert report.stats.testing_queries == 1


def test_shallow_bug_is_found_by_the_first_test(crash):
    for seed in range(10):
        report = run_mbt_suite(crash.specs[0], SimulatedSUT(crash.machine), 5, seed)
        assert report.found and report.tests_to_bug == 1


def test_memory_prefers_untried_inputs(crash):
    sut = SimulatedSUT(crash.machine)
    spec = get_universal_spec(crash.machine)
    memory = MbtMemory()
    rng = make_rng(0)
    first = derive_and_run_test(spec, sut, memory, 1, rng)
    second = derive_and_run_test(spec, sut, memory, 1, rng)
    assert first.passed and second.passed
    assert {first.trace.inputs, second.trace.inputs} == {word("x"), word("y")}
    assert memory.tried(0) == {"x", "y"}


def test_disabled_inputs_end_the_test(crash):
    machine = crash.machine
    # Only a single "y" is allowed.
    spec = validate_spec(
        get_dfa(["y", "ok"], [(0, "y", 1), (1, "ok", 2)], {0, 1, 2}), machine.inputs, machine.outputs, "once"
    )
    verdict = derive_and_run_test(spec, SimulatedSUT(machine), MbtMemory(), 5, make_rng(0))
    assert verdict.passed and verdict.trace.inputs == word("y")


def test_mbt_tests_respect_the_budget(crash):
    sut = SimulatedSUT(crash.machine, Budget(max_steps=1))
    with pytest.raises(bbckit.BudgetExhausted):
        derive_and_run_test(crash.specs[0], sut, MbtMemory(), 2, make_rng(0))
    assert sut.stats.total_queries == 0
    with pytest.raises(ValueError):
        derive_and_run_test(crash.specs[0], sut, MbtMemory(), 0, make_rng(0))


def test_difference_behind_the_frontier_is_found(crash):
    # After "x y" the system enters a third state where "x" no longer crashes.
    builder = MealyBuilder(["x", "y"], ["ok", "crash"])
    builder.add_states(3)
    builder.add_transition(0, "x", 1, ["crash"])
    builder.add_transition(0, "y", 0, ["ok"])
    builder.add_transition(1, "x", 1, ["ok"])
    builder.add_transition(1, "y", 2, ["ok"])
    builder.add_transition(2, "x", 1, ["ok"])
    builder.add_transition(2, "y", 0, ["ok"])
    machine = builder.build(0)
    hypothesis = Hypothesis(crash.machine, ((), word("x")))
    for seed in range(50):
        outcome = ConformanceTester(SimulatedSUT(machine), ConformanceConfig(seed=seed)).run_round(hypothesis, 10 ** 4)
        assert not outcome.passed, seed

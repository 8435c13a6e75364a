import pytest

import bbckit
from bbckit import benchmarks
from bbckit.checker import check
from bbckit.types import word


def _secret(lock, secret_length):
    """Walks the lock digit by digit, keeping the digit that makes progress."""
    machine, state, secret = lock.machine, lock.machine.initial, []
    for position in range(1, secret_length + 1):
        digit = next(d for d in machine.inputs if machine.output(state, d) == word(f"p{position}"))
        secret.append(digit)
        state = machine.successor(state, digit)
    return tuple(secret)


def test_random_mealy_is_complete_and_reachable():
    for seed in range(10):
        machine = benchmarks.random_mealy(12, 3, 4, seed=seed, max_output_length=3)
        assert machine.is_complete()
        assert len(machine.reachable_states()) == 12
        assert all(1 <= len(output) <= 3 for _, _, _, output in machine.transitions())


def test_random_mealy_is_reproducible():
    assert benchmarks.random_mealy(8, seed=5) == benchmarks.random_mealy(8, seed=5)


def test_random_dfa_density():
    full = benchmarks.random_dfa(6, 3, seed=1, density=1.0)
    assert full.is_complete()
    assert not any(True for _ in benchmarks.random_dfa(6, 3, seed=1, density=0.0).transitions())


def test_random_spec_is_a_specification():
    machine = benchmarks.random_mealy(4, 2, 2)
    spec = benchmarks.random_spec(machine.inputs, machine.outputs, seed=9, name="p")
    assert spec.name == "p"
    assert spec.dfa.finals == frozenset(spec.dfa.states)


def test_lock_opens_with_its_secret(small_lock):
    machine = small_lock.machine
    assert machine.num_states == 3 + 1 + 3
    secret = _secret(small_lock, 3)
    trace = machine.run(secret + word("d0"))
    assert trace.outputs[-1] == word("open")
    assert [spec.name for spec in small_lock.specs] == ["never-open", "no-open-after-d0", "no-open-after-progress"]
    assert small_lock.sources["no-open-after-progress"][0] == "bug_spec"
    for spec in small_lock.specs:
        assert check(machine, spec).counterexample.inputs == secret + word("d0")


def test_lock_ring_is_entered_with_d1(small_lock):
    machine = small_lock.machine
    secret = _secret(small_lock, 3)
    trace = machine.run(secret + word("d1 d1 d0 d1 d0 d0 d1"))
    assert trace.outputs[3:] == (word("tick"), word("r0"), word("tick"), word("r1"), word("tick"), word("tick"),
                                 word("r0"))


def test_lock_needs_three_digits():
    with pytest.raises(ValueError):
        benchmarks.combination_lock(num_inputs=2)


def test_shallow_bug_machine():
    shallow = benchmarks.shallow_bug_machine(10)
    machine = shallow.machine
    assert machine.num_states == 10
    assert machine.run(word("c c")).outputs == (word("x"), word("crash"))
    # The counter only answers y after a full turn.
    assert machine.run(word("a") * 9).outputs[-1] == word("y")
    assert check(machine, shallow.specs[0]).counterexample.inputs == word("c c")
    with pytest.raises(ValueError):
        benchmarks.shallow_bug_machine(2)


def test_generators_build_their_benchmarks():
    assert set(benchmarks.GENERATORS) == {"crash", "lock", "shallow"}
    assert benchmarks.GENERATORS["lock"](3).machine == benchmarks.combination_lock(seed=3).machine
    for generate in benchmarks.GENERATORS.values():
        generated = generate(0)
        assert set(generated.sources) == {spec.name for spec in generated.specs}
        assert isinstance(generated.machine, bbckit.MealyMachine)

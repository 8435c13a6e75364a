import pytest
from click.testing import CliRunner

import bbckit
from bbckit import benchmarks
from bbckit.cli import main
from bbckit.dot import dump, parse_dfa
from bbckit.specs import io_alphabet

from . import get_dfa, get_universal_spec, get_word_machine


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def files(tmp_path, crash):
    machine = crash.machine
    dump(machine, tmp_path / "crash.dot")
    dump(crash.specs[0].dfa, tmp_path / "never-crash.dot")
    after_y = benchmarks.forbid_after_input_spec(machine.inputs, machine.outputs, "y", "crash")
    dump(after_y.dfa, tmp_path / "no-crash-after-y.dot")
    dump(benchmarks.after_bug_automaton(machine.inputs, machine.outputs, "crash", "crash"), tmp_path / "twice.dot")
    leaving = get_dfa(io_alphabet(machine.inputs, machine.outputs), [(0, "x", 1), (1, "ok", 0)], {1})
    dump(leaving, tmp_path / "leaving.dot")
    return tmp_path


def test_check_reports_violations(runner, files):
    result = runner.invoke(main, ["check", "--sut", str(files / "crash.dot"), "--spec", str(files / "never-crash.dot")])
    assert result.exit_code == 1
    assert "never-crash: violated by x" in result.output
    assert "x crash" in result.output


def test_check_satisfied(runner, files):
    result = runner.invoke(main, [
        "check", "--sut", str(files / "crash.dot"), "--spec", str(files / "no-crash-after-y.dot"),
    ])
    assert result.exit_code == 0
    assert result.output == "no-crash-after-y: satisfied\n"


def test_bad_files_exit_with_two(runner, files):
    result = runner.invoke(main, ["check", "--sut", str(files / "missing.dot"), "--spec", str(files / "never-crash.dot")])
    assert result.exit_code == 2
    assert "missing.dot" in result.output

    result = runner.invoke(main, ["check", "--sut", str(files / "crash.dot")])
    assert result.exit_code == 2

    partial = get_word_machine()
    dump(partial, files / "partial.dot")
    dump(get_universal_spec(partial).dfa, files / "anything.dot")
    for command in ("bbc", "mbt"):
        result = runner.invoke(main, [command, "--sut", str(files / "partial.dot"), "--spec", str(files / "anything.dot")])
        assert result.exit_code == 2
        assert "partial.dot" in result.output and "complete" in result.output
    result = runner.invoke(main, ["check", "--sut", str(files / "partial.dot"), "--spec", str(files / "anything.dot")])
    assert result.exit_code == 0


def test_convert_bug_automaton(runner, files):
    result = runner.invoke(main, ["convert", str(files / "twice.dot"), "--bug-automaton", "--sut", str(files / "crash.dot")])
    assert result.exit_code == 0
    spec = parse_dfa(result.output)
    assert spec.accepts(bbckit.types.word("x crash y ok"))
    assert not spec.accepts(bbckit.types.word("x crash y ok x crash"))


def test_convert_rejects_non_trapping_bug_states(runner, files):
    result = runner.invoke(main, [
        "convert", str(files / "leaving.dot"), "--bug-automaton", "--inputs", "x,y", "--outputs", "ok,crash",
    ])
    assert result.exit_code == 2
    assert "leaving.dot" in result.output


def test_convert_needs_a_kind(runner, files):
    result = runner.invoke(main, ["convert", str(files / "twice.dot")])
    assert result.exit_code == 2


def test_bbc(runner, files):
    args = ["bbc", "--sut", str(files / "crash.dot"), "--spec", str(files / "never-crash.dot")]
    result = runner.invoke(main, args)
    assert result.exit_code == 0
    assert "never-crash: bug at step 1 (monitor)" in result.output
    assert runner.invoke(main, args + ["--fail-on-bug"]).exit_code == 1

    result = runner.invoke(main, args + ["--monitor", "off", "--tree-out", str(files / "tree.dot")])
    assert "(model-check-confirmation)" in result.output
    assert "hypotheses: 1" in result.output
    assert (files / "tree.dot").read_text(encoding="utf-8").startswith("digraph")


def test_bbc_with_unsatisfiable_budget(runner, files):
    result = runner.invoke(main, [
        "bbc", "--sut", str(files / "crash.dot"), "--spec", str(files / "never-crash.dot"),
        "--monitor", "off", "--step-budget", "1",
    ])
    assert result.exit_code == 0
    assert "never-crash: unresolved" in result.output
    assert "step budget exhausted" in result.output


def test_mbt(runner, files):
    result = runner.invoke(main, [
        "mbt", "--sut", str(files / "crash.dot"), "--spec", str(files / "never-crash.dot"), "--max-tests", "5",
    ])
    assert result.exit_code == 0
    assert "never-crash: bug after 1 of 5 tests" in result.output


def test_generate_then_experiment(runner, tmp_path):
    out = tmp_path / "crash"
    result = runner.invoke(main, ["generate", "crash", "--out", str(out)])
    assert result.exit_code == 0
    assert (out / "crash.dot").exists() and (out / "never-crash.dot").exists()
    assert (out / "experiment.cfg").read_text(encoding="utf-8") == "sut = crash.dot\nspec = never-crash.dot\n"

    result = runner.invoke(main, [
        "experiment", str(out / "experiment.cfg"), "--out", str(tmp_path / "results"), "--seeds", "1", "--workers", "1",
    ])
    assert result.exit_code == 0
    assert "3 rows written" in result.output
    assert (tmp_path / "results" / "summary.csv").exists()


def test_version(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert bbckit.__version__ in result.output

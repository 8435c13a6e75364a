"""The ``bbckit`` command line."""

import os
import sys
import logging
import pathlib

import click

from . import __version__, configs, exceptions
from .benchmarks import GENERATORS
from .checker import check
from .dot import dump, load_dfa, load_mealy, serialize
from .engine import BbcConfig, BlackBoxChecker, PropertyStatus, run_bbc
from .experiment import ExperimentConfig, SpecEntry, load_spec, run_experiment
from .mbt import run_mbt_suite
from .specs import SpecSet, bug_automaton_to_spec, conjoin, split_io_dfa
from .types import Alphabet, AlphabetKind, format_word
from ._sut import SimulatedSUT


class CliError(click.ClickException):
    """Parse and validation failures; they exit with status 2 like usage errors."""

    exit_code = 2


def _fail(path, error):
    raise CliError(f"{path}: {error}" if path is not None else str(error)) from error


def _load_machine(path, simulated=True):
    """Loads a machine file; machines that are run as a system under test must be complete."""
    try:
        machine = load_mealy(path)
        if simulated and not machine.is_complete():
            raise exceptions.SutConfigurationError(
                "A simulated system under test needs a complete Mealy machine."
            )
    except (exceptions.BbcKitException, OSError) as e:
        _fail(path, e)
    return machine


def _load_specs(machine, specs, bug_specs, split_specs, add_conjunction=False) -> SpecSet:
    entries = (
        [SpecEntry("spec", pathlib.Path(path)) for path in specs]
        + [SpecEntry("bug_spec", pathlib.Path(path)) for path in bug_specs]
        + [SpecEntry("split_spec", pathlib.Path(path)) for path in split_specs]
    )
    if not entries:
        raise click.UsageError("Give at least one --spec, --bug-spec or --split-spec.")
    loaded = SpecSet(inputs=machine.inputs, outputs=machine.outputs)
    for entry in entries:
        try:
            loaded.add(load_spec(entry, machine))
        except (exceptions.BbcKitException, OSError, ValueError) as e:
            _fail(entry.path, e)
    if add_conjunction and len(loaded) > 1:
        loaded.add(conjoin(loaded))
    return loaded


def spec_options(command):
    for option in reversed([
        click.option("--sut", "sut_path", required=True, type=click.Path(dir_okay=False),
                     help="Mealy machine of the system under test, in DOT."),
        click.option("--spec", "specs", multiple=True, type=click.Path(dir_okay=False),
                     help="Specification DFA over inputs and outputs. Repeatable."),
        click.option("--bug-spec", "bug_specs", multiple=True, type=click.Path(dir_okay=False),
                     help="Bug automaton, complemented into a specification. Repeatable."),
        click.option("--split-spec", "split_specs", multiple=True, type=click.Path(dir_okay=False),
                     help="DFA over input/output pair labels. Repeatable."),
    ]):
        command = option(command)
    return command


@click.group()
@click.version_option(__version__, prog_name="bbckit")
@click.option("-v", "--verbose", count=True, help="Log more; repeat for debug output.")
def main(verbose):
    """Black box checking of systems modelled as Mealy machines."""
    level = logging.WARNING if not verbose else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@main.command("check")
@spec_options
def cmd_check(sut_path, specs, bug_specs, split_specs):
    """Model check a known machine against its properties. Exits 1 when one is violated."""
    machine = _load_machine(sut_path, simulated=False)
    loaded = _load_specs(machine, specs, bug_specs, split_specs)
    violated = False
    for spec in loaded:
        verdict = check(machine, spec)
        if verdict.satisfied:
            click.echo(f"{spec.name}: satisfied")
            continue
        violated = True
        counterexample = verdict.counterexample
        click.echo(f"{spec.name}: violated by {format_word(counterexample.inputs)}")
        click.echo(f"    {format_word(counterexample.word)}")
    sys.exit(1 if violated else 0)


def _engine_mapping(mode, seed, step_budget, max_tests, monitor, monitor_testing) -> dict:
    """The environment overlaid with the options that were given."""
    mapping = dict(os.environ)
    flags = {
        "MODE": mode, "SEED": seed, "STEP_BUDGET": step_budget, "MAX_TESTS": max_tests,
        "MONITOR": monitor, "MONITOR_TESTING": monitor_testing,
    }
    for key, value in flags.items():
        if value is not None:
            mapping[configs.BBCKIT_ENV_PREFIX + key] = str(value)
    return mapping


@main.command("bbc")
@spec_options
@click.option("--mode", type=click.Choice(configs.ENGINE_MODES), help="Defaults to bbc.")
@click.option("--seed", type=click.IntRange(min=0))
@click.option("--step-budget", type=click.IntRange(min=1))
@click.option("--max-tests", type=click.IntRange(min=1), help="Cap on the tests of one conformance round.")
@click.option("--monitor", type=click.Choice(["on", "off"]), help="Runtime monitors on learning queries.")
@click.option("--monitor-testing", type=click.Choice(["on", "off"]), help="Monitor testing queries too.")
@click.option("--conjoin", is_flag=True, help="Add the conjunction of all properties.")
@click.option("--fail-on-bug", is_flag=True, help="Exit 1 when a bug is found.")
@click.option("--tree-out", type=click.Path(dir_okay=False), help="Write the final observation tree as DOT.")
def cmd_bbc(sut_path, specs, bug_specs, split_specs, mode, seed, step_budget, max_tests, monitor,
            monitor_testing, conjoin, fail_on_bug, tree_out):
    """Learn the system while model checking its hypotheses."""
    machine = _load_machine(sut_path)
    loaded = _load_specs(machine, specs, bug_specs, split_specs, conjoin)
    try:
        config = BbcConfig.from_mapping(
            _engine_mapping(mode, seed, step_budget, max_tests, monitor, monitor_testing)
        )
    except ValueError as e:
        _fail(None, e)
    checker = BlackBoxChecker(SimulatedSUT(machine), loaded, config)
    outcome = checker.run()

    for name, result in outcome.properties.items():
        if result.status is PropertyStatus.BUG:
            report = result.report
            click.echo(f"{name}: bug at step {report.step} ({report.discovered_by.value})")
            click.echo(f"    {report.witness}")
        else:
            click.echo(f"{name}: {result.status.value}")
    stats = outcome.stats
    click.echo(
        f"queries: {stats.learning_queries} learning, {stats.testing_queries} testing; "
        f"steps: {stats.learning_steps} learning, {stats.testing_steps} testing; "
        f"hypotheses: {outcome.hypotheses_emitted}"
    )
    if outcome.budget_exhausted:
        click.echo("step budget exhausted")
    if tree_out:
        pathlib.Path(tree_out).write_text(checker.learner.tree_to_dot(), encoding="utf-8")
    sys.exit(1 if fail_on_bug and outcome.bugs else 0)


@main.command("mbt")
@spec_options
@click.option("--seed", type=click.IntRange(min=0), default=configs.DEFAULT_SEED, show_default=True)
@click.option("--max-tests", type=click.IntRange(min=1),
              help="Suite size. Defaults to ten times the queries black box checking needs for the property.")
@click.option("--max-steps", type=click.IntRange(min=1), help="Test length. Defaults to twice the spec size.")
@click.option("--fail-on-bug", is_flag=True, help="Exit 1 when a test fails.")
def cmd_mbt(sut_path, specs, bug_specs, split_specs, seed, max_tests, max_steps, fail_on_bug):
    """Standalone model-based testing from the specifications alone."""
    machine = _load_machine(sut_path)
    loaded = _load_specs(machine, specs, bug_specs, split_specs)
    found = False
    for spec in loaded:
        n_tests = max_tests
        if n_tests is None:
            reference = run_bbc(SimulatedSUT(machine), [spec], BbcConfig(seed=seed))
            n_tests = max(1, configs.MBT_SUITE_SIZE_FACTOR * reference[spec.name].stats.total_queries)
        report = run_mbt_suite(spec, SimulatedSUT(machine), n_tests, seed, max_steps)
        if report.found:
            found = True
            failing = report.verdicts[-1]
            click.echo(f"{spec.name}: bug after {report.tests_to_bug} of {n_tests} tests")
            click.echo(f"    {failing.trace}")
        else:
            click.echo(f"{spec.name}: no bug in {report.tests} tests")
    sys.exit(1 if fail_on_bug and found else 0)


@main.command("experiment")
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="results", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), help=f"Overrides {configs.BBCKIT_WORKERS_ENV}.")
@click.option("--seeds", type=click.IntRange(min=1), help="Run seeds 0 .. n-1 instead of the configured ones.")
@click.option("--step-budget", type=click.IntRange(min=1))
@click.option("--max-tests", type=click.IntRange(min=1))
def cmd_experiment(config_path, out_dir, workers, seeds, step_budget, max_tests):
    """Run an experiment matrix and write rows and summary CSV files."""
    try:
        config = ExperimentConfig.load(config_path)
    except (exceptions.BbcKitException, OSError) as e:
        _fail(config_path, e)
    if seeds is not None:
        config.seeds = tuple(range(seeds))
    if step_budget is not None:
        config.step_budget = step_budget
    if max_tests is not None:
        config.max_tests = max_tests
    result = run_experiment(config, workers, out_dir)
    rows_path = pathlib.Path(out_dir) / configs.ROWS_FILE_NAME
    summary_path = pathlib.Path(out_dir) / configs.SUMMARY_FILE_NAME
    failed = sum(1 for row in result.rows if row.error)
    click.echo(f"{len(result.rows)} rows written to {rows_path}; summary in {summary_path}")
    if failed:
        click.echo(f"{failed} rows recorded an error", err=True)


def _alphabet(value, kind):
    return Alphabet([part.strip() for part in value.split(",") if part.strip()], kind)


@main.command("convert")
@click.argument("in_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_path", type=click.Path(dir_okay=False, allow_dash=True), default="-")
@click.option("--bug-automaton", "kind", flag_value="bug_spec", help="Complement a bug automaton.")
@click.option("--split-io", "kind", flag_value="split_spec", help="Split input/output pair labels.")
@click.option("--sut", "sut_path", type=click.Path(dir_okay=False), help="Take the alphabets from this machine.")
@click.option("--inputs", help="Comma separated inputs, when no --sut is given.")
@click.option("--outputs", help="Comma separated outputs, when no --sut is given.")
def cmd_convert(in_path, out_path, kind, sut_path, inputs, outputs):
    """Turn a bug automaton or a pair-labelled DFA into a specification DFA."""
    if kind is None:
        raise click.UsageError("Choose --bug-automaton or --split-io.")
    if sut_path:
        machine = _load_machine(sut_path, simulated=False)
        inputs, outputs = machine.inputs, machine.outputs
    else:
        inputs = _alphabet(inputs, AlphabetKind.INPUT) if inputs else None
        outputs = _alphabet(outputs, AlphabetKind.OUTPUT) if outputs else None
    if kind == "bug_spec" and (inputs is None or outputs is None):
        raise click.UsageError("A bug automaton needs --sut or both --inputs and --outputs.")
    name = pathlib.Path(in_path).stem
    try:
        dfa = load_dfa(in_path)
        if kind == "bug_spec":
            spec = bug_automaton_to_spec(dfa, inputs, outputs, name)
        else:
            spec = split_io_dfa(dfa, inputs, outputs, name)
        text = serialize(spec.dfa)
    except (exceptions.BbcKitException, ValueError) as e:
        _fail(in_path, e)
    if out_path == "-":
        click.echo(text, nl=False)
    else:
        pathlib.Path(out_path).write_text(text, encoding="utf-8")


@main.command("generate")
@click.argument("benchmark", type=click.Choice(sorted(GENERATORS)))
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--seed", type=click.IntRange(min=0), default=configs.DEFAULT_SEED, show_default=True)
def cmd_generate(benchmark, out_dir, seed):
    """Write a crafted benchmark, its properties and an experiment configuration for them."""
    generated = GENERATORS[benchmark](seed)
    out_dir = pathlib.Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    dump(generated.machine, out_dir / f"{generated.name}.dot")
    lines = [f"sut = {generated.name}.dot"]
    for name, (kind, dfa) in generated.sources.items():
        dump(dfa, out_dir / f"{name}.dot")
        lines.append(f"{kind} = {name}.dot")
    (out_dir / "experiment.cfg").write_text("\n".join(lines) + "\n", encoding="utf-8")
    click.echo(f"{generated.name}: {generated.machine.num_states} states, {len(generated.sources)} properties in {out_dir}")

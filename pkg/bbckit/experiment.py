"""Experiment matrices: every SUT of a configuration file is checked against its properties for a number of
seeds, in black box checking and learn-then-check mode, with and without monitors, and optionally with
standalone model-based testing. Results are written as a rows CSV and a long-format summary CSV.

"""

import os
import csv
import time
import typing
import logging
import pathlib
import dataclasses
import concurrent.futures

import numpy

from . import configs, exceptions, utils
from .checker import check
from .dot import load_dfa, load_mealy
from .engine import BbcConfig, Mode, run_bbc, run_learn_then_check
from .mbt import run_mbt_suite
from .specs import SpecDfa, SpecSet, bug_automaton_to_spec, conjoin, split_io_dfa, validate_spec
from ._sut import SimulatedSUT


logger = logging.getLogger(__name__)


SPEC_KEYS = ("spec", "bug_spec", "split_spec")
MONITOR_ON, MONITOR_OFF = "on", "off"


@dataclasses.dataclass(frozen=True)
class SpecEntry(object):
    kind: str
    path: pathlib.Path

    @property
    def name(self) -> str:
        return self.path.stem


@dataclasses.dataclass
class SutEntry(object):
    name: str
    path: pathlib.Path
    specs: typing.List[SpecEntry] = dataclasses.field(default_factory=list)


@dataclasses.dataclass
class ExperimentConfig(object):
    """A parsed experiment configuration file.

    Attributes
    ----------
    suts : list
        :py:class:`SutEntry` objects in file order, each with its properties.
    modes : tuple
        Engine modes to run.
    monitors : tuple
        ``on`` and/or ``off``; learn-then-check runs unmonitored only.
    seeds : tuple
    step_budget : int or None
    max_tests : int or None
    expected_infix_length : float
    conjoin : bool
        Add the conjunction of the properties of each SUT as one more property.
    mbt : bool
        Add standalone model-based testing rows, sized from the black box checking runs.
    workers : int or None

    """

    suts: typing.List[SutEntry] = dataclasses.field(default_factory=list)
    modes: typing.Tuple[str, ...] = tuple(configs.ENGINE_MODES)
    monitors: typing.Tuple[str, ...] = (MONITOR_ON, MONITOR_OFF)
    seeds: typing.Tuple[int, ...] = tuple(range(configs.DEFAULT_EXPERIMENT_SEEDS))
    step_budget: typing.Optional[int] = None
    max_tests: typing.Optional[int] = None
    expected_infix_length: float = configs.DEFAULT_EXPECTED_INFIX_LENGTH
    conjoin: bool = False
    mbt: bool = False
    workers: typing.Optional[int] = None

    @classmethod
    def parse(cls, text: str, base_dir=".") -> "ExperimentConfig":
        """Parses ``key = value`` lines. Relative paths are resolved against ``base_dir``.

        Raises
        ------
        bbckit.ExperimentConfigError

        """
        base_dir = pathlib.Path(base_dir)
        config = cls()
        explicit_seeds = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise exceptions.ExperimentConfigError(f"Expected 'key = value', got {line!r}.", number)
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.lower()
            if not value:
                raise exceptions.ExperimentConfigError(f"Missing value for {key!r}.", number)
            try:
                if key == "sut":
                    path = base_dir / value
                    config.suts.append(SutEntry(path.stem, path))
                elif key in SPEC_KEYS or key == "name":
                    if not config.suts:
                        raise exceptions.ExperimentConfigError(f"{key!r} before any 'sut'.", number)
                    if key == "name":
                        config.suts[-1].name = value
                    else:
                        config.suts[-1].specs.append(SpecEntry(key, base_dir / value))
                elif key == "modes":
                    modes = tuple(_split(value))
                    for mode in modes:
                        if mode not in configs.ENGINE_MODES:
                            raise ValueError(f"Unknown mode {mode!r}; expected {configs.ENGINE_MODES}.")
                    config.modes = modes
                elif key == "monitor":
                    config.monitors = tuple(str(utils.Switch.from_string(part)) for part in _split(value))
                elif key == "seeds":
                    config.seeds = tuple(range(int(value)))
                elif key == "seed":
                    explicit_seeds.append(int(value))
                elif key in ("step_budget", "max_tests", "workers"):
                    setattr(config, key, int(value))
                elif key == "expected_infix_length":
                    config.expected_infix_length = float(value)
                elif key in ("conjoin", "mbt"):
                    setattr(config, key, utils.switch(value))
                else:
                    raise exceptions.ExperimentConfigError(f"Unknown key {key!r}.", number)
            except ValueError as e:
                raise exceptions.ExperimentConfigError(str(e), number) from e

        if explicit_seeds:
            config.seeds = tuple(explicit_seeds)
        if not config.suts:
            raise exceptions.ExperimentConfigError("No 'sut' given.")
        for entry in config.suts:
            if not entry.specs:
                raise exceptions.ExperimentConfigError(f"SUT {entry.name!r} has no properties.")
        names = [entry.name for entry in config.suts]
        if len(set(names)) != len(names):
            raise exceptions.ExperimentConfigError("SUT names must be unique; use 'name' to rename.")
        if config.mbt and configs.MODE_BBC not in config.modes:
            raise exceptions.ExperimentConfigError("'mbt' needs the bbc mode to size its suites.")
        return config

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        path = pathlib.Path(path)
        return cls.parse(path.read_text(encoding="utf-8"), path.parent)

    def bbc_mapping(self, seed) -> dict:
        """The settings of one run as ``BBCKIT_*`` keys for :py:meth:`bbckit.BbcConfig.from_mapping`."""
        mapping = {
            "BBCKIT_SEED": str(seed),
            "BBCKIT_EXPECTED_INFIX_LENGTH": repr(self.expected_infix_length),
        }
        if self.step_budget is not None:
            mapping["BBCKIT_STEP_BUDGET"] = str(self.step_budget)
        if self.max_tests is not None:
            mapping["BBCKIT_MAX_TESTS"] = str(self.max_tests)
        return mapping


def _split(value: str) -> typing.List[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


def load_spec(entry: SpecEntry, machine) -> SpecDfa:
    """Reads a property file as a plain specification, a bug automaton or a pair-labelled DFA."""
    dfa = load_dfa(entry.path)
    if entry.kind == "bug_spec":
        return bug_automaton_to_spec(dfa, machine.inputs, machine.outputs, entry.name)
    if entry.kind == "split_spec":
        return split_io_dfa(dfa, machine.inputs, machine.outputs, entry.name)
    return validate_spec(dfa, machine.inputs, machine.outputs, entry.name)


def load_target(entry: SutEntry, add_conjunction=False):
    """Loads the machine of ``entry`` and its properties, named after their files."""
    machine = load_mealy(entry.path)
    specs = SpecSet(inputs=machine.inputs, outputs=machine.outputs)
    for spec_entry in entry.specs:
        specs.add(load_spec(spec_entry, machine))
    if add_conjunction and len(specs) > 1:
        specs.add(conjoin(specs))
    return machine, specs


@dataclasses.dataclass(frozen=True)
class ExperimentRow(object):
    """One line of the rows CSV: what one run found out about one property."""

    sut: str
    property: str
    mode: str
    monitor: str
    seed: int
    resolved: str = configs.RESOLVED_UNRESOLVED
    learning_queries: int = 0
    testing_queries: int = 0
    learning_steps: int = 0
    testing_steps: int = 0
    hypotheses: int = 0
    final_hyp_states: typing.Optional[int] = None
    bug_step: typing.Optional[int] = None
    first_violation_step: typing.Optional[int] = None
    error: str = ""
    wall_time_ns: int = 0

    @property
    def total_queries(self) -> int:
        return self.learning_queries + self.testing_queries

    @property
    def total_steps(self) -> int:
        return self.learning_steps + self.testing_steps

    @property
    def found(self) -> bool:
        return self.resolved == configs.RESOLVED_BUG

    def sort_key(self):
        return self.sut, self.property, self.mode, self.monitor, self.seed

    def to_record(self) -> typing.Dict[str, str]:
        return {
            column: "" if getattr(self, column) is None else str(getattr(self, column))
            for column in configs.EXPERIMENT_ROW_COLUMNS
        }

    @classmethod
    def from_record(cls, record) -> "ExperimentRow":
        values = {}
        for field in dataclasses.fields(cls):
            raw = record[field.name]
            if field.name in ("sut", "property", "mode", "monitor", "resolved", "error"):
                values[field.name] = raw
            else:
                values[field.name] = int(raw) if raw != "" else None
        return cls(**values)


@dataclasses.dataclass(frozen=True)
class _Job(object):
    entry: SutEntry
    seed: int
    config: ExperimentConfig


def _engine_rows(entry, specs, machine, mode, monitor, seed, config) -> typing.List[ExperimentRow]:
    bbc_config = BbcConfig.from_mapping(
        config.bbc_mapping(seed), monitor_enabled=monitor == MONITOR_ON, mode=Mode(mode)
    )
    runner = run_bbc if mode == configs.MODE_BBC else run_learn_then_check
    started = time.perf_counter_ns()
    try:
        outcome = runner(SimulatedSUT(machine), specs, bbc_config)
    except Exception as e:
        logger.warning("%s %s seed %d failed: %s", entry.name, mode, seed, e)
        return [
            ExperimentRow(entry.name, spec.name, mode, monitor, seed, error=f"{type(e).__name__}: {e}",
                          wall_time_ns=time.perf_counter_ns() - started)
            for spec in specs
        ]
    elapsed = time.perf_counter_ns() - started
    final_states = None if outcome.hypothesis is None else outcome.hypothesis.num_states
    rows = []
    for name, result in outcome.properties.items():
        stats = result.stats or outcome.stats
        rows.append(ExperimentRow(
            entry.name, name, mode, monitor, seed, result.status.value,
            stats.learning_queries, stats.testing_queries, stats.learning_steps, stats.testing_steps,
            result.hypotheses, final_states, result.bug_step, result.first_violation_step, "", elapsed,
        ))
    return rows


def _mbt_rows(entry, specs, machine, seed, reference) -> typing.List[ExperimentRow]:
    rows = []
    for spec in specs:
        if spec.name == configs.CONJUNCTION_PROPERTY_NAME:
            continue
        queries = reference[spec.name].total_queries if spec.name in reference else 0
        n_tests = max(1, configs.MBT_SUITE_SIZE_FACTOR * queries)
        started = time.perf_counter_ns()
        try:
            report = run_mbt_suite(spec, SimulatedSUT(machine), n_tests, seed)
        except Exception as e:
            logger.warning("%s mbt %s seed %d failed: %s", entry.name, spec.name, seed, e)
            rows.append(ExperimentRow(entry.name, spec.name, configs.MODE_MBT, MONITOR_OFF, seed,
                                      error=f"{type(e).__name__}: {e}"))
            continue
        stats = report.stats
        bug_step = stats.total_steps if report.found else None
        rows.append(ExperimentRow(
            entry.name, spec.name, configs.MODE_MBT, MONITOR_OFF, seed,
            configs.RESOLVED_BUG if report.found else configs.RESOLVED_NO_BUG,
            stats.learning_queries, stats.testing_queries, stats.learning_steps, stats.testing_steps,
            0, None, bug_step, bug_step, "", time.perf_counter_ns() - started,
        ))
    return rows


def run_job(job: _Job) -> typing.List[ExperimentRow]:
    """Every run of one SUT and one seed. Errors end up in the rows, never in the caller."""
    entry, seed, config = job.entry, job.seed, job.config
    try:
        machine, specs = load_target(entry, config.conjoin)
    except (exceptions.BbcKitException, OSError) as e:
        logger.warning("cannot load %s: %s", entry.name, e)
        return [
            ExperimentRow(entry.name, "*", mode, monitor, seed, error=f"{type(e).__name__}: {e}")
            for mode, monitor in _cells(config)
        ]

    rows = []
    for mode, monitor in _cells(config):
        rows.extend(_engine_rows(entry, specs, machine, mode, monitor, seed, config))
    if config.mbt:
        preferred = MONITOR_ON if MONITOR_ON in config.monitors else MONITOR_OFF
        reference = {
            row.property: row for row in rows
            if row.mode == configs.MODE_BBC and row.monitor == preferred and not row.error
        }
        rows.extend(_mbt_rows(entry, specs, machine, seed, reference))
    return rows


def _cells(config: ExperimentConfig):
    for mode in config.modes:
        if mode == configs.MODE_BBC:
            for monitor in config.monitors:
                yield mode, monitor
        else:
            yield mode, MONITOR_OFF


def ground_truth(config: ExperimentConfig) -> typing.Dict[typing.Tuple[str, str], bool]:
    """Whether each property is violated by its SUT, decided white-box on the simulated machine."""
    truth = {}
    for entry in config.suts:
        try:
            machine, specs = load_target(entry, config.conjoin)
        except (exceptions.BbcKitException, OSError):
            continue
        for spec in specs:
            truth[entry.name, spec.name] = not check(machine, spec).satisfied
    return truth


@dataclasses.dataclass(frozen=True)
class SummaryEntry(object):
    section: str
    sut: str
    property: str
    mode: str
    monitor: str
    metric: str
    value: float

    def to_record(self) -> typing.Dict[str, str]:
        value = self.value
        formatted = str(value) if isinstance(value, int) else f"{value:.6f}"
        record = {column: getattr(self, column) for column in configs.SUMMARY_COLUMNS}
        record["value"] = formatted
        return record


def _group(rows, key):
    groups = {}
    for row in rows:
        groups.setdefault(key(row), []).append(row)
    return groups


def summarize(rows, truth=None) -> typing.List[SummaryEntry]:
    """Aggregates rows into a long-format summary with the sections ``cell``, ``counts``, ``monitor``,
    ``baseline`` and ``mbt``. Rows with an error are left out of every statistic.

    """
    rows = [row for row in rows if not row.error]
    summary = []

    for (sut, prop, mode, monitor), cell in sorted(_group(
            rows, lambda row: (row.sut, row.property, row.mode, row.monitor)).items()):
        for metric in ("total_queries", "total_steps", "learning_queries", "testing_queries", "hypotheses"):
            values = numpy.array([getattr(row, metric) for row in cell], dtype=float)
            summary.append(SummaryEntry("cell", sut, prop, mode, monitor, f"{metric}_mean", float(values.mean())))
            sd = float(values.std(ddof=1)) if len(values) > 1 else 0.0
            summary.append(SummaryEntry("cell", sut, prop, mode, monitor, f"{metric}_sd", sd))
        summary.append(SummaryEntry("cell", sut, prop, mode, monitor, "runs", len(cell)))
        summary.append(SummaryEntry("cell", sut, prop, mode, monitor, "bugs", sum(row.found for row in cell)))

    bbc = [row for row in rows if row.mode == configs.MODE_BBC]
    by_property = _group(bbc, lambda row: (row.sut, row.property))
    if truth is not None:
        for sut in sorted({sut for sut, _ in truth}):
            properties = [prop for s, prop in truth if s == sut and prop != configs.CONJUNCTION_PROPERTY_NAME]
            found = sum(any(row.found for row in by_property.get((sut, prop), ())) for prop in properties)
            violated = sum(truth[sut, prop] for prop in properties)
            for metric, value in (("f", found), ("c", violated), ("t", len(properties))):
                summary.append(SummaryEntry("counts", sut, "*", configs.MODE_BBC, "*", metric, value))

    indexed = {(row.sut, row.property, row.mode, row.monitor, row.seed): row for row in rows}

    for (sut, prop) in sorted(by_property):
        percentages, dominated, pairs = [], 0, 0
        for seed in sorted({row.seed for row in by_property[sut, prop]}):
            on = indexed.get((sut, prop, configs.MODE_BBC, MONITOR_ON, seed))
            off = indexed.get((sut, prop, configs.MODE_BBC, MONITOR_OFF, seed))
            if on is None or off is None or not (on.found and off.found):
                continue
            pairs += 1
            if off.total_queries:
                percentages.append(100.0 * on.total_queries / off.total_queries)
            if off.first_violation_step is not None and on.bug_step is not None:
                dominated += on.bug_step <= off.first_violation_step
        if pairs:
            mean = float(numpy.mean(percentages)) if percentages else 0.0
            summary.append(SummaryEntry("monitor", sut, prop, configs.MODE_BBC, "*", "query_percentage_mean", mean))
            summary.append(SummaryEntry("monitor", sut, prop, configs.MODE_BBC, "*", "dominance", dominated / pairs))
            summary.append(SummaryEntry("monitor", sut, prop, configs.MODE_BBC, "*", "pairs", pairs))

    for (sut, prop, monitor), cell in sorted(_group(bbc, lambda row: (row.sut, row.property, row.monitor)).items()):
        percentages = []
        for row in cell:
            baseline = indexed.get((sut, prop, configs.MODE_LEARN_THEN_CHECK, MONITOR_OFF, row.seed))
            if baseline is not None and baseline.total_queries:
                percentages.append(100.0 * row.total_queries / baseline.total_queries)
        if percentages:
            values = numpy.array(percentages)
            summary.append(SummaryEntry("baseline", sut, prop, configs.MODE_BBC, monitor, "percentage_median",
                                        float(numpy.median(values))))
            summary.append(SummaryEntry("baseline", sut, prop, configs.MODE_BBC, monitor, "percentage_mean",
                                        float(values.mean())))
            summary.append(SummaryEntry("baseline", sut, prop, configs.MODE_BBC, monitor, "pairs", len(values)))

    mbt = _group([row for row in rows if row.mode == configs.MODE_MBT], lambda row: (row.sut, row.property))
    for (sut, prop), cell in sorted(mbt.items()):
        seeds = {row.seed for row in cell}
        bbc_found = {row.seed for row in by_property.get((sut, prop), ()) if row.found and row.seed in seeds}
        summary.append(SummaryEntry("mbt", sut, prop, configs.MODE_MBT, "*", "seeds", len(seeds)))
        summary.append(SummaryEntry("mbt", sut, prop, configs.MODE_MBT, "*", "mbt_detected",
                                    sum(row.found for row in cell)))
        summary.append(SummaryEntry("mbt", sut, prop, configs.MODE_MBT, "*", "bbc_detected", len(bbc_found)))
    return summary


@dataclasses.dataclass
class ExperimentResult(object):
    rows: typing.List[ExperimentRow]
    summary: typing.List[SummaryEntry]

    def write(self, out_dir) -> typing.Tuple[pathlib.Path, pathlib.Path]:
        """Writes ``rows.csv``, sorted, and ``summary.csv`` into ``out_dir`` and returns their paths."""
        out_dir = pathlib.Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        rows_path = out_dir / configs.ROWS_FILE_NAME
        summary_path = out_dir / configs.SUMMARY_FILE_NAME
        _write_csv(rows_path, configs.EXPERIMENT_ROW_COLUMNS, [row.to_record() for row in self.rows])
        _write_csv(summary_path, configs.SUMMARY_COLUMNS, [entry.to_record() for entry in self.summary])
        return rows_path, summary_path


class RowWriter(object):
    """Appends experiment rows to a CSV file as jobs finish. The header is written on open and every append
    is flushed, so an interrupted run keeps the rows of its finished jobs.

    Parameters
    ----------
    path : str or pathlib.Path
        The rows file; truncated on open.

    """

    def __init__(self, path):
        self.path = pathlib.Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = open(self.path, "w", newline="", encoding="utf-8")
        self._writer = csv.DictWriter(self._handle, fieldnames=configs.EXPERIMENT_ROW_COLUMNS, lineterminator="\n")
        self._writer.writeheader()
        self._handle.flush()

    def append(self, rows: typing.Iterable[ExperimentRow]):
        self._writer.writerows(row.to_record() for row in rows)
        self._handle.flush()

    def close(self):
        self._handle.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()


def _write_csv(path, columns, records):
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)


def read_rows(path) -> typing.List[ExperimentRow]:
    with open(path, newline="", encoding="utf-8") as handle:
        return [ExperimentRow.from_record(record) for record in csv.DictReader(handle)]


def resolve_workers(config: ExperimentConfig, workers=None) -> int:
    """Explicit argument, then ``BBCKIT_WORKERS``, then the configuration file, then one."""
    if workers is None:
        value = os.environ.get(configs.BBCKIT_WORKERS_ENV)
        workers = int(value) if value else config.workers
    return max(1, workers or configs.DEFAULT_WORKERS)


def iter_experiment(config: ExperimentConfig, workers=None, writer: RowWriter = None):
    """Yields the rows of each job, one SUT and seed at a time, in job order. Each job's rows are handed to
    ``writer`` before they are yielded.

    """
    jobs = [_Job(entry, seed, config) for entry in config.suts for seed in config.seeds]
    workers = resolve_workers(config, workers)
    logger.info("running %d jobs on %d workers", len(jobs), workers)
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(run_job, jobs)
            for job_rows in results:
                if writer is not None:
                    writer.append(job_rows)
                yield job_rows
    else:
        for job in jobs:
            job_rows = run_job(job)
            if writer is not None:
                writer.append(job_rows)
            yield job_rows


def run_experiment(config: ExperimentConfig, workers=None, out_dir=None) -> ExperimentResult:
    """Runs the whole matrix. Rows come back sorted, whatever order the workers finished in.

    With ``out_dir`` the rows file is appended to while the matrix runs, then rewritten sorted next to the
    summary once every job has finished.

    """
    rows = []
    if out_dir is None:
        for job_rows in iter_experiment(config, workers):
            rows.extend(job_rows)
    else:
        with RowWriter(pathlib.Path(out_dir) / configs.ROWS_FILE_NAME) as writer:
            for job_rows in iter_experiment(config, workers, writer):
                rows.extend(job_rows)
    rows.sort(key=ExperimentRow.sort_key)
    result = ExperimentResult(rows, summarize(rows, ground_truth(config)))
    if out_dir is not None:
        result.write(out_dir)
    return result

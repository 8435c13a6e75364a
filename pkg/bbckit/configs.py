BBCKIT_ENV_PREFIX = "BBCKIT_"
BBCKIT_WORKERS_ENV = "BBCKIT_WORKERS"


# Conformance testing inside the BBC loop.
DEFAULT_EXPECTED_INFIX_LENGTH = 10.0
BUDGETED_MAX_TESTS_PER_ROUND = 10 ** 6

# Standalone model-based testing: test length is a multiple of the spec size and the
# suite size a multiple of the queries BBC needed.
MBT_TEST_STEPS_FACTOR = 2
MBT_SUITE_SIZE_FACTOR = 10

DEFAULT_SEED = 0
DEFAULT_EXPERIMENT_SEEDS = 50
DEFAULT_WORKERS = 1

MODE_BBC = "bbc"
MODE_LEARN_THEN_CHECK = "learn-then-check"
MODE_MBT = "mbt"
ENGINE_MODES = [MODE_BBC, MODE_LEARN_THEN_CHECK]

CONJUNCTION_PROPERTY_NAME = "conjunction"

# Bounded caches for automata derived during a run.
SPEC_CACHE_MAX_SIZE = 256
HYPOTHESIS_CACHE_MAX_SIZE = 16
SEPARATING_WORD_CACHE_MAX_SIZE = 4096


# DOT dialect.
DOT_HEADER = "digraph g {"
DOT_FOOTER = "}"
DOT_START_NODE = "__start0"
DOT_START_PREFIX = "__start"
DOT_START_DECLARATION = '__start0 [shape=none,label=""];'
DOT_STATE_NAME = "s{index}"
DOT_IO_DELIMITER = "/"
DOT_OUTPUT_DELIMITER = ","
DOT_FINAL_SHAPE = "doublecircle"
DOT_STATE_SHAPE = "circle"
DOT_FORBIDDEN_SYMBOL_CHARACTERS = ('"', "\\", "\n")


# Experiment output.
ROWS_FILE_NAME = "rows.csv"
SUMMARY_FILE_NAME = "summary.csv"

EXPERIMENT_ROW_COLUMNS = [
    "sut", "property", "mode", "monitor", "seed", "resolved",
    "learning_queries", "testing_queries", "learning_steps", "testing_steps",
    "hypotheses", "final_hyp_states", "bug_step", "first_violation_step", "error",
    "wall_time_ns",
]

SUMMARY_COLUMNS = ["section", "sut", "property", "mode", "monitor", "metric", "value"]

RESOLVED_BUG = "bug"
RESOLVED_NO_BUG = "no-bug"
RESOLVED_UNRESOLVED = "unresolved"

import pytest

from bbckit import benchmarks
from bbckit.utils import make_rng

from . import get_complete_word_machine, get_word_machine


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False, help="Run the long acceptance experiments.")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long running acceptance experiments")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def word_machine():
    return get_word_machine()


@pytest.fixture
def word_machine_complete():
    return get_complete_word_machine()


@pytest.fixture
def crash():
    return benchmarks.crash_machine()


@pytest.fixture
def rng():
    return make_rng(1234)


@pytest.fixture
def small_lock():
    return benchmarks.combination_lock(secret_length=3, num_inputs=3, ring_size=3, seed=7)

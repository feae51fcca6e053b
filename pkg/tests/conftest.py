import functools
from importlib import resources

import pytest

from stratkit.presentation import parse_presentation
from stratkit.rewriting import build_algebra, complete_rewriting
from stratkit.stratification import Poset

CORPUS = ["sl2_z0", "sl2_z1", "sl2_reversed", "a2_quiver", "semisimple_pair", "loop_dualnumbers"]

# lines collected by the acceptance suite and echoed in the terminal summary
ACCEPTANCE_LINES = []


def corpus_text(name):
    return (resources.files("stratkit") / "corpus" / (name + ".strat")).read_text()


@functools.lru_cache(maxsize=None)
def _load(name, params):
    p = parse_presentation(corpus_text(name), dict(params))
    rs = complete_rewriting(p)
    return p, rs, build_algebra(rs), Poset.from_presentation(p)


def load(name, **params):
    """(presentation, rewrite system, algebra, poset) for a corpus entry."""
    return _load(name, tuple(sorted(params.items())))


@pytest.fixture(scope="session")
def sl2():
    return load("sl2_z0")


def pytest_configure(config):
    config.addinivalue_line("markers", "property: property-based suites")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

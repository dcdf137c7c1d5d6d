import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sullivan.cdga import make_free
from sullivan.graded_algebra import Element, GeneratorTable, multiply
from sullivan.models_library import heisenberg_model, torus_model


@pytest.fixture
def heisenberg():
    return heisenberg_model()


@pytest.fixture
def torus2():
    """Torus model on generators named a, b so it includes into the Heisenberg model."""
    return make_free([("a", 1), ("b", 1)])


@pytest.fixture
def mixed_table():
    return GeneratorTable.from_pairs([("a", 1), ("b", 1), ("x", 2)])


def gen(A, name):
    return A.generator(name)


def mul(A, *factors):
    out = Element.one()
    for f in factors:
        out = multiply(out, f, A.table)
    return out


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, limit in sorted(ACCEPTANCE_RESULTS):
        bound = f" (limit {limit:g} s)" if limit else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {number:>2}. {title}  {elapsed:.2f} s{bound}")

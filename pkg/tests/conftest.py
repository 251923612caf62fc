import functools
import sys

import pytest

from legdga import fixtures
from legdga.dga import build_dga
from legdga.diagram import KnotDiagram


@functools.lru_cache(maxsize=None)
def knot_dga(name: str, reverse: bool = False):
    return build_dga(KnotDiagram(fixtures.load(name, reverse=reverse)))


@functools.lru_cache(maxsize=None)
def knot_diagram(name: str, reverse: bool = False):
    return KnotDiagram(fixtures.load(name, reverse=reverse))


ALL_SIX = [(k, r) for k in fixtures.KNOTS for r in (False, True)]


@pytest.fixture
def unknot():
    return knot_dga("unknot-fig4")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])

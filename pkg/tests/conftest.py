import sys

import pytest

from hdecomp.graphcore import Decomposition, build_graph
from hdecomp.verify import verify_decomposition


def assert_valid(d: Decomposition) -> None:
    report = verify_decomposition(build_graph(d.graph), d)
    assert report.valid, report.summary()


def vertex_load(d: Decomposition) -> list[int]:
    """Number of pieces whose cycle passes through each vertex."""
    host = build_graph(d.graph)
    load = [0] * host.vertex_count
    for p in d.pieces:
        for v in getattr(p, "vertices", None) or p.cycle:
            load[v] += 1
    return load


@pytest.fixture
def valid():
    return assert_valid


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    verdicts = getattr(acceptance, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for line in verdicts:
            terminalreporter.write_line(line)

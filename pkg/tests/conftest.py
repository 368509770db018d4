import pytest

from metricpoly.enumeration import build_graph, enumerate_vertices
from metricpoly.fixtures import counterexample


@pytest.fixture(scope="session")
def fixture_vertex():
    return counterexample()


@pytest.fixture(scope="session")
def vertex_sets():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = enumerate_vertices(n)
        return cache[n]
    return get


@pytest.fixture(scope="session")
def graphs(vertex_sets):
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_graph(vertex_sets(n))
        return cache[n]
    return get


ACCEPTANCE = pytest.StashKey[dict]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(ACCEPTANCE, None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        terminalreporter.write_line(log[number])

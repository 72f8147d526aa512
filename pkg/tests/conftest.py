import itertools

import pytest

from raaglab.graph import SimplicialGraph, path_graph, star_graph


def c4_chord():
    return SimplicialGraph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")])


def free2():
    return SimplicialGraph.from_edges(["a", "b"], [])


def prufer_trees(n):
    """Every labelled tree on n >= 3 vertices."""
    verts = [f"v{i}" for i in range(n)]
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for i in seq:
            degree[i] += 1
        edges = []
        for i in seq:
            leaf = min(j for j in range(n) if degree[j] == 1)
            edges.append((verts[leaf], verts[i]))
            degree[leaf] -= 1
            degree[i] -= 1
        u, w = [j for j in range(n) if degree[j] == 1]
        edges.append((verts[u], verts[w]))
        yield SimplicialGraph.from_edges(verts, edges)


SUITE = {
    "edge": lambda: path_graph(2),
    "P3": lambda: path_graph(3),
    "P4": lambda: path_graph(4),
    "K13": lambda: star_graph(3),
    "C4+chord": c4_chord,
}


@pytest.fixture
def edge():
    return path_graph(2)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def p5():
    return path_graph(5)


@pytest.fixture
def k13():
    return star_graph(3)


@pytest.fixture(params=sorted(SUITE))
def suite_graph(request):
    return SUITE[request.param]()


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("ab")), k)):
        terminalreporter.write_line(ACCEPTANCE[key])

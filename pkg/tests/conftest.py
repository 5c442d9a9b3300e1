import sys
from pathlib import Path

import networkx as nx
import pytest

from raagkit.graph import (
    DefiningGraph,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    path_graph,
)

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE_LINES: list[str] = []


def from_nx(G) -> DefiningGraph:
    labels = [chr(ord("a") + i) for i in range(G.number_of_nodes())]
    nodes = sorted(G.nodes())
    name = dict(zip(nodes, labels))
    return DefiningGraph.from_edges(labels, [(name[u], name[v]) for u, v in G.edges()])


def atlas(max_nodes: int, connected: bool = False) -> list[DefiningGraph]:
    """All graphs up to isomorphism on at most ``max_nodes`` vertices (nonempty vertex set)."""
    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n == 0 or n > max_nodes:
            continue
        if connected and not nx.is_connected(G):
            continue
        out.append(from_nx(G))
    return out


@pytest.fixture
def P3():
    return path_graph(3)


@pytest.fixture
def K3():
    return complete_graph(3)


@pytest.fixture
def K4():
    return complete_graph(4)


@pytest.fixture
def C5():
    return cycle_graph(5)


@pytest.fixture
def E2():
    return edgeless_graph(2)


@pytest.fixture
def E3():
    return edgeless_graph(3)


@pytest.fixture
def acceptance_line():
    def record(label: str, passed: bool, detail: str = ""):
        _ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())
        print(_ACCEPTANCE_LINES[-1])
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

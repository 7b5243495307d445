import random
import sys

import networkx as nx
import pytest

from immersion.graph import Graph


def to_graph(G: nx.Graph) -> Graph:
    nodes = sorted(G.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(pos[u], pos[v]) for u, v in G.edges()])


def connected_atlas(max_order: int):
    """Connected graphs from the networkx atlas (up to 7 vertices), one per isomorphism class."""
    return [G for G in nx.graph_atlas_g()
            if 1 <= G.number_of_nodes() <= max_order and nx.is_connected(G)]


def random_graph(rng: random.Random, n_max: int = 6, p: float = 0.5) -> Graph:
    n = rng.randint(1, n_max)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.RESULTS:
        terminalreporter.write_line(line)

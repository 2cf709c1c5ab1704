from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import settings

from totdom.graph import Graph

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# criterion number -> (description, outcome); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, str]] = {}


def to_nx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return g


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        desc, outcome = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {outcome.upper():4s}  {desc}")

import networkx as nx
import pytest
from hypothesis import settings

from blockdist.graph import Graph, from_edge_list

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes))}
    return from_edge_list(len(idx), [(idx[u], idx[v]) for u, v in h.edges])


def cycle(n: int) -> Graph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def nx_is_block_graph(h: nx.Graph) -> bool:
    if not nx.is_connected(h):
        return False
    for comp in nx.biconnected_components(h):
        k = len(comp)
        if h.subgraph(comp).number_of_edges() != k * (k - 1) // 2:
            return False
    return True


def connected_atlas(max_n: int):
    """Every connected graph with 1..max_n vertices (networkx atlas, n <= 7)."""
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            yield h


@pytest.fixture(scope="session")
def atlas7():
    return [from_nx(h) for h in connected_atlas(7)]


def metric_corpus():
    """Twenty small metrics: graph metrics (including the non-l1 K_{2,3}) and
    a few non-graphic ones.  Returns (name, Metric) pairs."""
    from blockdist.families import clique, friendship, path, star
    from blockdist.metric import Metric

    k23 = from_edge_list(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    k113 = from_edge_list(5, [(0, 1)] + [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    graphs = {
        "K2": clique(2),
        "K3": clique(3),
        "K4": clique(4),
        "K5": clique(5),
        "P3": path(3),
        "P4": path(4),
        "P5": path(5),
        "star4": star(4),
        "C4": cycle(4),
        "C5": cycle(5),
        "C6": cycle(6),
        "F5": friendship(2),
        "K23": k23,
        "K113": k113,
        "paw": from_edge_list(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
        "diamond": from_edge_list(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    }
    out = [(name, Metric.from_graph(g)) for name, g in graphs.items()]
    out += [
        ("pt2_d3", Metric.from_rows([[0, 3], [3, 0]])),
        ("tri_233", Metric.from_rows([[0, 2, 3], [2, 0, 3], [3, 3, 0]])),
        ("sq_1212", Metric.from_rows([[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])),
        ("equi4_2", Metric.from_rows([[0 if i == j else 2 for j in range(4)] for i in range(4)])),
    ]
    return out

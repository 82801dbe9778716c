"""Simple undirected graphs on vertices 0..n-1, distances and blocks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .linalg import IntMatrix

__all__ = [
    "Graph",
    "GraphError",
    "DisconnectedGraphError",
    "BlockCutTree",
    "from_edge_list",
    "distance_matrix",
    "block_cut_tree",
    "is_block_graph",
    "non_clique_block",
    "cartesian_product",
    "one_point_union",
    "parse_edge_list",
    "format_edge_list",
]


class GraphError(ValueError):
    pass


class DisconnectedGraphError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``edges`` holds pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(_bfs(self.adjacency, 0)) == self.n

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, frozenset(_norm(perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = sorted(vertices)
        index = {v: i for i, v in enumerate(vs)}
        return Graph(
            len(vs),
            frozenset(
                _norm(index[u], index[v]) for u, v in self.edges if u in index and v in index
            ),
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Validated graph; loops, duplicates and out-of-range endpoints are rejected."""
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    seen = set()
    for e in edges:
        u, v = (int(x) for x in e)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        key = _norm(u, v)
        if key in seen:
            raise GraphError(f"duplicate edge {key}")
        seen.add(key)
    return Graph(n, frozenset(seen))


def _bfs(adj, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if w not in dist:
                dist[w] = du
                queue.append(w)
    return dist


def distance_matrix(g: Graph) -> IntMatrix:
    """Shortest-path distance matrix (BFS from every vertex)."""
    if not g.is_connected:
        raise DisconnectedGraphError("distance matrix requested for a disconnected graph")
    rows = []
    for s in range(g.n):
        d = _bfs(g.adjacency, s)
        rows.append(tuple(d[v] for v in range(g.n)))
    return IntMatrix(tuple(rows))


@dataclass(frozen=True)
class BlockCutTree:
    """Blocks (as vertex sets), cut vertices, and block/cut-vertex incidences.

    ``incidence`` lists pairs ``(block_index, cut_vertex)``.
    """

    blocks: tuple[frozenset, ...]
    cut_vertices: frozenset
    incidence: tuple[tuple[int, int], ...]

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def block_cut_tree(g: Graph) -> BlockCutTree:
    """Biconnected components and articulation points (iterative lowpoint DFS)."""
    if not g.is_connected:
        raise DisconnectedGraphError("block decomposition requires a connected graph")
    if g.n == 0:
        return BlockCutTree((), frozenset(), ())
    if g.n == 1:
        return BlockCutTree((frozenset({0}),), frozenset(), ())
    adj = [sorted(a) for a in g.adjacency]
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[frozenset] = []
    cuts = set()
    edge_stack: list[tuple[int, int]] = []
    timer = 0
    root = 0
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if disc[w] == -1:
                edge_stack.append((u, w))
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, u, iter(adj[w])))
                advanced = True
                break
            if disc[w] < disc[u]:
                edge_stack.append((u, w))
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent == -1:
            continue
        low[parent] = min(low[parent], low[u])
        if low[u] >= disc[parent]:
            comp = set()
            while True:
                a, b = edge_stack.pop()
                comp.update((a, b))
                if (a, b) == (parent, u):
                    break
            blocks.append(frozenset(comp))
            if parent != root:
                cuts.add(parent)
            else:
                root_children += 1
    if root_children > 1:
        cuts.add(root)
    blocks.sort(key=lambda b: sorted(b))
    incidence = tuple(
        (i, v) for i, b in enumerate(blocks) for v in sorted(b) if v in cuts
    )
    return BlockCutTree(tuple(blocks), frozenset(cuts), incidence)


def _is_clique(g: Graph, vertices: frozenset) -> bool:
    vs = sorted(vertices)
    return all(g.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :])


def non_clique_block(g: Graph, bct: BlockCutTree | None = None) -> frozenset | None:
    """First block that does not induce a clique, or None."""
    bct = bct or block_cut_tree(g)
    for b in bct.blocks:
        if not _is_clique(g, b):
            return b
    return None


def is_block_graph(g: Graph) -> bool:
    """True iff ``g`` is connected and every block is a clique."""
    if not g.is_connected:
        return False
    return non_clique_block(g) is None


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G x H with vertex (a, x) numbered a * h.n + x."""
    edges = set()
    for a in range(g.n):
        for x, y in h.edges:
            edges.add((a * h.n + x, a * h.n + y))
    for a, b in g.edges:
        for x in range(h.n):
            edges.add((a * h.n + x, b * h.n + x))
    return Graph(g.n * h.n, frozenset(_norm(u, v) for u, v in edges))


def one_point_union(g: Graph, u: int, h: Graph, v: int) -> Graph:
    """Disjoint union of g and h with u (in g) and v (in h) identified.

    g keeps its labels; h's vertices other than v follow in increasing order.
    """
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} not in first graph (n={g.n})")
    if not 0 <= v < h.n:
        raise GraphError(f"vertex {v} not in second graph (n={h.n})")
    label = {}
    nxt = g.n
    for w in range(h.n):
        if w == v:
            label[w] = u
        else:
            label[w] = nxt
            nxt += 1
    edges = set(g.edges) | {_norm(label[a], label[b]) for a, b in h.edges}
    return Graph(g.n + h.n - 1, frozenset(edges))


def parse_edge_list(text: str) -> Graph:
    """Edge-list text: first line ``n m`` then ``m`` lines ``u v``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise GraphError("edge list must start with a line 'n m'")
    try:
        n, m = (int(x) for x in lines[0])
    except ValueError:
        raise GraphError("edge list header must hold two integers") from None
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for i, parts in enumerate(body, start=2):
        if len(parts) != 2:
            raise GraphError(f"line {i}: expected 'u v'")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {i}: vertex labels must be integers") from None
    return from_edge_list(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"

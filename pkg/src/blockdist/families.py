"""Graph families built from cliques, plus exhaustive small enumerations."""

from __future__ import annotations

import heapq
import json
import random
from dataclasses import dataclass, field
from typing import Iterator

from .graph import Graph, GraphError, cartesian_product, from_edge_list
from .graph6 import canonical_graph6, decode_graph6

__all__ = [
    "FamilySpec",
    "clique",
    "path",
    "star",
    "tree_from_pruefer",
    "hamming",
    "hypercube",
    "windmill",
    "friendship",
    "barbell",
    "lollipop",
    "block_path",
    "basic_family",
    "build",
    "barbell_quotient_partition",
    "attach_clique",
    "enumerate_block_graphs",
    "enumerate_trees",
    "random_block_graph",
]

ENUMERATION_CAP = 10

BASIC_KINDS = ("clique", "path", "star", "tree_pruefer", "hamming", "hypercube")
KINDS = BASIC_KINDS + ("windmill", "friendship", "barbell", "lollipop", "block_path")


def _clique_edges(vertices):
    vs = list(vertices)
    return [(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :]]


def _require(cond: bool, msg: str):
    if not cond:
        raise GraphError(msg)


def clique(t: int) -> Graph:
    _require(t >= 1, f"clique needs t >= 1, got {t}")
    return from_edge_list(t, _clique_edges(range(t)))


def path(length: int) -> Graph:
    """Path on ``length`` vertices."""
    _require(length >= 1, f"path needs at least one vertex, got {length}")
    return from_edge_list(length, [(i, i + 1) for i in range(length - 1)])


def star(n: int) -> Graph:
    """K_{1,n-1}, centre 0."""
    _require(n >= 2, f"star needs n >= 2, got {n}")
    return from_edge_list(n, [(0, i) for i in range(1, n)])


def tree_from_pruefer(seq) -> Graph:
    seq = [int(x) for x in seq]
    n = len(seq) + 2
    _require(all(0 <= x < n for x in seq), "Pruefer entries must lie in 0..len+1")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return from_edge_list(n, edges)


def hamming(d: int, q: int) -> Graph:
    """H(d, q): d-fold Cartesian power of K_q."""
    _require(d >= 1 and q >= 2, f"hamming needs d >= 1, q >= 2, got d={d}, q={q}")
    g = clique(q)
    for _ in range(d - 1):
        g = cartesian_product(g, clique(q))
    return g


def hypercube(d: int) -> Graph:
    return hamming(d, 2)


def windmill(k: int, t: int) -> Graph:
    """W(k, t): k copies of K_t sharing the universal vertex 0."""
    _require(k >= 2 and t >= 2, f"windmill needs k >= 2, t >= 2, got k={k}, t={t}")
    edges = []
    for i in range(k):
        blade = [0] + list(range(1 + i * (t - 1), 1 + (i + 1) * (t - 1)))
        edges += _clique_edges(blade)
    return from_edge_list(k * (t - 1) + 1, edges)


def friendship(k: int) -> Graph:
    """F_{2k+1} = W(k, 3)."""
    return windmill(k, 3)


def barbell(t: int, ell: int) -> Graph:
    """B(t, ell): two K_t joined by a path on ell vertices.

    Labels: first clique 0..t-1 (attached at t-1), path interior t..t+ell-3,
    second clique t+ell-2..2t+ell-3 (attached at t+ell-2).
    """
    _require(t >= 2 and ell >= 2, f"barbell needs t >= 2, ell >= 2, got t={t}, ell={ell}")
    n = 2 * t + ell - 2
    edges = _clique_edges(range(t))
    chain = list(range(t - 1, t + ell - 1))
    edges += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    edges += _clique_edges(range(t + ell - 2, n))
    return from_edge_list(n, edges)


def barbell_quotient_partition(t: int) -> list[list[int]]:
    """The 4-class equitable partition of B(t, 2): clique rest, bridge, bridge, clique rest."""
    _require(t >= 2, "barbell partition needs t >= 2")
    return [list(range(t - 1)), [t - 1], [t], list(range(t + 1, 2 * t))]


def lollipop(t: int, ell: int) -> Graph:
    """L(t, ell): K_t on 0..t-1 with a path t-1, t, ..., t+ell-2."""
    _require(t >= 2 and ell >= 2, f"lollipop needs t >= 2, ell >= 2, got t={t}, ell={ell}")
    n = t + ell - 1
    edges = _clique_edges(range(t))
    edges += [(i, i + 1) for i in range(t - 1, n - 1)]
    return from_edge_list(n, edges)


def block_path(b: int, t: int) -> Graph:
    """b copies of K_t in a chain, consecutive ones sharing one cut vertex."""
    _require(b >= 1 and t >= 2, f"block_path needs b >= 1, t >= 2, got b={b}, t={t}")
    edges = []
    for i in range(b):
        edges += _clique_edges(range(i * (t - 1), (i + 1) * (t - 1) + 1))
    return from_edge_list(b * (t - 1) + 1, edges)


@dataclass(frozen=True)
class FamilySpec:
    """A named family plus integer parameters, e.g. ``FamilySpec("windmill", {"k": 4, "t": 3})``."""

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GraphError(f"unknown family kind {self.kind!r}")

    def __hash__(self):
        return hash((self.kind, json.dumps(self.params, sort_keys=True)))

    def describe(self) -> str:
        inner = ",".join(f"{k}={_fmt(v)}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({inner})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}

    @classmethod
    def from_json(cls, obj) -> "FamilySpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["kind"], dict(obj.get("params", {})))


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(str(x) for x in v) + "]"
    return str(v)


def _param(spec: FamilySpec, name: str) -> int:
    try:
        return int(spec.params[name])
    except KeyError:
        raise GraphError(f"{spec.kind} requires parameter {name!r}") from None


def basic_family(spec: FamilySpec) -> Graph:
    kind = spec.kind
    if kind == "clique":
        return clique(_param(spec, "t"))
    if kind == "path":
        return path(_param(spec, "ell"))
    if kind == "star":
        return star(_param(spec, "n"))
    if kind == "tree_pruefer":
        return tree_from_pruefer(spec.params.get("pruefer", []))
    if kind == "hamming":
        return hamming(_param(spec, "d"), _param(spec, "q"))
    if kind == "hypercube":
        return hypercube(_param(spec, "d"))
    raise GraphError(f"{kind!r} is not a basic family")


def build(spec: FamilySpec) -> Graph:
    """Construct any family instance."""
    kind = spec.kind
    if kind in BASIC_KINDS:
        return basic_family(spec)
    if kind == "windmill":
        return windmill(_param(spec, "k"), _param(spec, "t"))
    if kind == "friendship":
        return friendship(_param(spec, "k"))
    if kind == "barbell":
        return barbell(_param(spec, "t"), _param(spec, "ell"))
    if kind == "lollipop":
        return lollipop(_param(spec, "t"), _param(spec, "ell"))
    if kind == "block_path":
        return block_path(_param(spec, "b"), _param(spec, "t"))
    raise GraphError(f"unknown family kind {kind!r}")


def attach_clique(g: Graph, v: int, s: int) -> Graph:
    """Glue a new K_s to ``g`` at vertex v; the s-1 new vertices follow g's."""
    new = [v] + list(range(g.n, g.n + s - 1))
    edges = set(g.edges) | set(_clique_edges(new))
    return Graph(g.n + s - 1, frozenset((min(a, b), max(a, b)) for a, b in edges))


_block_cache: dict[int, list[str]] = {1: [canonical_graph6(Graph(1, frozenset()))]}


def _block_graph_keys(n: int) -> list[str]:
    if n in _block_cache:
        return _block_cache[n]
    keys = {canonical_graph6(clique(n))}
    # every block graph with >= 2 blocks is a smaller one plus a leaf block
    for s in range(2, n):
        for key in _block_graph_keys(n - s + 1):
            h = decode_graph6(key)
            for v in range(h.n):
                keys.add(canonical_graph6(attach_clique(h, v, s)))
    _block_cache[n] = sorted(keys)
    return _block_cache[n]


def enumerate_block_graphs(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected block
    graphs on n vertices, in lexicographic order of canonical graph6."""
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    if n > cap:
        raise GraphError(f"refusing to enumerate block graphs on {n} > {cap} vertices")
    for key in _block_graph_keys(n):
        yield decode_graph6(key)


_tree_cache: dict[int, list[str]] = {}


def enumerate_trees(n: int) -> Iterator[Graph]:
    """Non-isomorphic trees on n vertices (canonical representatives, sorted)."""
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    if n not in _tree_cache:
        if n == 1:
            _tree_cache[1] = [canonical_graph6(Graph(1, frozenset()))]
        else:
            keys = set()
            for t in enumerate_trees(n - 1):
                for v in range(t.n):
                    keys.add(canonical_graph6(attach_clique(t, v, 2)))
            _tree_cache[n] = sorted(keys)
    for key in _tree_cache[n]:
        yield decode_graph6(key)


def random_block_graph(n: int, rng: random.Random, max_clique: int = 5) -> Graph:
    """Random block graph on exactly n vertices, grown by gluing cliques."""
    _require(n >= 1, "n must be positive")
    g = Graph(1, frozenset())
    while g.n < n:
        s = rng.randint(2, min(max_clique, n - g.n + 1))
        g = attach_clique(g, rng.randrange(g.n), s)
    return g

"""graph6 encoding and canonical labelling.

Canonical forms come from two routes.  Block graphs are determined by their
block-cut tree with clique sizes, so they get a linear-time tree encoding.
Everything else goes through colour refinement plus individualisation
backtracking, which is exact but exponential on highly symmetric inputs and
meant for n of about a dozen.
"""

from __future__ import annotations

from .graph import Graph, block_cut_tree, non_clique_block

__all__ = [
    "Graph6Error",
    "encode_graph6",
    "decode_graph6",
    "canonical_labeling",
    "canonical_graph6",
    "block_graph_code",
]


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def encode_graph6(g: Graph) -> str:
    """graph6 string without the optional ``>>graph6<<`` header."""
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i, j) in g.edges else 0)
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        body.append(chr(v + 63))
    return _encode_n(g.n) + "".join(body)


def decode_graph6(text: str) -> Graph:
    """Parse a canonical graph6 string (trailing newline tolerated)."""
    s = text.rstrip("\r\n")
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range", i)
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) >= 2 and s[1] == "~":
        if len(s) < 8:
            raise Graph6Error("truncated 8-byte vertex count", len(s))
        n, pos = 0, 8
        for ch in s[2:8]:
            n = (n << 6) | (ord(ch) - 63)
    else:
        if len(s) < 4:
            raise Graph6Error("truncated 4-byte vertex count", len(s))
        n, pos = 0, 4
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - pos != nbytes:
        raise Graph6Error(
            f"expected {nbytes} adjacency bytes for n={n}, got {len(s) - pos}",
            min(len(s), pos + nbytes),
        )
    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[pos + k // 6]) - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.add((i, j))
            k += 1
    if nbytes and k % 6:
        last = ord(s[-1]) - 63
        if last & ((1 << (6 - k % 6)) - 1):
            raise Graph6Error("nonzero padding bits", len(s) - 1)
    return Graph(n, frozenset(edges))


# --- block graphs: canonical block-cut tree --------------------------------------


def _tree_center(adj: dict, nodes: list) -> list:
    degree = {v: len(adj[v]) for v in nodes}
    leaves = [v for v in nodes if degree[v] <= 1]
    remaining = len(nodes)
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for leaf in leaves:
            for w in adj[leaf]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
            degree[leaf] = 0
        leaves = nxt
    return leaves


def _block_tree(g: Graph):
    bct = block_cut_tree(g)
    adj: dict = {}
    for i in range(len(bct.blocks)):
        adj[("B", i)] = []
    for v in bct.cut_vertices:
        adj[("C", v)] = []
    for i, v in bct.incidence:
        adj[("B", i)].append(("C", v))
        adj[("C", v)].append(("B", i))
    return bct, adj


def block_graph_code(g: Graph) -> str:
    """Isomorphism-invariant string for a block graph.

    The block-cut tree is rooted at its centre (unique, since every leaf is a
    block); blocks are tagged with their clique size.
    """
    code, _ = _block_canonical(g)
    return code


def _block_canonical(g: Graph) -> tuple[str, list[int]]:
    if g.n == 1:
        return "B1()", [0]
    bct, adj = _block_tree(g)
    nodes = list(adj)
    centers = _tree_center(adj, nodes)
    best = None
    for root in centers:
        codes: dict = {}
        order: list = []
        # iterative post-order
        stack = [(root, None, False)]
        while stack:
            node, parent, done = stack.pop()
            if done:
                kids = sorted((codes[c], c) for c in adj[node] if c != parent)
                tag = f"B{len(bct.blocks[node[1]])}" if node[0] == "B" else "C"
                codes[node] = tag + "(" + "".join(k for k, _ in kids) + ")"
                continue
            stack.append((node, parent, True))
            for c in adj[node]:
                if c != parent:
                    stack.append((c, node, False))
        cand = (codes[root], root)
        if best is None or cand[0] < best[0]:
            best = (cand[0], root, codes)
    code, root, codes = best
    # label vertices in canonical preorder
    label: dict[int, int] = {}
    stack = [(root, None)]
    while stack:
        node, parent = stack.pop()
        if node[0] == "C":
            v = node[1]
            if v not in label:
                label[v] = len(label)
        else:
            for v in sorted(bct.blocks[node[1]] - bct.cut_vertices):
                label[v] = len(label)
        kids = sorted((codes[c], c) for c in adj[node] if c != parent)
        for _, c in reversed(kids):
            stack.append((c, node))
    perm = [label[v] for v in range(g.n)]
    return code, perm


# --- general graphs: refinement + individualisation --------------------------


def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition (isomorphism-invariant)."""
    cells = [list(c) for c in cells]
    while True:
        where = {}
        for ci, c in enumerate(cells):
            for v in c:
                where[v] = ci
        new_cells = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sig = {}
            for v in c:
                counts = [0] * len(cells)
                for w in adj[v]:
                    counts[where[w]] += 1
                sig.setdefault(tuple(counts), []).append(v)
            if len(sig) > 1:
                changed = True
            for key in sorted(sig):
                new_cells.append(sorted(sig[key]))
        cells = new_cells
        if not changed:
            return cells


def _general_canonical(g: Graph) -> list[int]:
    adj = g.adjacency
    best_key = None
    best_perm = None
    stack = [_refine(adj, [list(range(g.n))])]
    while stack:
        cells = stack.pop()
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            perm = [0] * g.n
            for pos, c in enumerate(cells):
                perm[c[0]] = pos
            key = encode_graph6(g.relabel(perm))
            if best_key is None or key < best_key:
                best_key, best_perm = key, perm
            continue
        cell = cells[target]
        for v in cell:
            split = cells[:target] + [[v], [w for w in cell if w != v]] + cells[target + 1 :]
            stack.append(_refine(adj, split))
    return best_perm


def canonical_labeling(g: Graph) -> list[int]:
    """Permutation ``perm`` with ``g.relabel(perm)`` canonical for g's class."""
    if g.n <= 1:
        return list(range(g.n))
    if g.is_connected and non_clique_block(g) is None:
        return _block_canonical(g)[1]
    return _general_canonical(g)


def canonical_graph6(g: Graph) -> str:
    return encode_graph6(g.relabel(canonical_labeling(g)))

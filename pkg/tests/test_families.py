import itertools
import json

import networkx as nx
import pytest

from blockdist.families import (
    FamilySpec,
    barbell,
    basic_family,
    block_path,
    build,
    clique,
    enumerate_block_graphs,
    enumerate_trees,
    friendship,
    hamming,
    hypercube,
    lollipop,
    path,
    star,
    tree_from_pruefer,
    windmill,
)
from blockdist.graph import GraphError, block_cut_tree, distance_matrix, is_block_graph
from blockdist.graph6 import canonical_graph6

from conftest import connected_atlas, from_nx, nx_is_block_graph, to_nx


def iso(g, h):
    return nx.is_isomorphic(to_nx(g), to_nx(h))


def test_basic_family_examples():
    assert basic_family(FamilySpec("clique", {"t": 4})).m == 6
    assert nx.is_isomorphic(to_nx(basic_family(FamilySpec("hypercube", {"d": 2}))), nx.cycle_graph(4))
    assert iso(basic_family(FamilySpec("tree_pruefer", {"pruefer": [0, 0]})), star(4))
    assert path(5).n == 5 and star(6).m == 5
    with pytest.raises(GraphError):
        basic_family(FamilySpec("windmill", {"k": 2, "t": 3}))


def test_pruefer_matches_networkx():
    for n in range(2, 8):
        for seq in itertools.product(range(n), repeat=n - 2):
            ours = tree_from_pruefer(seq)
            ref = nx.from_prufer_sequence(list(seq)) if n > 2 else nx.path_graph(2)
            assert set(ours.edges) == {tuple(sorted(e)) for e in ref.edges}


def test_hamming_is_product_of_cliques():
    g = hamming(2, 3)
    ref = nx.cartesian_product(nx.complete_graph(3), nx.complete_graph(3))
    assert nx.is_isomorphic(to_nx(g), ref)
    d = distance_matrix(hamming(3, 2)).to_lists()
    # vertex a*4+b*2+c has coordinates (a,b,c); distance is the Hamming distance
    for u in range(8):
        for v in range(8):
            assert d[u][v] == bin(u ^ v).count("1")
    assert not is_block_graph(hypercube(2))
    assert is_block_graph(hypercube(1))


def test_windmill():
    assert iso(windmill(2, 3), friendship(2)) and windmill(2, 3).n == 5
    assert iso(windmill(3, 2), star(4))
    g = windmill(2, 4)
    assert g.n == 7 and sorted(len(b) for b in block_cut_tree(g).blocks) == [4, 4]
    for k in range(2, 6):
        for t in range(2, 7):
            g = windmill(k, t)
            assert g.n == k * (t - 1) + 1 and g.degree(0) == g.n - 1 and is_block_graph(g)


def test_barbell():
    assert barbell(3, 2).n == 6 and barbell(3, 2).m == 7
    assert iso(barbell(2, 2), path(4))
    g = barbell(6, 2)
    assert g.n == 12 and len(block_cut_tree(g).blocks) == 3
    for ell in range(2, 7):
        assert iso(barbell(2, ell), path(ell + 2))
        for t in range(2, 7):
            assert barbell(t, ell).n == 2 * t + ell - 2 and is_block_graph(barbell(t, ell))


def test_lollipop():
    g = lollipop(3, 2)
    assert g.n == 4 and sorted(g.degree(v) for v in range(4)) == [1, 2, 2, 3]
    assert lollipop(4, 3).n == 6
    for ell in range(2, 7):
        assert iso(lollipop(2, ell), path(ell + 1))
        for t in range(2, 7):
            assert lollipop(t, ell).n == t + ell - 1 and is_block_graph(lollipop(t, ell))


def test_block_path():
    for b in range(1, 6):
        assert iso(block_path(b, 2), path(b + 1))
    assert iso(block_path(2, 3), windmill(2, 3))
    g = block_path(3, 3)
    bct = block_cut_tree(g)
    assert g.n == 7 and len(bct.blocks) == 3 and len(bct.cut_vertices) == 2


def test_parameter_validation():
    for bad in [lambda: windmill(1, 3), lambda: barbell(1, 2), lambda: lollipop(3, 1), lambda: block_path(0, 3),
                lambda: hamming(0, 2), lambda: hamming(2, 1), lambda: tree_from_pruefer([5])]:
        with pytest.raises(GraphError):
            bad()
    with pytest.raises(GraphError):
        FamilySpec("octopus", {})
    with pytest.raises(GraphError):
        build(FamilySpec("windmill", {"k": 2}))


def test_family_spec_json():
    spec = FamilySpec("barbell", {"t": 4, "ell": 3})
    assert FamilySpec.from_json(json.dumps(spec.to_json())) == spec
    assert spec.describe() == "barbell(ell=3,t=4)"
    assert build(spec) == barbell(4, 3)


# connected block graphs on n vertices, OEIS A035053
BLOCK_COUNTS = [1, 1, 2, 4, 9, 22, 59, 165, 496, 1540]
TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


def test_enumeration_counts():
    for n, count in enumerate(BLOCK_COUNTS, start=1):
        assert sum(1 for _ in enumerate_block_graphs(n)) == count
    for n, count in enumerate(TREE_COUNTS, start=1):
        assert sum(1 for _ in enumerate_trees(n)) == count
    assert [sorted(g.edges) for g in enumerate_block_graphs(3)] and sum(1 for _ in enumerate_block_graphs(3)) == 2
    with pytest.raises(GraphError):
        next(enumerate_block_graphs(11))


def test_enumeration_matches_brute_force_filter():
    """Against every connected graph on <= 7 vertices, filtered by an
    independent block-graph test and deduplicated by isomorphism."""
    oracle = {}
    for h in connected_atlas(7):
        if nx_is_block_graph(h):
            oracle.setdefault(h.number_of_nodes(), []).append(h)
    for n in range(1, 8):
        ours = [to_nx(g) for g in enumerate_block_graphs(n)]
        assert len(ours) == len(oracle[n])
        for i, a in enumerate(ours):
            assert sum(nx.is_isomorphic(a, b) for b in oracle[n]) == 1
            assert not any(nx.is_isomorphic(a, b) for b in ours[i + 1 :])


def test_trees_match_networkx():
    for n in range(2, 11):
        ours = {canonical_graph6(g) for g in enumerate_trees(n)}
        ref = {canonical_graph6(from_nx(t)) for t in nx.nonisomorphic_trees(n)}
        assert ours == ref


def test_enumeration_order_is_sorted_and_canonical():
    for n in range(1, 9):
        keys = [canonical_graph6(g) for g in enumerate_block_graphs(n)]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)
        assert all(is_block_graph(g) for g in enumerate_block_graphs(n))

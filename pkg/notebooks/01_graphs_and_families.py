# %% [markdown]
# # Graphs, graph6 and the block-graph families
#
# Build a few family members, check that they are block graphs, and round-trip
# them through graph6.

# %%
from blockdist import (
    FamilySpec,
    block_cut_tree,
    build,
    canonical_graph6,
    decode_graph6,
    distance_matrix,
    encode_graph6,
    enumerate_block_graphs,
    enumerate_trees,
    is_block_graph,
    windmill,
)

# %%
w = windmill(3, 4)  # three K_4 sharing one vertex
print(w.n, "vertices,", len(w.edges), "edges, block graph:", is_block_graph(w))
print(block_cut_tree(w).blocks)

# %%
# graph6 is the interchange format; the canonical form keys the cache
code = encode_graph6(w)
print(code, decode_graph6(code) == w)
print(canonical_graph6(w))

# %%
g = build(FamilySpec("barbell", {"t": 4, "ell": 2}))
print(distance_matrix(g).rows)

# %% [markdown]
# Counting block graphs and trees up to isomorphism.

# %%
for n in range(1, 9):
    print(n, sum(1 for _ in enumerate_block_graphs(n)), sum(1 for _ in enumerate_trees(n)))

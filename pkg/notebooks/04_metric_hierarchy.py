# %% [markdown]
# # l1, hypermetric, negative type
#
# Block-graph metrics have negative type. K_{2,3} is the standard example
# that is hypermetric-violating and so not l1. Gluing a 5-cycle onto a
# complete split graph gives a graph with two positive distance eigenvalues.

# %%
from blockdist import (
    Metric,
    char_poly,
    clique,
    direct_product,
    distance_matrix,
    from_edge_list,
    hierarchy_report,
    inertia_from_charpoly,
    is_negative_type,
    one_point_union,
    windmill,
)

# %%
k23 = from_edge_list(5, [(i, j) for i in range(2) for j in range(2, 5)])
rep = hierarchy_report(Metric.from_graph(k23))
print(rep.l1, rep.hypermetric_witness, rep.negative_type, rep.inertia.as_tuple())

# %%
rep = hierarchy_report(Metric.from_graph(windmill(2, 3)))
print(rep.l1, rep.negative_type, rep.one_positive_eigenvalue)
print(sorted((sorted(s), str(a)) for s, a in rep.l1_certificate.coefficients.items()))

# %%
# products of negative-type metrics stay negative type
p3 = Metric.from_graph(from_edge_list(3, [(0, 1), (1, 2)]))
m = direct_product(Metric.from_graph(clique(3)), p3)
print(m.n, is_negative_type(m)[0])
print(is_negative_type(direct_product(p3, Metric.from_graph(k23))))

# %%
split = from_edge_list(7, [(i, j) for i in range(4) for j in range(i + 1, 7)])
c5 = from_edge_list(5, [(i, (i + 1) % 5) for i in range(5)])
print("split graph inertia", inertia_from_charpoly(char_poly(distance_matrix(split))).as_tuple())
glued = one_point_union(split, 0, c5, 0)
print("glued inertia", inertia_from_charpoly(char_poly(distance_matrix(glued))).as_tuple())

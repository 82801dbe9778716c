# %% [markdown]
# # Coefficient sequences and where they peak
#
# For a block graph on n vertices the signed coefficients s_0..s_{n-2} of the
# distance characteristic polynomial are positive, log-concave and peak
# between n/3 and n/2.

# %%
from blockdist import (
    barbell,
    barbell_closed_form,
    barbell_quotient_partition,
    char_poly,
    conjecture_verdict,
    distance_matrix,
    enumerate_block_graphs,
    friendship,
    quotient_divides,
    quotient_matrix,
    star,
    tree_normalized_coefficients,
    windmill,
    windmill_closed_form,
)

# %%
v = conjecture_verdict(windmill(2, 3))
print(v.sequence.s, "peak", v.peak_index, "window", (v.window.lo, v.window.hi), v.ok)

# %%
# closed forms match the computed polynomial
for k, t in [(2, 3), (3, 4), (4, 5)]:
    print(k, t, windmill_closed_form(k, t) == char_poly(distance_matrix(windmill(k, t))))

# %%
t = 5
g = barbell(t, 2)
print(barbell_closed_form(t) == char_poly(distance_matrix(g)))
q = quotient_matrix(distance_matrix(g), barbell_quotient_partition(t))
print("quotient divides:", quotient_divides(q, char_poly(distance_matrix(g))))

# %%
for k in (5, 10, 20, 40):
    vk = conjecture_verdict(friendship(k))
    print(k, "peak", vk.peak_index, "3k/4 =", 3 * k // 4)

# %%
# trees use the 2-power normalised sequence
print(tree_normalized_coefficients(star(7)))

# %%
worst = 0
for n in range(2, 10):
    for h in enumerate_block_graphs(n):
        worst += not conjecture_verdict(h).ok
print("failures up to n=9:", worst)

# %% [markdown]
# # Exact linear algebra on distance matrices
#
# Everything here is integer arithmetic: Bareiss elimination for rank and
# determinant, an exact characteristic polynomial, inertia by sign counting.

# %%
from pathlib import Path

import numpy as np

from blockdist import (
    bareiss_determinant,
    char_poly,
    clique,
    cofactor_sum,
    distance_matrix,
    inertia_from_charpoly,
    parse_matrix,
    rank,
)

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

# %%
# two distance matrices, one singular and one of full rank
for name in ("d_g.txt", "d_gprime.txt"):
    m = parse_matrix((DATA / name).read_text())
    print(name, "order", m.order, "rank", rank(m))

# %%
d = distance_matrix(clique(5))
print("det", bareiss_determinant(d), "cof", cofactor_sum(d))

# %%
p = char_poly(d)
print(p.coeffs)
print(inertia_from_charpoly(p).as_tuple())

# %%
# floating point agrees with the exact count
ev = np.linalg.eigvalsh(np.array(d.rows, dtype=float))
print(np.round(ev, 6))

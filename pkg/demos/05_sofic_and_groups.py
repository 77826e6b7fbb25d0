"""The subgraph tower for the even shift and the finite group checks."""

# %%
import math

from sftlab import group_oracle as go
from sftlab.sofic import build_subgraph_tower, even_shift, find_power_with_min_entry, power_labeled, sofic_growth_series

G = even_shift()
L = find_power_with_min_entry(G)
tower = build_subgraph_tower(power_labeled(G, L), 4)
for J, rep in tower.reports.items():
    print(J, "floor(b_J) =", rep.target, "seeded", sum(rep.seed.values()), "collisions", sum(rep.collisions.values()))

# %% Growth along the tower approaches L log(phi).
phi = (1 + math.sqrt(5)) / 2
s = sofic_growth_series(tower, [4, 8, 16, 30, 60])
print([round(x.a_n - L * math.log(phi), 4) for x in s.samples])

# %% Normal subgroups of Alt5 x Alt5 are exactly the four sub-products.
A5 = go.alt(5)
print([N.order for N in go.normal_subgroups(go.direct_product(A5, A5))])
print(go.verify_smallisland(2))

"""Admissible (C, D, r) for the golden mean and the upper-bound chain."""

# %%
from sftlab import AdjacencyMatrix
from sftlab.ps_entropy import admissible_params, simp_ev_group, upper_bound_check

golden = AdjacencyMatrix.from_rows([[1, 1], [1, 0]])
adm = admissible_params(golden, epsilon=0.05, k_max=200)
print(adm.to_json())

# %% Before K some factor is too small or the ratios sit outside [C, D].
for k in (5, 8, adm.K - 1, adm.K):
    G = simp_ev_group(golden, k)
    lo, hi = G.log_ratio_extremes()
    print(k, G.degrees, f"ratio range [{lo:.3f}, {hi:.3f}]")

# %% Both upper bounds from the periodic-point count hold from N1 on.
rep = upper_bound_check(golden, range(1, 41), adm.params)
print("N1 =", rep.N1, "violations:", rep.violations_i, rep.violations_ii)

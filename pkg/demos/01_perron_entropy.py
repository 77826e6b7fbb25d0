"""Perron eigendata, entropy and periodic points of a few edge shifts."""

# %%
import math

from sftlab import AdjacencyMatrix
from sftlab.perron import perron_eigendata, topological_entropy
from sftlab.sft import matrix_power, periodic_points

golden = AdjacencyMatrix.from_rows([[1, 1], [1, 0]])
d = perron_eigendata(golden)
print("lambda in", float(d.lambda_lo), float(d.lambda_hi), "width", float(d.width))
print("golden ratio", (1 + math.sqrt(5)) / 2)

# %% The enclosure is rational, so it brackets sqrt(5) exactly.
print((2 * d.lambda_lo - 1) ** 2 <= 5 <= (2 * d.lambda_hi - 1) ** 2)

# %% Entropy and the trace formula for periodic points (Lucas numbers here).
print("h =", topological_entropy(golden))
print([periodic_points(golden, n, brute_force=True) for n in range(1, 11)])

# %% Big powers stay exact.
entry = matrix_power(golden, 500)[0, 0]
print(len(str(entry)), "digits in the (0,0) entry of A^500")

"""Log-log growth of the even simple symmetry groups approaches the entropy."""

# %%
import math

from sftlab import AdjacencyMatrix
from sftlab.ps_entropy import entropy_estimate, growth_series

full2 = AdjacencyMatrix.from_rows([[2]])
s = growth_series(full2, 1, [8, 16, 32, 64, 128, 256, 512])
for x in s.samples:
    print(f"n={x.n:4d}  a_n={x.a_n:.6f}  residual={s.residual(x.n):+.6f}")

# %% The fit h + beta ln(n)/n recovers ln 2 and beta close to 1.
est = entropy_estimate(s)
print(est, "ln 2 =", math.log(2))

# %% Golden mean: residuals shrink like ln(n)/n.
golden = AdjacencyMatrix.from_rows([[1, 1], [1, 0]])
g = growth_series(golden, 1, [25, 50, 100, 200, 400])
print([round(g.residual(n), 4) for n in (25, 50, 100, 200, 400)])

# %% Past the digit budget the Perron approximation takes over, with a certified error.
far = growth_series(golden, 1, [10**5], digit_budget=1000)
print(far.samples[0].exact, far.residual(10**5))

# %% CSV for plotting elsewhere.
print(s.to_csv()[:200])

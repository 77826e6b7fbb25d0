"""Which stabilized automorphism groups can be told apart."""

# %%
from sftlab import AdjacencyMatrix
from sftlab.classify import entropy_ratio_witness, fullshift_isomorphic, fullshift_obstruction

for m, n in [(2, 3), (2, 4), (8, 32), (6, 12), (36, 216)]:
    v = fullshift_isomorphic(m, n)
    print(m, n, v.verdict, v.witness, v.reason)

# %% Entropy ratios: the cat map is the square of the golden mean.
golden = AdjacencyMatrix.from_rows([[1, 1], [1, 0]])
cat = AdjacencyMatrix.from_rows([[2, 1], [1, 1]])
print(entropy_ratio_witness(golden, cat, 5, 5))
print(entropy_ratio_witness(AdjacencyMatrix.from_rows([[2]]), golden, 10, 10))

# %% No power of the golden ratio is an integer, so no full shift matches.
print(fullshift_obstruction(golden).to_json())
print(fullshift_obstruction(AdjacencyMatrix.from_rows([[1, 1], [1, 1]])).to_json())

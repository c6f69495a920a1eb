"""Fusion-tree bases and their dimensions."""
from anyonlang.anyon_data import fibonacci_model, su2k_model
from anyonlang.fusion_space import Boundary, basis_state, dim, dim_by_fusion_matrices, enumerate_trees

fib = fibonacci_model()

# %% n tau anyons fusing to the vacuum: dimensions follow the Fibonacci numbers
for n in range(2, 11):
    b = Boundary(fib, (1,) * n, 0)
    print(f"n={n:2d}  dim={dim(b):3d}  (fusion matrices agree: {dim(b) == dim_by_fusion_matrices(b)})")

# %% the left-comb basis for four tau anyons, total charge 1
b = Boundary(fib, (1,) * 4, 0)
for i, tree in enumerate(enumerate_trees(b)):
    print(i, "internal charges", [fib.label_name(e) for e in tree])
print(basis_state(b, 1))

# %% spin-1/2 anyons of su(2)_4 (labels are twice the spin)
m = su2k_model(4)
print({m.label_name(t): dim(Boundary(m, (1,) * 6, t)) for t in m.labels})

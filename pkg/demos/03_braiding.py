"""Braid generators as unitaries on fusion spaces."""
import numpy as np

from anyonlang.anyon_data import fibonacci_model, ising_model
from anyonlang.braiding import BraidWord, braid_unitary, relation_residuals, sigma_matrix, transport
from anyonlang.fusion_space import Boundary, basis_state

np.set_printoptions(precision=4, suppress=True)
fib = fibonacci_model()
b = Boundary(fib, (1,) * 3, 1)

# %% the two generators on three tau anyons with total tau
s1, s2 = sigma_matrix(b, 1), sigma_matrix(b, 2)
print("s1 =\n", s1, "\ns2 =\n", s2)
print("Yang-Baxter gap:", np.abs(s1 @ s2 @ s1 - s2 @ s1 @ s2).max())

# %% words compose left to right: U(w1 w2) = U(w2) U(w1)
w = BraidWord.from_string(3, "s1 s2^-1 s1")
print(w, "->\n", braid_unitary(b, w))

# %% transport of a state, and back again
x = basis_state(b, 0)
y = transport(x, w)
print("|y| =", y.norm(), " back:", transport(y, w.inverse()).amplitudes.round(12))

# %% relation residuals across sectors
for model, a in ((fib, 1), (ising_model(), 1)):
    for n in (3, 4, 5, 6):
        total = 1 if model.name == "ising" and n % 2 else 0  # odd sigma counts fuse to sigma
        r = relation_residuals(Boundary(model, (a,) * n, total))
        print(f"{model.name:9s} n={n}  worst residual {r.worst:.1e}")

# %% Ising exchange has order 16 up to sign
s = sigma_matrix(Boundary(ising_model(), (1, 1), 0), 1)
print("sigma^8 =", np.linalg.matrix_power(s, 8).round(12))

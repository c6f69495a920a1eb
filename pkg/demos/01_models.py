"""Anyon models: fusion rules, F and R symbols, and the coherence checks.

Run with ``python demos/01_models.py``.
"""
import numpy as np

from anyonlang import anyon_data as ad

# %% Fibonacci anyons: one nontrivial label with tau x tau = 1 + tau
fib = ad.fibonacci_model()
tau = fib.label("tau")
print("labels:", [fib.label_name(a) for a in fib.labels])
print("tau x tau ->", [fib.label_name(c) for c in fib.rules.fuse(tau, tau)])

# %% the only nontrivial F-block, and the two braiding phases
np.set_printoptions(precision=6, suppress=True)
print("F^{tau tau tau}_tau =\n", fib.f_block(tau, tau, tau, tau))
for c in (fib.unit, tau):
    r = fib.r_symbol(tau, tau, c)
    print(f"R^(tau tau)_{fib.label_name(c)} = {r:.6f}  (angle/pi = {np.angle(r) / np.pi:+.3f})")

# %% coherence: pentagon, hexagon, unitarity residuals for several models
for model in (fib, ad.ising_model(), ad.su2k_model(3), ad.su2k_model(5)):
    rep = [ad.verify_pentagon(model), ad.verify_hexagon(model), ad.verify_unitarity(model)]
    dims = ", ".join(f"{model.label_name(a)}:{ad.quantum_dimension(model, a):.4f}" for a in model.labels)
    print(f"{model.name:10s} residuals {[f'{r.residual:.1e}' for r in rep]}  dims {dims}")

# %% JSON export and re-import (import re-runs every check)
doc = ad.model_to_json(ad.ising_model())
back = ad.model_from_json(doc)
print("ising round trip preserves F and R:", back.F == ad.ising_model().F and back.R == ad.ising_model().R)

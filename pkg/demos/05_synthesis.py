"""Compiling target gates into braid words."""
import time

from anyonlang.anyon_data import fibonacci_model
from anyonlang.fusion_space import Boundary
from anyonlang.synth import PRESETS, brute_force_synth, sk_refine

qubit = Boundary(fibonacci_model(), (1,) * 4, 0)

# %% exhaustive search: longer words never do worse
for name in ("X", "H", "Z"):
    for max_len in (4, 6, 8, 10):
        t = time.perf_counter()
        r = brute_force_synth(qubit, PRESETS[name], max_len, workers=4)
        print(f"{name} max_len={max_len:2d} d={r.distance:.6f}  {r.word}  ({time.perf_counter() - t:.2f}s)")

# %% Solovay-Kitaev refinement on top of a short search
for depth in range(4):
    r = sk_refine(qubit, PRESETS["H"], {"max_len": 6}, depth)
    print(f"depth {depth}: distance {r.distance:.6f}, length {len(r.word)}")

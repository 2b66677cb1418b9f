"""One loop around all critical values permutes the roots cyclically.

Far from the origin P(z) behaves like z^n. A closed path in the c-plane
that encloses every critical value therefore acts on the n roots of
P(z) = 0 like a full turn of z^n, i.e. it moves each root to the next.
The solver uses this to get all roots from one tracked root.

Run with ``python3 demos/02_every_root_from_one_loop.py``.
"""
# %%
import numpy as np

from ftaroots import critical_structure, evaluate, random_monic, solve_callback_adapter, weierstrass_roots
from ftaroots.solver import encircling_loop, track_one_root
from ftaroots.tracker import track_path

P = random_monic(7, np.random.default_rng(2024))
cs = critical_structure(P, solve_callback_adapter(0))
print(f"degree {P.degree}, {len(cs.values)} critical values, farthest at |d| = {max(map(abs, cs.values)):.3f}")

# %%
first = track_one_root(P, cs, seed=0)
loop = encircling_loop(cs)
print(f"first root {first.root:.6f}; loop has {len(loop.waypoints)} waypoints")

# %% [markdown]
# Go around the loop n - 1 times and record where the root ends up each time.

# %%
roots = [first.root]
z = first.root
for k in range(P.degree - 1):
    z, trace = track_path(P, loop, z)
    roots.append(z)
    print(f"after circuit {k + 1}: z = {z:.6f}   ({len(trace) - 1} steps, |P(z)| = {abs(evaluate(P, z)):.1e})")

# %% [markdown]
# Every circuit produced a new root. Compare against the Durand–Kerner oracle.

# %%
oracle = weierstrass_roots(P)
dist = max(min(abs(r - o) for o in oracle) for r in roots)
print(f"distinct roots found: {len({round(r.real, 8) + 1j * round(r.imag, 8) for r in roots})}")
print(f"farthest found root from the nearest oracle root: {dist:.2e}")

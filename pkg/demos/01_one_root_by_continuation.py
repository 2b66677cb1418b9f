"""Following one root of P(z) - c while c slides to zero.

Run with ``python3 demos/01_one_root_by_continuation.py``. Writes
``one_root.svg`` next to this script.
"""
# %%
from pathlib import Path

from ftaroots import Polynomial, critical_structure, evaluate, solve_callback_adapter
from ftaroots.planner import choose_start, clearance_radius, plan_path
from ftaroots.report import trace_svg
from ftaroots.tracker import track_path

# %% [markdown]
# P(z) = z^3 - 3z + 1. Its derivative 3z^2 - 3 vanishes at z = ±1, so the
# critical values are P(1) = -1 and P(-1) = 3. Any other value c is regular:
# every root of P(z) = c is simple there.

# %%
P = Polynomial([1, -3, 0, 1])
cs = critical_structure(P, solve_callback_adapter(seed=0))
print("critical points:", [f"{z:.6f}" for z in cs.points])
print("critical values:", [f"{d:.6f}" for d in cs.values])

# %% [markdown]
# Pick a start a at random, so that c0 = P(a) is a regular value. Then z = a
# is a known root of P(z) - c0.

# %%
a = choose_start(P, cs, rng_seed=3)
c0 = evaluate(P, a)
rho = clearance_radius(cs, c0)
print(f"start a = {a:.4f}, c0 = P(a) = {c0:.4f}, clearance {rho:.4f}")

# %% [markdown]
# Plan a polyline from c0 to 0 that keeps at least ``rho`` away from both
# critical values. Then carry the root along it with Euler and Newton steps.

# %%
plan = plan_path(c0, cs, rho)
print("waypoints:", [f"{w:.3f}" for w in plan.waypoints])
z, trace = track_path(P, plan, a)
print(f"{len(trace) - 1} accepted steps, landed on z = {z:.12f}, |P(z)| = {abs(evaluate(P, z)):.2e}")

worst_iters = max(r.newton_iters for r in trace.records)
print("largest Newton count in any accepted step:", worst_iters)

# %%
from ftaroots.solver import TrackedRoot

out = Path(__file__).with_name("one_root.svg")
out.write_text(trace_svg(TrackedRoot(z, a, plan, trace, cs), cs, z))
print("wrote", out)

"""When zero is itself a critical value.

If 0 is a critical value, some critical point z0 has P(z0) = 0 = P'(z0),
and z0 is a multiple root. Tracking to 0 is not possible there. The solver
reads z0 off the critical points instead, measures its multiplicity from
the Taylor coefficients, and deflates it away.

Run with ``python3 demos/03_multiple_roots.py``.
"""
# %%
from ftaroots import critical_structure, from_roots, solve_all, solve_callback_adapter
from ftaroots.critical import taylor_coefficient

P = from_roots([1, 1, 1, -2, 0.5j, 0.5j])
cs = critical_structure(P, solve_callback_adapter(0))
print("distance from 0 to the critical values:", f"{cs.distance_to_values(0):.2e}")

# %%
for m in range(5):
    print(f"|P^({m})(1) / {m}!| = {abs(taylor_coefficient(P, 1, m)):.3e}")

# %%
result = solve_all(P)
for r in sorted(result.roots, key=lambda r: -r.multiplicity):
    print(f"{r.value:.10f}  multiplicity {r.multiplicity}  via {r.provenance.value}")
print("multiplicities add up to", sum(r.multiplicity for r in result.roots), "= degree", P.degree)

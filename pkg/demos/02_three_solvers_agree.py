"""One instance, four solvers, one answer.

Generates a seeded random instance, solves it with the exhaustive oracle,
the chain-tuple DP (polynomial for bounded width) and the DP over a longest
chain (exponential only in the number of off-chain vertices), then shows
that the automatic selector picks a cheap one.
"""
import time

from pohpp import (
    emit_instance,
    generate,
    select_algorithm,
    solve,
    solve_bruteforce,
    solve_dlo_dp,
    solve_width_dp,
)
from pohpp.solve import instance_stats

inst = generate("random", {"n": 10, "p": 0.5, "order_density": 0.25, "weighted": True}, seed=42)
print(emit_instance(inst))
print("stats:", instance_stats(inst))

for name, fn in [("oracle", solve_bruteforce), ("width", solve_width_dp), ("dlo", solve_dlo_dp)]:
    t = time.perf_counter()
    r = fn(inst)
    ms = (time.perf_counter() - t) * 1000
    print(f"{name:>7}: {'infeasible' if r is None else f'cost {r.cost}, path {r.sequence}'}  ({ms:.1f} ms)")

print("selector:", select_algorithm(inst))
print(solve(inst).to_text())

# Width DP state counts on a complete graph without constraints: the subset
# bound k * 2**n applies, since every vertex is its own chain.
for n in (8, 10, 12, 14):
    stats = {}
    k_n = generate("random", {"n": n, "p": 1.0, "order_density": 0.0}, seed=0)
    solve_width_dp(k_n, stats=stats)
    print(f"K_{n}: regime {stats['regime']}, {stats['table_entries']} states, bound {n * 2**n}")

"""Partial orders as bitsets: closure, chains, antichains.

Run with ``python3 demos/01_orders_and_chains.py``.
"""
from pohpp import build_order, chain_decomposition, dlo, height, is_linear_extension, width
from pohpp.dlo_dp import maximum_chain

# A small project plan: 0 = design, 1 = backend, 2 = frontend, 3 = docs, 4 = release.
pairs = [(0, 1), (0, 2), (1, 4), (2, 4), (3, 4)]
order = build_order(5, pairs)

print("strict pairs after closure:", sorted(order.strict))
print("cover pairs (what you would draw):", order.cover_pairs())

# Minimum chain cover by bipartite matching. Its size is the width,
# which is also the largest set of mutually unordered tasks.
chains = chain_decomposition(order)
print("chains:", chains.chains, "-> width", width(order))

# The longest chain is the critical path; everything else is slack.
print("a longest chain:", maximum_chain(order), "height", height(order), "distance to linear", dlo(order))

for seq in [(0, 1, 2, 3, 4), (3, 0, 2, 1, 4), (0, 4, 1, 2, 3)]:
    print(seq, "extends the order:", is_linear_extension(seq, order))

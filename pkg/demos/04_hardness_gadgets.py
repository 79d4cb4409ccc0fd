"""Where the problem gets hard: bipartite orders and the clique gadget.

An order from A to B on the complete bipartite graph K_{n,n} has a solution
exactly when its 0/1 matrix can be permuted to upper-triangular form. The
multicolored clique gadget keeps the width at k + 1 while encoding a clique
search, so width alone cannot make the problem easy.
"""
import numpy as np

from pohpp import solve_bruteforce, solve_width_dp, width
from pohpp.reductions import (
    GadgetLayout,
    MulticoloredGraph,
    bipartite_pohpp_encode,
    has_alternating_extension,
    is_triangularizable,
    matrix_to_poset,
    mcp_bruteforce,
    mcp_to_pohpp,
    selected_indices,
)

rng = np.random.default_rng(0)
for trial in range(5):
    m = (rng.random((3, 3)) < 0.5).astype(np.uint8)
    p = matrix_to_poset(m)
    tri = is_triangularizable(m)
    alt = has_alternating_extension(p)
    feas = solve_bruteforce(bipartite_pohpp_encode(p))
    print(m.tolist(), "triangular:", tri is not None, "alternating:", alt is not None,
          "path:", None if feas is None else feas.sequence)

# A 2-colour graph with classes {0, 1} and {2, 3}; 1 and 3 are adjacent.
g = MulticoloredGraph(2, 2, frozenset({(1, 3)}))
inst = mcp_to_pohpp(g)
lay = GadgetLayout(2, 2)
print("\n".join(inst.comments))
print("gadget vertices", inst.n, "width", width(inst.order))
r = solve_width_dp(inst)
print("clique by brute force:", mcp_bruteforce(g))
print("selected per colour:", selected_indices(lay, r.sequence))
print("path:", " ".join(lay.name(v) for v in r.sequence))

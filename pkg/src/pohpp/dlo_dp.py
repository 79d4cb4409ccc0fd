"""Fixed-parameter DP for orders close to a linear order.

Fix a maximum chain ``C`` and let ``S`` be the ``k`` vertices off it. A state
``(Z, i, u)`` with ``Z`` a subset of ``S`` stands for the cheapest ordered path
on exactly ``C[1..i]`` plus ``Z`` that ends in ``u`` and is a prefix of a
linear extension. There are at most ``(k + 1) * 2**k * (|C| + 1)`` states.

The table is a flat list laid out as ``[mask][i][slot]``; slots ``0..k-1``
are the members of ``S`` (in increasing vertex order) and slot ``k`` is the
chain vertex ``C[i]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._dp import dense_rank_py, python_costs
from .errors import StateBudgetExceeded
from .model import Instance, OrderedHamPath, PartialOrder, iter_bits, longest_chain_from

DEFAULT_BUDGET = 10**8


def maximum_chain(order: PartialOrder) -> list[int]:
    """A longest chain, bottom to top; the lexicographically smallest among ties."""
    if order.n == 0:
        return []
    length = longest_chain_from(order)
    top = max(length)
    v = min(u for u in range(order.n) if length[u] == top)
    chain = [v]
    while length[v] > 1:
        v = min(w for w in order.succs(v) if length[w] == length[v] - 1)
        chain.append(v)
    return chain


@dataclass(frozen=True)
class DloContext:
    chain: tuple[int, ...]
    off_chain: tuple[int, ...]
    # per vertex: bitmask over S-slots of the off-chain vertices below it
    pred_mask: tuple[int, ...]
    # per S-slot: how many chain vertices lie below it
    xi: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.off_chain)

    def can_append(self, u: int, z_mask: int, i: int) -> bool:
        """Whether ``u`` may follow a path on ``C[1..i]`` plus the S-slots in ``z_mask``.

        ``u`` is either an off-chain vertex outside ``z_mask`` or ``C[i + 1]``.
        """
        if self.pred_mask[u] & ~z_mask:
            return False
        if u in self.off_chain:
            return self.xi[self.off_chain.index(u)] <= i
        return self.chain.index(u) == i


def dlo_context(order: PartialOrder, chain=None) -> DloContext:
    if chain is None:
        chain = maximum_chain(order)
    on_chain = set(chain)
    off = tuple(v for v in range(order.n) if v not in on_chain)
    slot_of = {v: j for j, v in enumerate(off)}
    chain_bits = sum(1 << v for v in chain)
    pred_mask = []
    for v in range(order.n):
        m = 0
        for u in iter_bits(order.down_mask(v) & ~chain_bits):
            m |= 1 << slot_of[u]
        pred_mask.append(m)
    xi = tuple(bin(order.down_mask(v) & chain_bits).count("1") for v in off)
    return DloContext(tuple(chain), off, tuple(pred_mask), xi)


def solve_dlo_dp(
    instance: Instance,
    budget: int = DEFAULT_BUDGET,
    *,
    stats: dict | None = None,
) -> OrderedHamPath | None:
    """Minimum-cost ordered Hamiltonian path, exponential only in the distance to linear order."""
    n = instance.n
    if stats is None:
        stats = {}
    if n == 0:
        return OrderedHamPath((), Fraction(0))
    if not instance.connected:
        return None
    ctx = dlo_context(instance.order)
    chain, off, k = ctx.chain, ctx.off_chain, ctx.k
    stats["k"] = k
    if k == 0:
        # the order is linear: only one candidate sequence
        g = instance.graph
        if all(g.has_edge(u, v) for u, v in zip(chain, chain[1:])):
            return OrderedHamPath(chain, instance.path_cost(chain))
        return None

    h = len(chain)
    slots = k + 1
    size = (1 << k) * (h + 1) * slots
    if size > budget:
        raise StateBudgetExceeded(size, budget)
    w = python_costs(instance)
    pm = ctx.pred_mask
    xi = ctx.xi

    cost = [None] * size
    rank = [0] * size
    back = [-1] * size

    def index(mask, i, slot):
        return (mask * (h + 1) + i) * slots + slot

    def vertex(i, slot):
        return chain[i - 1] if slot == k else off[slot]

    members = [list(iter_bits(mask)) for mask in range(1 << k)]
    by_pop = [[] for _ in range(k + 1)]
    for mask in range(1 << k):
        by_pop[len(members[mask])].append(mask)

    if pm[chain[0]] == 0:
        t = index(0, 1, k)
        cost[t], rank[t] = 0, chain[0]
    for j, u in enumerate(off):
        if pm[u] == 0 and xi[j] == 0:
            t = index(1 << j, 0, j)
            cost[t], rank[t] = 0, u
    filled = sum(c is not None for c in cost)

    def best_from(u, prev_mask, prev_i):
        row = w[u]
        best = None
        base = index(prev_mask, prev_i, 0)
        cands = members[prev_mask] + ([k] if prev_i >= 1 else [])
        for s in cands:
            t = base + s
            c = cost[t]
            if c is None:
                continue
            cuv = row[vertex(prev_i, s)]
            if cuv is None:
                continue
            key = (c + cuv, rank[t])
            if best is None or key < best[0]:
                best = (key, t)
        return best

    for level in range(2, n + 1):
        done = []
        for p in range(max(0, level - h), min(k, level) + 1):
            i = level - p
            for mask in by_pop[p]:
                if i >= 1:
                    u = chain[i - 1]
                    if not pm[u] & ~mask:
                        found = best_from(u, mask, i - 1)
                        if found is not None:
                            done.append((index(mask, i, k), found, u))
                for j in members[mask]:
                    u = off[j]
                    rest = mask & ~(1 << j)
                    if pm[u] & ~rest or xi[j] > i:
                        continue
                    found = best_from(u, rest, i)
                    if found is not None:
                        done.append((index(mask, i, j), found, u))
        if not done:
            break
        ranks = dense_rank_py([(rank[t_prev], u) for _, (_, t_prev), u in done])
        for (t, ((c, _), t_prev), _), r in zip(done, ranks):
            cost[t], rank[t], back[t] = c, r, t_prev
        filled += len(done)

    assert filled <= (k + 1) * (1 << k) * (h + 1)
    stats["filled"] = filled
    full = (1 << k) - 1
    ends = [index(full, h, s) for s in range(slots) if cost[index(full, h, s)] is not None]
    if not ends:
        return None
    t = min(ends, key=lambda e: (cost[e], rank[e]))
    seq = []
    while t >= 0:
        slot = t % slots
        i = (t // slots) % (h + 1)
        seq.append(vertex(i, slot))
        t = back[t]
    seq.reverse()
    return OrderedHamPath(tuple(seq), instance.path_cost(seq))

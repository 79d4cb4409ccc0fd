"""Dynamic program over chain-position tuples for orders of bounded width.

A state ``(x_1..x_k, w)`` stands for the cheapest ordered path that contains
exactly the first ``x_i`` elements of every chain ``C_i``, ends in
``C_w[x_w]`` and whose vertex order is a prefix of a linear extension.
Entries of weight ``l = sum(x)`` are computed from entries of weight ``l - 1``.

Two storage regimes are available:

* dense: a numpy table indexed by the mixed-radix code of ``x`` (size
  ``prod(|C_i| + 1) * k``), filled one weight level at a time with vectorised
  gathers;
* sparse: only reachable states are stored, level by level, as arrays of
  codes that are pushed forward and deduplicated by sorting (a dict-based
  fallback covers object-dtype costs and code spaces beyond int64). The
  number of stored states is bounded by ``k * 2**n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from ._dp import dense_rank, dense_rank_py, python_costs, scaled_costs
from .errors import StateBudgetExceeded
from .model import (
    ChainDecomposition,
    Graph,
    Instance,
    OrderedHamPath,
    build_order,
    chain_decomposition,
)

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class ChainContext:
    chains: ChainDecomposition
    xi: np.ndarray  # (n, k): number of elements of chain i strictly below v

    @property
    def k(self) -> int:
        return self.chains.width


def chain_context(instance: Instance, chains: ChainDecomposition | None = None) -> ChainContext:
    order = instance.order
    if chains is None:
        chains = chain_decomposition(order)
    masks = [sum(1 << v for v in c) for c in chains.chains]
    xi = np.zeros((order.n, len(masks)), dtype=np.int64)
    for v in range(order.n):
        d = order.down_mask(v)
        if d:
            for i, cm in enumerate(masks):
                xi[v, i] = bin(d & cm).count("1")
    return ChainContext(chains, xi)


def dense_table_size(chains: ChainDecomposition) -> int:
    return prod(len(c) + 1 for c in chains.chains) * chains.width


def default_regime(n: int, chains: ChainDecomposition, budget: int = DEFAULT_BUDGET) -> str:
    if n < chains.width * np.log2(max(n, 2)) or dense_table_size(chains) > budget:
        return "sparse"
    return "dense"


def solve_width_dp(
    instance: Instance,
    budget: int = DEFAULT_BUDGET,
    *,
    chains: ChainDecomposition | None = None,
    regime: str | None = None,
    stats: dict | None = None,
) -> OrderedHamPath | None:
    """Minimum-cost ordered Hamiltonian path via the chain-tuple DP.

    ``regime`` forces ``"dense"`` or ``"sparse"``. By default the sparse
    regime is used when ``2**n < n**k`` (the subset bound is the smaller one)
    or when the dense table would exceed ``budget`` entries. Among optimal paths the
    lexicographically smallest vertex sequence is returned. ``stats``, when
    given, receives the regime and state counts.
    """
    n = instance.n
    if stats is None:
        stats = {}
    if n == 0:
        return OrderedHamPath((), Fraction(0))
    if not instance.connected:
        stats.update(regime="none", table_entries=0, finite_states=0)
        return None
    ctx = chain_context(instance, chains)
    if regime is None:
        regime = default_regime(n, ctx.chains, budget)
    if regime == "dense":
        size = dense_table_size(ctx.chains)
        if size > budget:
            raise StateBudgetExceeded(size, budget)
        seq = _solve_dense(instance, ctx, stats)
    elif regime == "sparse":
        if _codes_fit(ctx.chains) and scaled_costs(instance).dtype != object:
            seq = _solve_sparse_np(instance, ctx, budget, stats)
        else:
            seq = _solve_sparse(instance, ctx, budget, stats)
    else:
        raise ValueError(f"unknown regime {regime!r}")
    stats["regime"] = regime
    if seq is None:
        return None
    return OrderedHamPath(tuple(seq), instance.path_cost(seq))


def _solve_dense(instance, ctx, stats):
    n, k = instance.n, ctx.k
    chains = ctx.chains.chains
    lengths = np.array([len(c) for c in chains], dtype=np.int64)
    radix = lengths + 1
    strides = np.concatenate(([1], np.cumprod(radix[:-1]))).astype(np.int64)
    total = int(prod(int(r) for r in radix))

    codes = np.arange(total, dtype=np.int64)
    digits = (codes[:, None] // strides[None, :]) % radix[None, :]
    weight = digits.sum(axis=1)
    by_weight = np.argsort(weight, kind="stable")
    bounds = np.searchsorted(weight[by_weight], np.arange(n + 2))

    # chain_vertex[i, j] = C_i[j] (1-based); column 0 is the sentinel vertex n
    chain_vertex = np.full((k, int(lengths.max()) + 1), n, dtype=np.int64)
    for i, c in enumerate(chains):
        chain_vertex[i, 1:len(c) + 1] = c
    xi = ctx.xi

    sc = scaled_costs(instance)
    w_mat, inf = sc.matrix, sc.inf
    cost = np.full((total, k), inf, dtype=w_mat.dtype)
    rank = np.full((total, k), -1, dtype=np.int64)
    pred = np.full((total, k), -1, dtype=np.int16 if k < 2**15 else np.int64)

    for i, c in enumerate(chains):
        v = c[0]
        if not xi[v].any():
            cost[strides[i], i] = 0
            rank[strides[i], i] = v

    finite = int(np.count_nonzero(rank >= 0))
    for level in range(2, n + 1):
        level_codes = by_weight[bounds[level]:bounds[level + 1]]
        level_digits = digits[level_codes]
        done_codes, done_w, done_prank, done_v = [], [], [], []
        for w in range(k):
            has = level_digits[:, w] > 0
            sel = level_codes[has]
            dig = level_digits[has]
            v = chain_vertex[w, dig[:, w]]
            ok = (xi[v] <= dig).all(axis=1)
            sel, dig, v = sel[ok], dig[ok], v[ok]
            if len(sel) == 0:
                continue
            prev = sel - strides[w]
            dig_prev = dig.copy()
            dig_prev[:, w] -= 1
            best = np.full(len(sel), inf, dtype=w_mat.dtype)
            best_rank = np.full(len(sel), np.iinfo(np.int64).max, dtype=np.int64)
            best_psi = np.full(len(sel), -1, dtype=np.int64)
            for psi in range(k):
                u = chain_vertex[psi, dig_prev[:, psi]]
                cand = cost[prev, psi] + w_mat[u, v]
                r = rank[prev, psi]
                better = (cand < inf) & ((cand < best) | ((cand == best) & (r < best_rank)))
                if better.any():
                    best = np.where(better, cand, best)
                    best_rank = np.where(better, r, best_rank)
                    best_psi = np.where(better, psi, best_psi)
            got = best_psi >= 0
            if not got.any():
                continue
            sel, v = sel[got], v[got]
            cost[sel, w] = best[got]
            pred[sel, w] = best_psi[got]
            done_codes.append(sel)
            done_w.append(np.full(len(sel), w, dtype=np.int64))
            done_prank.append(best_rank[got])
            done_v.append(v)
        if not done_codes:
            stats.update(table_entries=total * k, finite_states=finite)
            return None
        sel = np.concatenate(done_codes)
        ws = np.concatenate(done_w)
        rank[sel, ws] = dense_rank(np.concatenate(done_prank), np.concatenate(done_v))
        finite += len(sel)

    stats.update(table_entries=total * k, finite_states=finite)
    full = total - 1
    ends = [w for w in range(k) if rank[full, w] >= 0]
    if not ends:
        return None
    w = min(ends, key=lambda j: (cost[full, j], rank[full, j]))
    seq = []
    code = full
    digs = digits[full].copy()
    while True:
        seq.append(int(chain_vertex[w, digs[w]]))
        psi = int(pred[code, w])
        code -= int(strides[w])
        digs[w] -= 1
        if psi < 0:
            break
        w = psi
    seq.reverse()
    return seq


def _codes_fit(chains: ChainDecomposition) -> bool:
    return prod(len(c) + 1 for c in chains.chains) < 2**62


def _solve_sparse_np(instance, ctx, budget, stats):
    n, k = instance.n, ctx.k
    chains = ctx.chains.chains
    lengths = np.array([len(c) for c in chains], dtype=np.int64)
    radix = lengths + 1
    strides = np.concatenate(([1], np.cumprod(radix[:-1]))).astype(np.int64)
    chain_vertex = np.full((k, int(lengths.max()) + 1), n, dtype=np.int64)
    for i, c in enumerate(chains):
        chain_vertex[i, 1:len(c) + 1] = c
    xi = ctx.xi
    sc = scaled_costs(instance)
    w_mat, inf = sc.matrix, sc.inf

    firsts = [i for i, c in enumerate(chains) if not xi[c[0]].any()]
    code = strides[firsts].copy()
    end = np.array(firsts, dtype=np.int64)
    cost = np.zeros(len(firsts), dtype=np.int64)
    last = chain_vertex[end, 1]
    rank = last.copy()
    # per level: (code, end chain, index of predecessor in the previous level)
    history = [(code, end, np.full(len(code), -1, dtype=np.int64))]
    stored = len(code)
    for level in range(2, n + 1):
        digits = (code[:, None] // strides[None, :]) % radix[None, :]
        assert (digits.sum(axis=1) == level - 1).all()
        parts = []
        for w in range(k):
            has = np.flatnonzero(digits[:, w] < lengths[w])
            if len(has) == 0:
                continue
            v = chain_vertex[w, digits[has, w] + 1]
            c = cost[has] + w_mat[last[has], v]
            ok = (c < inf) & (xi[v] <= digits[has]).all(axis=1)
            has, v, c = has[ok], v[ok], c[ok]
            if len(has):
                parts.append((code[has] + strides[w], np.full(len(has), w, dtype=np.int64), c, rank[has], v, has))
        if not parts:
            stats.update(table_entries=stored, finite_states=stored)
            return None
        ncode, nend, ncost, nprank, nv, nprev = (np.concatenate(x) for x in zip(*parts))
        key = ncode * k + nend
        order = np.lexsort((nprank, ncost, key))
        key = key[order]
        first = np.empty(len(key), dtype=bool)
        first[0] = True
        first[1:] = key[1:] != key[:-1]
        pick = order[first]
        code, end, cost = ncode[pick], nend[pick], ncost[pick]
        last = nv[pick]
        rank = dense_rank(nprank[pick], last)
        history.append((code, end, nprev[pick]))
        stored += len(code)
        if stored > budget:
            raise StateBudgetExceeded(stored, budget)
    stats.update(table_entries=stored, finite_states=stored)
    if len(code) == 0:
        return None
    best = np.lexsort((rank, cost))[0]
    seq = []
    idx = int(best)
    for code, end, prev in reversed(history):
        w = int(end[idx])
        x = int(code[idx]) // int(strides[w]) % int(radix[w])
        seq.append(int(chain_vertex[w, x]))
        idx = int(prev[idx])
    seq.reverse()
    return seq


def _solve_sparse(instance, ctx, budget, stats):
    n, k = instance.n, ctx.k
    chains = ctx.chains.chains
    lengths = [len(c) for c in chains]
    xi = [tuple(int(t) for t in row) for row in ctx.xi]
    w_mat = python_costs(instance)

    stored = 0
    # per level: key -> (cost, rank); back-pointers for every stored state
    back = {}
    cur = {}
    for i, c in enumerate(chains):
        v = c[0]
        if not any(xi[v]):
            x = tuple(1 if j == i else 0 for j in range(k))
            cur[x, i] = (0, v)
    stored += len(cur)
    for level in range(2, n + 1):
        nxt = {}
        for (x, psi), (c, r) in cur.items():
            assert sum(x) == level - 1
            row = w_mat[chains[psi][x[psi] - 1]]
            for w in range(k):
                if x[w] == lengths[w]:
                    continue
                v = chains[w][x[w]]
                cuv = row[v]
                if cuv is None:
                    continue
                xv = xi[v]
                if any(xv[i] > x[i] for i in range(k)):
                    continue
                key = (x[:w] + (x[w] + 1,) + x[w + 1:], w)
                cand = c + cuv
                old = nxt.get(key)
                if old is None or cand < old[0] or (cand == old[0] and r < old[1]):
                    nxt[key] = (cand, r, psi, v)
        stored += len(nxt)
        if stored > budget:
            raise StateBudgetExceeded(stored, budget)
        if not nxt:
            stats.update(table_entries=stored, finite_states=stored)
            return None
        keys = list(nxt)
        ranks = dense_rank_py([(nxt[key][1], nxt[key][3]) for key in keys])
        cur = {}
        for key, r in zip(keys, ranks):
            c, _, psi, _ = nxt[key]
            cur[key] = (c, r)
            back[key] = psi
    stats.update(table_entries=stored, finite_states=stored)
    if not cur:
        return None
    (x, w), _ = min(cur.items(), key=lambda item: item[1])
    seq = []
    while True:
        seq.append(chains[w][x[w] - 1])
        psi = back.get((x, w))
        if psi is None:
            break
        x = x[:w] + (x[w] - 1,) + x[w + 1:]
        w = psi
    seq.reverse()
    return seq


def tsppc_reduce(instance: Instance, start: int) -> Instance:
    """Turn a precedence-constrained tour problem into a path problem.

    Adds vertex ``n`` with the neighbourhood and edge costs of ``start`` and
    forces it after every other vertex; ``start`` is forced before every
    other vertex. An optimal ordered Hamiltonian path of the result, with the
    new vertex read as a return to ``start``, is an optimal tour.
    """
    n = instance.n
    if not 0 <= start < n:
        raise ValueError(f"start vertex {start} out of range")
    g = instance.graph
    edges = set(g.edges)
    costs = dict(g.costs) if g.weighted else None
    for w in g.neighbors[start]:
        edges.add((w, n))
        if costs is not None:
            costs[w, n] = g.cost(start, w)
    pairs = list(instance.order.pairs())
    pairs += [(start, v) for v in range(n) if v != start]
    pairs += [(v, n) for v in range(n)]
    graph = Graph(n + 1, frozenset(edges), costs)
    return Instance(graph, build_order(n + 1, pairs), instance.comments)

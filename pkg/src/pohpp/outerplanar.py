"""Quadratic-time solver for outerplanar graphs.

A 2-connected outerplanar graph has a unique Hamiltonian cycle, its outer
face. Any prefix of a Hamiltonian path meets that cycle in a contiguous arc,
so the DP only needs states ``(a, b, w)``: the path covers the clockwise arc
``[a, b]`` and ends in ``a`` (``w = 1``) or ``b`` (``w = 2``). The predecessor of
the new end is either its cycle neighbour inside the arc or the opposite end
of the arc, reached over the chord ``ab``.

General outerplanar graphs are split into blocks; a Hamiltonian path exists
only if the block-cut tree is a path, and then each block is solved with its
cut vertices pinned to the first/last position.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np

from ._dp import dense_rank, scaled_costs
from .errors import BlockTreeNotPath, CycleDetected, NotOuterplanar, NotOuterplanar2Connected
from .model import Graph, Instance, OrderedHamPath, build_order, iter_bits


@dataclass(frozen=True)
class OuterCycle:
    """Cyclic numbering of the outer face: ``order[p]`` is the vertex at position ``p``."""

    order: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def position(self) -> dict[int, int]:
        return {v: p for p, v in enumerate(self.order)}

    def plus(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def minus(self, a: int, b: int) -> int:
        return (a - b) % self.n

    def arc(self, a: int, b: int) -> list[int]:
        """Positions of the clockwise interval ``[a, b]``."""
        return [(a + t) % self.n for t in range(self.minus(b, a) + 1)]

    def chords(self, graph: Graph) -> list[tuple[int, int]]:
        cyc = {frozenset((self.order[p], self.order[(p + 1) % self.n])) for p in range(self.n)}
        return sorted(e for e in graph.edges if frozenset(e) not in cyc)


def find_outer_cycle(graph: Graph) -> OuterCycle:
    """The outer face of a 2-connected outerplanar graph on ``n >= 3`` vertices.

    Repeatedly removes a degree-2 vertex ``v`` (joining its two neighbours),
    then re-inserts the vertices in reverse order. The resulting cycle is
    checked explicitly: consecutive vertices adjacent, chords pairwise
    non-crossing. Raises :class:`NotOuterplanar2Connected` otherwise.
    """
    n = graph.n
    if n < 3:
        raise NotOuterplanar2Connected(f"need at least 3 vertices, got {n}")
    if graph.m > 2 * n - 3:
        raise NotOuterplanar2Connected("too many edges for an outerplanar graph")
    adj = [set(a) for a in graph.neighbors]
    if any(len(a) < 2 for a in adj):
        raise NotOuterplanar2Connected("a vertex of degree < 2")
    alive = n
    gone = [False] * n
    stack = [v for v in range(n - 1, -1, -1) if len(adj[v]) == 2]
    removed = []
    while alive > 3:
        while stack and (gone[stack[-1]] or len(adj[stack[-1]]) != 2):
            stack.pop()
        if not stack:
            raise NotOuterplanar2Connected("no vertex of degree 2 left")
        v = stack.pop()
        u, w = sorted(adj[v])
        adj[u].discard(v)
        adj[w].discard(v)
        adj[u].add(w)
        adj[w].add(u)
        adj[v] = set()
        gone[v] = True
        alive -= 1
        removed.append((v, u, w))
        for x in (u, w):
            if len(adj[x]) == 2:
                stack.append(x)
            elif len(adj[x]) < 2:
                raise NotOuterplanar2Connected("graph is not 2-connected")
    rest = [v for v in range(n) if not gone[v]]
    a, b, c = rest
    if not (b in adj[a] and c in adj[b] and a in adj[c]):
        raise NotOuterplanar2Connected("reduction did not end in a triangle")
    nxt = {a: b, b: c, c: a}
    for v, u, w in reversed(removed):
        if nxt[u] == w:
            nxt[u], nxt[v] = v, w
        elif nxt[w] == u:
            nxt[w], nxt[v] = v, u
        else:
            raise NotOuterplanar2Connected("neighbours of a removed vertex are not consecutive")
    seq = [0]
    while len(seq) < n:
        seq.append(nxt[seq[-1]])
    if seq[1] > seq[-1]:
        seq = [0] + seq[:0:-1]
    cycle = OuterCycle(tuple(seq))
    _validate_cycle(graph, cycle)
    return cycle


def _validate_cycle(graph: Graph, cycle: OuterCycle):
    n = cycle.n
    if sorted(cycle.order) != list(range(graph.n)):
        raise NotOuterplanar2Connected("cycle is not Hamiltonian")
    for p in range(n):
        if not graph.has_edge(cycle.order[p], cycle.order[(p + 1) % n]):
            raise NotOuterplanar2Connected("cycle uses a non-edge")
    pos = cycle.position
    spans = sorted(
        ((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in cycle.chords(graph)),
        key=lambda s: (s[0], -s[1]),
    )
    open_spans = []
    for lo, hi in spans:
        while open_spans and open_spans[-1] <= lo:
            open_spans.pop()
        if open_spans and hi > open_spans[-1]:
            raise NotOuterplanar2Connected("crossing chords")
        open_spans.append(hi)


@dataclass(frozen=True)
class IntervalBounds:
    """Clockwise offsets (from each position) of its first and last strict predecessor; 0 if none."""

    first: np.ndarray
    last: np.ndarray


def interval_bounds(instance: Instance, cycle: OuterCycle) -> IntervalBounds:
    n = cycle.n
    pos = cycle.position
    first = np.zeros(n, dtype=np.int64)
    last = np.zeros(n, dtype=np.int64)
    order = instance.order
    for p, v in enumerate(cycle.order):
        d = order.down_mask(v)
        if d:
            offs = [(pos[u] - p) % n for u in iter_bits(d)]
            first[p] = min(offs)
            last[p] = max(offs)
    return IntervalBounds(first, last)


class OuterTable:
    """Filled interval table; positions refer to the outer-cycle numbering.

    ``cost[L, a, w]`` is the (scaled) entry for the arc of length ``L`` starting
    at position ``a``; ``w`` is 0 for "ends at a" and 1 for "ends at b".
    """

    def __init__(self, instance, cycle, cost, choice, rank_full, costs):
        self.instance = instance
        self.cycle = cycle
        self.cost = cost
        self.choice = choice
        self.rank_full = rank_full
        self.inf = costs.inf
        self.scaled = costs

    def finite(self, a: int, b: int, omega: int) -> bool:
        length = self.cycle.minus(b, a) + 1
        return bool(self.cost[length, a, omega - 1] < self.inf)

    def witness(self, a: int, b: int, omega: int) -> list[int]:
        """Vertex sequence realising entry ``(a, b, omega)`` (omega in {1, 2})."""
        n = self.cycle.n
        length = self.cycle.minus(b, a) + 1
        w = omega - 1
        if not self.cost[length, a, w] < self.inf:
            raise ValueError("entry is infinite")
        out = []
        while True:
            if w == 0:
                out.append(a)
                nxt_a = (a + 1) % n
            else:
                out.append((a + length - 1) % n)
                nxt_a = a
            if length == 1:
                break
            w = int(self.choice[length, a, w])
            a, length = nxt_a, length - 1
        out.reverse()
        return [self.cycle.order[p] for p in out]

    def entry_cost(self, a: int, b: int, omega: int) -> Fraction:
        """Exact cost of entry ``(a, b, omega)``, undoing the integer scaling."""
        length = self.cycle.minus(b, a) + 1
        raw = self.cost[length, a, omega - 1]
        return Fraction(int(raw), self.scaled.scale) + (length - 1) * self.scaled.shift

    def best_full(self, omegas=(1,)):
        """Best ``(cost, rank, a, omega)`` over full-circle entries ``(a, a-1, omega)``."""
        n = self.cycle.n
        best = None
        for omega in omegas:
            for a in range(n):
                c = self.cost[n, a, omega - 1]
                if not c < self.inf:
                    continue
                key = (c, int(self.rank_full[a, omega - 1]), a, omega)
                if best is None or key[:2] < best[:2]:
                    best = key
        return best


def outer_interval_table(instance: Instance, cycle: OuterCycle, *, force_object: bool = False) -> OuterTable:
    n = cycle.n
    verts = np.array(cycle.order, dtype=np.int64)
    sc = scaled_costs(instance, force_object=force_object)
    inf = sc.inf
    wp = sc.matrix[np.ix_(verts, verts)]
    bounds = interval_bounds(instance, cycle)
    a = np.arange(n)
    cyc = wp[a, (a + 1) % n]

    dtype = wp.dtype
    cost = np.full((n + 1, n, 2), inf, dtype=dtype)
    choice = np.zeros((n + 1, n, 2), dtype=np.int8)
    base = np.where(bounds.last == 0, 0, inf).astype(dtype)
    cost[1, :, 0] = base
    cost[1, :, 1] = base
    rank = np.stack([verts, verts], axis=1)

    for length in range(2, n + 1):
        b = (a + length - 1) % n
        x = (a + 1) % n
        y = (b - 1) % n
        chord = wp[a, b]
        prev = cost[length - 1]

        # end at a: predecessor x (cycle edge) or b (chord)
        c_x = prev[x, 0] + cyc
        c_b = prev[x, 1] + chord
        take_b = _better(c_b, rank[x, 1], c_x, rank[x, 0])
        best_a = np.where(take_b, c_b, c_x)
        rank_a = np.where(take_b, rank[x, 1], rank[x, 0])
        ok_a = (bounds.last <= length - 1) & _lt(best_a, inf)

        # end at b: predecessor y (cycle edge) or a (chord)
        d_y = prev[a, 1] + cyc[y]
        d_a = prev[a, 0] + chord
        take_a = _better(d_a, rank[a, 0], d_y, rank[a, 1])
        best_b = np.where(take_a, d_a, d_y)
        rank_b = np.where(take_a, rank[a, 0], rank[a, 1])
        fb = bounds.first[b]
        ok_b = ((fb == 0) | (fb >= n - length + 1)) & _lt(best_b, inf)

        cost[length, :, 0] = np.where(ok_a, best_a, inf)
        cost[length, :, 1] = np.where(ok_b, best_b, inf)
        choice[length, :, 0] = take_b
        choice[length, :, 1] = 1 - take_a.astype(np.int8)

        new_rank = np.full((n, 2), -1, dtype=np.int64)
        ia = np.flatnonzero(ok_a)
        ib = np.flatnonzero(ok_b)
        r = dense_rank(
            np.concatenate([rank_a[ia], rank_b[ib]]),
            np.concatenate([verts[ia], verts[b[ib]]]),
        )
        new_rank[ia, 0] = r[: len(ia)]
        new_rank[ib, 1] = r[len(ia):]
        rank = new_rank
    return OuterTable(instance, cycle, cost, choice, rank, sc)


def _lt(x, y):
    return np.asarray(x < y, dtype=bool)


def _better(c1, r1, c2, r2):
    """Elementwise: is (c1, r1) strictly smaller than (c2, r2)?"""
    return _lt(c1, c2) | (np.asarray(c1 == c2, dtype=bool) & (r1 < r2))


def solve_outerplanar_2conn(instance: Instance, cycle: OuterCycle) -> OrderedHamPath | None:
    """Minimum-cost solution on a 2-connected outerplanar graph with known outer cycle."""
    table = outer_interval_table(instance, cycle)
    best = table.best_full()
    if best is None:
        return None
    _, _, a, omega = best
    seq = table.witness(a, cycle.minus(a, 1), omega)
    return OrderedHamPath(tuple(seq), instance.path_cost(seq))


@dataclass(frozen=True)
class BlockPath:
    """Blocks along the block-cut path; ``cuts[i]`` is shared by ``blocks[i]`` and ``blocks[i + 1]``."""

    blocks: tuple[tuple[int, ...], ...]
    cuts: tuple[int, ...]

    def reversed(self) -> "BlockPath":
        return BlockPath(self.blocks[::-1], self.cuts[::-1])

    def compatible(self, order) -> bool:
        """No pair ``u < v`` of the order has ``u`` homed in a later block than ``v``."""
        home = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                home.setdefault(v, i)
        return all(home[u] <= home[v] for u, v in order.pairs())

    def sub_instances(self, instance: Instance) -> list[Instance]:
        """Per-block instances (vertices relabelled in increasing order) whose
        orders pin the entry cut vertex first and the exit cut vertex last.

        Raises :class:`CycleDetected` when a pinning contradicts the order.
        """
        out = []
        last = len(self.blocks) - 1
        for i, block in enumerate(self.blocks):
            extra = []
            if i > 0:
                extra += [(self.cuts[i - 1], v) for v in block if v != self.cuts[i - 1]]
            if i < last:
                extra += [(v, self.cuts[i]) for v in block if v != self.cuts[i]]
            out.append(_block_instance(instance, block, extra))
        return out


def block_path(graph: Graph) -> BlockPath:
    """Blocks of a connected graph in block-cut-path order; raises :class:`BlockTreeNotPath`."""
    if graph.n <= 1:
        return BlockPath((tuple(range(graph.n)),), ())
    g = graph.to_networkx()
    blocks = [tuple(sorted(b)) for b in nx.biconnected_components(g)]
    blocks.sort()
    if len(blocks) == 1:
        return BlockPath((blocks[0],), ())
    cut_blocks = {}
    for i, b in enumerate(blocks):
        for v in b:
            cut_blocks.setdefault(v, []).append(i)
    cut_blocks = {v: bs for v, bs in cut_blocks.items() if len(bs) > 1}
    per_block = [[] for _ in blocks]
    for v, bs in cut_blocks.items():
        if len(bs) > 2:
            raise BlockTreeNotPath(f"cut vertex {v} lies in {len(bs)} blocks")
        for i in bs:
            per_block[i].append(v)
    if any(len(cs) > 2 for cs in per_block):
        raise BlockTreeNotPath("a block contains more than two cut vertices")
    start = min(i for i, cs in enumerate(per_block) if len(cs) == 1)
    order, cuts = [start], []
    came_by = None
    while True:
        nxt_cut = [c for c in per_block[order[-1]] if c != came_by]
        if not nxt_cut:
            break
        c = nxt_cut[0]
        nb = next(i for i in cut_blocks[c] if i != order[-1])
        cuts.append(c)
        order.append(nb)
        came_by = c
    return BlockPath(tuple(blocks[i] for i in order), tuple(cuts))


def _block_instance(instance: Instance, vertices, extra_pairs):
    index = {v: i for i, v in enumerate(vertices)}
    g = instance.graph
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    costs = None
    if g.weighted:
        costs = {(index[u], index[v]): c for (u, v), c in g.costs.items() if u in index and v in index}
    order = instance.order
    pairs = [(index[u], index[v]) for v in vertices for u in iter_bits(order.down_mask(v)) if u in index]
    pairs += [(index[u], index[v]) for u, v in extra_pairs]
    return Instance(Graph(len(vertices), frozenset(edges), costs), build_order(len(vertices), pairs))


def _solve_direction(instance, bp: BlockPath, cycles):
    if not bp.compatible(instance.order):
        return None
    try:
        subs = bp.sub_instances(instance)
    except CycleDetected:
        return None
    seq, total = [], Fraction(0)
    for i, (block, sub) in enumerate(zip(bp.blocks, subs)):
        part = _solve_block(sub, cycles.get(block))
        if part is None:
            return None
        local = [block[t] for t in part.sequence]
        seq.extend(local if i == 0 else local[1:])
        total += part.cost
    return OrderedHamPath(tuple(seq), total)


def _solve_block(sub: Instance, cycle):
    if sub.n == 1:
        return OrderedHamPath((0,), Fraction(0))
    if sub.n == 2:
        for seq in ((0, 1), (1, 0)):
            if not sub.order.precedes(seq[1], seq[0]):
                return OrderedHamPath(seq, sub.graph.cost(0, 1))
        return None
    return solve_outerplanar_2conn(sub, cycle)


def solve_outerplanar(instance: Instance) -> OrderedHamPath | None:
    """Minimum-cost solution on an outerplanar graph (any partial order).

    Raises :class:`NotOuterplanar` if some block is not outerplanar. A
    block-cut tree that is not a path means no Hamiltonian path: ``None``.
    """
    n = instance.n
    if n == 0:
        return OrderedHamPath((), Fraction(0))
    if not instance.connected:
        return None
    g = instance.graph
    if n == 1:
        return OrderedHamPath((0,), Fraction(0))
    blocks = [tuple(sorted(b)) for b in nx.biconnected_components(g.to_networkx())]
    cycles = {}
    for b in blocks:
        if len(b) >= 3:
            sub = _block_instance(Instance(g, instance.order), b, ())
            try:
                cycles[b] = find_outer_cycle(sub.graph)
            except NotOuterplanar2Connected as exc:
                raise NotOuterplanar(f"block {list(b)[:10]} is not outerplanar: {exc}") from None
    try:
        bp = block_path(g)
    except BlockTreeNotPath:
        return None
    if len(bp.blocks) == 1:
        return _solve_block(instance, cycles.get(bp.blocks[0]))
    candidates = []
    for direction in (bp, bp.reversed()):
        sol = _solve_direction(instance, direction, cycles)
        if sol is not None:
            candidates.append(sol)
    if not candidates:
        return None
    return min(candidates, key=lambda p: (p.cost, p.sequence))


def is_outerplanar(graph: Graph) -> bool:
    """Every block is an edge/vertex or passes :func:`find_outer_cycle`."""
    if graph.n <= 2:
        return True
    for b in nx.biconnected_components(graph.to_networkx()):
        if len(b) >= 3:
            vs = sorted(b)
            index = {v: i for i, v in enumerate(vs)}
            sub = Graph(len(vs), frozenset((index[u], index[v]) for u, v in graph.edges if u in index and v in index))
            try:
                find_outer_cycle(sub)
            except NotOuterplanar2Connected:
                return False
    return True

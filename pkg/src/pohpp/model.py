"""Graphs, partial orders, problem instances and poset analytics.

Partial orders are stored transitively closed, one Python ``int`` bitset per
element for its strict predecessors and one for its strict successors.
Reflexive pairs are implicit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx
import numpy as np

from .errors import CycleDetected, NonEdgeStep, NotAPermutation, OrderViolation


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # go through the shortest decimal repr, never through binary expansion
        return Fraction(repr(value))
    return Fraction(value)


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``costs`` is either ``None`` (unweighted, every edge costs 1) or maps every
    edge ``(u, v)`` with ``u < v`` to an exact :class:`~fractions.Fraction`.
    """

    n: int
    edges: frozenset
    costs: Mapping[tuple[int, int], Fraction] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            norm.add(_edge_key(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.costs is not None:
            costs = {}
            for (u, v), c in self.costs.items():
                key = _edge_key(u, v)
                if key not in norm:
                    raise ValueError(f"cost given for non-edge {key}")
                costs[key] = to_fraction(c)
            if len(costs) != len(norm):
                missing = sorted(norm - costs.keys())[:3]
                raise ValueError(f"weighted graph is missing costs, e.g. for {missing}")
            object.__setattr__(self, "costs", costs)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], costs=None) -> "Graph":
        """Build a graph, rejecting duplicate edges (in either orientation)."""
        seen = set()
        for u, v in edges:
            key = _edge_key(u, v)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen), costs)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return self.costs is not None

    def cost(self, u: int, v: int) -> Fraction:
        if self.costs is None:
            if _edge_key(u, v) not in self.edges:
                raise KeyError((u, v))
            return Fraction(1)
        return self.costs[_edge_key(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return _edge_key(u, v) in self.edges

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense boolean adjacency matrix (constant-time edge queries)."""
        a = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            e = np.array(sorted(self.edges), dtype=np.int64)
            a[e[:, 0], e[:, 1]] = True
            a[e[:, 1], e[:, 0]] = True
        a.flags.writeable = False
        return a

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        nbrs = self.neighbors
        while stack:
            for w in nbrs[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(sorted(self.edges))
        return g

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges and self.costs == other.costs

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        kind = "weighted" if self.weighted else "unweighted"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


class PartialOrder:
    """Transitively closed strict partial order on ``0..n-1``.

    Build instances with :func:`build_order`; the constructor trusts its input.
    """

    __slots__ = ("n", "_down", "_up", "__dict__")

    def __init__(self, n: int, down: Sequence[int], up: Sequence[int]):
        self.n = n
        self._down = tuple(down)
        self._up = tuple(up)

    def down_mask(self, v: int) -> int:
        """Bitset of the strict predecessors of ``v``."""
        return self._down[v]

    def up_mask(self, v: int) -> int:
        return self._up[v]

    def precedes(self, u: int, v: int) -> bool:
        return bool(self._down[v] >> u & 1)

    def comparable(self, u: int, v: int) -> bool:
        return self.precedes(u, v) or self.precedes(v, u)

    def is_minimal(self, v: int) -> bool:
        return self._down[v] == 0

    @cached_property
    def _pred_lists(self):
        return tuple(tuple(iter_bits(d)) for d in self._down)

    @cached_property
    def _succ_lists(self):
        return tuple(tuple(iter_bits(d)) for d in self._up)

    def preds(self, v: int) -> tuple[int, ...]:
        return self._pred_lists[v]

    def succs(self, v: int) -> tuple[int, ...]:
        return self._succ_lists[v]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            for u in iter_bits(self._down[v]):
                yield (u, v)

    @cached_property
    def strict(self) -> frozenset:
        return frozenset(self.pairs())

    @cached_property
    def size(self) -> int:
        """Number of strict pairs."""
        return sum(bin(d).count("1") for d in self._down)

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Transitive reduction: pairs ``u < v`` with nothing strictly between."""
        out = []
        for v in range(self.n):
            below = self._down[v]
            implied = 0
            for w in iter_bits(below):
                implied |= self._down[w]
            for u in iter_bits(below & ~implied):
                out.append((u, v))
        out.sort()
        return out

    def restrict(self, vertices: Sequence[int]) -> "PartialOrder":
        """The induced order on ``vertices``, relabelled to ``0..len-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        pairs = [(index[u], index[v]) for v in vertices for u in iter_bits(self._down[v]) if u in index]
        return build_order(len(vertices), pairs)

    def dual(self) -> "PartialOrder":
        return PartialOrder(self.n, self._up, self._down)

    def __eq__(self, other):
        if not isinstance(other, PartialOrder):
            return NotImplemented
        return self.n == other.n and self._down == other._down

    def __hash__(self):
        return hash((self.n, self._down))

    def __repr__(self):
        return f"PartialOrder(n={self.n}, pairs={self.size})"


def build_order(n: int, pairs: Iterable[Sequence[int]]) -> PartialOrder:
    """Transitive closure of ``pairs`` as a strict partial order on ``0..n-1``.

    Pairs ``(v, v)`` are reflexive and ignored. Raises :class:`CycleDetected`
    if the pairs contain a directed cycle.
    """
    succ = [set() for _ in range(n)]
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"pair ({u}, {v}) out of range for n={n}")
        if u != v:
            succ[u].add(v)
    indeg = [0] * n
    for u in range(n):
        for v in succ[u]:
            indeg[v] += 1
    # Kahn with a stack; processing order is irrelevant for the closure
    topo = []
    stack = [v for v in range(n) if indeg[v] == 0]
    while stack:
        u = stack.pop()
        topo.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    if len(topo) != n:
        raise CycleDetected(_find_cycle(succ, {v for v in range(n) if indeg[v] > 0}))

    pred = [[] for _ in range(n)]
    for u in range(n):
        for v in succ[u]:
            pred[v].append(u)
    down = [0] * n
    for v in topo:
        d = 0
        for u in pred[v]:
            d |= down[u] | (1 << u)
        down[v] = d
    up = [0] * n
    for u in reversed(topo):
        d = 0
        for v in succ[u]:
            d |= up[v] | (1 << v)
        up[u] = d
    return PartialOrder(n, down, up)


def _find_cycle(succ, candidates):
    # every leftover vertex keeps a leftover predecessor, so walking
    # predecessors inside the leftovers must revisit a vertex
    pred = {v: [] for v in candidates}
    for u in candidates:
        for v in succ[u]:
            if v in candidates:
                pred[v].append(u)
    path, where = [], {}
    v = min(candidates)
    while v not in where:
        where[v] = len(path)
        path.append(v)
        v = min(pred[v])
    cycle = path[where[v]:] + [v]
    return cycle[::-1]


def trivial_order(n: int) -> PartialOrder:
    return PartialOrder(n, [0] * n, [0] * n)


def total_order(sequence: Sequence[int]) -> PartialOrder:
    """The linear order in which ``sequence`` is listed."""
    n = len(sequence)
    return build_order(n, list(zip(sequence, sequence[1:])))


@dataclass(frozen=True)
class ChainDecomposition:
    """Partition of the ground set into chains, each listed bottom to top."""

    chains: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return len(self.chains)

    @cached_property
    def chain_of(self) -> dict[int, tuple[int, int]]:
        """Vertex -> (chain index, 1-based position)."""
        return {v: (i, j + 1) for i, c in enumerate(self.chains) for j, v in enumerate(c)}


def chain_decomposition(order: PartialOrder) -> ChainDecomposition:
    """Minimum chain partition via maximum matching on the split comparability digraph.

    Matched pairs ``u -> v`` glue ``v`` directly after ``u``; by Koenig/Fulkerson
    the number of chains is ``n - |matching|``, which equals the width.
    """
    n = order.n
    g = nx.Graph()
    g.add_nodes_from(range(2 * n))
    g.add_edges_from((u, n + v) for u, v in order.pairs())
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=range(n))
    nxt = {}
    has_prev = set()
    for u in range(n):
        w = matching.get(u)
        if w is not None:
            nxt[u] = w - n
            has_prev.add(w - n)
    chains = []
    for u in range(n):
        if u in has_prev:
            continue
        chain = [u]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.append(tuple(chain))
    chains.sort()
    return ChainDecomposition(tuple(chains))


def width(order: PartialOrder) -> int:
    return chain_decomposition(order).width


def longest_chain_from(order: PartialOrder) -> list[int]:
    """For every element, the number of elements of the longest chain it starts."""
    n = order.n
    # elements with more strict successors can never come later in a chain
    by_up = sorted(range(n), key=lambda v: bin(order.up_mask(v)).count("1"))
    length = [0] * n
    for v in by_up:
        best = 0
        for w in order.succs(v):
            if length[w] > best:
                best = length[w]
        length[v] = best + 1
    return length


def height(order: PartialOrder) -> int:
    if order.n == 0:
        return 0
    return max(longest_chain_from(order))


def dlo(order: PartialOrder) -> int:
    """Distance to linear order: elements off a maximum chain."""
    return order.n - height(order)


def is_linear_extension(seq: Sequence[int], order: PartialOrder) -> bool:
    _check_permutation(seq, order.n)
    seen = 0
    for v in seq:
        if order.down_mask(v) & ~seen:
            return False
        seen |= 1 << v
    return True


def _check_permutation(seq, n):
    if len(seq) != n or set(seq) != set(range(n)):
        raise NotAPermutation(f"expected a permutation of 0..{n - 1}, got {list(seq)[:20]}")


@dataclass(frozen=True)
class Instance:
    """A graph, a partial order on its vertices and (via the graph) a cost function."""

    graph: Graph
    order: PartialOrder
    comments: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.graph.n != self.order.n:
            raise ValueError(f"graph has {self.graph.n} vertices but order has {self.order.n}")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def weighted(self) -> bool:
        return self.graph.weighted

    @cached_property
    def connected(self) -> bool:
        return self.graph.is_connected()

    def path_cost(self, seq: Sequence[int]) -> Fraction:
        return sum((self.graph.cost(u, v) for u, v in zip(seq, seq[1:])), Fraction(0))


@dataclass(frozen=True)
class OrderedHamPath:
    sequence: tuple[int, ...]
    cost: Fraction


def verify_solution(instance: Instance, seq: Sequence[int]) -> OrderedHamPath:
    """Check ``seq`` is an ordered Hamiltonian path extending the order.

    Checks run in the order permutation, adjacency, extension; the first
    failure is raised as :class:`NotAPermutation`, :class:`NonEdgeStep` or
    :class:`OrderViolation`.
    """
    seq = tuple(int(v) for v in seq)
    _check_permutation(seq, instance.n)
    g = instance.graph
    for i, (u, v) in enumerate(zip(seq, seq[1:])):
        if not g.has_edge(u, v):
            raise NonEdgeStep(i, u, v)
    order = instance.order
    seen = 0
    for v in seq:
        missing = order.down_mask(v) & ~seen
        if missing:
            raise OrderViolation(next(iter_bits(missing)), v)
        seen |= 1 << v
    return OrderedHamPath(seq, instance.path_cost(seq))

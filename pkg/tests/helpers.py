"""Builders, independent brute-force oracles and hypothesis strategies for the tests."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

import networkx as nx
from hypothesis import strategies as st

from pohpp.model import Graph, Instance, build_order


def make(n, edges, pairs=(), costs=None) -> Instance:
    edges = frozenset((min(u, v), max(u, v)) for u, v in edges)
    if costs is not None:
        costs = {(min(u, v), max(u, v)): Fraction(c) for (u, v), c in costs.items()}
    return Instance(Graph(n, edges, costs), build_order(n, pairs))


def cycle_edges(n):
    return [(i, (i + 1) % n) for i in range(n)]


def path_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def complete_edges(n):
    return list(combinations(range(n), 2))


# ---------------------------------------------------------------- independent oracles


def naive_solutions(inst: Instance):
    """Every permutation that is a path and a linear extension, checked pairwise."""
    g = inst.graph
    pairs = list(inst.order.pairs())
    out = []
    for seq in permutations(range(inst.n)):
        pos = {v: i for i, v in enumerate(seq)}
        if all(g.has_edge(a, b) for a, b in zip(seq, seq[1:])) and all(pos[u] < pos[v] for u, v in pairs):
            out.append(seq)
    return out


def naive_optimum(inst: Instance):
    """``(cost, sequence)`` of the lexicographically smallest optimum, or ``None``."""
    sols = naive_solutions(inst)
    if not sols:
        return None
    return min((inst.path_cost(s), s) for s in sols)


def max_antichain_size(order) -> int:
    n = order.n
    best = 0
    for mask in range(1 << n):
        members = [v for v in range(n) if mask >> v & 1]
        if len(members) > best and not any(order.comparable(a, b) for a, b in combinations(members, 2)):
            best = len(members)
    return best


def all_chains_via_covers(order):
    """Every maximal-by-extension chain built by walking cover pairs upward."""
    covers = {v: [] for v in range(order.n)}
    for u, v in order.cover_pairs():
        covers[u].append(v)
    out = []

    def walk(path):
        out.append(tuple(path))
        for w in covers[path[-1]]:
            walk(path + [w])

    for v in range(order.n):
        walk([v])
    return out


def longest_chain_bruteforce(order) -> int:
    return max((len(c) for c in all_chains_via_covers(order)), default=0)


def outer_cycle_by_connectivity(graph: Graph):
    """Edge ``uv`` is on the outer cycle iff ``G - {u, v}`` stays connected (n >= 4)."""
    g = graph.to_networkx()
    outer = nx.Graph()
    outer.add_nodes_from(g)
    for u, v in g.edges:
        h = g.copy()
        h.remove_nodes_from([u, v])
        if nx.is_connected(h):
            outer.add_edge(u, v)
    return outer


def is_circular_arc(positions, n) -> bool:
    """Do the positions form one contiguous arc of ``0..n-1`` read cyclically?"""
    s = set(positions)
    if len(s) in (0, n):
        return True
    starts = [p for p in s if (p - 1) % n not in s]
    return len(starts) == 1


# ---------------------------------------------------------------- random instances


def random_order_pairs(rng, n, density):
    perm = list(range(n))
    rng.shuffle(perm)
    return [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]


def random_instance(rng: random.Random, n, p_edge=0.6, density=0.2, weighted=True, connected=True):
    edges = {(u, v) for u, v in combinations(range(n), 2) if rng.random() < p_edge}
    if connected:
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(1, n):
            u, v = perm[i], perm[rng.randrange(i)]
            edges.add((min(u, v), max(u, v)))
    costs = None
    if weighted:
        costs = {e: Fraction(rng.randint(-3, 9), rng.choice((1, 2, 4, 3))) for e in edges}
    return make(n, edges, random_order_pairs(rng, n, density), costs)


def triangulated_polygon(rng, size, keep=0.5):
    """Edges of a ``size``-gon on ``0..size-1`` with a random subset of triangulation chords."""
    edges = set(cycle_edges(size)) if size >= 3 else ({(0, 1)} if size == 2 else set())
    stack = [list(range(size))] if size > 3 else []
    while stack:
        poly = stack.pop()
        if len(poly) <= 3:
            continue
        i = rng.randrange(len(poly))
        j = (i + rng.randrange(2, len(poly) - 1)) % len(poly)
        a, b = sorted((i, j))
        if rng.random() < keep:
            edges.add((poly[a], poly[b]))
        stack.append(poly[a:b + 1])
        stack.append(poly[b:] + poly[:a + 1])
    return {(min(u, v), max(u, v)) for u, v in edges}


def relabel(rng, n, edges):
    labels = list(range(n))
    rng.shuffle(labels)
    return {(min(labels[u], labels[v]), max(labels[u], labels[v])) for u, v in edges}


def block_path_graph(rng, sizes, keep=0.5):
    """Glue polygons (size >= 3) or bridges (size 2) along a path of cut vertices."""
    edges, nxt, cut = set(), 0, None
    for size in sizes:
        members = [cut] if cut is not None else []
        while len(members) < size:
            members.append(nxt)
            nxt += 1
        rng.shuffle(members)
        for u, v in triangulated_polygon(rng, size, keep):
            a, b = members[u], members[v]
            edges.add((min(a, b), max(a, b)))
        cut = rng.choice([v for v in members if v != cut])
    return nxt, edges


# ---------------------------------------------------------------- hypothesis strategies


@st.composite
def orders(draw, n):
    perm = draw(st.permutations(list(range(n))))
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()) and draw(st.booleans()):
                pairs.append((perm[i], perm[j]))
    return build_order(n, pairs)


@st.composite
def instances(draw, min_n=1, max_n=7, weighted=None):
    n = draw(st.integers(min_n, max_n))
    all_edges = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(all_edges), unique=True)) if all_edges else []
    w = draw(st.booleans()) if weighted is None else weighted
    costs = None
    if w:
        costs = {e: Fraction(draw(st.integers(-5, 9)), draw(st.sampled_from((1, 2, 3)))) for e in chosen}
    order = draw(orders(n))
    return Instance(Graph(n, frozenset(chosen), costs), order)

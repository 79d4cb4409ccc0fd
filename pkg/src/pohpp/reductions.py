"""Hardness constructions as executable instance generators.

Three families are covered:

* posets oriented from ``A`` to ``B`` (``a_i = i``, ``b_j = n + j``) together with
  their 0/1 matrices, alternating linear extensions and triangularisation;
* the encodings of the alternating-extension problem as ordered Hamiltonian
  path instances on ``K_{n,n}`` and on complete split graphs;
* the Multicolored Clique gadget, whose partial order has width ``k + 1``.

The exhaustive routines here are verification oracles, deliberately
exponential.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Mapping

import networkx as nx
import numpy as np

from .errors import BadColoring, BadParams, NotOriented, SizeGuard
from .model import Graph, Instance, PartialOrder, build_order

TRIANGULAR_CAP = 7
ALTERNATING_CAP = 10
MCP_CAP = 10**6


# ---------------------------------------------------------------- bipartite posets


@dataclass(frozen=True)
class OrientedBipartitePoset:
    """Partial order on ``A + B`` (``|A| = |B| = n``) whose strict pairs all go from ``A`` to ``B``."""

    n: int
    order: PartialOrder

    def __post_init__(self):
        if self.order.n != 2 * self.n:
            raise ValueError(f"order has {self.order.n} elements, expected {2 * self.n}")
        for u, v in self.order.pairs():
            if not (u < self.n <= v):
                raise NotOriented(f"pair ({u}, {v}) does not go from A to B")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "OrientedBipartitePoset":
        """``pairs`` holds ``(i, j)`` meaning ``a_i < b_j`` (0-based)."""
        return cls(n, build_order(2 * n, [(i, n + j) for i, j in pairs]))

    def a(self, i: int) -> int:
        return i

    def b(self, j: int) -> int:
        return self.n + j

    def relation(self):
        """Sorted list of ``(i, j)`` with ``a_i < b_j``."""
        return sorted((u, v - self.n) for u, v in self.order.pairs())


def poset_to_matrix(p: OrientedBipartitePoset) -> np.ndarray:
    m = np.zeros((p.n, p.n), dtype=np.uint8)
    for i, j in p.relation():
        m[i, j] = 1
    return m


def matrix_to_poset(m) -> OrientedBipartitePoset:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.isin(m, (0, 1)).all():
        raise ValueError("matrix entries must be 0 or 1")
    n = m.shape[0]
    return OrientedBipartitePoset.from_pairs(n, zip(*np.nonzero(m)))


def is_upper_triangular(m) -> bool:
    return not np.tril(np.asarray(m), -1).any()


def is_triangularizable(m, cap: int = TRIANGULAR_CAP):
    """Permutations ``(rows, cols)`` with ``m[rows][:, cols]`` upper triangular, or ``None``.

    Every row permutation is tried. For a fixed row order, column ``c`` has
    to land at a position no earlier than the last row holding a 1 in ``c``,
    so sorting the columns by that bound is a complete test.
    """
    m = np.asarray(m)
    n = m.shape[0]
    if n > cap:
        raise SizeGuard(f"triangularisation cap is {cap}, matrix is {n}x{n}")
    for rows in permutations(range(n)):
        pm = m[list(rows)]
        lowest = [max((r for r in range(n) if pm[r, c]), default=0) for c in range(n)]
        cols = sorted(range(n), key=lambda c: (lowest[c], c))
        if all(lowest[c] <= pos for pos, c in enumerate(cols)):
            return tuple(rows), tuple(cols)
    return None


@dataclass(frozen=True)
class AlternatingExtensionWitness:
    """``tau`` alternates A, B, A, ...; ``sigma_a[i]``/``sigma_b[j]`` are 1-based positions."""

    tau: tuple[int, ...]
    sigma_a: tuple[int, ...]
    sigma_b: tuple[int, ...]


def sigmas_from_tau(n: int, tau) -> tuple[tuple[int, ...], tuple[int, ...]]:
    sa, sb = [0] * n, [0] * n
    for pos, v in enumerate(tau, start=1):
        if v < n:
            sa[v] = (pos + 1) // 2
        else:
            sb[v - n] = pos // 2
    return tuple(sa), tuple(sb)


def tau_from_sigmas(n: int, sigma_a, sigma_b) -> tuple[int, ...]:
    """Place ``a_i`` at ``2 sigma_a - 1`` and ``b_j`` at ``2 sigma_b``."""
    tau = [None] * (2 * n)
    for i, s in enumerate(sigma_a):
        tau[2 * s - 2] = i
    for j, s in enumerate(sigma_b):
        tau[2 * s - 1] = n + j
    return tuple(tau)


def has_right_successor(p: OrientedBipartitePoset, sigma_a, sigma_b) -> bool:
    return all(sigma_a[i] <= sigma_b[j] for i, j in p.relation())


def has_alternating_extension(p: OrientedBipartitePoset, cap: int = ALTERNATING_CAP):
    """An :class:`AlternatingExtensionWitness` or ``None``.

    Searches alternating sequences depth-first, remembering placed sets
    that are known dead ends.
    """
    n = p.n
    if n > cap:
        raise SizeGuard(f"alternating-extension cap is {cap}, poset has n = {n}")
    if n == 0:
        return AlternatingExtensionWitness((), (), ())
    down = [p.order.down_mask(v) for v in range(2 * n)]
    full = (1 << (2 * n)) - 1
    dead = set()
    seq = []

    def extend(placed):
        if placed == full:
            return True
        if placed in dead:
            return False
        pool = range(n) if len(seq) % 2 == 0 else range(n, 2 * n)
        for v in pool:
            if placed >> v & 1 or down[v] & ~placed:
                continue
            seq.append(v)
            if extend(placed | 1 << v):
                return True
            seq.pop()
        dead.add(placed)
        return False

    if not extend(0):
        return None
    sa, sb = sigmas_from_tau(n, seq)
    tau = tau_from_sigmas(n, sa, sb)
    assert tau == tuple(seq)
    return AlternatingExtensionWitness(tau, sa, sb)


def bipartite_pohpp_encode(p: OrientedBipartitePoset, costs: Mapping | None = None) -> Instance:
    """``K_{n,n}`` with the poset as order; ``costs`` maps ``(a_index, b_vertex)`` pairs."""
    n = p.n
    edges = frozenset((i, n + j) for i in range(n) for j in range(n))
    cost_map = None
    if costs is not None:
        cost_map = {e: Fraction(costs[e]) for e in edges}
    comments = (f"K_{{{n},{n}}} encoding: a_i = i, b_j = {n} + j",)
    return Instance(Graph(2 * n, edges, cost_map), p.order, comments)


def complete_split_encode(p: OrientedBipartitePoset) -> Instance:
    """Complete split graph: independent set ``A + {a*}``, clique ``B``; ``a* = 2n`` is forced last."""
    n = p.n
    star = 2 * n
    edges = {(i, n + j) for i in range(n) for j in range(n)}
    edges |= {(n + j, star) for j in range(n)}
    edges |= {(n + j, n + l) for j in range(n) for l in range(j + 1, n)}
    pairs = list(p.order.pairs()) + [(v, star) for v in range(2 * n)]
    comments = (f"complete split encoding: a_i = i, b_j = {n} + j, a* = {star}",)
    return Instance(Graph(2 * n + 1, frozenset(edges)), build_order(2 * n + 1, pairs), comments)


# ---------------------------------------------------------------- multicolored clique


@dataclass(frozen=True)
class MulticoloredGraph:
    """``k`` colour classes of ``q`` vertices each; vertex ``c * q + p`` is ``v^{c+1}_{p+1}``."""

    k: int
    q: int
    edges: frozenset

    def __post_init__(self):
        if self.k < 1 or self.q < 1:
            raise BadParams(f"need k >= 1 and q >= 1, got k={self.k}, q={self.q}")
        for u, v in self.edges:
            if not (0 <= u < v < self.k * self.q):
                raise BadColoring(f"edge ({u}, {v}) is not a normalised pair of vertices")
            if u // self.q == v // self.q:
                raise BadColoring(f"edge ({u}, {v}) joins two vertices of colour {u // self.q + 1}")

    @property
    def n(self) -> int:
        return self.k * self.q

    def color(self, v: int) -> int:
        return v // self.q + 1

    def vertex(self, color: int, p: int) -> int:
        """Vertex index of ``v^color_p`` (both 1-based)."""
        return (color - 1) * self.q + (p - 1)

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    @classmethod
    def from_coloring(cls, coloring, edges, k: int | None = None, q: int | None = None):
        """Build from an arbitrary vertex colouring (colours ``1..k``), padding classes with isolated vertices.

        Returns the graph together with the map from original vertex to new index.
        """
        coloring = list(coloring)
        if k is None:
            k = max(coloring, default=0)
        if any(not 1 <= c <= k for c in coloring):
            raise BadColoring(f"colours must lie in 1..{k}")
        classes = [[v for v, c in enumerate(coloring) if c == col] for col in range(1, k + 1)]
        largest = max((len(c) for c in classes), default=0)
        if q is None:
            q = largest or 1
        elif largest > q:
            raise BadColoring(f"a colour class has {largest} vertices, more than q = {q}")
        index = {}
        for col, members in enumerate(classes):
            for p, v in enumerate(members):
                index[v] = col * q + p
        new_edges = set()
        for u, v in edges:
            a, b = sorted((index[u], index[v]))
            new_edges.add((a, b))
        return cls(k, q, frozenset(new_edges)), index


def mcp_bruteforce(g: MulticoloredGraph, cap: int = MCP_CAP):
    """First multicolored clique in lexicographic order of ``(p_1, ..., p_k)``, or ``None``."""
    if g.q ** g.k > cap:
        raise SizeGuard(f"{g.q}^{g.k} selections exceed the cap {cap}")
    for ps in product(range(g.q), repeat=g.k):
        verts = [c * g.q + p for c, p in enumerate(ps)]
        if all(g.adjacent(verts[i], verts[j]) for i in range(g.k) for j in range(i + 1, g.k)):
            return tuple(verts)
    return None


@dataclass(frozen=True)
class GadgetLayout:
    """Vertex numbering of the gadget; colour indices ``i`` and ``p`` are 1-based as in the construction."""

    k: int
    q: int

    @property
    def block(self) -> int:
        # X^i and W^i both have (k + 1) q vertices
        return (self.k + 1) * self.q

    @property
    def n(self) -> int:
        return 4 + self.k + 3 * self.k * self.q * (self.k + 1)

    @property
    def s(self) -> int:
        return 0

    def s_(self, i: int) -> int:
        return i

    def x(self, i: int, j: int) -> int:
        return self.k + 2 + (i - 1) * 2 * self.block + (j - 1)

    def w(self, i: int, p: int, l: int) -> int:
        return self.k + 2 + (i - 1) * 2 * self.block + self.block + (p - 1) * (self.k + 1) + l

    def y(self, j: int) -> int:
        return self.k + 2 + 2 * self.k * self.block + (j - 1)

    @property
    def ny(self) -> int:
        return self.q * (self.k + 1) * self.k

    @property
    def z(self) -> int:
        return self.y(self.ny) + 1

    @property
    def t(self) -> int:
        return self.z + 1

    def xs(self, i: int) -> list[int]:
        return [self.x(i, j) for j in range(1, self.block + 1)]

    def ws(self, i: int) -> list[int]:
        """``W^i`` in the chain order ``(p, l)``."""
        return [self.w(i, p, l) for p in range(1, self.q + 1) for l in range(self.k + 1)]

    def us(self, i: int, p: int) -> list[int]:
        return [self.w(i, p, l) for l in range(self.k + 1)]

    def ys(self) -> list[int]:
        return [self.y(j) for j in range(1, self.ny + 1)]

    def name(self, v: int) -> str:
        k = self.k
        if v == self.s:
            return "s"
        if 1 <= v <= k + 1:
            return f"s^{v}"
        if v == self.z:
            return "z"
        if v == self.t:
            return "t"
        if v >= self.y(1):
            return f"y_{v - self.y(1) + 1}"
        off = v - (k + 2)
        i, r = divmod(off, 2 * self.block)
        if r < self.block:
            return f"x^{i + 1}_{r + 1}"
        p, l = divmod(r - self.block, k + 1)
        return f"w^{i + 1}_{p + 1},{l}"

    def describe(self) -> tuple[str, ...]:
        k = self.k
        lines = [f"MCP gadget k={k} q={self.q}: s=0, s^i=i (1..{k + 1})"]
        for i in range(1, k + 1):
            lines.append(
                f"X^{i}={self.x(i, 1)}..{self.x(i, self.block)}, "
                f"W^{i}={self.w(i, 1, 0)}..{self.w(i, self.q, k)} (w^i_p,l = {self.w(i, 1, 0)} + (p-1)*{k + 1} + l)"
            )
        lines.append(f"Y={self.y(1)}..{self.y(self.ny)}, z={self.z}, t={self.t}")
        return tuple(lines)


def gadget_edges(g: MulticoloredGraph, lay: GadgetLayout) -> set:
    k, q = g.k, g.q
    edges = set()

    def add(u, v):
        edges.add((min(u, v), max(u, v)))

    add(lay.s, lay.s_(1))  # E1
    add(lay.z, lay.s_(k + 1))  # E2
    ys = lay.ys()
    all_w = [w for i in range(1, k + 1) for w in lay.ws(i)]
    for a_ in range(len(ys)):  # E3
        for b_ in range(a_ + 1, len(ys)):
            add(ys[a_], ys[b_])
        for w in all_w:
            add(ys[a_], w)
    for i in range(1, k + 1):  # E4
        xs = lay.xs(i)
        for a_ in range(len(xs)):
            for b_ in range(a_ + 1, len(xs)):
                add(xs[a_], xs[b_])
            add(xs[a_], lay.s_(i))
            for w in lay.ws(i):
                add(xs[a_], w)
    for i in range(1, k + 1):  # E5
        for p in range(1, q + 1):
            add(lay.w(i, p, 0), lay.s_(i + 1))
    for p in range(1, q + 1):  # E6
        add(lay.z, lay.w(1, p, 1))
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i == j:
                continue
            for p in range(1, q + 1):
                for r in range(1, q + 1):
                    if not g.adjacent(g.vertex(i, p), g.vertex(j, r)):
                        continue
                    add(lay.w(i, p, j), lay.w(j, r, i))  # E7
                    if i < j:
                        add(lay.w(i, p, j - 1), lay.w(j, r, i))  # E8
                    if j == i + 1:
                        add(lay.w(i, p, k), lay.w(i + 1, r, i + 1))  # E9
    for p in range(1, q + 1):  # E10
        add(lay.w(k, p, k), lay.t)
    for y in ys:  # E11
        add(lay.t, y)
    return edges


def gadget_pairs(lay: GadgetLayout) -> list[tuple[int, int]]:
    k = lay.k
    pairs = [(lay.s, v) for v in range(1, lay.n)]  # P1
    for i in range(1, k + 1):
        pairs += [(lay.s_(i), w) for w in lay.ws(i)]  # P2
        ws = lay.ws(i)
        pairs += [(ws[a_], ws[b_]) for a_ in range(len(ws)) for b_ in range(a_ + 1, len(ws))]  # P3
        xs = lay.xs(i)
        pairs += [(xs[a_], xs[b_]) for a_ in range(len(xs)) for b_ in range(a_ + 1, len(xs))]  # P4
        pairs += [(x, lay.s_(i + 1)) for x in xs]  # P5
    ys = lay.ys()
    pairs += [(ys[a_], ys[b_]) for a_ in range(len(ys)) for b_ in range(a_ + 1, len(ys))]  # P6
    pairs.append((lay.s_(k + 1), lay.z))  # P7
    pairs.append((lay.z, lay.t))  # P8
    pairs += [(lay.t, y) for y in ys]  # P9
    return pairs


def mcp_to_pohpp(g: MulticoloredGraph, *, unit_costs: bool = False) -> Instance:
    """Gadget instance that has a solution iff ``g`` has a multicolored clique."""
    if g.k < 2:
        raise BadColoring(f"the gadget needs at least 2 colours, got {g.k}")
    lay = GadgetLayout(g.k, g.q)
    edges = frozenset(gadget_edges(g, lay))
    costs = {e: Fraction(1) for e in edges} if unit_costs else None
    order = build_order(lay.n, gadget_pairs(lay))
    return Instance(Graph(lay.n, edges, costs), order, lay.describe())


def gadget_chains(lay: GadgetLayout) -> list[list[int]]:
    """The ``k + 1`` chains covering the gadget order, each listed bottom to top."""
    k = lay.k
    chains = [[lay.s, lay.s_(1)] + lay.ws(1)]
    for i in range(1, k):
        chains.append(lay.xs(i) + [lay.s_(i + 1)] + lay.ws(i + 1))
    chains.append(lay.xs(k) + [lay.s_(k + 1), lay.z, lay.t] + lay.ys())
    return chains


def validation_subgraph(instance: Instance, lay: GadgetLayout, ps) -> nx.Graph:
    """Induced subgraph on ``U^1_{p_1} .. U^k_{p_k}`` plus ``t`` minus the ``w^i_{p_i,0}`` (``ps`` 1-based)."""
    keep = {lay.t}
    for i, p in enumerate(ps, start=1):
        keep.update(lay.us(i, p)[1:])
    return instance.graph.to_networkx().subgraph(keep).copy()


def selected_indices(lay: GadgetLayout, sequence) -> tuple[int, ...]:
    """The ``p_i`` picked by a gadget solution: the ``w^i_{p,0}`` right before ``s^{i+1}``."""
    pos = {v: t for t, v in enumerate(sequence)}
    out = []
    for i in range(1, lay.k + 1):
        before = sequence[pos[lay.s_(i + 1)] - 1]
        for p in range(1, lay.q + 1):
            if lay.w(i, p, 0) == before:
                out.append(p)
                break
        else:
            raise ValueError(f"s^{i + 1} is not preceded by a vertex w^{i}_p,0")
    return tuple(out)

"""Exhaustive backtracking reference solver.

The search only ever extends a prefix by a vertex that is adjacent to the
current last vertex and minimal among the unvisited vertices, so every prefix
it holds is a prefix of a linear extension. Candidates are tried in increasing
vertex order and the incumbent is only replaced on strict improvement, which
makes the first optimum found the lexicographically smallest one.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import SizeGuard
from .model import Instance, OrderedHamPath

DEFAULT_CAP = 16


@dataclass(frozen=True)
class SearchState:
    prefix: tuple[int, ...]
    visited: frozenset
    prefix_cost: Fraction
    remaining_minima: frozenset


def search_state(instance: Instance, prefix: Sequence[int]) -> SearchState:
    """Materialise the search state for ``prefix`` (validating its invariants)."""
    order, g = instance.order, instance.graph
    seen = 0
    for i, v in enumerate(prefix):
        if seen >> v & 1:
            raise ValueError(f"vertex {v} repeated in prefix")
        if order.down_mask(v) & ~seen:
            raise ValueError(f"prefix is not a prefix of a linear extension at {v}")
        if i and not g.has_edge(prefix[i - 1], v):
            raise ValueError(f"{prefix[i - 1]} and {v} are not adjacent")
        seen |= 1 << v
    minima = frozenset(
        v for v in range(instance.n) if not seen >> v & 1 and not order.down_mask(v) & ~seen
    )
    return SearchState(tuple(prefix), frozenset(prefix), instance.path_cost(prefix), minima)


def _guard(instance: Instance, cap: int):
    if instance.n > cap:
        raise SizeGuard(f"oracle cap is {cap} vertices, instance has {instance.n}")


def solve_bruteforce(instance: Instance, cap: int = DEFAULT_CAP) -> OrderedHamPath | None:
    """Minimum-cost ordered Hamiltonian path extending the order, or ``None``."""
    _guard(instance, cap)
    n = instance.n
    if n == 0:
        return OrderedHamPath((), Fraction(0))
    if not instance.connected:
        return None
    g = instance.graph
    down = [instance.order.down_mask(v) for v in range(n)]
    nbrs = g.neighbors
    # shifting every edge by the minimum keeps increments non-negative,
    # so a prefix that already exceeds the incumbent can be abandoned
    shift = min((g.cost(u, v) for u, v in g.edges), default=Fraction(0))
    cost = {}
    for u, v in g.edges:
        c = g.cost(u, v) - shift
        cost[u, v] = cost[v, u] = c
    full = (1 << n) - 1
    best_cost = None
    best_path = None
    prefix = []

    def extend(last, visited, acc):
        nonlocal best_cost, best_path
        if visited == full:
            if best_cost is None or acc < best_cost:
                best_cost, best_path = acc, tuple(prefix)
            return
        for w in nbrs[last]:
            if visited >> w & 1 or down[w] & ~visited:
                continue
            c = acc + cost[last, w]
            if best_cost is not None and c > best_cost:
                continue
            prefix.append(w)
            extend(w, visited | (1 << w), c)
            prefix.pop()

    for v in range(n):
        if down[v]:
            continue
        prefix.append(v)
        extend(v, 1 << v, Fraction(0))
        prefix.pop()
    if best_path is None:
        return None
    return OrderedHamPath(best_path, instance.path_cost(best_path))


def enumerate_solutions(instance: Instance, cap: int = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every ordered Hamiltonian path extending the order, in lexicographic order."""
    _guard(instance, cap)
    n = instance.n
    if n == 0:
        yield ()
        return
    down = [instance.order.down_mask(v) for v in range(n)]
    nbrs = instance.graph.neighbors
    full = (1 << n) - 1
    prefix = []

    def extend(last, visited):
        if visited == full:
            yield tuple(prefix)
            return
        for w in nbrs[last]:
            if visited >> w & 1 or down[w] & ~visited:
                continue
            prefix.append(w)
            yield from extend(w, visited | (1 << w))
            prefix.pop()

    for v in range(n):
        if not down[v]:
            prefix.append(v)
            yield from extend(v, 1 << v)
            prefix.pop()


def count_solutions(instance: Instance, cap: int = DEFAULT_CAP) -> int:
    """Number of ordered Hamiltonian paths whose order extends the partial order."""
    _guard(instance, cap)
    n = instance.n
    if n == 0:
        return 1
    down = [instance.order.down_mask(v) for v in range(n)]
    nbrs = instance.graph.neighbors
    full = (1 << n) - 1
    memo = {}

    # the number of completions depends only on (visited set, last vertex)
    def completions(last, visited):
        if visited == full:
            return 1
        key = (last, visited)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        for w in nbrs[last]:
            if not visited >> w & 1 and not down[w] & ~visited:
                total += completions(w, visited | (1 << w))
        memo[key] = total
        return total

    return sum(completions(v, 1 << v) for v in range(n) if not down[v])


"""Helpers shared by the dynamic programs.

Exact costs: every partial path a DP level compares has the same number of
edges, so costs may be shifted by a constant and scaled by the common
denominator without changing any comparison. The result is non-negative
integers, which numpy can handle exactly.

Lexicographic tie-breaking: two partial paths of equal length compare like
(prefix, last vertex). Ranking all states of one level by (rank of the
predecessor state, last vertex) therefore gives a total order that agrees with
the lexicographic order of the paths they store.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .model import Instance

INT64_INF = 1 << 61


@dataclass
class ScaledCosts:
    """Non-negative integer edge costs ``(c - shift) * scale``."""

    matrix: np.ndarray  # (n + 1, n + 1); row/column n is a sentinel with no edges
    inf: object
    shift: Fraction
    scale: int

    @property
    def dtype(self):
        return self.matrix.dtype


def scaled_costs(instance: Instance, *, force_object: bool = False) -> ScaledCosts:
    g = instance.graph
    n = g.n
    if g.weighted and g.m:
        values = list(g.costs.values())
        shift = min(values)
        scale = lcm(*(c.denominator for c in values))
        ints = {e: int((c - shift) * scale) for e, c in g.costs.items()}
    else:
        shift, scale = Fraction(1), 1
        ints = dict.fromkeys(g.edges, 0)
    top = max(ints.values(), default=0)
    fits = (top + 1) * max(n, 1) < INT64_INF
    if fits and not force_object:
        inf = INT64_INF
        w = np.full((n + 1, n + 1), inf, dtype=np.int64)
    else:
        inf = (top + 1) * (max(n, 1) + 1)
        w = np.full((n + 1, n + 1), inf, dtype=object)
    for (u, v), c in ints.items():
        w[u, v] = c
        w[v, u] = c
    return ScaledCosts(w, inf, shift, scale)


def python_costs(instance: Instance):
    """Scaled integer costs as nested lists with ``None`` for non-edges."""
    g = instance.graph
    n = g.n
    if g.weighted and g.m:
        values = list(g.costs.values())
        shift = min(values)
        scale = lcm(*(c.denominator for c in values))
        conv = {e: int((c - shift) * scale) for e, c in g.costs.items()}
    else:
        conv = dict.fromkeys(g.edges, 0)
    w = [[None] * n for _ in range(n)]
    for (u, v), c in conv.items():
        w[u][v] = c
        w[v][u] = c
    return w


def dense_rank(primary: np.ndarray, secondary: np.ndarray) -> np.ndarray:
    """Dense ranks (0-based) of the pairs ``(primary[i], secondary[i])``."""
    m = len(primary)
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    order = np.lexsort((secondary, primary))
    p = primary[order]
    s = secondary[order]
    new = np.empty(m, dtype=bool)
    new[0] = True
    new[1:] = (p[1:] != p[:-1]) | (s[1:] != s[:-1])
    ranks = np.empty(m, dtype=np.int64)
    ranks[order] = np.cumsum(new) - 1
    return ranks


def dense_rank_py(keys):
    """Dense ranks of a list of comparable keys, as a list aligned with ``keys``."""
    order = sorted(range(len(keys)), key=keys.__getitem__)
    ranks = [0] * len(keys)
    r = -1
    prev = object()
    for i in order:
        if keys[i] != prev:
            r += 1
            prev = keys[i]
        ranks[i] = r
    return ranks

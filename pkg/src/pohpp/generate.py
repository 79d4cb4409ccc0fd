"""Seeded instance generators.

Every kind takes a dict of parameters (unknown keys are rejected) and a
seed; the same ``(kind, params, seed)`` always yields the same instance.
Each generated instance is checked against the structural guarantee of its
kind before it is returned.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import BadParams
from .model import Graph, Instance, build_order, is_linear_extension
from .outerplanar import block_path, is_outerplanar
from .reductions import (
    MulticoloredGraph,
    OrientedBipartitePoset,
    bipartite_pohpp_encode,
    complete_split_encode,
    mcp_to_pohpp,
)

KINDS = ("random", "bipartite", "split", "outerplanar", "gadget")

_DEFAULTS = {
    "random": {"n": 8, "p": 0.5, "order_density": 0.2, "connected": True, "weighted": False,
               "cost_lo": 1, "cost_hi": 9},
    "bipartite": {"n": 3, "density": 0.3},
    "split": {"n": 3, "density": 0.3},
    "outerplanar": {"n": 8, "blocks": 1, "chord_keep": 0.5, "order_density": 0.1, "weighted": False,
                    "cost_lo": 1, "cost_hi": 9},
    "gadget": {"k": 2, "q": 2, "edge_density": 0.5},
}


def _params(kind: str, params: dict | None) -> dict:
    if kind not in _DEFAULTS:
        raise BadParams(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    out = dict(_DEFAULTS[kind])
    for key, value in (params or {}).items():
        if key not in out:
            raise BadParams(f"unknown parameter {key!r} for kind {kind!r}")
        default = out[key]
        try:
            if isinstance(default, bool):
                if isinstance(value, str):
                    if value.lower() not in ("0", "1", "true", "false", "yes", "no"):
                        raise ValueError(value)
                    value = value.lower() in ("1", "true", "yes")
                out[key] = bool(value)
            else:
                out[key] = type(default)(value)
        except (TypeError, ValueError):
            raise BadParams(f"parameter {key!r} expects {type(default).__name__}, got {value!r}") from None
    for key in ("p", "order_density", "density", "chord_keep", "edge_density"):
        if key in out and not 0.0 <= out[key] <= 1.0:
            raise BadParams(f"{key} must lie in [0, 1], got {out[key]}")
    if "cost_lo" in out and out["cost_lo"] > out["cost_hi"]:
        raise BadParams("cost_lo exceeds cost_hi")
    return out


def generate(kind: str, params: dict | None = None, seed: int = 0) -> Instance:
    p = _params(kind, params)
    rng = random.Random(f"{kind}:{seed}")
    inst = _BUILDERS[kind](p, rng)
    _validate(kind, p, inst)
    return inst


def _random_costs(rng, edges, p):
    if not p["weighted"]:
        return None
    return {e: Fraction(rng.randint(p["cost_lo"], p["cost_hi"])) for e in sorted(edges)}


def _random_order(rng, n, density):
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return build_order(n, pairs)


def _gen_random(p, rng):
    n = p["n"]
    if n < 1:
        raise BadParams("n must be at least 1")
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p["p"]}
    if p["connected"]:
        # union with a random spanning tree
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(1, n):
            u, v = perm[i], perm[rng.randrange(i)]
            edges.add((min(u, v), max(u, v)))
    order = _random_order(rng, n, p["order_density"])
    return Instance(Graph(n, frozenset(edges), _random_costs(rng, edges, p)), order,
                    (f"random n={n} p={p['p']} order_density={p['order_density']}",))


def _random_poset(p, rng):
    n = p["n"]
    if n < 1:
        raise BadParams("n must be at least 1")
    return OrientedBipartitePoset.from_pairs(
        n, [(i, j) for i in range(n) for j in range(n) if rng.random() < p["density"]]
    )


def _gen_bipartite(p, rng):
    return bipartite_pohpp_encode(_random_poset(p, rng))


def _gen_split(p, rng):
    return complete_split_encode(_random_poset(p, rng))


def _polygon(rng, size, keep):
    """Edges of a triangulated ``size``-gon on ``0..size-1`` with each chord kept with probability ``keep``."""
    if size == 1:
        return set()
    if size == 2:
        return {(0, 1)}
    edges = {(i, i + 1) for i in range(size - 1)} | {(0, size - 1)}
    stack = [list(range(size))]
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
    return edges


def _gen_outerplanar(p, rng):
    n, nb = p["n"], p["blocks"]
    if n < 1 or nb < 1:
        raise BadParams("n and blocks must be at least 1")
    if nb > 1 and n < nb + 1:
        raise BadParams(f"{nb} blocks need at least {nb + 1} vertices")
    if nb == 1:
        sizes = [n]
    else:
        # block sizes s_i >= 2 with sum(s_i) - (nb - 1) == n
        sizes = [2] * nb
        for _ in range(n - (nb + 1)):
            sizes[rng.randrange(nb)] += 1
    edges = set()
    next_free = 0
    cut = None
    for size in sizes:
        members = [cut] if cut is not None else []
        while len(members) < size:
            members.append(next_free)
            next_free += 1
        local = _polygon(rng, size, p["chord_keep"])
        # rotate so the shared cut vertex lands anywhere on the polygon
        shift = rng.randrange(size)
        members = members[shift:] + members[:shift]
        for u, v in local:
            a, b = members[u], members[v]
            edges.add((min(a, b), max(a, b)))
        others = [v for v in members if v != cut]
        cut = rng.choice(others)
    labels = list(range(n))
    rng.shuffle(labels)
    edges = {(min(labels[u], labels[v]), max(labels[u], labels[v])) for u, v in edges}
    order = _random_order(rng, n, p["order_density"])
    return Instance(Graph(n, frozenset(edges), _random_costs(rng, edges, p)), order,
                    (f"outerplanar n={n} blocks={nb} chord_keep={p['chord_keep']}",))


def _gen_gadget(p, rng):
    k, q = p["k"], p["q"]
    if k < 2 or q < 1:
        raise BadParams("the gadget needs k >= 2 and q >= 1")
    n = k * q
    edges = frozenset(
        (u, v) for u in range(n) for v in range(u + 1, n) if u // q != v // q and rng.random() < p["edge_density"]
    )
    return mcp_to_pohpp(MulticoloredGraph(k, q, edges))


_BUILDERS = {
    "random": _gen_random,
    "bipartite": _gen_bipartite,
    "split": _gen_split,
    "outerplanar": _gen_outerplanar,
    "gadget": _gen_gadget,
}


def _check(ok: bool, kind: str, what: str):
    if not ok:
        raise RuntimeError(f"generated {kind} instance violates its guarantee: {what}")


def _validate(kind, p, inst):
    g = inst.graph
    if kind == "random":
        _check(not p["connected"] or g.is_connected, kind, "connected")
    elif kind == "bipartite":
        n = p["n"]
        _check(g.m == n * n and all(u < n <= v for u, v in g.edges), kind, "complete bipartite")
    elif kind == "split":
        n = p["n"]
        _check(inst.order.down_mask(2 * n) == (1 << 2 * n) - 1, kind, "extra vertex forced last")
    elif kind == "outerplanar":
        _check(is_outerplanar(g) and g.is_connected, kind, "connected outerplanar")
        _check(len(block_path(g).blocks) == p["blocks"], kind, "block count")
    elif kind == "gadget":
        k, q = p["k"], p["q"]
        _check(g.n == 4 + k + 3 * k * q * (k + 1), kind, "vertex count")
    _check(inst.n == 0 or is_linear_extension(_some_extension(inst), inst.order), kind, "acyclic order")


def _some_extension(inst):
    placed, seq = 0, []
    remaining = set(range(inst.n))
    while remaining:
        v = min(u for u in remaining if not inst.order.down_mask(u) & ~placed)
        seq.append(v)
        remaining.discard(v)
        placed |= 1 << v
    return seq

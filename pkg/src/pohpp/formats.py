"""Line-oriented text formats.

Instance files::

    c free-form comment
    p pohpp <n> <m> <r> [w]
    e <u> <v> [cost]        (m lines; cost required iff the header has 'w')
    o <u> <v>               (r lines; u must come before v)

Multicolored graphs::

    p mcp <n> <k> <q>
    v <vertex> <color>      (one line per vertex, colours 1..k)
    e <u> <v>

0/1 matrices (input of the bipartite gadget)::

    p matrix <n>
    <n rows of n entries, each 0 or 1>

Vertices are 0-indexed everywhere. Costs are read exactly: decimals such as
``2.5`` or ``-1e-3`` and fractions such as ``1/3`` are accepted.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import BadColoring, ParseError
from .model import Graph, Instance, build_order
from .reductions import MulticoloredGraph


def format_cost(c: Fraction) -> str:
    """Exact decimal when the denominator allows it, else ``p/q``."""
    c = Fraction(c)
    den = c.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{c.numerator}/{c.denominator}"
    if c.denominator == 1:
        return str(c.numerator)
    digits = max(twos, fives)
    scaled = abs(c.numerator) * (10**digits // c.denominator)
    sign = "-" if c < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def parse_cost(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f"bad cost {token!r}") from None


def _records(text: str):
    """Yield ``(line_number, tokens)`` for every non-blank line."""
    for no, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split()
        if toks:
            yield no, toks, raw


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {token!r}") from None


def _vertex(token: str, line: int, n: int) -> int:
    v = _int(token, line, "vertex")
    if not 0 <= v < n:
        raise ParseError(line, f"vertex {v} out of range 0..{n - 1}")
    return v


def parse_instance(text: str) -> Instance:
    header = None
    edges, costs, pairs, comments = [], {}, [], []
    seen = set()
    last_line = 0
    for no, toks, raw in _records(text):
        last_line = no
        kind = toks[0]
        if kind == "c":
            comments.append(raw.strip()[1:].strip())
            continue
        if kind == "p":
            if header is not None:
                raise ParseError(no, "second header line")
            if len(toks) not in (5, 6) or toks[1] != "pohpp":
                raise ParseError(no, "header must read 'p pohpp <n> <m> <r> [w]'")
            if len(toks) == 6 and toks[5] != "w":
                raise ParseError(no, f"unknown header flag {toks[5]!r}")
            n, m, r = (_int(t, no, "header count") for t in toks[2:5])
            if min(n, m, r) < 0:
                raise ParseError(no, "header counts must be non-negative")
            header = (n, m, r, len(toks) == 6)
            continue
        if header is None:
            raise ParseError(no, f"record {kind!r} before the header")
        n, _, _, weighted = header
        if kind == "e":
            if len(toks) != (4 if weighted else 3):
                want = "e u v cost" if weighted else "e u v"
                raise ParseError(no, f"edge record must read '{want}'")
            u, v = _vertex(toks[1], no, n), _vertex(toks[2], no, n)
            if u == v:
                raise ParseError(no, f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(no, f"duplicate edge {key}")
            seen.add(key)
            edges.append(key)
            if weighted:
                costs[key] = parse_cost(toks[3], no)
        elif kind == "o":
            if len(toks) != 3:
                raise ParseError(no, "precedence record must read 'o u v'")
            pairs.append((_vertex(toks[1], no, n), _vertex(toks[2], no, n)))
        else:
            raise ParseError(no, f"unknown record type {kind!r}")
    if header is None:
        raise ParseError(last_line or 1, "missing 'p pohpp' header")
    n, m, r, weighted = header
    if len(edges) != m:
        raise ParseError(last_line, f"header announces {m} edges, found {len(edges)}")
    if len(pairs) != r:
        raise ParseError(last_line, f"header announces {r} precedence pairs, found {len(pairs)}")
    graph = Graph(n, frozenset(edges), costs if weighted else None)
    return Instance(graph, build_order(n, pairs), tuple(comments))


def emit_instance(instance: Instance) -> str:
    """Text form; the order is written as its cover pairs."""
    g = instance.graph
    covers = instance.order.cover_pairs()
    lines = [f"c {c}" if c else "c" for c in instance.comments]
    lines.append(f"p pohpp {g.n} {g.m} {len(covers)}" + (" w" if g.weighted else ""))
    for u, v in sorted(g.edges):
        if g.weighted:
            lines.append(f"e {u} {v} {format_cost(g.costs[u, v])}")
        else:
            lines.append(f"e {u} {v}")
    lines.extend(f"o {u} {v}" for u, v in covers)
    return "\n".join(lines) + "\n"


def parse_mcp(text: str) -> MulticoloredGraph:
    header = None
    coloring = {}
    edges = []
    last_line = 0
    for no, toks, _ in _records(text):
        last_line = no
        kind = toks[0]
        if kind == "c":
            continue
        if kind == "p":
            if header is not None:
                raise ParseError(no, "second header line")
            if len(toks) != 5 or toks[1] != "mcp":
                raise ParseError(no, "header must read 'p mcp <n> <k> <q>'")
            header = tuple(_int(t, no, "header value") for t in toks[2:])
            continue
        if header is None:
            raise ParseError(no, f"record {kind!r} before the header")
        n, k, _ = header
        if kind == "v":
            if len(toks) != 3:
                raise ParseError(no, "vertex record must read 'v <vertex> <color>'")
            v = _vertex(toks[1], no, n)
            c = _int(toks[2], no, "colour")
            if not 1 <= c <= k:
                raise ParseError(no, f"colour {c} out of range 1..{k}")
            if v in coloring:
                raise ParseError(no, f"vertex {v} coloured twice")
            coloring[v] = c
        elif kind == "e":
            if len(toks) != 3:
                raise ParseError(no, "edge record must read 'e u v'")
            u, v = _vertex(toks[1], no, n), _vertex(toks[2], no, n)
            if u == v:
                raise ParseError(no, f"self-loop at {u}")
            edges.append((u, v))
        else:
            raise ParseError(no, f"unknown record type {kind!r}")
    if header is None:
        raise ParseError(last_line or 1, "missing 'p mcp' header")
    n, k, q = header
    missing = [v for v in range(n) if v not in coloring]
    if missing:
        raise ParseError(last_line, f"vertices without a colour: {missing[:10]}")
    try:
        g, _ = MulticoloredGraph.from_coloring([coloring[v] for v in range(n)], edges, k=k, q=q)
    except BadColoring as exc:
        raise ParseError(last_line, str(exc)) from None
    return g


def emit_mcp(g: MulticoloredGraph) -> str:
    lines = [f"p mcp {g.n} {g.k} {g.q}"]
    lines += [f"v {v} {g.color(v)}" for v in range(g.n)]
    lines += [f"e {u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    n = None
    rows = []
    last_line = 0
    for no, toks, _ in _records(text):
        last_line = no
        if toks[0] == "c":
            continue
        if toks[0] == "p":
            if n is not None or len(toks) != 3 or toks[1] != "matrix":
                raise ParseError(no, "header must read 'p matrix <n>' and appear once")
            n = _int(toks[2], no, "matrix size")
            continue
        if n is None:
            raise ParseError(no, "matrix row before the header")
        if len(toks) != n or any(t not in ("0", "1") for t in toks):
            raise ParseError(no, f"a row must hold {n} entries, each 0 or 1")
        rows.append([int(t) for t in toks])
    if n is None:
        raise ParseError(last_line or 1, "missing 'p matrix' header")
    if len(rows) != n:
        raise ParseError(last_line, f"expected {n} rows, found {len(rows)}")
    return np.array(rows, dtype=np.uint8).reshape(n, n)


def emit_matrix(m) -> str:
    m = np.asarray(m)
    lines = [f"p matrix {m.shape[0]}"] + [" ".join(str(int(x)) for x in row) for row in m]
    return "\n".join(lines) + "\n"


def to_dot(instance: Instance) -> str:
    """Graphviz rendering: solid undirected edges, dashed arcs for the cover pairs."""
    g = instance.graph
    lines = ["graph pohpp {"]
    lines += [f"  {v};" for v in range(g.n)]
    for u, v in sorted(g.edges):
        label = f' [label="{format_cost(g.costs[u, v])}"]' if g.weighted else ""
        lines.append(f"  {u} -- {v}{label};")
    for u, v in instance.order.cover_pairs():
        lines.append(f'  {u} -- {v} [style=dashed, dir=forward, color=gray];')
    lines.append("}")
    return "\n".join(lines) + "\n"

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (
    complete_edges,
    cycle_edges,
    instances,
    longest_chain_bruteforce,
    make,
    max_antichain_size,
    orders,
    path_edges,
)
from pohpp import (
    CycleDetected,
    Graph,
    NonEdgeStep,
    NotAPermutation,
    OrderViolation,
    build_order,
    chain_decomposition,
    dlo,
    enumerate_solutions,
    height,
    is_linear_extension,
    total_order,
    trivial_order,
    verify_solution,
    width,
)
from pohpp.errors import SolutionRejected
from pohpp.reductions import MulticoloredGraph, mcp_to_pohpp


# ---------------------------------------------------------------- build_order


def test_build_order_closes_a_three_chain():
    assert build_order(3, [(0, 1), (1, 2)]).strict == {(0, 1), (1, 2), (0, 2)}


def test_build_order_empty():
    assert build_order(2, []).strict == frozenset()


def test_build_order_two_cycle():
    with pytest.raises(CycleDetected):
        build_order(2, [(0, 1), (1, 0)])


def test_cycle_report_is_a_real_cycle():
    with pytest.raises(CycleDetected) as info:
        build_order(5, [(0, 1), (1, 2), (2, 3), (3, 1), (3, 4)])
    cyc = info.value.cycle
    assert cyc[0] == cyc[-1]
    pairs = {(0, 1), (1, 2), (2, 3), (3, 1), (3, 4)}
    assert all(step in pairs for step in zip(cyc, cyc[1:]))


def test_build_order_reflexive_pair_ignored_and_range_checked():
    assert build_order(2, [(1, 1)]).strict == frozenset()
    with pytest.raises(ValueError):
        build_order(2, [(0, 2)])


@given(st.integers(1, 7).flatmap(orders))
def test_order_axioms(order):
    strict = order.strict
    assert all(u != v for u, v in strict)
    assert all((v, u) not in strict for u, v in strict)
    for (u, v), (x, w) in itertools.product(strict, repeat=2):
        if v == x:
            assert (u, w) in strict
    for v in range(order.n):
        assert set(order.preds(v)) == {u for u, w in strict if w == v}
        assert set(order.succs(v)) == {w for u, w in strict if u == v}


@given(st.integers(1, 7).flatmap(orders))
def test_cover_pairs_regenerate_the_order(order):
    assert build_order(order.n, order.cover_pairs()) == order


# ---------------------------------------------------------------- width, chains, height


def test_width_examples():
    d = chain_decomposition(trivial_order(5))
    assert d.width == 5 and sorted(d.chains) == [(i,) for i in range(5)]
    assert width(total_order(range(5))) == 1
    assert chain_decomposition(total_order([3, 1, 4, 0, 2])).chains == ((3, 1, 4, 0, 2),)
    assert width(build_order(3, [(0, 1), (0, 2)])) == 2


def _check_decomposition(order):
    d = chain_decomposition(order)
    flat = [v for c in d.chains for v in c]
    assert sorted(flat) == list(range(order.n))
    for c in d.chains:
        assert c
        assert all(order.precedes(a, b) for a, b in zip(c, c[1:]))
    assert d.width == width(order) == len(d.chains)
    return d


@settings(max_examples=300)
@given(st.integers(1, 8).flatmap(orders))
def test_width_is_max_antichain(order):
    d = _check_decomposition(order)
    assert d.width == max_antichain_size(order)


@given(st.integers(1, 8).flatmap(orders))
def test_height_plus_dlo(order):
    assert height(order) + dlo(order) == order.n
    assert height(order) == longest_chain_bruteforce(order)


def test_height_examples():
    assert (height(total_order(range(6))), dlo(total_order(range(6)))) == (6, 0)
    assert (height(trivial_order(6)), dlo(trivial_order(6))) == (1, 5)


def test_gadget_height_matches_bruteforce_chain():
    g = MulticoloredGraph(2, 2, frozenset({(0, 2), (1, 3)}))
    inst = mcp_to_pohpp(g)
    assert inst.n == 42
    h = longest_chain_bruteforce(inst.order)
    assert height(inst.order) == h == inst.n - dlo(inst.order)


# ---------------------------------------------------------------- linear extensions


def test_linear_extension_examples():
    o = build_order(3, [(0, 2)])
    assert is_linear_extension((0, 1, 2), o)
    assert not is_linear_extension((2, 0, 1), o)
    assert all(is_linear_extension(p, trivial_order(4)) for p in itertools.permutations(range(4)))
    with pytest.raises(NotAPermutation):
        is_linear_extension((0, 0, 1), o)


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(orders))
def test_linear_extension_matches_pairwise_definition(order):
    pairs = list(order.strict)
    for seq in itertools.permutations(range(order.n)):
        pos = {v: i for i, v in enumerate(seq)}
        naive = all(pos[u] < pos[v] for u, v in pairs)
        assert is_linear_extension(seq, order) == naive


# ---------------------------------------------------------------- verify_solution


def test_verify_examples():
    p3 = make(3, path_edges(3))
    assert verify_solution(p3, (0, 1, 2)).cost == 2
    with pytest.raises(NonEdgeStep) as info:
        verify_solution(p3, (0, 2, 1))
    assert info.value.index == 0
    c4 = make(4, cycle_edges(4), [(2, 0)])
    with pytest.raises(OrderViolation) as info:
        verify_solution(c4, (0, 1, 2, 3))
    assert (info.value.u, info.value.v) == (2, 0)


def test_verify_permutation_first_and_weighted_cost():
    inst = make(3, complete_edges(3), costs={(0, 1): "1/2", (1, 2): Fraction(3, 4), (0, 2): 5})
    with pytest.raises(NotAPermutation):
        verify_solution(inst, (0, 1))
    assert verify_solution(inst, [0, 1, 2]).cost == Fraction(5, 4)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=7))
def test_verify_accepts_exactly_the_enumerated_paths(inst):
    accepted = set(enumerate_solutions(inst))
    for seq in itertools.permutations(range(inst.n)):
        try:
            verify_solution(inst, seq)
            ok = True
        except SolutionRejected:
            ok = False
        assert ok == (seq in accepted)


# ---------------------------------------------------------------- graph invariants


def test_graph_invariants():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(3, frozenset({(0, 1), (1, 2)}), {(0, 1): Fraction(1)})
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    a = g.adjacency
    assert a[0, 1] and a[1, 0] and not a[0, 2]
    assert g.cost(0, 1) == 1 and not g.weighted


def test_instance_size_mismatch():
    from pohpp import Instance

    with pytest.raises(ValueError):
        Instance(Graph.from_edges(2, [(0, 1)]), trivial_order(3))


def test_random_decompositions_are_minimum():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 8)
        perm = list(range(n))
        rng.shuffle(perm)
        pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
        order = build_order(n, pairs)
        assert _check_decomposition(order).width == max_antichain_size(order)

import random

import pytest
from hypothesis import given, settings

from helpers import complete_edges, cycle_edges, instances, make, naive_optimum, naive_solutions, path_edges
from pohpp import SizeGuard, count_solutions, enumerate_solutions, solve_bruteforce, verify_solution
from pohpp.model import Instance, build_order
from pohpp.oracle import search_state


def test_k3_lexicographic():
    r = solve_bruteforce(make(3, complete_edges(3)))
    assert (r.cost, r.sequence) == (2, (0, 1, 2))


def test_k22_all_a_before_b_is_infeasible():
    inst = make(4, [(0, 2), (0, 3), (1, 2), (1, 3)], [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert solve_bruteforce(inst) is None
    assert naive_solutions(inst) == []


def test_c4_with_one_pair():
    inst = make(4, cycle_edges(4), [(2, 0)])
    r = solve_bruteforce(inst)
    assert (r.cost, r.sequence) == (3, (1, 2, 3, 0))
    assert naive_optimum(inst) == (3, (1, 2, 3, 0))


def test_counts():
    assert count_solutions(make(3, complete_edges(3))) == 6
    assert count_solutions(make(4, path_edges(4))) == 2
    c4 = make(4, cycle_edges(4), [(2, 0)])
    assert count_solutions(c4) == 4 == len(naive_solutions(c4))


def test_trivial_sizes_and_disconnected():
    assert solve_bruteforce(make(1, [])).sequence == (0,)
    assert count_solutions(make(1, [])) == 1
    assert solve_bruteforce(make(3, [(0, 1)])) is None


def test_size_guard():
    inst = make(5, path_edges(5))
    with pytest.raises(SizeGuard):
        solve_bruteforce(inst, cap=4)
    with pytest.raises(SizeGuard):
        count_solutions(inst, cap=4)


def test_negative_costs_do_not_break_pruning():
    # the cheap edge is only reachable after an expensive one
    inst = make(4, path_edges(4) + [(0, 3)], costs={(0, 1): 5, (1, 2): -7, (2, 3): 1, (0, 3): 2})
    assert (solve_bruteforce(inst).cost, solve_bruteforce(inst).sequence) == naive_optimum(inst)


@settings(max_examples=300, deadline=None)
@given(instances(max_n=7))
def test_optimum_matches_permutation_filter(inst):
    r = solve_bruteforce(inst)
    ref = naive_optimum(inst)
    if ref is None:
        assert r is None
    else:
        assert (r.cost, r.sequence) == ref
        assert verify_solution(inst, r.sequence).cost == r.cost


@settings(max_examples=200, deadline=None)
@given(instances(max_n=7))
def test_pruned_counts_match_permutation_filter(inst):
    sols = naive_solutions(inst)
    assert count_solutions(inst) == len(sols)
    assert list(enumerate_solutions(inst)) == sorted(sols)


def test_monotone_under_pair_removal():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(2, 7)
        edges = [e for e in complete_edges(n) if rng.random() < 0.6]
        perm = list(range(n))
        rng.shuffle(perm)
        pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
        full = make(n, edges, pairs)
        base = count_solutions(full)
        for drop in range(len(pairs)):
            fewer = Instance(full.graph, build_order(n, pairs[:drop] + pairs[drop + 1:]))
            assert count_solutions(fewer) >= base


def test_search_state_minima():
    inst = make(4, cycle_edges(4), [(2, 0), (1, 3)])
    s = search_state(inst, (1, 2))
    assert s.remaining_minima == frozenset({0, 3})
    assert s.prefix_cost == 1
    with pytest.raises(ValueError):
        search_state(inst, (0,))

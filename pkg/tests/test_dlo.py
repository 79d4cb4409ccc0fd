import random

import pytest
from hypothesis import given, settings

from helpers import all_chains_via_covers, cycle_edges, instances, make, path_edges, random_instance
from pohpp import StateBudgetExceeded, maximum_chain, solve_bruteforce, solve_dlo_dp, solve_width_dp
from pohpp.dlo_dp import dlo_context
from pohpp.model import build_order, height, total_order, trivial_order
from pohpp.oracle import enumerate_solutions, search_state


def _pair(r):
    return None if r is None else (r.cost, r.sequence)


def test_maximum_chain_examples():
    assert maximum_chain(total_order(range(5))) == [0, 1, 2, 3, 4]
    assert maximum_chain(trivial_order(5)) == [0]
    order = build_order(4, [(0, 1), (0, 2), (2, 3)])
    longest = max(len(c) for c in all_chains_via_covers(order))
    assert maximum_chain(order) == [0, 2, 3] and longest == 3


@given(instances(max_n=8))
def test_maximum_chain_is_longest_and_lexicographically_first(inst):
    order = inst.order
    chain = maximum_chain(order)
    assert len(chain) == height(order)
    assert all(order.precedes(a, b) for a, b in zip(chain, chain[1:]))
    candidates = [list(c) for c in all_chains_via_covers(order) if len(c) == len(chain)]
    assert chain == min(candidates)


def test_examples():
    p4 = make(4, path_edges(4), path_edges(4))
    stats = {}
    assert solve_dlo_dp(p4, stats=stats).cost == 3
    assert stats["k"] == 0
    c4 = make(4, cycle_edges(4), [(2, 0)])
    ctx = dlo_context(c4.order)
    assert ctx.chain == (2, 0) and ctx.off_chain == (1, 3)
    assert _pair(solve_dlo_dp(c4)) == _pair(solve_bruteforce(c4)) == (3, (1, 2, 3, 0))


def test_star_with_isolated_minimum_is_infeasible():
    # centre 0 with leaves 1..3; leaves 1 and 2 must both come before 3, so two leaves
    # must be visited before the third but a leaf can only be left through the centre
    star = make(4, [(0, 1), (0, 2), (0, 3)], [(1, 3), (2, 3)])
    assert solve_dlo_dp(star) is None
    assert solve_bruteforce(star) is None


def test_linear_order_off_the_graph():
    inst = make(4, path_edges(4), [(0, 2), (2, 1), (1, 3)])
    assert solve_dlo_dp(inst) is None


@settings(max_examples=300, deadline=None)
@given(instances(max_n=7))
def test_matches_oracle(inst):
    stats = {}
    r = solve_dlo_dp(inst, stats=stats)
    assert _pair(r) == _pair(solve_bruteforce(inst))
    if "filled" in stats:
        k, h = stats["k"], height(inst.order)
        assert stats["filled"] <= (k + 1) * 2**k * (h + 1)


def test_three_solvers_agree_on_seeded_sweep():
    rng = random.Random(99)
    for _ in range(150):
        inst = random_instance(rng, rng.randint(1, 8), p_edge=rng.random(), density=rng.random() * 0.5)
        ref = _pair(solve_bruteforce(inst))
        assert _pair(solve_dlo_dp(inst)) == ref
        assert _pair(solve_width_dp(inst)) == ref


@settings(max_examples=100, deadline=None)
@given(instances(max_n=7))
def test_guard_matches_remaining_minima(inst):
    ctx = dlo_context(inst.order)
    slot = {v: j for j, v in enumerate(ctx.off_chain)}
    chain_pos = {v: j for j, v in enumerate(ctx.chain)}
    seen_prefixes = set()
    for sol in enumerate_solutions(inst):
        for length in range(inst.n):
            prefix = sol[:length]
            if prefix in seen_prefixes:
                continue
            seen_prefixes.add(prefix)
            state = search_state(inst, prefix)
            z = sum(1 << slot[v] for v in prefix if v in slot)
            i = sum(1 for v in prefix if v in chain_pos)
            candidates = [v for v in ctx.off_chain if not z >> slot[v] & 1]
            if i < len(ctx.chain):
                candidates.append(ctx.chain[i])
            guarded = {u for u in candidates if ctx.can_append(u, z, i)}
            assert guarded == state.remaining_minima


def test_budget():
    inst = make(9, [(u, v) for u in range(9) for v in range(u + 1, 9)])
    with pytest.raises(StateBudgetExceeded):
        solve_dlo_dp(inst, budget=1000)

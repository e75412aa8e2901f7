import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from restruct.assignment import (
    AssignmentInstance,
    apply_pairs,
    as_pairs,
    change_cost,
    check_matrix,
    moves,
    profit,
    proximity_profit,
    restructure,
    solve_base,
    struct_diff,
    unit_change_costs,
)
from restruct.core import RestructError, delta_of
from restruct.fixtures import fixture

import gen
import oracles

S1 = (2, 4, 5, 1, 3, 7, 6)
S2 = (4, 1, 3, 7, 5, 2, 6)
S_STAR = (2, 4, 3, 1, 5, 7, 6)
seeds = st.integers(0, 10**6)


def test_dominant_diagonal_gives_identity():
    c = [[10 if i == j else 1 for j in range(5)] for i in range(5)]
    assert solve_base(c) == (1, 2, 3, 4, 5)


def test_single_element():
    assert solve_base([[3]]) == (1,)
    assert solve_base([]) == ()


def test_six_by_six_matches_enumeration():
    c = gen.matrix(random.Random(6), 6)
    assert profit(solve_base(c), c) == oracles.assignment_base(c)


def test_hungarian_against_scipy():
    scipy = pytest.importorskip("scipy.optimize")
    import numpy as np

    rng = random.Random(11)
    for n in (1, 2, 5, 9, 15):
        c = gen.matrix(rng, n, 50)
        rows, cols = scipy.linear_sum_assignment(np.array(c), maximize=True)
        assert profit(solve_base(c), c) == int(np.array(c)[rows, cols].sum())


def test_struct_diff_of_example():
    assert struct_diff(S1, S1) == (0,) * 7
    assert struct_diff(S_STAR, S1) == (0, 0, -2, 0, 2, 0, 0)
    assert struct_diff(S1, S_STAR) == (0, 0, 2, 0, -2, 0, 0)
    assert moves(S1, S_STAR) == [(3, 5, 3), (5, 3, 5)]


def test_length_mismatch():
    with pytest.raises(RestructError):
        struct_diff((1, 2), (1, 2, 3))


def test_example_change_cost_unit():
    h = unit_change_costs(7)
    assert change_cost(S1, S1, h) == 0
    assert change_cost(S1, S_STAR, h) == 2


def test_change_cost_naive_loop():
    rng = random.Random(1)
    h = gen.matrix(rng, 6, 9, zero_diagonal=True)
    a, b = gen.permutation(rng, 6), gen.permutation(rng, 6)
    total = 0
    for i in range(6):
        total += h[a[i] - 1][b[i] - 1]
    assert change_cost(a, b, h) == total


def test_proximity_profit():
    const = [[3] * 7 for _ in range(7)]
    assert proximity_profit(S1, S2, const) == 0
    assert proximity_profit(S1, S1, gen.matrix(random.Random(2), 7)) == 0
    c = gen.matrix(random.Random(3), 7)
    assert proximity_profit(S_STAR, S2, c) == abs(oracles.perm_profit(S_STAR, c) - oracles.perm_profit(S2, c))


def test_example_fixture_exact_is_one_exchange():
    f = fixture("assignment-sec3")
    rep = restructure(f.s1, f.s2, f.instance.c2, f.instance.h, f.budget)
    want = oracles.assignment_best_rho(f.s1, f.s2, f.instance.c2, f.instance.h, f.budget)
    assert rep.proximity == want
    assert rep.s_star == S_STAR and rep.change_cost == 2
    swapped = [i for i in range(7) if rep.s_star[i] != f.s1[i]]
    assert len(swapped) == 2


def test_exchange_reaches_example_witness():
    f = fixture("assignment-sec3")
    rep = restructure(f.s1, f.s2, f.instance.c2, f.instance.h, 2, method="exchange")
    assert rep.method == "local"
    assert rep.proximity == 4


def test_zero_budget_identity():
    rng = random.Random(5)
    c2, h, s1, s2 = gen.assignment(rng, 6, positive_costs=True)
    for method in ("exact", "exchange"):
        assert restructure(s1, s2, c2, h, 0, method=method).s_star == s1


def test_vacuous_budget_reaches_goal_profit():
    rng = random.Random(7)
    c2, h, s1, _ = gen.assignment(rng, 6)
    rep = restructure(s1, None, c2, h, 6 * 4)
    assert rep.proximity == 0
    assert rep.objective_stage2 == oracles.assignment_base(c2)


def test_delta_over_pairs():
    rep = restructure(S1, S2, unit_change_costs(7), unit_change_costs(7), 2)
    assert rep.delta == delta_of(as_pairs(S1), as_pairs(rep.s_star))
    assert apply_pairs(S1, rep.delta) == rep.s_star


def test_structural_rho_counts_pair_difference():
    h = unit_change_costs(4)
    rep = restructure((1, 2, 3, 4), (2, 1, 3, 4), [[0] * 4] * 4, h, 0, proximity="structural")
    assert rep.proximity == 4


def test_matrix_validation():
    with pytest.raises(RestructError):
        check_matrix([[1, 2], [3]])
    with pytest.raises(RestructError):
        check_matrix([[1.5, 0], [0, 0]])
    with pytest.raises(RestructError):
        check_matrix([[1, 1], [1, 0]], zero_diagonal=True)
    with pytest.raises(RestructError):
        restructure((1, 1), None, [[0, 0], [0, 0]], unit_change_costs(2), 1)
    with pytest.raises(RestructError):
        AssignmentInstance([[1]], [[0, 0], [0, 0]])


def test_three_exchange_no_worse_than_two():
    rng = random.Random(13)
    for _ in range(20):
        c2, h, s1, s2 = gen.assignment(rng, 6)
        two = restructure(s1, s2, c2, h, 5, method="exchange")
        three = restructure(s1, s2, c2, h, 5, method="exchange", three_exchange=True)
        exact = restructure(s1, s2, c2, h, 5)
        assert exact.proximity <= three.proximity
        assert exact.proximity <= two.proximity


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(["objective", "structural"]))
def test_exact_matches_factorial_enumeration(seed, mode):
    rng = random.Random(seed)
    c2, h, s1, s2 = gen.assignment(rng, rng.randint(1, 6))
    b = rng.randint(0, 8)
    rep = restructure(s1, s2, c2, h, b, proximity=mode)
    assert rep.proximity == oracles.assignment_best_rho(s1, s2, c2, h, b, mode)
    assert rep.change_cost <= b and rep.feasible


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_exchange_outputs_valid_permutations(seed):
    rng = random.Random(seed)
    c2, h, s1, s2 = gen.assignment(rng)
    rep = restructure(s1, s2, c2, h, rng.randint(0, 10), method="exchange", three_exchange=True)
    assert sorted(rep.s_star) == list(range(1, len(s1) + 1))
    assert rep.change_cost <= rep.budget


@given(st.permutations(range(1, 8)), st.permutations(range(1, 8)))
def test_struct_diff_sums_to_zero(a, b):
    assert sum(struct_diff(tuple(a), tuple(b))) == 0


@given(st.permutations(range(1, 6)))
def test_self_change_is_free(s):
    h = gen.matrix(random.Random(0), 5, 9, zero_diagonal=True)
    assert change_cost(tuple(s), tuple(s), h) == 0


def test_exact_rho_nonincreasing_in_budget():
    rng = random.Random(17)
    for _ in range(10):
        c2, h, s1, s2 = gen.assignment(rng, 5)
        rhos = [restructure(s1, s2, c2, h, b).proximity for b in range(0, 16)]
        assert all(x >= y for x, y in zip(rhos, rhos[1:]))



def test_exchange_never_beats_exact_on_hundred_instances():
    rng = random.Random(100)
    for _ in range(100):
        c2, h, s1, s2 = gen.assignment(rng, rng.randint(2, 7))
        b = rng.randint(0, 10)
        ex = restructure(s1, s2, c2, h, b)
        loc = restructure(s1, s2, c2, h, b, method="exchange", three_exchange=rng.random() < 0.5)
        assert loc.proximity >= ex.proximity

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from restruct.core import (
    EMPTY_DELTA,
    CostPair,
    DeltaPlan,
    MissingCostError,
    RestructError,
    change_cost,
    check_budget,
    delta_of,
    proximity_abs,
    proximity_structural,
    sorted_ids,
)

from gen import knapsack
from oracles import knapsack_base

ids = st.frozensets(st.integers(0, 20), max_size=12)


def test_fig5_delta():
    d = delta_of({1, 3, 4, 5}, {2, 3, 4, 6})
    assert d.deleted == {1, 5}
    assert d.added == {2, 6}


def test_multichoice_example_delta():
    d = delta_of({1, 7, 8, 11}, {1, 2, 8, 6})
    assert (d.deleted, d.added) == ({7, 11}, {2, 6})


def test_identity_delta_is_empty():
    assert delta_of({1, 2}, {1, 2}) == EMPTY_DELTA
    assert delta_of({1, 2}, {1, 2}).is_empty


def test_sensor_change_costs():
    # R4 out, R2 in; then Q4 out, Q1 in, costs from the sensor table
    assert change_cost(DeltaPlan({"R4"}, {"R2"}), {"R4": CostPair(2, 2), "R2": CostPair(1, 1)}) == 3
    assert change_cost(DeltaPlan({"Q4"}, {"Q1"}), {"Q4": CostPair(1, 1), "Q1": CostPair(2, 1)}) == 2
    assert change_cost(EMPTY_DELTA, {}) == 0


def test_missing_cost_names_element():
    with pytest.raises(MissingCostError) as err:
        change_cost(DeltaPlan({7}, set()), {1: CostPair(1, 1)})
    assert err.value.element == 7
    assert "7" in str(err.value)


def test_proximity_abs_examples():
    assert proximity_abs(10, 10) == 0
    assert proximity_abs(0, 7) == 7


def test_proximity_against_brute_force_objective():
    rng = random.Random(4)
    inst, s1 = knapsack(rng, n=4)
    best = knapsack_base(inst, 2)
    assert proximity_abs(inst.profit(s1), best) == abs(sum(inst.by_id[i].c2 for i in s1) - best)


@pytest.mark.parametrize("bad", [-1, 1.5, True, "3", None])
def test_budget_rejects_non_naturals(bad):
    with pytest.raises(RestructError):
        check_budget(bad)


def test_costpair_rejects_negative():
    with pytest.raises(RestructError):
        CostPair(-1, 0)


def test_delta_rejects_overlap():
    with pytest.raises(RestructError):
        DeltaPlan({1}, {1})


def test_apply_checks_preconditions():
    with pytest.raises(RestructError):
        DeltaPlan({9}, set()).apply({1, 2})
    with pytest.raises(RestructError):
        DeltaPlan(set(), {1}).apply({1, 2})


def test_mixed_labels_sort():
    assert sorted_ids(["b", 3, (1, "a"), 1, "a"]) == [1, 3, "a", "b", (1, "a")]


@given(ids, ids)
def test_delta_round_trip(s1, s2):
    d = delta_of(s1, s2)
    assert d.apply(s1) == s2
    assert d.deleted <= s1 and not (d.added & s1)


@given(ids, ids, st.dictionaries(st.integers(0, 20), st.tuples(st.integers(0, 9), st.integers(0, 9))))
def test_change_cost_additive(a, b, raw):
    costs = {i: CostPair(*raw.get(i, (1, 2))) for i in range(21)}
    d1 = DeltaPlan(a - b, frozenset())
    d2 = DeltaPlan(frozenset(), b - a)
    assert change_cost(d1 | d2, costs) == change_cost(d1, costs) + change_cost(d2, costs)


@given(st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_proximity_symmetric(a, b):
    assert proximity_abs(a, b) == proximity_abs(b, a) >= 0
    assert proximity_abs(a, a) == 0


@given(ids, ids)
def test_structural_proximity_zero_iff_equal(a, b):
    assert (proximity_structural(a, b) == 0) == (a == b)

import random
from dataclasses import replace

import pytest

from restruct import dispatch
from restruct.core import DeltaPlan
from restruct.fixtures import FIXTURES, fixture
from restruct.schema import InstanceFile
from restruct.trees import SteinerTree
from restruct.verify import verify_report

import gen


# Steiner restructuring is exact only
RUNS = [(n, m) for n in FIXTURES for m in ("exact", "greedy") if not (n == "steiner-fig7" and m != "exact")]


@pytest.mark.parametrize("name,method", RUNS)
def test_solver_reports_check_out(name, method):
    f = fixture(name)
    rep = dispatch.restructure(f, method=method)
    assert verify_report(f, rep) == []


def test_wrong_change_cost():
    f = fixture("knapsack-fig5")
    rep = dispatch.restructure(f)
    bad = replace(rep, change_cost=rep.change_cost + 1)
    assert any("change cost" in p for p in verify_report(f, bad))


def test_budget_exceeded():
    f = fixture("sensor")
    rep = dispatch.restructure(f, 5)
    assert rep.change_cost == 5
    assert any("exceeds the budget" in p for p in verify_report(f, replace(rep, budget=4)))


def test_capacity_exceeded():
    f = fixture("knapsack-fig5")
    rep = dispatch.restructure(f)
    everything = frozenset(it.id for it in f.instance.items)
    bad = replace(rep, s_star=everything, delta=DeltaPlan(frozenset(), everything - f.s1))
    assert any("capacity" in p for p in verify_report(f, bad))


def test_delta_mismatch():
    f = fixture("sensor")
    rep = dispatch.restructure(f, 2)
    bad = replace(rep, delta=DeltaPlan(frozenset(), rep.delta.added))
    assert any("deletions" in p for p in verify_report(f, bad))


def test_disallowed_move():
    f = fixture("sensor")
    rep = dispatch.restructure(f, 5)
    # R1 -> R3 is not in the allowed move list
    s = (rep.s_star - {2}) | {3}
    problems = verify_report(f, replace(rep, s_star=s, delta=DeltaPlan(f.s1 - s, s - f.s1)))
    assert any("not allowed" in p for p in problems)


def test_two_items_in_one_group():
    f = fixture("sensor")
    rep = dispatch.restructure(f, 5)
    s = rep.s_star | {1}
    problems = verify_report(f, replace(rep, s_star=s, delta=DeltaPlan(f.s1 - s, s - f.s1)))
    assert any("group" in p for p in problems)


def test_not_a_permutation():
    f = fixture("assignment-sec3")
    rep = dispatch.restructure(f)
    s = (1,) * f.instance.n
    assert any("permutation" in p for p in verify_report(f, replace(rep, s_star=s)))


def test_not_a_tree():
    f = fixture("tree-fig6")
    rep = dispatch.restructure(f)
    e = next(iter(f.instance.edges - rep.s_star))
    s = rep.s_star | {e}
    problems = verify_report(f, replace(rep, s_star=s, delta=DeltaPlan(f.s1 - s, s - f.s1)))
    assert "s_star is not a spanning tree" in problems


def test_steiner_non_candidate():
    f = fixture("steiner-fig7")
    rep = dispatch.restructure(f)
    t = rep.s_star
    bad = SteinerTree(t.terminals, t.steiner_used | {"zz"}, t.edges)
    assert any("candidates" in p for p in verify_report(f, replace(rep, s_star=bad)))


def test_change_zone_confinement():
    f = fixture("access-points")
    rep = dispatch.restructure(f)
    pairs = dict(rep.s_star)
    assert 1 not in f.instance.change_zone
    pairs[1] = 2
    s = frozenset(pairs.items())
    problems = verify_report(f, replace(rep, s_star=s))
    assert any("outside the change zone" in p for p in problems)


def test_wrong_proximity_and_objective():
    f = fixture("multichoice-sec3")
    rep = dispatch.restructure(f)
    problems = verify_report(f, replace(rep, proximity=rep.proximity + 1, objective_stage2=-1))
    assert any("proximity" in p for p in problems)
    assert any("objective" in p for p in problems)


def test_problem_mismatch():
    rep = dispatch.restructure(fixture("sensor"))
    assert verify_report(fixture("knapsack-fig5"), rep) != []


def test_random_reports_check_out():
    rng = random.Random(7)
    for _ in range(60):
        inst, s1 = gen.knapsack(rng, rng.randint(1, 9))
        f = InstanceFile("knapsack", inst, s1, frozenset(), rng.randint(0, 12))
        for method in ("exact", "greedy", "local"):
            assert verify_report(f, dispatch.restructure(f, method=method)) == []

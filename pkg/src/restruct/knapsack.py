"""0/1 knapsack at two stages and its budgeted restructuring."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Mapping

from .core import (
    CostPair,
    RestructError,
    RestructureReport,
    check_budget,
    check_nonneg_int,
    delta_of,
    proximity_abs,
    proximity_structural,
)
from ._dp import LayeredDP, Option
from .heuristics import ChangeOperation, greedy_restructure, rank_change_candidates

PROBLEM = "knapsack"


@dataclass(frozen=True)
class Item:
    id: int
    c1: int
    a1: int
    c2: int
    a2: int
    costs: CostPair

    def __post_init__(self):
        check_nonneg_int(self.id, "item id")
        for name in ("c1", "a1", "c2", "a2"):
            check_nonneg_int(getattr(self, name), f"item {self.id} {name}")

    def profit(self, stage: int) -> int:
        return self.c1 if stage == 1 else self.c2

    def weight(self, stage: int) -> int:
        return self.a1 if stage == 1 else self.a2


@dataclass(frozen=True)
class KnapsackInstance:
    items: tuple[Item, ...]
    b1: int
    b2: int

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(self.items, key=lambda it: it.id)))
        check_nonneg_int(self.b1, "b1")
        check_nonneg_int(self.b2, "b2")
        ids = [it.id for it in self.items]
        if len(set(ids)) != len(ids):
            raise RestructError("duplicate item ids")

    @cached_property
    def ids(self) -> frozenset:
        return frozenset(it.id for it in self.items)

    @cached_property
    def by_id(self) -> dict[int, Item]:
        return {it.id: it for it in self.items}

    @cached_property
    def costs(self) -> dict[int, CostPair]:
        return {it.id: it.costs for it in self.items}

    def capacity(self, stage: int) -> int:
        return self.b1 if stage == 1 else self.b2

    def profit(self, selected: Iterable[int], stage: int = 2) -> int:
        by_id = self.by_id
        return sum(by_id[i].profit(stage) for i in selected)

    def weight(self, selected: Iterable[int], stage: int = 2) -> int:
        by_id = self.by_id
        return sum(by_id[i].weight(stage) for i in selected)

    def is_feasible(self, selected: Iterable[int], stage: int = 2) -> bool:
        selected = frozenset(selected)
        return selected <= self.ids and self.weight(selected, stage) <= self.capacity(stage)

    def check_solution(self, selected: Iterable[int], what: str = "solution") -> frozenset:
        selected = frozenset(selected)
        unknown = selected - self.ids
        if unknown:
            raise RestructError(f"{what} references unknown items {sorted(unknown)}")
        return selected


def _values(instance: KnapsackInstance, s2: frozenset, mode: str) -> dict[int, tuple[int, int]]:
    """Per-item (profit if selected, profit if not) for the DP objective."""
    if mode == "objective":
        return {it.id: (it.c2, 0) for it in instance.items}
    if mode == "structural":
        # maximizing this minimizes |S* ^ S2|
        return {it.id: (0, -1) if it.id in s2 else (-1, 0) for it in instance.items}
    raise RestructError(f"unknown proximity mode {mode!r}")


def _lex_pick(dp: LayeredDP):
    """Tie-break to the lexicographically smallest sorted id tuple."""
    n = len(dp.stages)
    # can stages i.. all go unselected, and at what change/profit?
    null_ok = [True] * (n + 1)
    null_change = [0] * (n + 1)
    null_profit = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        out = [o for o in dp.stages[i] if o.choice is None]
        null_ok[i] = null_ok[i + 1] and bool(out)
        if out:
            null_change[i] = null_change[i + 1] + out[0].change
            null_profit[i] = null_profit[i + 1] + out[0].profit

    def pick(i, w, h, options):
        if len(options) == 1:
            return options[0]
        sel = next(o for o in options if o.choice is not None)
        out = next(o for o in options if o.choice is None)
        hr = h - out.change
        empty_tail = (
            null_ok[i + 1]
            and null_change[i + 1] <= hr
            and null_profit[i + 1] == dp.value(i + 1, w, hr)
        )
        return out if empty_tail else sel

    return pick


def _solve_dp(stages, capacity, budget):
    dp = LayeredDP(stages, capacity, budget)
    if dp.optimum is None:
        return dp, None
    path = dp.walk(_lex_pick(dp))
    return dp, path


def solve_base(instance: KnapsackInstance, stage: int = 2) -> frozenset:
    """Profit-maximal feasible subset for one stage.

    Ties go to the lexicographically smallest sorted id tuple.
    """
    if stage not in (1, 2):
        raise RestructError(f"stage must be 1 or 2, got {stage!r}")
    stages = []
    for it in instance.items:
        stages.append(
            [
                Option(it.id, it.weight(stage), 0, it.profit(stage)),
                Option(None, 0, 0, 0),
            ]
        )
    _, path = _solve_dp(stages, instance.capacity(stage), 0)
    return frozenset(o.choice for o in path if o.choice is not None)


def _goal(instance: KnapsackInstance, s2) -> frozenset:
    if s2 is None:
        return solve_base(instance, 2)
    return instance.check_solution(s2, "s2")


def _report(instance, s1, s2, s_star, budget, method, mode, feasible=True, alternatives=()):
    delta = delta_of(s1, s_star)
    f_star = instance.profit(s_star)
    if mode == "structural":
        rho = proximity_structural(s_star, s2)
    else:
        rho = proximity_abs(f_star, instance.profit(s2))
    cost = sum(instance.by_id[i].costs.h_minus for i in delta.deleted) + sum(
        instance.by_id[i].costs.h_plus for i in delta.added
    )
    return RestructureReport(
        problem=PROBLEM,
        s_star=frozenset(s_star),
        delta=delta,
        change_cost=cost,
        proximity=rho,
        objective_stage2=f_star,
        feasible=feasible and cost <= budget and instance.is_feasible(s_star, 2),
        budget=budget,
        method=method,
        proximity_mode=mode,
        alternatives=tuple(alternatives),
    )


def _restructure_stages(instance, s1, values, frozen=frozenset()):
    stages = []
    for it in instance.items:
        p_in, p_out = values[it.id]
        if it.id in s1:
            keep = Option(it.id, it.a2, 0, p_in)
            drop = Option(None, 0, it.costs.h_minus, p_out)
            stages.append([keep] if it.id in frozen else [keep, drop])
        else:
            add = Option(it.id, it.a2, it.costs.h_plus, p_in)
            skip = Option(None, 0, 0, p_out)
            stages.append([skip] if it.id in frozen else [add, skip])
    return stages


def restructure_exact(
    instance: KnapsackInstance,
    s1: Iterable[int],
    s2: Iterable[int] | None = None,
    budget: int = 0,
    proximity: str = "objective",
    all_optima: bool = False,
    _frozen: frozenset = frozenset(),
    _method: str = "exact",
) -> RestructureReport:
    """Best stage-2 subset reachable from ``s1`` within the change budget.

    In objective mode the stage-2 profit is maximized; in structural mode
    ``|S* ^ S2|`` is minimized.  Among optima the smaller change cost wins,
    then the lexicographically smallest sorted id tuple.
    """
    check_budget(budget)
    s1 = instance.check_solution(s1, "s1")
    s2 = _goal(instance, s2)
    values = _values(instance, s2, proximity)
    stages = _restructure_stages(instance, s1, values, _frozen)
    dp, path = _solve_dp(stages, instance.b2, budget)
    if path is None:
        return _report(instance, s1, s2, s1, budget, _method, proximity, feasible=False)
    s_star = frozenset(o.choice for o in path if o.choice is not None)
    alts = ()
    if all_optima:
        alts = sorted(
            (frozenset(o.choice for o in p if o.choice is not None) for p in dp.all_optimal_paths()),
            key=lambda s: sorted(s),
        )
    return _report(instance, s1, s2, s_star, budget, _method, proximity, alternatives=alts)


def restructure_reduced(
    instance: KnapsackInstance,
    s1: Iterable[int],
    s2: Iterable[int] | None = None,
    budget: int = 0,
    k: int = 1,
    proximity: str = "objective",
) -> RestructureReport:
    """Exact restructuring where only the top-``k`` ranked deletion and
    addition candidates may change; every other item keeps its ``s1`` state."""
    check_nonneg_int(k, "k")
    s1 = instance.check_solution(s1, "s1")
    ranking = rank_change_candidates(instance, s1, k)
    movable = set(ranking.deletion_candidates) | set(ranking.addition_candidates)
    frozen = instance.ids - movable
    return restructure_exact(
        instance, s1, s2, budget, proximity, _frozen=frozenset(frozen), _method="reduced"
    )


def restructure_greedy(
    instance: KnapsackInstance,
    s1: Iterable[int],
    s2: Iterable[int] | None = None,
    budget: int = 0,
    proximity: str = "objective",
) -> RestructureReport:
    """Greedy add/swap selection by gain per unit of change cost.

    If ``s1`` overflows the stage-2 capacity, the cheapest low-value
    members are deleted first; the run is infeasible when the budget
    cannot pay for that repair.
    """
    check_budget(budget)
    s1 = instance.check_solution(s1, "s1")
    s2 = _goal(instance, s2)
    values = _values(instance, s2, proximity)
    by_id = instance.by_id
    gain_in = {i: values[i][0] - values[i][1] for i in by_id}

    current = set(s1)
    spent = 0
    while instance.weight(current) > instance.b2:
        cands = [j for j in current if by_id[j].costs.h_minus <= budget - spent]
        if not cands:
            return _report(instance, s1, s2, s1, budget, "greedy", proximity, feasible=False)
        j = min(
            cands,
            key=lambda j: (
                Fraction(gain_in[j], by_id[j].a2) if by_id[j].a2 else Fraction(10**9),
                by_id[j].costs.h_minus,
                j,
            ),
        )
        current.discard(j)
        spent += by_id[j].costs.h_minus
    repaired = frozenset(current)

    ops = []
    for i in sorted(instance.ids - s1):
        it = by_id[i]
        ops.append(ChangeOperation("add", (i,), it.costs.h_plus, gain_in[i]))
        for j in sorted(repaired):
            ops.append(
                ChangeOperation(
                    "swap", (j, i), by_id[j].costs.h_minus + it.costs.h_plus, gain_in[i] - gain_in[j]
                )
            )

    def admissible(selected, op):
        sel = set(repaired)
        for o in selected + [op]:
            if o.kind == "swap":
                sel.discard(o.elements[0])
            sel.add(o.elements[-1])
        return instance.weight(sel) <= instance.b2

    chosen = greedy_restructure(ops, budget - spent, admissible=admissible)
    for o in chosen:
        if o.kind == "swap":
            current.discard(o.elements[0])
        current.add(o.elements[-1])
    return _report(instance, s1, s2, frozenset(current), budget, "greedy", proximity)


def restructure(instance, s1, s2=None, budget=0, method="exact", proximity="objective", **kw):
    if method == "exact":
        return restructure_exact(instance, s1, s2, budget, proximity, **kw)
    if method == "greedy":
        return restructure_greedy(instance, s1, s2, budget, proximity)
    if method in ("local", "reduced"):
        return restructure_reduced(instance, s1, s2, budget, kw.get("k", 3), proximity)
    raise RestructError(f"unknown method {method!r} for knapsack")


def make_instance(rows: Iterable[Mapping], b1: int, b2: int) -> KnapsackInstance:
    """Build an instance from dict rows with keys id, c1, a1, c2, a2, h_minus, h_plus."""
    items = [
        Item(r["id"], r["c1"], r["a1"], r["c2"], r["a2"], CostPair(r["h_minus"], r["h_plus"]))
        for r in rows
    ]
    return KnapsackInstance(tuple(items), b1, b2)


__all__ = [
    "Item",
    "KnapsackInstance",
    "make_instance",
    "restructure",
    "restructure_exact",
    "restructure_greedy",
    "restructure_reduced",
    "solve_base",
]

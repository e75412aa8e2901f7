"""Multiple-choice knapsack (at most one item per group) and its restructuring."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

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
from .heuristics import ChangeOperation, greedy_restructure

PROBLEM = "multichoice"


@dataclass(frozen=True)
class MCItem:
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


@dataclass(frozen=True)
class MultiChoiceInstance:
    """Items partitioned into groups; ``b1``/``b2`` of ``None`` mean uncapacitated.

    ``allowed_moves``, when set, restricts which changes may happen: pairs
    ``(from_id, to_id)`` where ``None`` stands for an empty group.  Keeping
    a group's current choice is always allowed.
    """

    groups: tuple[tuple[int, ...], ...]
    items: tuple[MCItem, ...]
    b1: int | None = None
    b2: int | None = None
    allowed_moves: frozenset | None = None

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(tuple(g) for g in self.groups))
        object.__setattr__(self, "items", tuple(sorted(self.items, key=lambda it: it.id)))
        if self.allowed_moves is not None:
            object.__setattr__(self, "allowed_moves", frozenset(tuple(m) for m in self.allowed_moves))
        for b in ("b1", "b2"):
            if getattr(self, b) is not None:
                check_nonneg_int(getattr(self, b), b)
        ids = [it.id for it in self.items]
        if len(set(ids)) != len(ids):
            raise RestructError("duplicate item ids")
        seen: dict[int, int] = {}
        for gi, g in enumerate(self.groups):
            for i in g:
                if i in seen:
                    raise RestructError(f"item {i} appears in groups {seen[i]} and {gi}")
                seen[i] = gi
        if set(seen) != set(ids):
            missing = sorted(set(ids) ^ set(seen))
            raise RestructError(f"groups do not partition the items; mismatched ids {missing}")

    @cached_property
    def by_id(self) -> dict[int, MCItem]:
        return {it.id: it for it in self.items}

    @cached_property
    def group_of(self) -> dict[int, int]:
        return {i: gi for gi, g in enumerate(self.groups) for i in g}

    @cached_property
    def ids(self) -> frozenset:
        return frozenset(self.by_id)

    @cached_property
    def costs(self) -> dict[int, CostPair]:
        return {it.id: it.costs for it in self.items}

    def capacity(self, stage: int) -> int | None:
        return self.b1 if stage == 1 else self.b2

    def profit(self, selected: Iterable[int], stage: int = 2) -> int:
        return sum(self.by_id[i].c1 if stage == 1 else self.by_id[i].c2 for i in selected)

    def weight(self, selected: Iterable[int], stage: int = 2) -> int:
        return sum(self.by_id[i].a1 if stage == 1 else self.by_id[i].a2 for i in selected)

    def choice_vector(self, selected: Iterable[int]) -> tuple:
        """Per-group chosen id (``None`` where the group is empty)."""
        vec = [None] * len(self.groups)
        for i in selected:
            vec[self.group_of[i]] = i
        return tuple(vec)

    def check_solution(self, selected: Iterable[int], what: str = "solution") -> frozenset:
        selected = frozenset(selected)
        unknown = selected - self.ids
        if unknown:
            raise RestructError(f"{what} references unknown items {sorted(unknown)}")
        groups = [self.group_of[i] for i in selected]
        if len(groups) != len(set(groups)):
            raise RestructError(f"{what} picks more than one item in a group")
        return selected

    def is_feasible(self, selected: Iterable[int], stage: int = 2) -> bool:
        try:
            selected = self.check_solution(selected)
        except RestructError:
            return False
        cap = self.capacity(stage)
        return cap is None or self.weight(selected, stage) <= cap

    def move_allowed(self, src: int | None, dst: int | None) -> bool:
        return src == dst or self.allowed_moves is None or (src, dst) in self.allowed_moves

    def unrestricted(self) -> "MultiChoiceInstance":
        return MultiChoiceInstance(self.groups, self.items, self.b1, self.b2, None)


def priorities_to_profits(p: int) -> int:
    """Map an expert priority (1 best .. 3 worst) to a profit."""
    if isinstance(p, bool) or not isinstance(p, int) or not 1 <= p <= 3:
        raise RestructError(f"priority must be 1, 2 or 3, got {p!r}")
    return 4 - p


def _pick_smallest(i, w, h, options):
    # choice-vector order: empty group first, then by id
    return min(options, key=lambda o: (o.choice is not None, o.choice or 0))


def _chosen(path) -> frozenset:
    return frozenset(o.choice for o in path if o.choice is not None)


def solve_base(instance: MultiChoiceInstance, stage: int = 2) -> frozenset:
    """Profit-maximal selection with at most one item per group.

    Ties go to the smallest choice vector (empty before any id).
    """
    if stage not in (1, 2):
        raise RestructError(f"stage must be 1 or 2, got {stage!r}")
    stages = []
    for g in instance.groups:
        opts = [Option(None, 0, 0, 0)]
        for i in g:
            it = instance.by_id[i]
            opts.append(Option(i, it.a1 if stage == 1 else it.a2, 0, it.c1 if stage == 1 else it.c2))
        stages.append(opts)
    dp = LayeredDP(stages, instance.capacity(stage), 0)
    return _chosen(dp.walk(_pick_smallest))


def _group_values(instance, s2, mode):
    """Profit function (group index, chosen id or None) -> DP profit."""
    if mode == "objective":
        return lambda gi, j: 0 if j is None else instance.by_id[j].c2
    if mode == "structural":
        goal = instance.choice_vector(s2)

        def value(gi, j):
            g = goal[gi]
            if j == g:
                return 0
            return -((j is not None) + (g is not None))

        return value
    raise RestructError(f"unknown proximity mode {mode!r}")


def _change(instance, src, dst) -> int:
    if src == dst:
        return 0
    cost = 0
    if src is not None:
        cost += instance.by_id[src].costs.h_minus
    if dst is not None:
        cost += instance.by_id[dst].costs.h_plus
    return cost


def _restructure_stages(instance, s1, value):
    current = instance.choice_vector(s1)
    stages = []
    for gi, g in enumerate(instance.groups):
        src = current[gi]
        opts = []
        for dst in (None, *g):
            if not instance.move_allowed(src, dst):
                continue
            a2 = 0 if dst is None else instance.by_id[dst].a2
            opts.append(Option(dst, a2, _change(instance, src, dst), value(gi, dst)))
        stages.append(opts)
    return stages


def _goal(instance, s2):
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
    src, dst = instance.choice_vector(s1), instance.choice_vector(s_star)
    cost = sum(_change(instance, a, b) for a, b in zip(src, dst))
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


def restructure_exact(
    instance: MultiChoiceInstance,
    s1: Iterable[int],
    s2: Iterable[int] | None = None,
    budget: int = 0,
    proximity: str = "objective",
    all_optima: bool = False,
    max_alternatives: int = 1000,
) -> RestructureReport:
    """Optimal selection reachable from ``s1`` within the change budget.

    Per group, keeping the current item is free, a swap costs the old
    item's deletion plus the new item's addition, a drop only the deletion
    and a fresh pick in an empty group only the addition.  Among optima
    the cheaper change wins, then the smaller choice vector.  With
    ``all_optima`` every optimal selection within budget, whatever its
    cost, is listed in ``alternatives``.
    """
    check_budget(budget)
    s1 = instance.check_solution(s1, "s1")
    s2 = _goal(instance, s2)
    stages = _restructure_stages(instance, s1, _group_values(instance, s2, proximity))
    dp = LayeredDP(stages, instance.b2, budget)
    if dp.optimum is None:
        return _report(instance, s1, s2, s1, budget, "exact", proximity, feasible=False)
    s_star = _chosen(dp.walk(_pick_smallest))
    alts = ()
    if all_optima:
        alts = sorted(
            (_chosen(p) for p in dp.all_optimal_paths(max_alternatives)),
            key=lambda s: sorted(s),
        )
    return _report(instance, s1, s2, s_star, budget, "exact", proximity, alternatives=alts)


def restructure_greedy(
    instance: MultiChoiceInstance,
    s1: Iterable[int],
    s2: Iterable[int] | None = None,
    budget: int = 0,
    proximity: str = "objective",
) -> RestructureReport:
    """Greedy per-group swaps/picks by gain per unit of change cost."""
    check_budget(budget)
    s1 = instance.check_solution(s1, "s1")
    s2 = _goal(instance, s2)
    value = _group_values(instance, s2, proximity)
    group_of = instance.group_of
    cap = instance.b2

    current = dict(zip(range(len(instance.groups)), instance.choice_vector(s1)))
    spent = 0

    def load(choice):
        return sum(instance.by_id[j].a2 for j in choice.values() if j is not None)

    while cap is not None and load(current) > cap:
        cands = [
            (gi, j)
            for gi, j in current.items()
            if j is not None
            and instance.move_allowed(j, None)
            and instance.by_id[j].costs.h_minus <= budget - spent
        ]
        if not cands:
            return _report(instance, s1, s2, s1, budget, "greedy", proximity, feasible=False)

        def loss(c):
            gi, j = c
            a = instance.by_id[j].a2
            d = value(gi, j) - value(gi, None)
            return (Fraction(d, a) if a else Fraction(10**9), instance.by_id[j].costs.h_minus, j)

        gi, j = min(cands, key=loss)
        current[gi] = None
        spent += instance.by_id[j].costs.h_minus
    repaired = dict(current)

    original = instance.choice_vector(s1)
    ops = []
    for gi, g in enumerate(instance.groups):
        src = repaired[gi]
        for dst in g:
            if dst in (src, original[gi]) or not instance.move_allowed(original[gi], dst):
                continue
            gain = value(gi, dst) - value(gi, src)
            if src is None:
                ops.append(ChangeOperation("add", (dst,), _change(instance, src, dst), gain))
            else:
                ops.append(ChangeOperation("swap", (src, dst), _change(instance, src, dst), gain))

    def admissible(selected, op):
        ch = dict(repaired)
        for o in selected + [op]:
            gi = group_of[o.elements[-1]]
            if ch[gi] != repaired[gi]:
                return False
            ch[gi] = o.elements[-1]
        return cap is None or load(ch) <= cap

    for o in greedy_restructure(ops, budget - spent, admissible=admissible):
        current[group_of[o.elements[-1]]] = o.elements[-1]
    s_star = frozenset(j for j in current.values() if j is not None)
    return _report(instance, s1, s2, s_star, budget, "greedy", proximity)


def restructure(instance, s1, s2=None, budget=0, method="exact", proximity="objective", **kw):
    if method == "exact":
        return restructure_exact(instance, s1, s2, budget, proximity, **kw)
    if method in ("greedy", "local"):
        return restructure_greedy(instance, s1, s2, budget, proximity)
    raise RestructError(f"unknown method {method!r} for multichoice")


def make_instance(
    groups: Sequence[Sequence[int]],
    rows: Iterable[Mapping],
    b1: int | None = None,
    b2: int | None = None,
    allowed_moves=None,
) -> MultiChoiceInstance:
    items = [
        MCItem(r["id"], r["c1"], r["a1"], r["c2"], r["a2"], CostPair(r["h_minus"], r["h_plus"]))
        for r in rows
    ]
    return MultiChoiceInstance(tuple(map(tuple, groups)), tuple(items), b1, b2, allowed_moves)

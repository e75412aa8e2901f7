"""Reassignment of users to access points within a change zone.

Only users in the change zone may move.  Each move ``user: src -> dst``
costs the disconnection from ``src`` plus the connection to ``dst`` and
gains the profit of the new pair.  Coordinates, spectra and reliability
levels are carried for reference; the solver only reads the ops table.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .core import (
    RestructError,
    RestructureReport,
    check_budget,
    check_nonneg_int,
    delta_of,
)
from ._dp import LayeredDP, Option
from .heuristics import ChangeOperation, best_subset, greedy_restructure

PROBLEM = "access_points"


@dataclass(frozen=True)
class User:
    id: int
    x: int
    y: int
    z: int
    f: int
    r: int


@dataclass(frozen=True)
class AccessPoint:
    id: int
    x: int
    y: int
    z: int
    f: int
    n: int
    r: int


@dataclass(frozen=True)
class OpsEntry:
    h_minus: int
    h_plus: int
    c: int

    def __post_init__(self):
        for name in ("h_minus", "h_plus", "c"):
            check_nonneg_int(getattr(self, name), name)


@dataclass(frozen=True)
class AccessPointScenario:
    users: tuple[User, ...]
    access_points: tuple[AccessPoint, ...]
    change_zone: frozenset
    ops_table: Mapping[tuple[int, int], OpsEntry]
    s1: Mapping[int, int]
    s2: Mapping[int, int] | None = None
    notes: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "users", tuple(sorted(self.users, key=lambda u: u.id)))
        object.__setattr__(self, "access_points", tuple(sorted(self.access_points, key=lambda a: a.id)))
        object.__setattr__(self, "change_zone", frozenset(self.change_zone))
        object.__setattr__(self, "ops_table", dict(self.ops_table))
        object.__setattr__(self, "s1", dict(self.s1))
        if self.s2 is not None:
            object.__setattr__(self, "s2", dict(self.s2))
        problems = self.problems()
        if problems:
            raise RestructError("; ".join(problems))

    @property
    def user_ids(self) -> frozenset:
        return frozenset(u.id for u in self.users)

    @property
    def ap_ids(self) -> frozenset:
        return frozenset(a.id for a in self.access_points)

    def problems(self) -> list[str]:
        out = []
        users, aps = self.user_ids, self.ap_ids
        stray = self.change_zone - users
        if stray:
            out.append(f"change zone lists unknown users {sorted(stray)}")
        for u in sorted(self.change_zone & users):
            for a in sorted(aps):
                if (u, a) not in self.ops_table:
                    out.append(f"ops table has no entry for user {u}, access point {a}")
        for name in ("s1", "s2"):
            s = getattr(self, name)
            if s is None:
                continue
            if set(s) != users:
                out.append(f"{name} must assign every user exactly once")
            bad = sorted(u for u, a in s.items() if a not in aps)
            if bad:
                out.append(f"{name} assigns users {bad} to unknown access points")
        return out

    def loads(self, assignment: Mapping[int, int]) -> dict[int, int]:
        out = {a: 0 for a in self.ap_ids}
        for a in assignment.values():
            out[a] += 1
        return out


def move_operation(scenario: AccessPointScenario, user: int, dst: int) -> ChangeOperation:
    if user not in scenario.change_zone:
        raise RestructError(f"user {user} is outside the change zone")
    src = scenario.s1[user]
    if src == dst:
        raise RestructError(f"user {user} is already connected to {dst}")
    cost = scenario.ops_table[user, src].h_minus + scenario.ops_table[user, dst].h_plus
    return ChangeOperation(
        "swap",
        ((user, src), (user, dst)),
        cost,
        scenario.ops_table[user, dst].c,
        label=f"user {user}: {src}->{dst}",
    )


def goal_operations(scenario: AccessPointScenario) -> list[ChangeOperation]:
    """Moves that carry change-zone users from their ``s1`` to their ``s2`` point."""
    if scenario.s2 is None:
        raise RestructError("scenario has no goal assignment")
    return [
        move_operation(scenario, u, scenario.s2[u])
        for u in sorted(scenario.change_zone)
        if scenario.s2[u] != scenario.s1[u]
    ]


def all_operations(scenario: AccessPointScenario) -> list[ChangeOperation]:
    return [
        move_operation(scenario, u, a)
        for u in sorted(scenario.change_zone)
        for a in sorted(scenario.ap_ids)
        if a != scenario.s1[u]
    ]


def apply_operations(scenario: AccessPointScenario, ops: Iterable[ChangeOperation]) -> dict[int, int]:
    out = dict(scenario.s1)
    for op in ops:
        (user, _), (_, dst) = op.elements
        out[user] = dst
    return out


def as_pairs(assignment: Mapping[int, int]) -> frozenset:
    return frozenset(assignment.items())


SUBSET_LIMIT = 20


def _grouped_exact(ops: Sequence[ChangeOperation], budget: int) -> list[ChangeOperation]:
    # at most one move per user, so a layered DP over users is exact
    by_user: dict = {}
    for k, o in enumerate(ops):
        by_user.setdefault(o.elements[0], []).append(k)
    stages = [
        [Option(None, 0, 0, 0)] + [Option(k, 0, ops[k].cost, ops[k].gain) for k in ks]
        for ks in by_user.values()
    ]
    dp = LayeredDP(stages, None, budget)
    path = dp.walk(lambda i, w, h, opts: min(opts, key=lambda o: (o.choice is not None, o.choice or 0)))
    return [ops[o.choice] for o in path if o.choice is not None]


def run_access_point_reassignment(
    scenario: AccessPointScenario,
    budget: int,
    operations: Sequence[ChangeOperation] | None = None,
    method: str = "exact",
) -> RestructureReport:
    """Pick reconnections maximizing total gain within the budget.

    Defaults to the moves toward the goal assignment.  ``exact`` enumerates
    operation subsets, ``greedy`` takes the best gain/cost ratio first.
    The reported proximity is the gain still missing relative to taking
    every candidate operation.  Lists longer than ``SUBSET_LIMIT`` are
    solved by a per-user dynamic program instead of enumeration.
    """
    check_budget(budget)
    ops = goal_operations(scenario) if operations is None else list(operations)
    if method == "exact" and len(ops) <= SUBSET_LIMIT:
        chosen = best_subset(ops, budget)
    elif method == "exact":
        chosen = _grouped_exact(ops, budget)
    elif method in ("greedy", "local"):
        chosen, method = greedy_restructure(ops, budget), "greedy"
    else:
        raise RestructError(f"unknown method {method!r} for access points")
    s_star = apply_operations(scenario, chosen)
    gain = sum(o.gain for o in chosen)
    full = sum(o.gain for o in ops)
    return RestructureReport(
        problem=PROBLEM,
        s_star=as_pairs(s_star),
        delta=delta_of(as_pairs(scenario.s1), as_pairs(s_star)),
        change_cost=sum(o.cost for o in chosen),
        proximity=full - gain,
        objective_stage2=gain,
        feasible=True,
        method=method,
        proximity_mode="objective",
        budget=budget,
        alternatives=(tuple(o.label for o in chosen),),
    )


def with_budget_notes(scenario: AccessPointScenario, **notes) -> AccessPointScenario:
    return replace(scenario, notes={**scenario.notes, **notes})

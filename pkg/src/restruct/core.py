"""Family-independent pieces of the restructuring model.

A restructuring turns an initial solution ``s1`` into ``s_star`` so that
``s_star`` is close to a goal ``s2`` while the cost of the change stays
within a budget.  Solutions of subset-style families are sets of element
ids; other families (permutations, trees) map onto sets of pairs or
edges so that the same delta and cost helpers apply.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping

METHODS = ("exact", "greedy", "local", "reduced")
PROXIMITY_MODES = ("objective", "structural")


class RestructError(ValueError):
    """Base class for invalid-input errors raised by the library."""


class MissingCostError(RestructError, KeyError):
    def __init__(self, element: Hashable):
        self.element = element
        super().__init__(f"no change cost given for element {element!r}")

    def __str__(self) -> str:
        return self.args[0]


def check_nonneg_int(value: Any, what: str) -> int:
    # bool is an int subclass; reject it so JSON true/false never sneaks in
    if isinstance(value, bool) or not isinstance(value, int):
        raise RestructError(f"{what} must be an integer, got {value!r}")
    if value < 0:
        raise RestructError(f"{what} must be >= 0, got {value}")
    return value


def check_budget(budget: int) -> int:
    return check_nonneg_int(budget, "budget")


@dataclass(frozen=True)
class CostPair:
    """Deletion and addition cost of one element."""

    h_minus: int
    h_plus: int

    def __post_init__(self):
        check_nonneg_int(self.h_minus, "h_minus")
        check_nonneg_int(self.h_plus, "h_plus")


UNIT_COST = CostPair(1, 1)


@dataclass(frozen=True)
class DeltaPlan:
    deleted: frozenset
    added: frozenset

    def __post_init__(self):
        object.__setattr__(self, "deleted", frozenset(self.deleted))
        object.__setattr__(self, "added", frozenset(self.added))
        if self.deleted & self.added:
            raise RestructError("an element cannot be both deleted and added")

    def apply(self, s1: Iterable) -> frozenset:
        s1 = frozenset(s1)
        if not self.deleted <= s1:
            raise RestructError("delta deletes elements outside the initial solution")
        if self.added & s1:
            raise RestructError("delta adds elements already in the initial solution")
        return (s1 - self.deleted) | self.added

    def __or__(self, other: "DeltaPlan") -> "DeltaPlan":
        return DeltaPlan(self.deleted | other.deleted, self.added | other.added)

    @property
    def is_empty(self) -> bool:
        return not self.deleted and not self.added


EMPTY_DELTA = DeltaPlan(frozenset(), frozenset())


def delta_of(s1: Iterable, s_star: Iterable) -> DeltaPlan:
    s1, s_star = frozenset(s1), frozenset(s_star)
    return DeltaPlan(s1 - s_star, s_star - s1)


def change_cost(delta: DeltaPlan, costs: Mapping[Hashable, CostPair]) -> int:
    total = 0
    for e in delta.deleted:
        if e not in costs:
            raise MissingCostError(e)
        total += costs[e].h_minus
    for e in delta.added:
        if e not in costs:
            raise MissingCostError(e)
        total += costs[e].h_plus
    return total


def proximity_abs(f_a: int, f_b: int) -> int:
    return abs(f_a - f_b)


def proximity_structural(sa: Iterable, sb: Iterable) -> int:
    """Size of the symmetric difference of two solutions."""
    return len(frozenset(sa) ^ frozenset(sb))


def sort_key(x: Any):
    """Total order over mixed int/str labels and tuples of them."""
    if isinstance(x, tuple):
        return (2, tuple(sort_key(v) for v in x))
    if isinstance(x, str):
        return (1, x)
    if x is None:
        return (-1, 0)
    return (0, x)


def sorted_ids(xs: Iterable) -> list:
    return sorted(xs, key=sort_key)


@dataclass(frozen=True)
class RestructureReport:
    """Outcome of one restructuring run.

    ``s_star`` is family specific: a frozenset of ids (knapsack,
    multichoice), a position tuple (assignment), a frozenset of edges
    (spanning tree) or a ``SteinerTree``.  ``delta`` is always a
    ``DeltaPlan``; for permutations it is taken over ``(element,
    position)`` pairs.  ``alternatives`` optionally lists further
    solutions with the same optimal objective.
    """

    problem: str
    s_star: Any
    delta: DeltaPlan
    change_cost: int
    proximity: int
    objective_stage2: int | None
    feasible: bool
    method: str
    proximity_mode: str = "objective"
    budget: int | None = None
    alternatives: tuple = field(default=(), compare=False)

    @property
    def deleted(self) -> frozenset:
        return self.delta.deleted

    @property
    def added(self) -> frozenset:
        return self.delta.added

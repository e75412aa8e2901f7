"""Candidate ranking and greedy selection of change operations.

These work on subset-style families.  Exchange search for permutations
lives next to the assignment solver, edge swaps next to the tree solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .core import RestructError, check_budget, check_nonneg_int, sort_key

KINDS = ("delete", "add", "swap")


@dataclass(frozen=True)
class ChangeOperation:
    """One elementary change: its kind, touched ids, cost and objective gain.

    A swap lists the deleted element first and the added one second.
    """

    kind: str
    elements: tuple
    cost: int
    gain: int
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RestructError(f"unknown operation kind {self.kind!r}")
        object.__setattr__(self, "elements", tuple(self.elements))
        check_nonneg_int(self.cost, "operation cost")
        if self.kind == "swap" and len(self.elements) != 2:
            raise RestructError("a swap needs exactly one deleted and one added element")


@dataclass(frozen=True)
class CandidateRanking:
    deletion_candidates: tuple
    addition_candidates: tuple
    scores: dict = field(compare=False)


def rank_change_candidates(instance, s1: Iterable[int], k: int) -> CandidateRanking:
    """Rank members of ``s1`` for deletion and non-members for addition.

    Deletion score is ``-c2 / (h_minus + 1)``, addition score is
    ``c2 / ((h_plus + 1) * (a2 + 1))``; both lists run from the highest
    score down, equal scores by id, and are cut to ``k`` entries.
    """
    check_nonneg_int(k, "k")
    s1 = frozenset(s1)
    scores = {}
    dels, adds = [], []
    for it in instance.items:
        if it.id in s1:
            scores[it.id] = Fraction(-it.c2, it.costs.h_minus + 1)
            dels.append(it.id)
        else:
            scores[it.id] = Fraction(it.c2, (it.costs.h_plus + 1) * (it.a2 + 1))
            adds.append(it.id)
    order = lambda i: (-scores[i], sort_key(i))  # noqa: E731
    dels.sort(key=order)
    adds.sort(key=order)
    return CandidateRanking(tuple(dels[:k]), tuple(adds[:k]), scores)


def _ratio_key(op: ChangeOperation):
    # zero-cost operations come first (infinite ratio)
    ratio = (0, Fraction(0)) if op.cost == 0 else (1, -Fraction(op.gain, op.cost))
    return (ratio, op.cost, sort_key(op.elements), op.kind)


def _conflicts(op: ChangeOperation, touched: set) -> bool:
    return any(e in touched for e in op.elements)


Admissible = Callable[[list, ChangeOperation], bool]


def greedy_restructure(
    operations: Sequence[ChangeOperation],
    budget: int,
    admissible: Admissible | None = None,
) -> list[ChangeOperation]:
    """Repeatedly take the affordable positive-gain operation with the best
    gain/cost ratio (ties: cheaper, then lexicographic).

    Operations touching an already changed element are skipped.
    ``admissible(selected, op)`` can veto further moves, e.g. on capacity.
    """
    check_budget(budget)
    selected: list[ChangeOperation] = []
    touched: set = set()
    left = budget
    pool = sorted(operations, key=_ratio_key)
    while True:
        for op in pool:
            if op.gain <= 0 or op.cost > left or _conflicts(op, touched):
                continue
            if admissible is not None and not admissible(selected, op):
                continue
            break
        else:
            return selected
        selected.append(op)
        touched.update(op.elements)
        left -= op.cost
        pool.remove(op)


def best_subset(
    operations: Sequence[ChangeOperation],
    budget: int,
    admissible: Admissible | None = None,
    max_ops: int = 20,
) -> list[ChangeOperation]:
    """Exact selection by enumerating conflict-free subsets.

    Maximizes total gain; ties go to lower total cost, then to fewer
    operations, then to index order.
    """
    check_budget(budget)
    if len(operations) > max_ops:
        raise RestructError(f"subset enumeration limited to {max_ops} operations")
    best, best_key = [], (0, 0)
    n = len(operations)
    for r in range(1, n + 1):
        for idx in combinations(range(n), r):
            ops = [operations[i] for i in idx]
            cost = sum(o.cost for o in ops)
            if cost > budget:
                continue
            elems = [e for o in ops for e in o.elements]
            if len(elems) != len(set(elems)):
                continue
            if admissible is not None and not all(
                admissible(ops[:j], ops[j]) for j in range(len(ops))
            ):
                continue
            key = (sum(o.gain for o in ops), -cost)
            if key > best_key:
                best, best_key = ops, key
    return best

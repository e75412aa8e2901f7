"""Permutation assignment and its budgeted restructuring.

A permutation is a tuple ``s`` with ``s[i - 1]`` the (1-based) position
of element ``i``.  Matrices are square nested sequences indexed from 0,
so the profit of element ``i`` in position ``p`` is ``c[i - 1][p - 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .core import (
    DeltaPlan,
    RestructError,
    RestructureReport,
    check_budget,
    check_nonneg_int,
    delta_of,
    proximity_abs,
)

PROBLEM = "assignment"
Permutation = tuple
Matrix = tuple


def check_permutation(s: Sequence[int], n: int | None = None) -> Permutation:
    s = tuple(s)
    for v in s:
        if isinstance(v, bool) or not isinstance(v, int):
            raise RestructError(f"permutation entries must be integers, got {v!r}")
    if n is not None and len(s) != n:
        raise RestructError(f"permutation has length {len(s)}, expected {n}")
    if sorted(s) != list(range(1, len(s) + 1)):
        raise RestructError(f"{s} is not a permutation of 1..{len(s)}")
    return s


def check_matrix(m, what: str = "matrix", zero_diagonal: bool = False) -> Matrix:
    # numpy integers pass through __index__; floats are rejected below
    rows = tuple(
        tuple(v.__index__() if hasattr(v, "__index__") and not isinstance(v, bool) else v for v in row)
        for row in m
    )
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise RestructError(f"{what} is not square (row {i} has {len(row)} entries, expected {n})")
        for j, v in enumerate(row):
            check_nonneg_int(v, f"{what}[{i}][{j}]")
    if zero_diagonal:
        bad = [p for p in range(n) if rows[p][p] != 0]
        if bad:
            raise RestructError(f"{what} must have a zero diagonal; nonzero at {bad}")
    return rows


def _same_length(*perms):
    if len({len(p) for p in perms}) > 1:
        raise RestructError("permutations differ in length")


def profit(s: Permutation, c: Matrix) -> int:
    if len(s) != len(c):
        raise RestructError("permutation and matrix dimensions differ")
    return sum(c[i][p - 1] for i, p in enumerate(s))


def struct_diff(sa: Permutation, sb: Permutation) -> tuple[int, ...]:
    _same_length(sa, sb)
    return tuple(a - b for a, b in zip(sa, sb))


def change_cost(s1: Permutation, s_star: Permutation, h: Matrix) -> int:
    _same_length(s1, s_star)
    if len(h) != len(s1):
        raise RestructError("change-cost matrix dimension differs from the permutations")
    return sum(h[p - 1][q - 1] for p, q in zip(s1, s_star))


def proximity_profit(sa: Permutation, sb: Permutation, c: Matrix) -> int:
    """``|profit(sa) - profit(sb)|`` under one profit matrix."""
    _same_length(sa, sb)
    return proximity_abs(profit(sa, c), profit(sb, c))


def as_pairs(s: Permutation) -> frozenset:
    """The permutation as a set of ``(element, position)`` pairs."""
    return frozenset((i, p) for i, p in enumerate(s, start=1))


def moves(s1: Permutation, s_star: Permutation) -> list[tuple[int, int, int]]:
    """``(element, old position, new position)`` for every moved element."""
    return [(i, p, q) for i, (p, q) in enumerate(zip(s1, s_star), start=1) if p != q]


def solve_base(c) -> Permutation:
    """Profit-maximal permutation (Hungarian method with potentials)."""
    c = check_matrix(c, "profit matrix")
    n = len(c)
    if n == 0:
        return ()
    top = max(max(row) for row in c)
    cost = [[top - v for v in row] for row in c]
    INF = float("inf")
    # 1-based arrays; u/v row/column potentials, way[] the augmenting tree
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    owner = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        owner[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = owner[j0]
            delta, j1 = INF, 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta, j1 = minv[j], j
            for j in range(n + 1):
                if used[j]:
                    u[owner[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
    s = [0] * n
    for j in range(1, n + 1):
        s[owner[j] - 1] = j
    return tuple(s)


def _rho_fn(c2, s2, mode):
    if mode == "objective":
        target = profit(s2, c2)
        return lambda s: abs(profit(s, c2) - target)
    if mode == "structural":
        return lambda s: 2 * sum(a != b for a, b in zip(s, s2))
    raise RestructError(f"unknown proximity mode {mode!r}")


def _exact(s1, s2, c2, h, budget, mode):
    n = len(s1)
    rho_of = _rho_fn(c2, s2, mode)
    target = profit(s2, c2)
    # per-element profit range over all positions, for the objective bound
    lo = [min(row) for row in c2]
    hi = [max(row) for row in c2]
    rest_lo = [sum(lo[i:]) for i in range(n + 1)]
    rest_hi = [sum(hi[i:]) for i in range(n + 1)]
    s2_pos = [p for p in s2]

    best = [None, None, None]  # rho, cost, perm
    perm = [0] * n
    used = [False] * (n + 1)

    def bound(i, gained, mismatched):
        if mode == "objective":
            need = target - gained
            if need < rest_lo[i]:
                return rest_lo[i] - need
            if need > rest_hi[i]:
                return need - rest_hi[i]
            return 0
        return 2 * mismatched

    def rec(i, cost, gained, mismatched):
        if best[0] is not None:
            lb = bound(i, gained, mismatched)
            if lb > best[0] or (lb == best[0] and cost > best[1]):
                return False
        if i == n:
            s = tuple(perm)
            key = (rho_of(s), cost)
            if best[0] is None or key < (best[0], best[1]):
                best[:] = [key[0], key[1], s]
            return key == (0, 0)
        row_h = h[s1[i] - 1]
        for q in range(1, n + 1):
            if used[q]:
                continue
            step = cost + row_h[q - 1]
            if step > budget:
                continue
            used[q] = True
            perm[i] = q
            done = rec(i + 1, step, gained + c2[i][q - 1], mismatched + (q != s2_pos[i]))
            used[q] = False
            if done:
                return True
        return False

    rec(0, 0, 0, 0)
    return best[2]


def _neighbours(s, three):
    n = len(s)
    for i, j in combinations(range(n), 2):
        t = list(s)
        t[i], t[j] = t[j], t[i]
        yield (i, j), tuple(t)
    if three:
        for i, j, k in combinations(range(n), 3):
            for a, b, c in ((j, k, i), (k, i, j)):
                t = list(s)
                t[i], t[j], t[k] = s[a], s[b], s[c]
                yield (i, j, k, a), tuple(t)


def _exchange(s1, s2, c2, h, budget, mode, three):
    rho_of = _rho_fn(c2, s2, mode)
    cur, cur_rho = s1, rho_of(s1)
    while cur_rho > 0:
        best = None
        for size_three in ((False, True) if three else (False,)):
            for move, t in _neighbours(cur, size_three):
                if size_three and len(move) == 2:
                    continue
                cost = change_cost(s1, t, h)
                if cost > budget:
                    continue
                r = rho_of(t)
                if r >= cur_rho:
                    continue
                key = (r, cost, move)
                if best is None or key < best[0]:
                    best = (key, t)
            if best is not None:
                break
        if best is None:
            break
        cur, cur_rho = best[1], best[0][0]
    return cur


def restructure(
    s1: Sequence[int],
    s2: Sequence[int] | None,
    c2,
    h,
    budget: int,
    method: str = "exact",
    proximity: str = "objective",
    three_exchange: bool = False,
) -> RestructureReport:
    """Permutation closest to ``s2`` whose change cost from ``s1`` fits the budget.

    ``exact`` enumerates permutations depth first, pruning on the partial
    change cost and on a proximity lower bound; ties go to the cheaper
    change, then lexicographic order.  ``exchange`` starts from ``s1`` and
    applies best-improving 2-exchanges (then 3-exchanges if enabled) while
    the cumulative cost against ``s1`` stays within budget.
    """
    check_budget(budget)
    c2 = check_matrix(c2, "profit matrix")
    h = check_matrix(h, "change-cost matrix", zero_diagonal=True)
    n = len(c2)
    if len(h) != n:
        raise RestructError("profit and change-cost matrices differ in size")
    s1 = check_permutation(s1, n)
    s2 = solve_base(c2) if s2 is None else check_permutation(s2, n)
    if method == "exact":
        s_star, tag = _exact(s1, s2, c2, h, budget, proximity), "exact"
    elif method in ("exchange", "local"):
        s_star, tag = _exchange(s1, s2, c2, h, budget, proximity, three_exchange), "local"
    else:
        raise RestructError(f"unknown method {method!r} for assignment")
    return _report(s1, s2, s_star, c2, h, budget, tag, proximity)


def _report(s1, s2, s_star, c2, h, budget, method, mode):
    cost = change_cost(s1, s_star, h)
    if mode == "structural":
        rho = len(as_pairs(s_star) ^ as_pairs(s2))
    else:
        rho = proximity_profit(s_star, s2, c2)
    return RestructureReport(
        problem=PROBLEM,
        s_star=s_star,
        delta=delta_of(as_pairs(s1), as_pairs(s_star)),
        change_cost=cost,
        proximity=rho,
        objective_stage2=profit(s_star, c2),
        feasible=cost <= budget,
        budget=budget,
        method=method,
        proximity_mode=mode,
    )


def unit_change_costs(n: int) -> Matrix:
    return tuple(tuple(0 if p == q else 1 for q in range(n)) for p in range(n))


def apply_pairs(s1: Permutation, delta: DeltaPlan) -> Permutation:
    pairs = delta.apply(as_pairs(s1))
    s = [0] * len(s1)
    for i, p in pairs:
        s[i - 1] = p
    return check_permutation(s, len(s1))


@dataclass(frozen=True)
class AssignmentInstance:
    """Stage-2 profits, position change costs and optional stage-1 profits."""

    c2: Matrix
    h: Matrix
    c1: Matrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "c2", check_matrix(self.c2, "c2"))
        object.__setattr__(self, "h", check_matrix(self.h, "h", zero_diagonal=True))
        if self.c1 is not None:
            object.__setattr__(self, "c1", check_matrix(self.c1, "c1"))
        sizes = {len(self.c2), len(self.h)} | ({len(self.c1)} if self.c1 is not None else set())
        if len(sizes) != 1:
            raise RestructError(f"matrix sizes differ: {sorted(sizes)}")

    @property
    def n(self) -> int:
        return len(self.c2)

    def profits(self, stage: int) -> Matrix:
        if stage == 1:
            if self.c1 is None:
                raise RestructError("instance has no stage-1 profit matrix")
            return self.c1
        return self.c2

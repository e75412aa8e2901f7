"""Layered DP over (capacity, change budget) shared by the subset families.

Each stage offers a few options ``(choice, weight, change, profit)``; a
solution picks one option per stage.  Tables hold the best profit
reachable from stage ``i`` onward with at most ``w`` capacity and ``h``
change budget left, so any optimal path can be walked forward.
"""

from __future__ import annotations

from typing import Any, Iterator, NamedTuple, Sequence

import numpy as np

NEG = -(1 << 60)


class Option(NamedTuple):
    choice: Any
    weight: int
    change: int
    profit: int


class LayeredDP:
    def __init__(self, stages: Sequence[Sequence[Option]], capacity: int | None, budget: int):
        self.stages = [list(s) for s in stages]
        max_w = sum(max((o.weight for o in s), default=0) for s in self.stages)
        max_h = sum(max((o.change for o in s), default=0) for s in self.stages)
        # anything beyond the total attainable weight/change is vacuous
        self.W = max_w if capacity is None else min(capacity, max_w)
        self.H = min(budget, max_h)
        self.tables = self._build()

    def _build(self) -> list[np.ndarray]:
        W, H = self.W, self.H
        nxt = np.zeros((W + 1, H + 1), dtype=np.int64)
        tables = [nxt]
        for opts in reversed(self.stages):
            cur = np.full_like(nxt, NEG)
            for o in opts:
                if o.weight > W or o.change > H:
                    continue
                shifted = np.full_like(nxt, NEG)
                shifted[o.weight:, o.change:] = nxt[: W + 1 - o.weight, : H + 1 - o.change] + o.profit
                np.maximum(cur, shifted, out=cur)
            cur[cur < NEG // 2] = NEG
            tables.append(cur)
            nxt = cur
        tables.reverse()
        return tables

    def value(self, stage: int, w: int, h: int) -> int:
        return int(self.tables[stage][min(w, self.W), min(h, self.H)])

    @property
    def optimum(self) -> int | None:
        v = self.value(0, self.W, self.H)
        return None if v == NEG else v

    def min_budget(self) -> int:
        """Smallest change budget that still reaches the optimum."""
        row = self.tables[0][self.W]
        return int(np.flatnonzero(row == row[self.H])[0])

    def optimal_options(self, stage: int, w: int, h: int) -> list[Option]:
        target = self.value(stage, w, h)
        out = []
        for o in self.stages[stage]:
            if o.weight > w or o.change > h:
                continue
            rest = self.value(stage + 1, w - o.weight, h - o.change)
            if rest != NEG and rest + o.profit == target:
                out.append(o)
        return out

    def walk(self, pick, w: int | None = None, h: int | None = None) -> list[Option]:
        """Follow one optimal path; ``pick(stage, w, h, options)`` chooses."""
        w = self.W if w is None else w
        h = self.min_budget() if h is None else h
        path = []
        for i in range(len(self.stages)):
            o = pick(i, w, h, self.optimal_options(i, w, h))
            path.append(o)
            w -= o.weight
            h -= o.change
        return path

    def all_optimal_paths(self, limit: int = 1000) -> Iterator[list[Option]]:
        n = len(self.stages)

        def rec(i, w, h, acc):
            if i == n:
                yield list(acc)
                return
            for o in self.optimal_options(i, w, h):
                acc.append(o)
                yield from rec(i + 1, w - o.weight, h - o.change, acc)
                acc.pop()

        for k, path in enumerate(rec(0, self.W, self.H, [])):
            if k >= limit:
                return
            yield path

"""How much of the stage-2 optimum a small change budget recovers.

A random knapsack whose weights and profits shift between stages; the
exact restructuring is compared with the greedy and reduced variants.
"""

import random

from restruct import dispatch
from restruct.knapsack import Item, KnapsackInstance
from restruct.core import CostPair
from restruct.schema import InstanceFile

rng = random.Random(11)
items = tuple(
    Item(i, rng.randint(1, 20), rng.randint(1, 10), rng.randint(1, 20), rng.randint(1, 10), CostPair(rng.randint(1, 4), rng.randint(1, 4)))
    for i in range(1, 13)
)
inst = KnapsackInstance(items, 30, 30)
s1, _ = dispatch.solve_base(InstanceFile("knapsack", inst, frozenset()), stage=1)
f = InstanceFile("knapsack", inst, s1)
_, best = dispatch.solve_base(f, stage=2)
print(f"stage-1 choice {sorted(s1)} earns {inst.profit(s1, 2)} in stage 2; the stage-2 optimum is {best}")
print(f"it weighs {inst.weight(s1, 2)} against a stage-2 capacity of {inst.b2}; '!' marks an over-capacity result")
print("budget  exact  greedy  reduced")
for b in range(0, 21, 2):
    reps = [dispatch.restructure(f, b, m) for m in ("exact", "greedy", "reduced")]
    cells = [f"{r.objective_stage2}{'' if r.feasible else '!'}" for r in reps]
    print(f"{b:6}  {cells[0]:>5}  {cells[1]:>6}  {cells[2]:>7}")

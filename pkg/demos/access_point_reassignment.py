"""Reconnect users to access points after a change in demand.

Only users inside the change zone may move.  Exact selection is compared
with the gain/cost greedy rule across budgets.
"""

from restruct.access_points import goal_operations, run_access_point_reassignment
from restruct.fixtures import fixture

scen = fixture("access-points").instance
print("candidate moves:")
for op in goal_operations(scen):
    print(f"  {op.label:16} cost {op.cost}  gain {op.gain}")

print("\nbudget  exact             greedy")
for b in range(10):
    ex = run_access_point_reassignment(scen, b)
    gr = run_access_point_reassignment(scen, b, method="greedy")
    print(f"{b:6}  gain {ex.objective_stage2:2} cost {ex.change_cost:2}   gain {gr.objective_stage2:2} cost {gr.change_cost:2}")

rep = run_access_point_reassignment(scen, 5)
after = dict(rep.s_star)
print("\nat budget 5:", ", ".join(f"user {u}: {scen.s1[u]}->{a}" for u, a in sorted(after.items()) if a != scen.s1[u]))

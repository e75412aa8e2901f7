"""Upgrading a four-part sensor under a shrinking change budget.

Each group (R, P, D, Q) holds the variants of one component; the current
design uses one variant per group.  Only the moves R4 -> R2 and Q4 -> Q1
are on the table.  The sweep shows which design each budget buys.
"""

from restruct import dispatch
from restruct.fixtures import fixture

f = fixture("sensor")
base = f.instance.profit(f.s1)


def design(s):
    return "*".join(f.labels[i] for i in sorted(s))


print("current:", design(f.s1), "goal:", design(f.s2))
for b in range(7):
    rep = dispatch.restructure(f, b, all_optima=True)
    alts = sorted({design(s) for s in rep.alternatives} - {design(rep.s_star)})
    extra = f"  (also optimal: {', '.join(alts)})" if alts else ""
    print(f"budget {b}: {design(rep.s_star):14} cost {rep.change_cost}  gain {rep.objective_stage2 - base}{extra}")

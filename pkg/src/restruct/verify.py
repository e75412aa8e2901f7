"""Independent re-check of a report against its instance.

Nothing here calls a solver or the solvers' cost helpers; every quantity
is recomputed from the raw instance data with plain loops so that a bug
in a solver cannot hide behind the same bug in its checker.
"""

from __future__ import annotations

from collections import deque

from .core import RestructureReport
from .schema import InstanceFile


def _is_tree(vertices, edges) -> bool:
    vertices = set(vertices)
    edges = list(edges)
    if not vertices:
        return not edges
    if len(edges) != len(vertices) - 1:
        return False
    adj = {v: [] for v in vertices}
    for u, v in edges:
        if u not in adj or v not in adj:
            return False
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(vertices))
    seen = {start}
    todo = deque([start])
    while todo:
        x = todo.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen == vertices


def _norm(e):
    u, v = e
    return (u, v) if (type(u) is type(v) and u <= v) or (isinstance(u, int) and isinstance(v, str)) else (v, u)


def _delta_issues(out, rep, before, after):
    before, after = set(before), set(after)
    if set(rep.deleted) != before - after:
        out.append("reported deletions differ from s1 minus s_star")
    if set(rep.added) != after - before:
        out.append("reported additions differ from s_star minus s1")


def _cost_budget_issues(out, rep, cost, budget):
    if rep.change_cost != cost:
        out.append(f"change cost is {cost}, report says {rep.change_cost}")
    if rep.feasible and budget is not None and cost > budget:
        out.append(f"change cost {cost} exceeds the budget {budget}")


def _prox(out, rep, value):
    if value is not None and rep.proximity != value:
        out.append(f"proximity is {value}, report says {rep.proximity}")


def _obj(out, rep, value):
    if rep.objective_stage2 != value:
        out.append(f"stage-2 objective is {value}, report says {rep.objective_stage2}")


def _subset_family(out, f, rep, grouped):
    inst = f.instance
    rows = {it.id: it for it in inst.items}
    s_star = rep.s_star
    if not isinstance(s_star, (set, frozenset)):
        return out.append("s_star must be a set of item ids")
    unknown = [i for i in s_star if i not in rows]
    if unknown:
        return out.append(f"s_star contains unknown ids {unknown}")
    s1 = set(f.s1)
    _delta_issues(out, rep, s1, s_star)
    cost = 0
    if grouped:
        for g in inst.groups:
            a = [i for i in g if i in s1]
            b = [i for i in g if i in s_star]
            if len(b) > 1:
                out.append(f"group {list(g)} holds {len(b)} selected items")
                continue
            src = a[0] if a else None
            dst = b[0] if b else None
            if src != dst:
                if inst.allowed_moves is not None and (src, dst) not in inst.allowed_moves:
                    out.append(f"move {src} -> {dst} is not allowed")
                if src is not None:
                    cost += rows[src].costs.h_minus
                if dst is not None:
                    cost += rows[dst].costs.h_plus
    else:
        for i in s1 - set(s_star):
            cost += rows[i].costs.h_minus
        for i in set(s_star) - s1:
            cost += rows[i].costs.h_plus
    _cost_budget_issues(out, rep, cost, _budget(f, rep))
    weight = 0
    profit = 0
    for i in s_star:
        weight += rows[i].a2
        profit += rows[i].c2
    if rep.feasible and inst.b2 is not None and weight > inst.b2:
        out.append(f"stage-2 weight {weight} exceeds capacity {inst.b2}")
    _obj(out, rep, profit)
    if f.s2 is not None:
        if rep.proximity_mode == "structural":
            _prox(out, rep, len(set(s_star) ^ set(f.s2)))
        else:
            goal = 0
            for i in f.s2:
                goal += rows[i].c2
            _prox(out, rep, abs(profit - goal))


def _assignment(out, f, rep):
    inst = f.instance
    n = inst.n
    s = rep.s_star
    if not isinstance(s, tuple) or sorted(s) != list(range(1, n + 1)):
        return out.append(f"s_star {s!r} is not a permutation of 1..{n}")
    pairs1 = {(i + 1, p) for i, p in enumerate(f.s1)}
    pairs = {(i + 1, p) for i, p in enumerate(s)}
    _delta_issues(out, rep, pairs1, pairs)
    cost = 0
    for i in range(n):
        cost += inst.h[f.s1[i] - 1][s[i] - 1]
    _cost_budget_issues(out, rep, cost, _budget(f, rep))
    profit = 0
    for i in range(n):
        profit += inst.c2[i][s[i] - 1]
    _obj(out, rep, profit)
    if f.s2 is not None:
        if rep.proximity_mode == "structural":
            goal = {(i + 1, p) for i, p in enumerate(f.s2)}
            _prox(out, rep, len(pairs ^ goal))
        else:
            goal = 0
            for i in range(n):
                goal += inst.c2[i][f.s2[i] - 1]
            _prox(out, rep, abs(profit - goal))


def _edge_cost(g, old, new):
    cost = 0
    for e in old - new:
        cost += g.edge_costs[e].h_minus
    for e in new - old:
        cost += g.edge_costs[e].h_plus
    return cost


def _weight(g, edges):
    total = 0
    for e in edges:
        total += g.weights[e]
    return total


def _tree_prox(out, rep, g, edges, goal):
    if goal is None:
        return
    if rep.proximity_mode == "structural":
        _prox(out, rep, len(edges ^ goal))
    elif g.weights is not None:
        _prox(out, rep, abs(_weight(g, edges) - _weight(g, goal)))


def _spanning(out, f, rep):
    g = f.instance
    edges = {_norm(e) for e in rep.s_star}
    outside = edges - set(g.edges)
    if outside:
        return out.append(f"s_star uses edges outside the graph: {sorted(outside, key=str)}")
    if not _is_tree(g.vertices, edges):
        out.append("s_star is not a spanning tree")
    s1 = set(f.s1)
    _delta_issues(out, rep, s1, edges)
    _cost_budget_issues(out, rep, _edge_cost(g, s1, edges), _budget(f, rep))
    _obj(out, rep, _weight(g, edges) if g.weights is not None else None)
    _tree_prox(out, rep, g, edges, None if f.s2 is None else set(f.s2))


def _steiner(out, f, rep):
    inst = f.instance
    g = inst.graph
    t = rep.s_star
    if not hasattr(t, "steiner_used"):
        return out.append("s_star must be a Steiner tree")
    if set(t.terminals) != set(inst.terminals):
        out.append("s_star has a different terminal set")
    used = set(t.steiner_used)
    if not used <= set(inst.candidates):
        out.append("s_star uses vertices outside the Steiner candidates")
    edges = {_norm(e) for e in t.edges}
    outside = edges - set(g.edges)
    if outside:
        return out.append(f"s_star uses edges outside the graph: {sorted(outside, key=str)}")
    if not _is_tree(set(inst.terminals) | used, edges):
        out.append("s_star does not form a tree over its terminals and Steiner vertices")
    used1 = set(f.s1.steiner_used)
    e1 = set(f.s1.edges)
    _delta_issues(out, rep, e1 | used1, edges | used)
    cost = _edge_cost(g, e1, edges)
    for z in used1 - used:
        cost += g.vertex_costs[z].h_minus
    for z in used - used1:
        cost += g.vertex_costs[z].h_plus
    _cost_budget_issues(out, rep, cost, _budget(f, rep))
    _tree_prox(out, rep, g, edges, None if f.s2 is None else set(f.s2.edges))


def _access_points(out, f, rep):
    scen = f.instance
    try:
        s_star = dict(rep.s_star)
    except (TypeError, ValueError):
        return out.append("s_star must be a set of (user, access point) pairs")
    if len(s_star) != len(rep.s_star) or set(s_star) != {u.id for u in scen.users}:
        return out.append("s_star must connect every user to exactly one access point")
    aps = {a.id for a in scen.access_points}
    cost = gain = 0
    for u, a in s_star.items():
        if a not in aps:
            out.append(f"user {u} connected to unknown access point {a}")
            continue
        src = scen.s1[u]
        if a == src:
            continue
        if u not in scen.change_zone:
            out.append(f"user {u} moved but is outside the change zone")
            continue
        cost += scen.ops_table[u, src].h_minus + scen.ops_table[u, a].h_plus
        gain += scen.ops_table[u, a].c
    _delta_issues(out, rep, set(scen.s1.items()), set(s_star.items()))
    _cost_budget_issues(out, rep, cost, _budget(f, rep))
    _obj(out, rep, gain)
    if scen.s2 is not None:
        full = 0
        for u in scen.change_zone:
            if scen.s2[u] != scen.s1[u]:
                full += scen.ops_table[u, scen.s2[u]].c
        _prox(out, rep, full - gain)


def _budget(f, rep):
    return rep.budget if rep.budget is not None else f.budget


_CHECKS = {
    "knapsack": lambda out, f, rep: _subset_family(out, f, rep, grouped=False),
    "multichoice": lambda out, f, rep: _subset_family(out, f, rep, grouped=True),
    "assignment": _assignment,
    "spanning_tree": _spanning,
    "steiner_tree": _steiner,
    "access_points": _access_points,
}


def verify_report(f: InstanceFile, rep: RestructureReport) -> list[str]:
    """Every violation found; an empty list means the report checks out.

    When the instance has no goal ``s2`` the proximity cannot be rechecked
    without solving, so it is skipped.
    """
    if rep.problem != f.problem:
        return [f"report is for {rep.problem!r} but the instance is {f.problem!r}"]
    out: list[str] = []
    try:
        _CHECKS[f.problem](out, f, rep)
    except (KeyError, TypeError, IndexError, AttributeError) as exc:
        out.append(f"report references data the instance lacks: {exc!r}")
    return out


def solution_problems(f: InstanceFile) -> list[str]:
    """Validity of the start and goal solutions stored in an instance.

    A Steiner goal is only an edge target, so it must use graph edges and
    candidate vertices but need not be a tree.
    """
    out = []
    inst = f.instance
    if f.problem in ("knapsack", "multichoice"):
        rows = {it.id: it for it in inst.items}
        for name, s, weight, cap in (
            ("s1", f.s1, lambda it: it.a1, inst.b1),
            ("s2", f.s2, lambda it: it.a2, inst.b2),
        ):
            if s is None:
                continue
            total = sum(weight(rows[i]) for i in s)
            if cap is not None and total > cap:
                out.append(f"{name} weight {total} exceeds capacity {cap}")
            if f.problem == "multichoice":
                for g in inst.groups:
                    if len([i for i in g if i in s]) > 1:
                        out.append(f"{name} selects more than one item of group {list(g)}")
    elif f.problem == "assignment":
        for name, s in (("s1", f.s1), ("s2", f.s2)):
            if s is not None and sorted(s) != list(range(1, inst.n + 1)):
                out.append(f"{name} is not a permutation")
    elif f.problem == "spanning_tree":
        for name, s in (("s1", f.s1), ("s2", f.s2)):
            if s is not None and not (set(s) <= set(inst.edges) and _is_tree(inst.vertices, s)):
                out.append(f"{name} is not a spanning tree of the graph")
    elif f.problem == "steiner_tree":
        g = inst.graph
        if not _is_tree(set(inst.terminals) | set(f.s1.steiner_used), f.s1.edges):
            out.append("s1 is not a Steiner tree")
        for name, t in (("s1", f.s1), ("s2", f.s2)):
            if t is None:
                continue
            if not set(t.edges) <= set(g.edges):
                out.append(f"{name} uses edges outside the graph")
            if not set(t.steiner_used) <= set(inst.candidates):
                out.append(f"{name} uses non-candidate Steiner vertices")
    elif f.problem == "access_points":
        out.extend(inst.problems())
    return out

"""Seeded random instances for the property and acceptance suites."""

import random

from restruct.access_points import AccessPoint, AccessPointScenario, OpsEntry, User
from restruct.core import CostPair
from restruct.knapsack import Item, KnapsackInstance
from restruct.multichoice import MCItem, MultiChoiceInstance
from restruct.trees import SteinerInstance, SteinerTree, UndirectedGraph, edge, mst_base


def _costs(rng, lo=0, hi=5):
    return CostPair(rng.randint(lo, hi), rng.randint(lo, hi))


def knapsack(rng: random.Random, n=None, vmax=20, positive_costs=False):
    n = rng.randint(1, 12) if n is None else n
    lo = 1 if positive_costs else 0
    items = tuple(
        Item(i, rng.randint(0, vmax), rng.randint(0, vmax), rng.randint(0, vmax), rng.randint(0, vmax), _costs(rng, lo))
        for i in range(1, n + 1)
    )
    total = sum(it.a1 for it in items)
    inst = KnapsackInstance(items, rng.randint(0, total), rng.randint(0, sum(it.a2 for it in items)))
    # greedy stage-1 fill gives a feasible start that is not always optimal
    s1, w = set(), 0
    for it in rng.sample(items, len(items)):
        if w + it.a1 <= inst.b1 and rng.random() < 0.7:
            s1.add(it.id)
            w += it.a1
    return inst, frozenset(s1)


def multichoice(rng: random.Random, groups=None, per_group=None, vmax=20, positive_costs=False, moves=False):
    m = rng.randint(1, 5) if groups is None else groups
    lo = 1 if positive_costs else 0
    gs, items, nid = [], [], 1
    for _ in range(m):
        k = rng.randint(1, 4) if per_group is None else per_group
        g = tuple(range(nid, nid + k))
        nid += k
        gs.append(g)
        for i in g:
            items.append(MCItem(i, rng.randint(0, vmax), rng.randint(0, vmax), rng.randint(0, vmax), rng.randint(0, vmax), _costs(rng, lo)))
    tot = sum(max(it.a2 for it in items if it.id in g) for g in gs)
    b1 = rng.choice([None, rng.randint(0, tot)])
    b2 = rng.choice([None, rng.randint(0, tot)])
    rows = {it.id: it for it in items}
    s1, w = set(), 0
    for g in gs:
        j = rng.choice((None,) + g)
        if j is not None and (b1 is None or w + rows[j].a1 <= b1):
            s1.add(j)
            w += rows[j].a1
    allowed = None
    if moves:
        allowed = set()
        for g in gs:
            for a in (None,) + g:
                for b in (None,) + g:
                    if a != b and rng.random() < 0.5:
                        allowed.add((a, b))
        allowed = frozenset(allowed)
    return MultiChoiceInstance(tuple(gs), tuple(items), b1, b2, allowed), frozenset(s1)


def matrix(rng, n, vmax=20, zero_diagonal=False, positive=False):
    lo = 1 if positive else 0
    return tuple(
        tuple(0 if zero_diagonal and i == j else rng.randint(lo, vmax) for j in range(n)) for i in range(n)
    )


def permutation(rng, n):
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return tuple(p)


def assignment(rng, n=None, positive_costs=False):
    n = rng.randint(1, 7) if n is None else n
    c2 = matrix(rng, n)
    h = matrix(rng, n, 4, zero_diagonal=True, positive=positive_costs)
    return c2, h, permutation(rng, n), permutation(rng, n)


def connected_graph(rng, n=None, p=0.5, weighted=True, positive_costs=False):
    n = rng.randint(2, 8) if n is None else n
    vs = list(range(1, n + 1))
    order = vs[:]
    rng.shuffle(order)
    edges = {edge(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    for i in vs:
        for j in vs:
            if i < j and rng.random() < p:
                edges.add((i, j))
    lo = 1 if positive_costs else 0
    weights = {e: rng.randint(0, 9) for e in sorted(edges)} if weighted else None
    costs = {e: _costs(rng, lo, 3) for e in sorted(edges)}
    return UndirectedGraph(frozenset(vs), frozenset(edges), weights, costs)


def random_tree(rng, g):
    """A spanning tree of ``g`` drawn by Kruskal over shuffled weights."""
    # sorted so str-labelled vertices do not make the draws depend on hash order
    w = {e: rng.random() for e in sorted(g.edges, key=str)}
    shuffled = UndirectedGraph(g.vertices, g.edges, {e: int(w[e] * 1e6) for e in g.edges}, g.edge_costs)
    return mst_base(shuffled)


def steiner(rng, terminals=None, candidates=None, p=0.5):
    """Random Steiner instance with a start tree and a goal tree."""
    t = rng.randint(2, 4) if terminals is None else terminals
    k = rng.randint(1, 3) if candidates is None else candidates
    g = connected_graph(rng, t + k, p, weighted=False)
    names = {v: v if v <= t else "abc"[v - t - 1] for v in g.vertices}
    costs = {edge(names[u], names[v]): c for (u, v), c in g.edge_costs.items()}
    cand = frozenset(names[v] for v in g.vertices if v > t)
    vcost = {z: _costs(rng, 0, 3) for z in sorted(cand)}
    graph = UndirectedGraph(frozenset(names.values()), frozenset(costs), None, costs, vcost)
    inst = SteinerInstance(graph, frozenset(range(1, t + 1)), cand)
    return inst, steiner_tree(rng, inst), steiner_tree(rng, inst)


def steiner_tree(rng, inst):
    g = inst.graph
    while True:
        used = frozenset(z for z in sorted(inst.candidates) if rng.random() < 0.5)
        vs = inst.terminals | used
        sub = UndirectedGraph(vs, g.induced(vs), None, None)
        if len(vs) == 1 or _connected(sub):
            return SteinerTree(inst.terminals, used, random_tree(rng, sub))


def _connected(g):
    seen, todo = set(), [next(iter(g.vertices))]
    while todo:
        x = todo.pop()
        if x in seen:
            continue
        seen.add(x)
        todo.extend(b if a == x else a for a, b in g.edges if x in (a, b))
    return seen == set(g.vertices)


def access_points(rng, users=None, aps=None, positive_costs=False):
    n = rng.randint(1, 8) if users is None else users
    m = rng.randint(2, 4) if aps is None else aps
    lo = 1 if positive_costs else 0
    us = tuple(User(i, 0, 0, 0, 0, 0) for i in range(1, n + 1))
    ps = tuple(AccessPoint(j, 0, 0, 0, 0, n, 0) for j in range(1, m + 1))
    zone = frozenset(u.id for u in us if rng.random() < 0.7)
    table = {(u, a): OpsEntry(rng.randint(lo, 5), rng.randint(lo, 5), rng.randint(0, 9)) for u in zone for a in range(1, m + 1)}
    s1 = {u.id: rng.randint(1, m) for u in us}
    s2 = {u: (rng.randint(1, m) if u in zone else s1[u]) for u in s1}
    return AccessPointScenario(us, ps, zone, table, s1, s2)

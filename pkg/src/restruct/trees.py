"""Spanning-tree and Steiner-tree restructuring at desk scale.

Vertices are ints or strings.  An edge is a 2-tuple normalized so that
its endpoints are in ``sort_key`` order; trees are frozensets of edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Mapping

from .core import (
    UNIT_COST,
    CostPair,
    MissingCostError,
    RestructError,
    RestructureReport,
    check_budget,
    check_nonneg_int,
    delta_of,
    sort_key,
)

Vertex = Hashable
Edge = tuple


def edge(u: Vertex, v: Vertex) -> Edge:
    if u == v:
        raise RestructError(f"self-loop at vertex {u!r}")
    return (u, v) if sort_key(u) <= sort_key(v) else (v, u)


def edge_set(edges: Iterable) -> frozenset:
    return frozenset(edge(*e) for e in edges)


def sorted_edges(edges: Iterable[Edge]) -> list[Edge]:
    return sorted(edges, key=sort_key)


class UnionFind:
    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def copy(self) -> "UnionFind":
        uf = UnionFind()
        uf.parent = dict(self.parent)
        return uf


def is_spanning_tree(vertices: Iterable[Vertex], edges: Iterable[Edge]) -> bool:
    vertices = frozenset(vertices)
    edges = list(edges)
    if len(edges) != len(vertices) - 1:
        return False
    uf = UnionFind(vertices)
    for u, v in edges:
        if u not in vertices or v not in vertices or not uf.union(u, v):
            return False
    return True


@dataclass(frozen=True)
class UndirectedGraph:
    """Graph with optional integer edge weights and per-edge change costs.

    Missing ``edge_costs`` default to unit costs.  ``vertex_costs`` holds
    the deletion/addition cost of each candidate Steiner vertex.
    """

    vertices: frozenset
    edges: frozenset
    weights: Mapping[Edge, int] | None = None
    edge_costs: Mapping[Edge, CostPair] = field(default=None)
    vertex_costs: Mapping[Vertex, CostPair] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", edge_set(self.edges))
        for u, v in self.edges:
            for x in (u, v):
                if x not in self.vertices:
                    raise RestructError(f"edge ({u!r}, {v!r}) references unknown vertex {x!r}")
        if self.weights is not None:
            w = {edge(*e): check_nonneg_int(x, f"weight of {e}") for e, x in self.weights.items()}
            missing = self.edges - set(w)
            if missing:
                raise RestructError(f"edges without weight: {sorted_edges(missing)}")
            object.__setattr__(self, "weights", w)
        if self.edge_costs is None:
            costs = {e: UNIT_COST for e in self.edges}
        else:
            costs = {edge(*e): c for e, c in self.edge_costs.items()}
        object.__setattr__(self, "edge_costs", costs)
        object.__setattr__(self, "vertex_costs", dict(self.vertex_costs))

    def weight(self, edges: Iterable[Edge]) -> int:
        if self.weights is None:
            raise RestructError("graph has no edge weights")
        return sum(self.weights[e] for e in edges)

    def induced(self, vertices: Iterable[Vertex]) -> frozenset:
        vs = frozenset(vertices)
        return frozenset(e for e in self.edges if e[0] in vs and e[1] in vs)

    def edge_change_cost(self, old: Iterable[Edge], new: Iterable[Edge]) -> int:
        d = delta_of(old, new)
        total = 0
        for e in d.deleted:
            if e not in self.edge_costs:
                raise MissingCostError(e)
            total += self.edge_costs[e].h_minus
        for e in d.added:
            if e not in self.edge_costs:
                raise MissingCostError(e)
            total += self.edge_costs[e].h_plus
        return total

    def check_spanning_tree(self, tree: Iterable, what: str = "tree") -> frozenset:
        t = edge_set(tree)
        outside = t - self.edges
        if outside:
            raise RestructError(f"{what} uses edges not in the graph: {sorted_edges(outside)}")
        if not is_spanning_tree(self.vertices, t):
            raise RestructError(f"{what} is not a spanning tree of the graph")
        return t


def mst_base(g: UndirectedGraph) -> frozenset:
    """Minimum-weight spanning tree (Kruskal, ties by edge order)."""
    if g.weights is None:
        raise RestructError("minimum spanning tree needs edge weights")
    uf = UnionFind(g.vertices)
    tree = []
    for e in sorted(g.edges, key=lambda e: (g.weights[e], sort_key(e))):
        if uf.union(*e):
            tree.append(e)
    if len(tree) != len(g.vertices) - 1:
        raise RestructError("graph is disconnected")
    return frozenset(tree)


def _connects(vertices, edges) -> bool:
    uf = UnionFind(vertices)
    parts = len(uf.parent)
    for u, v in edges:
        if uf.union(u, v):
            parts -= 1
    return parts <= 1


def spanning_trees(vertices: Iterable[Vertex], edges: Iterable[Edge]) -> Iterator[frozenset]:
    """Every spanning tree, by contracting (taking) or deleting each edge in turn."""
    vertices = frozenset(vertices)
    edges = sorted_edges(edge_set(edges))
    need = len(vertices) - 1
    if need < 0:
        return
    if need == 0:
        yield frozenset()
        return

    def rec(k, uf, chosen):
        if len(chosen) == need:
            yield frozenset(chosen)
            return
        if k == len(edges) or len(edges) - k < need - len(chosen):
            return
        u, v = edges[k]
        if uf.find(u) != uf.find(v):
            contracted = uf.copy()
            contracted.union(u, v)
            chosen.append(edges[k])
            yield from rec(k + 1, contracted, chosen)
            chosen.pop()
        # deleting the edge is only worth exploring if the rest still connects
        if _connects(vertices, chosen + edges[k + 1:]):
            yield from rec(k + 1, uf, chosen)

    yield from rec(0, UnionFind(vertices), [])


def tree_delta(t1: Iterable[Edge], t_star: Iterable[Edge]):
    d = delta_of(edge_set(t1), edge_set(t_star))
    return d.deleted, d.added


def _tree_rho(g, tree, goal, mode):
    if mode == "structural":
        return len(tree ^ goal)
    if mode == "objective":
        return abs(g.weight(tree) - g.weight(goal))
    raise RestructError(f"unknown proximity mode {mode!r}")


def _tree_report(problem, g, s_star, delta, cost, rho, budget, method, mode, weighted_edges):
    obj = g.weight(weighted_edges) if g.weights is not None else None
    return RestructureReport(
        problem=problem,
        s_star=s_star,
        delta=delta,
        change_cost=cost,
        proximity=rho,
        objective_stage2=obj,
        feasible=cost <= budget,
        budget=budget,
        method=method,
        proximity_mode=mode,
    )


def _swap_search(g, t1, goal, budget, mode):
    cur = t1
    cur_rho = _tree_rho(g, cur, goal, mode)
    while cur_rho > 0:
        best = None
        for e in sorted_edges(g.edges - cur):
            for f in sorted_edges(cur):
                t = (cur - {f}) | {e}
                if not is_spanning_tree(g.vertices, t):
                    continue
                cost = g.edge_change_cost(t1, t)
                if cost > budget:
                    continue
                r = _tree_rho(g, t, goal, mode)
                if r >= cur_rho:
                    continue
                key = (r, cost, sort_key(e), sort_key(f))
                if best is None or key < best[0]:
                    best = (key, t)
        if best is None:
            break
        cur, cur_rho = best[1], best[0][0]
    return cur


def restructure_spanning(
    g: UndirectedGraph,
    t1: Iterable,
    t2: Iterable,
    budget: int,
    proximity: str = "structural",
    method: str = "exact",
) -> RestructureReport:
    """Spanning tree closest to ``t2`` whose edge-change cost from ``t1`` fits the budget.

    Structural proximity is ``|E* ^ E2|``; objective proximity is the
    absolute weight difference.  ``exact`` enumerates all spanning trees
    (ties: cheaper change, then sorted edge list); ``local`` swaps one
    tree edge for one non-tree edge at a time.
    """
    check_budget(budget)
    t1 = g.check_spanning_tree(t1, "t1")
    t2 = g.check_spanning_tree(t2, "t2")
    if method == "exact":
        best = None
        for t in spanning_trees(g.vertices, g.edges):
            cost = g.edge_change_cost(t1, t)
            if cost > budget:
                continue
            key = (_tree_rho(g, t, t2, proximity), cost, [sort_key(e) for e in sorted_edges(t)])
            if best is None or key < best[0]:
                best = (key, t)
        s_star, tag = best[1], "exact"
    elif method in ("local", "greedy"):
        s_star, tag = _swap_search(g, t1, t2, budget, proximity), "local"
    else:
        raise RestructError(f"unknown method {method!r} for spanning trees")
    return _tree_report(
        "spanning_tree",
        g,
        s_star,
        delta_of(t1, s_star),
        g.edge_change_cost(t1, s_star),
        _tree_rho(g, s_star, t2, proximity),
        budget,
        tag,
        proximity,
        s_star,
    )


@dataclass(frozen=True)
class SteinerTree:
    terminals: frozenset
    steiner_used: frozenset
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "steiner_used", frozenset(self.steiner_used))
        object.__setattr__(self, "edges", edge_set(self.edges))

    @property
    def vertices(self) -> frozenset:
        return self.terminals | self.steiner_used

    def is_valid(self, candidates: Iterable[Vertex] | None = None) -> bool:
        if candidates is not None and not self.steiner_used <= frozenset(candidates):
            return False
        if self.steiner_used & self.terminals:
            return False
        return is_spanning_tree(self.vertices, self.edges)

    def problems(self, candidates: Iterable[Vertex] | None = None) -> list[str]:
        out = []
        if candidates is not None and not self.steiner_used <= frozenset(candidates):
            out.append("uses Steiner vertices outside the candidate set")
        touched = {x for e in self.edges for x in e}
        missing = self.vertices - touched if len(self.vertices) > 1 else set()
        if missing:
            out.append(f"vertices without incident edges: {sorted(missing, key=sort_key)}")
        stray = touched - self.vertices
        if stray:
            out.append(f"edges reach undeclared vertices: {sorted(stray, key=sort_key)}")
        if len(self.edges) != len(self.vertices) - 1 or not _connects(self.vertices, self.edges):
            out.append(
                f"{len(self.edges)} edges over {len(self.vertices)} vertices do not form a tree"
            )
        return out


def steiner_delta(s1: SteinerTree, s_star: SteinerTree):
    """Delta over edges and Steiner vertices together."""
    return delta_of(s1.edges | s1.steiner_used, s_star.edges | s_star.steiner_used)


def steiner_change_cost(g: UndirectedGraph, s1: SteinerTree, s_star: SteinerTree) -> int:
    if s1.terminals != s_star.terminals:
        raise RestructError("Steiner trees have different terminal sets")
    cost = g.edge_change_cost(s1.edges, s_star.edges)
    vd = delta_of(s1.steiner_used, s_star.steiner_used)
    for z in vd.deleted:
        if z not in g.vertex_costs:
            raise MissingCostError(z)
        cost += g.vertex_costs[z].h_minus
    for z in vd.added:
        if z not in g.vertex_costs:
            raise MissingCostError(z)
        cost += g.vertex_costs[z].h_plus
    return cost


def restructure_steiner(
    g: UndirectedGraph,
    candidates: Iterable[Vertex],
    s1: SteinerTree,
    s2: SteinerTree,
    budget: int,
    proximity: str = "structural",
) -> RestructureReport:
    """Exact search over Steiner subsets and the spanning trees they induce.

    Only ``s1`` must be a valid tree; ``s2`` serves as an edge target.
    Structural proximity is ``|E* ^ E2|``.
    """
    check_budget(budget)
    z = sorted(frozenset(candidates), key=sort_key)
    if not s1.is_valid(z):
        raise RestructError("s1 is not a valid Steiner tree: " + "; ".join(s1.problems(z)))
    if s2.terminals != s1.terminals:
        raise RestructError("s1 and s2 have different terminal sets")
    outside = s1.edges - g.edges
    if outside:
        raise RestructError(f"s1 uses edges not in the graph: {sorted_edges(outside)}")
    best = None
    for r in range(len(z) + 1):
        for used in combinations(z, r):
            vs = s1.terminals | frozenset(used)
            for t in spanning_trees(vs, g.induced(vs)):
                cand = SteinerTree(s1.terminals, frozenset(used), t)
                cost = steiner_change_cost(g, s1, cand)
                if cost > budget:
                    continue
                key = (_tree_rho(g, t, s2.edges, proximity), cost, [sort_key(e) for e in sorted_edges(t)])
                if best is None or key < best[0]:
                    best = (key, cand)
    s_star = best[1]
    return _tree_report(
        "steiner_tree",
        g,
        s_star,
        steiner_delta(s1, s_star),
        steiner_change_cost(g, s1, s_star),
        best[0][0],
        budget,
        "exact",
        proximity,
        s_star.edges,
    )


@dataclass(frozen=True)
class SteinerInstance:
    graph: UndirectedGraph
    terminals: frozenset
    candidates: frozenset

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "candidates", frozenset(self.candidates))
        if self.terminals & self.candidates:
            raise RestructError("terminals and Steiner candidates overlap")
        if self.graph.vertices != self.terminals | self.candidates:
            raise RestructError("graph vertices must be exactly terminals plus candidates")
        missing = self.candidates - set(self.graph.vertex_costs)
        if missing:
            raise MissingCostError(sorted(missing, key=sort_key)[0])

"""Regenerate the shipped fixture files in canonical form.

Run from the repository root: ``python3 scripts/build_fixtures.py``.
"""

from pathlib import Path

from restruct.access_points import AccessPoint, AccessPointScenario, OpsEntry, User
from restruct.assignment import AssignmentInstance, unit_change_costs
from restruct.core import UNIT_COST, CostPair
from restruct.knapsack import Item, KnapsackInstance
from restruct.multichoice import MCItem, MultiChoiceInstance
from restruct.schema import InstanceFile, save_instance
from restruct.trees import SteinerInstance, SteinerTree, UndirectedGraph, edge_set, sorted_edges

OUT = Path(__file__).resolve().parents[1] / "src" / "restruct" / "fixtures"

PLACEHOLDER = "numbers are unit placeholders; the source gives only the sets"


def knapsack_fig5():
    items = tuple(Item(i, 1, 1, 1, 1, UNIT_COST) for i in range(1, 8))
    return InstanceFile(
        "knapsack",
        KnapsackInstance(items, 4, 4),
        frozenset({1, 3, 4, 5}),
        frozenset({2, 3, 5, 7}),
        4,
        meta={"note": PLACEHOLDER, "witness_s_star": [2, 3, 4, 6]},
    )


def multichoice_sec3():
    groups = ((1, 3, 5, 12), (2, 7, 9), (4, 8, 13), (6, 10, 11))
    items = tuple(MCItem(i, 1, 1, 1, 1, UNIT_COST) for g in groups for i in g)
    return InstanceFile(
        "multichoice",
        MultiChoiceInstance(groups, items, 4, 4),
        frozenset({1, 7, 8, 11}),
        frozenset({3, 7, 8, 10}),
        4,
        meta={"note": PLACEHOLDER, "witness_s_star": [1, 2, 6, 8]},
    )


def assignment_sec3():
    s1, s2 = (2, 4, 5, 1, 3, 7, 6), (4, 1, 3, 7, 5, 2, 6)
    c2 = tuple(tuple(int(p == s2[i]) for p in range(1, 8)) for i in range(7))
    return InstanceFile(
        "assignment",
        AssignmentInstance(c2, unit_change_costs(7)),
        s1,
        s2,
        2,
        meta={
            "note": "c2 rewards the goal position of each element; h is unit off the diagonal",
            "witness_s_star": [2, 4, 3, 1, 5, 7, 6],
        },
    )


FIG6_PRINTED = [(1, 2), (1, 4), (1, 5), (1, 6), (2, 3), (2, 6), (3, 6), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7)]


def tree_fig6():
    edges = edge_set(FIG6_PRINTED + [(3, 5)])
    g = UndirectedGraph(frozenset(range(1, 8)), edges)
    return InstanceFile(
        "spanning_tree",
        g,
        edge_set([(1, 2), (1, 4), (1, 6), (3, 5), (5, 6), (6, 7)]),
        edge_set([(1, 2), (2, 3), (2, 6), (4, 6), (5, 6), (6, 7)]),
        4,
        meta={
            "patched_edges": [[3, 5]],
            "note": "edge (3,5) is used by T1 and T* but missing from the printed edge list",
            "witness_s_star": [[1, 2], [1, 4], [2, 3], [2, 6], [3, 5], [6, 7]],
        },
    )


FIG7_S1 = [(1, 2), (1, "a"), ("a", 4), ("a", 6), (3, 5), ("b", 5), ("b", 6), ("b", 7)]
FIG7_S2 = [(3, 4), (1, "d"), (3, "d"), ("a", "d"), ("a", 4), ("a", 6), ("b", 6), ("b", 5), ("b", 7)]
FIG7_STAR = [(1, 2), (1, "a"), ("a", 4), ("a", 6), ("c", 3), ("c", 5), ("c", 6), (6, 7)]


def steiner_fig7():
    terminals = frozenset(range(1, 8))
    z = frozenset("abcd")
    g = UndirectedGraph(
        terminals | z,
        edge_set(FIG7_S1 + FIG7_S2 + FIG7_STAR),
        vertex_costs={v: UNIT_COST for v in z},
    )
    return InstanceFile(
        "steiner_tree",
        SteinerInstance(g, terminals, z),
        SteinerTree(terminals, frozenset("ab"), edge_set(FIG7_S1)),
        SteinerTree(terminals, frozenset("abd"), edge_set(FIG7_S2)),
        10,
        meta={
            "note": "graph is the union of the edges of S1, S2 and S*; S2 as printed is not a tree "
            "and serves as an edge target only",
            "witness_s_star": {"steiner_used": ["a", "c"], "edges": [list(e) for e in sorted_edges(edge_set(FIG7_STAR))]},
        },
    )


# label, a, h-, h+, c1, c2
TABLE1 = [
    ("R1", 6, 2, 2, 1, 1), ("R2", 5, 1, 1, 2, 3), ("R3", 3, 2, 1, 2, 1), ("R4", 2, 2, 2, 3, 2),
    ("P1", 5, 2, 3, 3, 2), ("P2", 10, 2, 2, 2, 3), ("P3", 30, 3, 2, 1, 2),
    ("D1", 2, 2, 3, 2, 3), ("D2", 1, 2, 2, 3, 2), ("D3", 2, 1, 1, 2, 1),
    ("Q1", 3, 2, 1, 1, 3), ("Q2", 2, 2, 2, 1, 3), ("Q3", 3, 1, 2, 2, 2), ("Q4", 3, 1, 1, 3, 2),
]


def sensor():
    items, labels, groups = [], {}, {}
    for i, (lab, a, hm, hp, c1, c2) in enumerate(TABLE1, start=1):
        items.append(MCItem(i, c1, a, c2, a, CostPair(hm, hp)))
        labels[i] = lab
        groups.setdefault(lab[0], []).append(i)
    inst = MultiChoiceInstance(
        tuple(tuple(groups[k]) for k in "RPDQ"),
        tuple(items),
        None,
        None,
        frozenset({(4, 2), (14, 11)}),
    )
    return InstanceFile(
        "multichoice",
        inst,
        frozenset({4, 6, 9, 14}),
        frozenset({2, 6, 9, 11}),
        5,
        labels=labels,
        meta={"note": "allowed moves are the two analysed operations R4->R2 and Q4->Q1; "
              "no capacities are given, so b1 and b2 are absent"},
    )


USERS = [
    (1, 30, 165, 5, 10, 5), (2, 58, 174, 5, 5, 9), (3, 95, 156, 0, 6, 6), (4, 52, 134, 5, 6, 8),
    (5, 85, 134, 3, 6, 7), (6, 27, 109, 7, 8, 5), (7, 55, 105, 2, 7, 10), (8, 98, 89, 3, 10, 10),
    (9, 25, 65, 2, 7, 5), (10, 52, 81, 1, 10, 8), (11, 65, 25, 7, 6, 9), (12, 93, 39, 1, 10, 10),
    (13, 172, 26, 2, 10, 7), (14, 110, 169, 5, 7, 5), (15, 145, 181, 3, 5, 4), (16, 150, 150, 5, 7, 4),
    (17, 120, 140, 6, 4, 6), (18, 150, 136, 3, 6, 7), (19, 135, 59, 4, 13, 4), (20, 147, 79, 5, 7, 16),
    (21, 127, 95, 5, 7, 5),
]
APS = [
    (1, 50, 157, 10, 30, 4, 10), (2, 72, 102, 10, 42, 6, 10), (3, 45, 52, 10, 45, 10, 10),
    (4, 150, 165, 10, 30, 5, 15), (5, 140, 112, 10, 32, 5, 8), (6, 147, 47, 10, 30, 5, 15),
]
# user -> (h-, h+, c) for access points 1..6
OPS = {
    3: [(3, 2, 2), (2, 1, 3), (1, 0, 3), (3, 1, 3), (2, 1, 0), (1, 1, 0)],
    5: [(2, 1, 1), (1, 3, 1), (1, 2, 1), (3, 2, 1), (1, 1, 1), (1, 1, 1)],
    8: [(1, 1, 3), (1, 1, 3), (1, 1, 3), (1, 1, 0), (1, 1, 3), (2, 2, 2)],
    12: [(2, 2, 3), (1, 2, 3), (1, 2, 3), (3, 1, 0), (2, 1, 0), (1, 1, 0)],
    13: [(1, 1, 3), (1, 1, 3), (1, 1, 3), (2, 1, 0), (2, 2, 1), (1, 1, 3)],
    14: [(1, 1, 1), (2, 2, 2), (1, 2, 0), (1, 1, 1), (1, 1, 1), (1, 1, 0)],
    17: [(1, 1, 2), (1, 1, 1), (1, 0, 1), (3, 1, 1), (1, 1, 1), (1, 1, 1)],
    19: [(1, 1, 0), (1, 1, 3), (1, 2, 3), (3, 2, 0), (1, 1, 3), (1, 1, 2)],
    21: [(1, 1, 0), (1, 2, 3), (1, 1, 2), (3, 1, 1), (1, 1, 1), (1, 1, 1)],
}
S1_GROUPS = {1: [1, 2, 3, 4, 6], 2: [5, 7, 8], 3: [9, 10, 11, 12, 13], 4: [14, 15, 16], 5: [17, 18, 21], 6: [19, 20]}


def access_points():
    s1 = {u: a for a, us in S1_GROUPS.items() for u in us}
    s2 = {**s1, 3: 4, 13: 6, 21: 2}
    ops = {(u, a): OpsEntry(*t) for u, row in OPS.items() for a, t in enumerate(row, start=1)}
    scen = AccessPointScenario(
        tuple(User(*u) for u in USERS),
        tuple(AccessPoint(*a) for a in APS),
        frozenset(OPS),
        ops,
        s1,
        s2,
    )
    return InstanceFile(
        "access_points",
        scen,
        scen.s1,
        scen.s2,
        5,
        meta={"note": "coordinates, frequencies and reliabilities are carried but unused by the solver; "
              "access point 1 serves five users in s1 against a stated capacity of four, so capacities "
              "are not enforced"},
    )


BUILDERS = {
    "knapsack-fig5": knapsack_fig5,
    "multichoice-sec3": multichoice_sec3,
    "assignment-sec3": assignment_sec3,
    "tree-fig6": tree_fig6,
    "steiner-fig7": steiner_fig7,
    "sensor": sensor,
    "access-points": access_points,
}

if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for name, build in BUILDERS.items():
        save_instance(build(), OUT / f"{name}.json")
        print("wrote", name)

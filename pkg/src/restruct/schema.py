"""JSON instance and report files.

Instance files are UTF-8 JSON objects with a ``problem`` discriminator.
Every numeric field must be a JSON integer.  The canonical form sorts
object keys and id lists and is what ``save_instance`` writes, so a
canonical file survives ``load_instance`` followed by ``save_instance``
byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .access_points import AccessPoint, AccessPointScenario, OpsEntry, User
from .assignment import AssignmentInstance, check_permutation
from .core import CostPair, DeltaPlan, RestructError, RestructureReport, sort_key, sorted_ids
from .knapsack import Item, KnapsackInstance
from .multichoice import MCItem, MultiChoiceInstance
from .trees import SteinerInstance, SteinerTree, UndirectedGraph, edge, sorted_edges

PROBLEMS = ("knapsack", "multichoice", "assignment", "spanning_tree", "steiner_tree", "access_points")


class ParseError(RestructError):
    """Malformed JSON or a numeric field that is not an integer."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None, field: str | None = None):
        self.line, self.col, self.field = line, col, field
        where = []
        if line is not None:
            where.append(f"line {line}, column {col}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)


class SchemaError(RestructError):
    def __init__(self, issues: list[str]):
        self.issues = list(issues)
        super().__init__("invalid instance:\n  " + "\n  ".join(self.issues))


@dataclass(frozen=True)
class InstanceFile:
    """A loaded instance: the family object plus start, goal and budget.

    ``instance`` is a ``KnapsackInstance``, ``MultiChoiceInstance``,
    ``AssignmentInstance``, ``UndirectedGraph``, ``SteinerInstance`` or
    ``AccessPointScenario`` depending on ``problem``.
    """

    problem: str
    instance: Any
    s1: Any
    s2: Any = None
    budget: int | None = None
    labels: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def label(self, x) -> str:
        return self.labels.get(x, str(x))


# ---------------------------------------------------------------- reading


class _Reader:
    """Walks a decoded document, collecting every problem instead of stopping at the first."""

    def __init__(self):
        self.numeric: list[tuple[str, str]] = []
        self.issues: list[str] = []

    def issue(self, msg: str):
        self.issues.append(msg)

    def get(self, obj, key, path, required=True):
        if not isinstance(obj, dict):
            self.issue(f"{path}: expected an object")
            return None
        if key not in obj:
            if required:
                self.issue(f"{path}: missing field {key!r}")
            return None
        return obj[key]

    def int_(self, v, path, nullable=False):
        if v is None and nullable:
            return None
        if isinstance(v, bool) or not isinstance(v, int):
            self.numeric.append((path, f"{path}: expected an integer, got {v!r}"))
            return None
        if v < 0:
            self.issue(f"{path}: must be >= 0, got {v}")
            return None
        return v

    def field_int(self, obj, key, path, nullable=False, required=True):
        if isinstance(obj, dict) and key not in obj and not required:
            return None
        v = self.get(obj, key, path, required=required)
        if v is None and (nullable or not isinstance(obj, dict) or key not in obj):
            return None
        return self.int_(v, f"{path}.{key}")

    def label(self, v, path):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            self.issue(f"{path}: ids must be integers or strings, got {v!r}")
            return None
        return v

    def list_(self, v, path, nullable=False):
        if v is None and nullable:
            return None
        if not isinstance(v, list):
            self.issue(f"{path}: expected a list")
            return None
        return v

    def ids(self, v, path, known=None, nullable=False):
        xs = self.list_(v, path, nullable)
        if xs is None:
            return None
        out = []
        for k, x in enumerate(xs):
            x = self.label(x, f"{path}[{k}]")
            if x is None:
                continue
            if known is not None and x not in known:
                self.issue(f"{path}[{k}]: unknown id {x!r}")
                continue
            out.append(x)
        if len(set(out)) != len(out):
            self.issue(f"{path}: duplicate ids")
        return out

    def costs(self, row, path, name):
        """Change-cost pair of one element; a missing entry names the element."""
        h = []
        for k in ("h_minus", "h_plus"):
            if not isinstance(row, dict) or k not in row:
                self.issue(f"{path}: missing change cost {k} for element {name!r}")
                h.append(None)
            else:
                h.append(self.int_(row[k], f"{path}.{k}"))
        return None if None in h else CostPair(*h)

    def finish(self):
        if self.numeric:
            raise ParseError(
                "malformed numeric field: " + "; ".join(m for _, m in self.numeric),
                field=self.numeric[0][0],
            )
        if self.issues:
            raise SchemaError(self.issues)


def _rows(r: _Reader, doc, key, fields, id_key="id"):
    rows = r.list_(r.get(doc, key, "$"), key) or []
    out, seen = [], set()
    for k, row in enumerate(rows):
        path = f"{key}[{k}]"
        if not isinstance(row, dict):
            r.issue(f"{path}: expected an object")
            continue
        rid = r.label(r.get(row, id_key, path), f"{path}.{id_key}") if id_key in row else None
        if id_key and rid is None:
            if id_key not in row:
                r.issue(f"{path}: missing field {id_key!r}")
            continue
        if rid in seen:
            r.issue(f"{path}: duplicate id {rid!r}")
        seen.add(rid)
        vals = {f: r.field_int(row, f, path) for f in fields}
        out.append((path, rid, row, vals))
    return out


def _read_items(r, doc):
    """Valid item rows by id, plus every id seen so a bad row is reported once."""
    items, known = {}, set()
    for path, rid, row, vals in _rows(r, doc, "items", ("c1", "a1", "c2", "a2")):
        known.add(rid)
        cost = r.costs(row, path, rid)
        if None in vals.values() or cost is None:
            continue
        items[rid] = (vals, cost)
    return items, known


def _read_knapsack(r, doc):
    items, known = _read_items(r, doc)
    b1 = r.field_int(doc, "b1", "$")
    b2 = r.field_int(doc, "b2", "$")
    s1 = r.ids(r.get(doc, "s1", "$"), "s1", known)
    s2 = r.ids(doc.get("s2"), "s2", known, nullable=True)
    r.finish()
    inst = KnapsackInstance(
        tuple(Item(i, v["c1"], v["a1"], v["c2"], v["a2"], c) for i, (v, c) in items.items()), b1, b2
    )
    return inst, frozenset(s1), None if s2 is None else frozenset(s2)


def _read_multichoice(r, doc):
    items, known = _read_items(r, doc)
    b1 = r.field_int(doc, "b1", "$", nullable=True, required=False)
    b2 = r.field_int(doc, "b2", "$", nullable=True, required=False)
    groups = []
    for k, g in enumerate(r.list_(r.get(doc, "groups", "$"), "groups") or []):
        groups.append(tuple(r.ids(g, f"groups[{k}]", known) or ()))
    moves = None
    raw = doc.get("allowed_moves")
    if raw is not None:
        moves = []
        for k, m in enumerate(r.list_(raw, "allowed_moves") or []):
            if not isinstance(m, list) or len(m) != 2:
                r.issue(f"allowed_moves[{k}]: expected a [from, to] pair")
                continue
            for x in m:
                if x is not None and x not in known:
                    r.issue(f"allowed_moves[{k}]: unknown id {x!r}")
            moves.append(tuple(m))
    s1 = r.ids(r.get(doc, "s1", "$"), "s1", known)
    s2 = r.ids(doc.get("s2"), "s2", known, nullable=True)
    r.finish()
    inst = MultiChoiceInstance(
        tuple(groups),
        tuple(MCItem(i, v["c1"], v["a1"], v["c2"], v["a2"], c) for i, (v, c) in items.items()),
        b1,
        b2,
        None if moves is None else frozenset(moves),
    )
    return inst, frozenset(s1), None if s2 is None else frozenset(s2)


def _read_matrix(r, v, path, nullable=False):
    rows = r.list_(v, path, nullable)
    if rows is None:
        return None
    out = []
    for i, row in enumerate(rows):
        row = r.list_(row, f"{path}[{i}]") or []
        out.append(tuple(r.int_(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)))
    return tuple(out)


def _read_perm(r, v, path, nullable=False):
    xs = r.list_(v, path, nullable)
    if xs is None:
        return None
    return tuple(r.int_(x, f"{path}[{k}]") for k, x in enumerate(xs))


def _read_assignment(r, doc):
    c1 = _read_matrix(r, doc.get("c1"), "c1", nullable=True)
    c2 = _read_matrix(r, r.get(doc, "c2", "$"), "c2")
    h = _read_matrix(r, r.get(doc, "h", "$"), "h")
    s1 = _read_perm(r, r.get(doc, "s1", "$"), "s1")
    s2 = _read_perm(r, doc.get("s2"), "s2", nullable=True)
    r.finish()
    inst = AssignmentInstance(c2, h, c1)
    for name, s in (("s1", s1), ("s2", s2)):
        if s is not None:
            try:
                check_permutation(s, inst.n)
            except RestructError as exc:
                r.issue(f"{name}: {exc}")
    r.finish()
    return inst, s1, s2


def _read_edges(r, doc, vertices):
    edges, weights, costs = [], {}, {}
    rows = r.list_(r.get(doc, "edges", "$"), "edges") or []
    for k, row in enumerate(rows):
        path = f"edges[{k}]"
        u = r.label(r.get(row, "u", path), f"{path}.u")
        v = r.label(r.get(row, "v", path), f"{path}.v")
        if u is None or v is None:
            continue
        for x in (u, v):
            if x not in vertices:
                r.issue(f"{path}: unknown vertex {x!r}")
        if u == v:
            r.issue(f"{path}: self-loop at {u!r}")
            continue
        e = edge(u, v)
        if e in costs:
            r.issue(f"{path}: duplicate edge {e}")
        c = r.costs(row, path, e)
        if c is not None:
            costs[e] = c
        if "weight" in row:
            w = r.int_(row["weight"], f"{path}.weight")
            if w is not None:
                weights[e] = w
        edges.append(e)
    if weights and len(weights) != len(edges):
        r.issue("edges: either every edge carries a weight or none does")
    return edges, (weights or None), costs


def _edge_list(r, v, path, nullable=False):
    xs = r.list_(v, path, nullable)
    if xs is None:
        return None
    out = []
    for k, pair in enumerate(xs):
        if not isinstance(pair, list) or len(pair) != 2:
            r.issue(f"{path}[{k}]: expected a [u, v] pair")
            continue
        u, w = (r.label(x, f"{path}[{k}]") for x in pair)
        if u is None or w is None or u == w:
            if u == w and u is not None:
                r.issue(f"{path}[{k}]: self-loop at {u!r}")
            continue
        out.append(edge(u, w))
    return frozenset(out)


def _check_edges_known(r, tree, path, g_edges):
    if tree is None:
        return
    for e in sorted_edges(tree - frozenset(g_edges)):
        r.issue(f"{path}: edge {list(e)} is not in the graph")


def _read_spanning(r, doc):
    vertices = r.ids(r.get(doc, "vertices", "$"), "vertices") or []
    edges, weights, costs = _read_edges(r, doc, set(vertices))
    s1 = _edge_list(r, r.get(doc, "s1", "$"), "s1")
    s2 = _edge_list(r, doc.get("s2"), "s2", nullable=True)
    _check_edges_known(r, s1, "s1", edges)
    _check_edges_known(r, s2, "s2", edges)
    r.finish()
    return UndirectedGraph(frozenset(vertices), frozenset(edges), weights, costs), s1, s2


def _read_steiner_tree(r, v, path, terminals, nullable=False):
    if v is None and nullable:
        return None
    used = r.ids(r.get(v, "steiner_used", path), f"{path}.steiner_used") or []
    edges = _edge_list(r, r.get(v, "edges", path), f"{path}.edges") or frozenset()
    return SteinerTree(frozenset(terminals), frozenset(used), edges)


def _read_steiner(r, doc):
    terminals = r.ids(r.get(doc, "terminals", "$"), "terminals") or []
    vcosts = {}
    for path, rid, row, _ in _rows(r, doc, "candidates", ()):
        c = r.costs(row, path, rid)
        if c is not None:
            vcosts[rid] = c
    for t in set(terminals) & set(vcosts):
        r.issue(f"candidates: {t!r} is also a terminal")
    vertices = set(terminals) | set(vcosts)
    edges, weights, costs = _read_edges(r, doc, vertices)
    s1 = _read_steiner_tree(r, r.get(doc, "s1", "$"), "s1", terminals)
    s2 = _read_steiner_tree(r, doc.get("s2"), "s2", terminals, nullable=True)
    for name, t in (("s1", s1), ("s2", s2)):
        if t is None:
            continue
        _check_edges_known(r, t.edges, f"{name}.edges", edges)
        for z in sorted_ids(t.steiner_used - set(vcosts)):
            r.issue(f"{name}.steiner_used: {z!r} is not a candidate")
    r.finish()
    g = UndirectedGraph(frozenset(vertices), frozenset(edges), weights, costs, vcosts)
    return SteinerInstance(g, frozenset(terminals), frozenset(vcosts)), s1, s2


def _read_pairs(r, v, path, nullable=False):
    xs = r.list_(v, path, nullable)
    if xs is None:
        return None
    out = {}
    for k, pair in enumerate(xs):
        if not isinstance(pair, list) or len(pair) != 2:
            r.issue(f"{path}[{k}]: expected a [user, access point] pair")
            continue
        u, a = (r.int_(x, f"{path}[{k}]") for x in pair)
        if u is None or a is None:
            continue
        if u in out:
            r.issue(f"{path}[{k}]: user {u} assigned twice")
        out[u] = a
    return out


def _read_access_points(r, doc):
    users = [
        User(rid, **vals)
        for _, rid, _, vals in _rows(r, doc, "users", ("x", "y", "z", "f", "r"))
        if None not in vals.values()
    ]
    aps = [
        AccessPoint(rid, **vals)
        for _, rid, _, vals in _rows(r, doc, "access_points", ("x", "y", "z", "f", "n", "r"))
        if None not in vals.values()
    ]
    zone = r.ids(r.get(doc, "change_zone", "$"), "change_zone") or []
    ops = {}
    for k, row in enumerate(r.list_(r.get(doc, "ops", "$"), "ops") or []):
        path = f"ops[{k}]"
        u = r.field_int(row, "user", path)
        a = r.field_int(row, "ap", path)
        c = r.field_int(row, "c", path)
        cost = r.costs(row, path, (u, a))
        if None in (u, a, c) or cost is None:
            continue
        if (u, a) in ops:
            r.issue(f"{path}: duplicate entry for user {u}, access point {a}")
        ops[u, a] = OpsEntry(cost.h_minus, cost.h_plus, c)
    s1 = _read_pairs(r, r.get(doc, "s1", "$"), "s1")
    s2 = _read_pairs(r, doc.get("s2"), "s2", nullable=True)
    r.finish()
    try:
        scen = AccessPointScenario(tuple(users), tuple(aps), frozenset(zone), ops, s1 or {}, s2)
    except RestructError as exc:
        raise SchemaError(str(exc).split("; ")) from None
    return scen, scen.s1, scen.s2


_READERS = {
    "knapsack": _read_knapsack,
    "multichoice": _read_multichoice,
    "assignment": _read_assignment,
    "spanning_tree": _read_spanning,
    "steiner_tree": _read_steiner,
    "access_points": _read_access_points,
}


def instance_from_dict(doc: Any) -> InstanceFile:
    if not isinstance(doc, dict):
        raise SchemaError(["top level must be a JSON object"])
    problem = doc.get("problem")
    if problem not in _READERS:
        raise SchemaError([f"problem must be one of {', '.join(PROBLEMS)}; got {problem!r}"])
    r = _Reader()
    budget = r.field_int(doc, "budget", "$", nullable=True, required=False)
    labels = {}
    for k, pair in enumerate(r.list_(doc.get("labels", []), "labels") or []):
        if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[1], str):
            r.issue(f"labels[{k}]: expected an [id, text] pair")
            continue
        labels[_untuple(pair[0])] = pair[1]
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        r.issue("meta: expected an object")
    try:
        inst, s1, s2 = _READERS[problem](r, doc)
    except (ParseError, SchemaError):
        raise
    except RestructError as exc:
        # constructor-level checks the reader does not duplicate
        r.issue(str(exc))
        r.finish()
        raise
    r.finish()
    return InstanceFile(problem, inst, s1, s2, budget, labels, meta)


def _untuple(x):
    return tuple(_untuple(v) for v in x) if isinstance(x, list) else x


def parse_instance(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return instance_from_dict(doc)


def load_instance(path) -> InstanceFile:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------- writing


def _cost_fields(c: CostPair) -> dict:
    return {"h_minus": c.h_minus, "h_plus": c.h_plus}


def _item_rows(items) -> list:
    return [
        {"id": it.id, "c1": it.c1, "a1": it.a1, "c2": it.c2, "a2": it.a2, **_cost_fields(it.costs)}
        for it in sorted(items, key=lambda it: sort_key(it.id))
    ]


def _ids(xs):
    return None if xs is None else sorted_ids(xs)


def _edges_out(es):
    return None if es is None else [list(e) for e in sorted_edges(es)]


def _edge_rows(g: UndirectedGraph) -> list:
    rows = []
    for e in sorted_edges(g.edges):
        row = {"u": e[0], "v": e[1], **_cost_fields(g.edge_costs[e])}
        if g.weights is not None:
            row["weight"] = g.weights[e]
        rows.append(row)
    return rows


def _steiner_out(t: SteinerTree | None):
    if t is None:
        return None
    return {"steiner_used": sorted_ids(t.steiner_used), "edges": _edges_out(t.edges)}


def _pairs_out(m):
    return None if m is None else [[u, m[u]] for u in sorted(m)]


def instance_to_dict(f: InstanceFile) -> dict:
    inst = f.instance
    doc: dict[str, Any] = {"problem": f.problem, "budget": f.budget}
    if f.problem == "knapsack":
        doc.update(items=_item_rows(inst.items), b1=inst.b1, b2=inst.b2, s1=_ids(f.s1), s2=_ids(f.s2))
    elif f.problem == "multichoice":
        doc.update(
            items=_item_rows(inst.items),
            groups=[sorted_ids(g) for g in inst.groups],
            b1=inst.b1,
            b2=inst.b2,
            allowed_moves=None
            if inst.allowed_moves is None
            else [list(m) for m in sorted(inst.allowed_moves, key=sort_key)],
            s1=_ids(f.s1),
            s2=_ids(f.s2),
        )
    elif f.problem == "assignment":
        mat = lambda m: None if m is None else [list(r) for r in m]  # noqa: E731
        doc.update(
            c1=mat(inst.c1),
            c2=mat(inst.c2),
            h=mat(inst.h),
            s1=list(f.s1),
            s2=None if f.s2 is None else list(f.s2),
        )
    elif f.problem == "spanning_tree":
        doc.update(
            vertices=sorted_ids(inst.vertices),
            edges=_edge_rows(inst),
            s1=_edges_out(f.s1),
            s2=_edges_out(f.s2),
        )
    elif f.problem == "steiner_tree":
        g = inst.graph
        doc.update(
            terminals=sorted_ids(inst.terminals),
            candidates=[{"id": z, **_cost_fields(g.vertex_costs[z])} for z in sorted_ids(inst.candidates)],
            edges=_edge_rows(g),
            s1=_steiner_out(f.s1),
            s2=_steiner_out(f.s2),
        )
    elif f.problem == "access_points":
        doc.update(
            users=[vars(u).copy() for u in inst.users],
            access_points=[vars(a).copy() for a in inst.access_points],
            change_zone=sorted(inst.change_zone),
            ops=[
                {"user": u, "ap": a, "h_minus": e.h_minus, "h_plus": e.h_plus, "c": e.c}
                for (u, a), e in sorted(inst.ops_table.items())
            ],
            s1=_pairs_out(f.s1),
            s2=_pairs_out(f.s2),
        )
    else:
        raise RestructError(f"unknown problem {f.problem!r}")
    doc["labels"] = [[to_json(k), f.labels[k]] for k in sorted_ids(f.labels)]
    doc["meta"] = f.meta
    return doc


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_instance(f: InstanceFile) -> str:
    return canonical_json(instance_to_dict(f))


def save_instance(f: InstanceFile, path) -> None:
    Path(path).write_text(dump_instance(f), encoding="utf-8")


def canonicalize(text: str) -> str:
    """Canonical form of an instance document given as text."""
    return dump_instance(parse_instance(text))


# ---------------------------------------------------------------- reports


def to_json(x):
    if isinstance(x, SteinerTree):
        return {
            "terminals": sorted_ids(x.terminals),
            "steiner_used": sorted_ids(x.steiner_used),
            "edges": _edges_out(x.edges),
        }
    if isinstance(x, (set, frozenset)):
        return [to_json(v) for v in sorted(x, key=sort_key)]
    if isinstance(x, tuple):
        return [to_json(v) for v in x]
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    return x


def report_to_dict(rep: RestructureReport) -> dict:
    return {
        "problem": rep.problem,
        "s_star": to_json(rep.s_star),
        "deleted": to_json(rep.deleted),
        "added": to_json(rep.added),
        "change_cost": rep.change_cost,
        "proximity": rep.proximity,
        "proximity_mode": rep.proximity_mode,
        "objective_stage2": rep.objective_stage2,
        "feasible": rep.feasible,
        "method": rep.method,
        "budget": rep.budget,
        "alternatives": [to_json(a) for a in rep.alternatives],
    }


def _s_star_from(problem, v):
    if problem == "assignment":
        return tuple(v)
    if problem == "steiner_tree":
        return SteinerTree(frozenset(v["terminals"]), frozenset(v["steiner_used"]), _untuple(v["edges"]))
    return frozenset(_untuple(x) for x in v)


def report_from_dict(doc: dict) -> RestructureReport:
    try:
        problem = doc["problem"]
        return RestructureReport(
            problem=problem,
            s_star=_s_star_from(problem, doc["s_star"]),
            delta=DeltaPlan(
                frozenset(_untuple(x) for x in doc["deleted"]), frozenset(_untuple(x) for x in doc["added"])
            ),
            change_cost=doc["change_cost"],
            proximity=doc["proximity"],
            objective_stage2=doc["objective_stage2"],
            feasible=doc["feasible"],
            method=doc["method"],
            proximity_mode=doc.get("proximity_mode", "objective"),
            budget=doc.get("budget"),
            alternatives=tuple(_untuple(a) for a in doc.get("alternatives", [])),
        )
    except (KeyError, TypeError) as exc:
        raise SchemaError([f"report is missing or mangles field {exc}"]) from None


def dump_report(rep: RestructureReport) -> str:
    return canonical_json(report_to_dict(rep))


def save_report(rep: RestructureReport, path) -> None:
    Path(path).write_text(dump_report(rep), encoding="utf-8")


def load_report(path) -> RestructureReport:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return report_from_dict(doc)

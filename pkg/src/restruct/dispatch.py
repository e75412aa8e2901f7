"""Run base and restructuring solvers on a loaded ``InstanceFile``."""

from __future__ import annotations

from . import assignment, knapsack, multichoice, trees
from .access_points import run_access_point_reassignment
from .core import METHODS, PROXIMITY_MODES, RestructError, RestructureReport
from .schema import InstanceFile

DEFAULT_PROXIMITY = {
    "knapsack": "objective",
    "multichoice": "objective",
    "assignment": "objective",
    "spanning_tree": "structural",
    "steiner_tree": "structural",
    "access_points": "objective",
}


def solve_base(f: InstanceFile, stage: int = 2):
    """Optimal single-stage solution and its objective value."""
    if stage not in (1, 2):
        raise RestructError(f"stage must be 1 or 2, got {stage!r}")
    inst = f.instance
    if f.problem == "knapsack":
        s = knapsack.solve_base(inst, stage)
        return s, inst.profit(s, stage)
    if f.problem == "multichoice":
        s = multichoice.solve_base(inst, stage)
        return s, inst.profit(s, stage)
    if f.problem == "assignment":
        c = inst.profits(stage)
        s = assignment.solve_base(c)
        return s, assignment.profit(s, c)
    if f.problem == "spanning_tree":
        if stage != 2:
            raise RestructError("spanning-tree instances carry a single weight set; use stage 2")
        t = trees.mst_base(inst)
        return t, inst.weight(t)
    raise RestructError(f"no base solver for {f.problem} instances")


def restructure(
    f: InstanceFile,
    budget: int | None = None,
    method: str = "exact",
    proximity: str | None = None,
    all_optima: bool = False,
) -> RestructureReport:
    """Restructure ``f.s1`` toward ``f.s2`` (or the base optimum when absent).

    ``budget`` overrides the file's budget.
    """
    b = f.budget if budget is None else budget
    if b is None:
        raise RestructError("no budget given and the instance does not define one")
    if method not in METHODS:
        raise RestructError(f"method must be one of {', '.join(METHODS)}; got {method!r}")
    mode = proximity or DEFAULT_PROXIMITY[f.problem]
    if mode not in PROXIMITY_MODES:
        raise RestructError(f"proximity must be one of {', '.join(PROXIMITY_MODES)}; got {mode!r}")
    inst = f.instance
    if f.problem == "knapsack":
        kw = {"all_optima": all_optima} if method == "exact" else {}
        return knapsack.restructure(inst, f.s1, f.s2, b, method, mode, **kw)
    if f.problem == "multichoice":
        kw = {"all_optima": all_optima} if method == "exact" else {}
        return multichoice.restructure(inst, f.s1, f.s2, b, "local" if method == "reduced" else method, mode, **kw)
    if f.problem == "assignment":
        m = "exact" if method == "exact" else "exchange"
        return assignment.restructure(f.s1, f.s2, inst.c2, inst.h, b, m, mode)
    if f.problem == "spanning_tree":
        t2 = trees.mst_base(inst) if f.s2 is None else f.s2
        m = "exact" if method == "exact" else "local"
        return trees.restructure_spanning(inst, f.s1, t2, b, mode, m)
    if f.problem == "steiner_tree":
        if f.s2 is None:
            raise RestructError("Steiner restructuring needs a goal tree s2")
        if method != "exact":
            raise RestructError("Steiner restructuring only supports the exact method")
        return trees.restructure_steiner(inst.graph, inst.candidates, f.s1, f.s2, b, mode)
    if f.problem == "access_points":
        if mode != "objective":
            raise RestructError("access-point reassignment only supports objective proximity")
        return run_access_point_reassignment(inst, b, method="exact" if method == "exact" else "greedy")
    raise RestructError(f"unknown problem {f.problem!r}")

"""Budgeted restructuring of combinatorial solutions.

Given a start solution ``s1`` and a goal ``s2``, find ``s_star`` as close
to the goal as possible while the cost of turning ``s1`` into ``s_star``
stays within a budget.  Families: knapsack, multiple choice, assignment,
spanning and Steiner trees, plus an access-point reassignment pipeline.
"""

from .core import (
    EMPTY_DELTA,
    UNIT_COST,
    CostPair,
    DeltaPlan,
    MissingCostError,
    RestructError,
    RestructureReport,
    change_cost,
    delta_of,
    proximity_abs,
    proximity_structural,
)
from .fixtures import FIXTURES, fixture
from .schema import (
    InstanceFile,
    ParseError,
    SchemaError,
    load_instance,
    load_report,
    save_instance,
    save_report,
)
from .verify import verify_report

__version__ = "0.1.0"

__all__ = [
    "EMPTY_DELTA",
    "FIXTURES",
    "UNIT_COST",
    "CostPair",
    "DeltaPlan",
    "InstanceFile",
    "MissingCostError",
    "ParseError",
    "RestructError",
    "RestructureReport",
    "SchemaError",
    "change_cost",
    "delta_of",
    "fixture",
    "load_instance",
    "load_report",
    "proximity_abs",
    "proximity_structural",
    "save_instance",
    "save_report",
    "verify_report",
]

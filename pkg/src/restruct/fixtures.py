"""Named instances shipped with the package as canonical JSON files."""

from __future__ import annotations

from importlib import resources

from .core import RestructError
from .schema import InstanceFile, parse_instance

FIXTURES = (
    "knapsack-fig5",
    "multichoice-sec3",
    "assignment-sec3",
    "tree-fig6",
    "steiner-fig7",
    "sensor",
    "access-points",
)


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise RestructError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return resources.files("restruct").joinpath("fixtures", f"{name}.json").read_text(encoding="utf-8")


def fixture(name: str) -> InstanceFile:
    return parse_instance(fixture_text(name))

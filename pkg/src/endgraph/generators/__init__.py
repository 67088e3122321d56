"""Built-in infinite graph families.

=====================  ==============================================
family                 parameters
=====================  ==============================================
branching_tree         k (children per vertex)
leveled_tree_cycles    k (tree is k-regular, k >= 2)
theorem3               k (every tree vertex has k + 1 successors)
clique_ray             k (clique size), rays (1 or 2), cross (m >= 1)
=====================  ==============================================

Every family also accepts ``depth`` (truncation depth for desk-scale checks)
and ``seed`` (sampling); neither changes the graph itself.  Address grammars
are documented in each family module.
"""

from __future__ import annotations

from typing import Iterator

from ..ends import EndOracle
from ..graph_core import DomainError, FamilySpec, GraphHandle
from ..regions import Region
from .base import Family, cone_region
from .branching_tree import BranchingTree
from .clique_ray import CliqueRay
from .leveled import LeveledTreeCycles
from .theorem3 import Theorem3

FAMILIES: dict[str, type[Family]] = {
    "branching_tree": BranchingTree,
    "leveled_tree_cycles": LeveledTreeCycles,
    "theorem3": Theorem3,
    "clique_ray": CliqueRay,
}


def _spec(spec: FamilySpec | str, **params) -> FamilySpec:
    if isinstance(spec, str):
        spec = FamilySpec.make(spec, **params)
    if spec.family not in FAMILIES:
        raise DomainError(f"unknown family {spec.family!r}; choose from {sorted(FAMILIES)}")
    if spec.get("depth", 1) < 1:
        raise DomainError("depth must be at least 1")
    return spec


def make_graph(spec: FamilySpec | str, **params) -> GraphHandle:
    spec = _spec(spec, **params)
    return GraphHandle(FAMILIES[spec.family](spec))


def canonical_end_oracle(g: GraphHandle | FamilySpec | str, horizon: int = 64, **params) -> EndOracle:
    if not isinstance(g, GraphHandle):
        g = make_graph(g, **params)
    return EndOracle(g, horizon)


def canonical_nested_family(g: GraphHandle | FamilySpec | str, **params) -> Iterator[Region]:
    """The family's nested regions: cones of its construction tree.

    For theorem3 these are plain cones, never the crossing regions C_s.
    """
    if not isinstance(g, GraphHandle):
        g = make_graph(g, **params)
    return g.oracle.nested_family()


__all__ = [
    "FAMILIES",
    "Family",
    "BranchingTree",
    "CliqueRay",
    "LeveledTreeCycles",
    "Theorem3",
    "make_graph",
    "canonical_end_oracle",
    "canonical_nested_family",
    "cone_region",
]

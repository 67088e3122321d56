"""Regions as separator plus seed, their boundaries and out-degrees.

Component questions in an infinite graph are only semidecidable, so every
search runs against a :class:`Budget` of oracle queries.  Graphs with a cone
structure get exact answers: while exploring ``G - S`` from a seed, any vertex
whose cone misses ``S`` is replaced by the largest such cone above it, which
lies entirely in the component.  The result is a finite description of the
component as explicit vertices plus a list of collapsed cones.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph_core import DomainError, GraphHandle, VertexId, Window, induced_window

DEFAULT_BUDGET = 200_000
PATH_SEARCH_CAP = 5_000


class BudgetExhausted(RuntimeError):
    pass


class IndeterminateError(RuntimeError):
    """Membership could not be decided within budget."""

    def __init__(self, message: str, undecided: Iterable[VertexId] = ()):
        super().__init__(message)
        self.undecided = tuple(undecided)


class Budget:
    """Counts oracle queries; spending beyond the limit raises BudgetExhausted."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.spent = 0

    def spend(self, n: int = 1) -> None:
        if self.spent + n > self.limit:
            self.spent = self.limit
            raise BudgetExhausted(f"oracle budget of {self.limit} queries exhausted")
        self.spent += n

    @property
    def remaining(self) -> int:
        return self.limit - self.spent


def _budget(b: Budget | int | None) -> Budget:
    if b is None:
        return Budget()
    if isinstance(b, int):
        return Budget(b)
    return b


@dataclass(frozen=True)
class Region:
    """The component of ``G - separator`` containing ``seed``."""

    separator: frozenset
    seed: VertexId
    oracle: str = "exact"

    def __post_init__(self):
        object.__setattr__(self, "separator", frozenset(self.separator))
        if self.seed in self.separator:
            raise DomainError(f"seed {self.seed!r} lies in the separator")

    def to_json(self) -> dict:
        return {"separator": sorted(self.separator), "seed": self.seed, "oracle": self.oracle}

    @classmethod
    def from_json(cls, data) -> "Region":
        return cls(frozenset(data["separator"]), data["seed"], data.get("oracle", "exact"))


@dataclass(frozen=True)
class Component:
    """Finite description of a component of ``G - separator``.

    ``explicit`` holds the vertices whose cone meets the separator (or, for
    graphs without cones, every vertex of a finite component); ``cones`` holds
    roots of cones lying entirely inside the component.
    """

    separator: frozenset
    explicit: frozenset
    cones: tuple[VertexId, ...]

    @property
    def finite(self) -> bool:
        return not self.cones

    def contains(self, g: GraphHandle, x: VertexId) -> bool:
        if x in self.explicit:
            return True
        if x in self.separator:
            return False
        return any(g.in_cone(r, x) for r in self.cones)

    def vertices(self) -> frozenset:
        if self.cones:
            raise DomainError("component is infinite")
        return self.explicit


def _cone_ancestors(g: GraphHandle, S: frozenset) -> frozenset:
    anc = set()
    for s in S:
        y: VertexId | None = s
        while y is not None and y not in anc:
            anc.add(y)
            y = g.cone_parent(y)
    return frozenset(anc)


def explore(g: GraphHandle, S: Iterable[VertexId], seed: VertexId,
            budget: Budget | int | None = None) -> Component:
    """Describe the component of ``G - S`` containing ``seed``.

    Raises BudgetExhausted when the graph has no cone structure and the
    component is not exhausted within budget.
    """
    S = frozenset(S)
    if seed in S:
        raise DomainError(f"seed {seed!r} lies in the separator")
    key = ("explore", S, seed)
    hit = g.memo.get(key)
    if hit is not None:
        return hit
    budget = _budget(budget)
    comp = _explore_cones(g, S, seed, budget) if g.has_cones else _explore_plain(g, S, seed, budget)
    with g.memo_lock:
        g.memo[key] = comp
    return comp


def _explore_plain(g, S, seed, budget):
    seen = {seed}
    queue = deque([seed])
    while queue:
        u = queue.popleft()
        budget.spend()
        for w in g.neighbors(u):
            if w not in seen and w not in S:
                seen.add(w)
                queue.append(w)
    return Component(S, frozenset(seen), ())


def _explore_cones(g, S, seed, budget):
    anc = g.memo.get(("anc", S))
    if anc is None:
        anc = _cone_ancestors(g, S)
        with g.memo_lock:
            g.memo[("anc", S)] = anc
    explicit: set[VertexId] = set()
    cones: list[VertexId] = []
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        if x in S or x in explicit or any(g.in_cone(r, x) for r in cones):
            continue
        budget.spend()
        if x in anc:
            explicit.add(x)
            queue.extend(g.neighbors(x))
            continue
        r = x
        p = g.cone_parent(r)
        while p is not None and p not in anc:
            r, p = p, g.cone_parent(p)
        cones = [c for c in cones if not g.in_cone(r, c)]
        cones.append(r)
        queue.extend(g.cone_boundary(r))
    return Component(S, frozenset(explicit), tuple(sorted(cones)))


def component(g: GraphHandle, region: Region, budget: Budget | int | None = None) -> Component:
    return explore(g, region.separator, region.seed, budget)


def components(g: GraphHandle, S: Iterable[VertexId], budget: Budget | int | None = None) -> list[Component]:
    """All components of ``G - S`` (the graph is assumed connected)."""
    S = frozenset(S)
    budget = _budget(budget)
    if not S:
        return [explore(g, S, g.root, budget)]
    seeds = sorted({w for s in S for w in g.neighbors(s)} - S)
    found: list[Component] = []
    for w in seeds:
        if any(c.contains(g, w) for c in found):
            continue
        found.append(explore(g, S, w, budget))
    return found


def component_seed(g: GraphHandle, comp: Component) -> VertexId:
    """Canonical seed of a component: its least vertex adjacent to the separator."""
    cands = sorted(w for s in comp.separator for w in g.neighbors(s) if comp.contains(g, w))
    if cands:
        return cands[0]
    if comp.explicit:
        return min(comp.explicit)
    return comp.cones[0]


# -- boundaries and out-degrees ----------------------------------------------

def vertex_boundary(g: GraphHandle, region: Region, budget: Budget | int | None = None) -> frozenset:
    """V+(C): the vertices of C with a neighbour in the separator."""
    try:
        comp = component(g, region, budget)
    except BudgetExhausted:
        undecided = sorted({w for s in region.separator for w in g.neighbors(s)} - region.separator)
        raise IndeterminateError("region membership undecided within budget", undecided) from None
    return frozenset(w for s in region.separator for w in g.neighbors(s) if comp.contains(g, w))


def neighbourhood(g: GraphHandle, region: Region, budget: Budget | int | None = None) -> frozenset:
    """N(C): the separator vertices that actually touch C."""
    bd = vertex_boundary(g, region, budget)
    return frozenset(s for s in region.separator if any(w in bd for w in g.neighbors(s)))


def out_graph(g: GraphHandle, region: Region, budget: Budget | int | None = None) -> Window:
    """The finite graph G[S, C] induced on S and V+(C)."""
    return induced_window(g, region.separator | vertex_boundary(g, region, budget))


def out_degrees(g: GraphHandle, region: Region, budget: Budget | int | None = None) -> dict[VertexId, int]:
    bd = vertex_boundary(g, region, budget)
    inside = region.separator | bd
    return {v: sum(1 for w in g.neighbors(v) if w in inside) for v in sorted(bd)}


def min_out_degree(g: GraphHandle, region: Region, budget: Budget | int | None = None):
    """Minimum out-degree; ``math.inf`` when the vertex boundary is empty."""
    degs = out_degrees(g, region, budget)
    return min(degs.values()) if degs else math.inf


def avg_out_degree(g: GraphHandle, region: Region, budget: Budget | int | None = None) -> Fraction:
    degs = out_degrees(g, region, budget)
    if not degs:
        raise DomainError("average out-degree of a region with empty vertex boundary")
    return Fraction(sum(degs.values()), len(degs))


# -- three-valued component queries ----------------------------------------------

class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Relation(enum.Enum):
    SAME = "same"
    DIFFERENT = "different"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ComponentAnswer:
    relation: Relation
    certificate: str = ""
    path: tuple[VertexId, ...] | None = None
    spent: int = 0


def _bfs_path(g, S, u, v, budget):
    """Shortest path from u to v avoiding S; None if the component is exhausted."""
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        budget.spend()
        for w in g.neighbors(x):
            if w in S or w in prev:
                continue
            prev[w] = x
            if w == v:
                path = [w]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            queue.append(w)
    return None


def same_component(g: GraphHandle, S: Iterable[VertexId], u: VertexId, v: VertexId,
                   budget: Budget | int | None = None) -> ComponentAnswer:
    S = frozenset(S)
    if u in S or v in S:
        raise DomainError("query vertices must avoid the separator")
    if u == v:
        return ComponentAnswer(Relation.SAME, "path", (u,), 0)
    budget = _budget(budget)
    if budget.remaining <= 0:
        return ComponentAnswer(Relation.UNKNOWN, "budget", None, budget.spent)
    # with an exact oracle available, a short search only looks for a path certificate
    search = Budget(min(budget.remaining // 2, PATH_SEARCH_CAP) if g.has_cones else budget.remaining)
    try:
        path = _bfs_path(g, S, u, v, search)
    except BudgetExhausted:
        path = False
    budget.spent += search.spent
    if path:
        return ComponentAnswer(Relation.SAME, "path", path, budget.spent)
    if path is None:
        return ComponentAnswer(Relation.DIFFERENT, "exhausted", None, budget.spent)
    if not g.has_cones:
        return ComponentAnswer(Relation.UNKNOWN, "budget", None, budget.spent)
    try:
        comp = explore(g, S, u, budget)
    except BudgetExhausted:
        return ComponentAnswer(Relation.UNKNOWN, "budget", None, budget.spent)
    rel = Relation.SAME if comp.contains(g, v) else Relation.DIFFERENT
    return ComponentAnswer(rel, "cone-oracle", None, budget.spent)


@dataclass(frozen=True)
class FiniteCheck:
    finite: bool | None
    vertices: frozenset = frozenset()
    certificate: str = ""


def finite_component_check(g: GraphHandle, S: Iterable[VertexId], seed: VertexId,
                           budget: Budget | int | None = None) -> FiniteCheck:
    try:
        comp = explore(g, S, seed, budget)
    except BudgetExhausted:
        return FiniteCheck(None, certificate="budget")
    if comp.finite:
        return FiniteCheck(True, comp.explicit, "exhausted")
    return FiniteCheck(False, certificate="cone-oracle")


def complement_components(g: GraphHandle, region: Region, budget: Budget | int | None = None) -> int:
    """Number of components of G - C (0 when C is all of G)."""
    budget = _budget(budget)
    S = region.separator
    if not S:
        return 0
    component(g, region, budget)
    others = [c for c in components(g, S, budget) if not c.contains(g, region.seed)]
    parent = {s: s for s in S}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for s in S:
        for w in g.neighbors(s):
            if w in S:
                union(s, w)
    for d in others:
        touching = [s for s in sorted(S) if any(d.contains(g, w) for w in g.neighbors(s))]
        for s in touching[1:]:
            union(touching[0], s)
    return len({find(s) for s in S})


def complement_connected(g: GraphHandle, region: Region, budget: Budget | int | None = None) -> Answer:
    try:
        n = complement_components(g, region, budget)
    except (BudgetExhausted, IndeterminateError):
        return Answer.UNKNOWN
    return Answer.YES if n <= 1 else Answer.NO


# -- nestedness ----------------------------------------------------------------

class Nesting(enum.Enum):
    DISJOINT = "disjoint"
    SUBSET = "subset"
    SUPERSET = "superset"
    EQUAL = "equal"
    CROSSING = "crossing"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class NestingAnswer:
    relation: Nesting
    witnesses: dict | None = None


def _intersection_witness(g, a: Component, b: Component):
    for x in sorted(a.explicit):
        if b.contains(g, x):
            return x
    for r in a.cones:
        for x in sorted(b.explicit):
            if g.in_cone(r, x):
                return x
        for r2 in b.cones:
            if g.in_cone(r, r2):
                return r2
            if g.in_cone(r2, r):
                return r
    return None


def _difference_witness(g, a: Component, b: Component):
    """A vertex of a - b, or None when a is a subset of b."""
    for x in sorted(a.explicit):
        if not b.contains(g, x):
            return x
    for r in a.cones:
        if not b.contains(g, r):
            return r
        for s in sorted(b.separator):
            if g.in_cone(r, s):
                return s
    return None


def nestedness(g: GraphHandle, r1: Region, r2: Region, budget: Budget | int | None = None) -> NestingAnswer:
    budget = _budget(budget)
    try:
        a = component(g, r1, budget)
        b = component(g, r2, budget)
    except BudgetExhausted:
        return NestingAnswer(Nesting.UNKNOWN)
    meet = _intersection_witness(g, a, b)
    if meet is None:
        return NestingAnswer(Nesting.DISJOINT)
    a_not_b = _difference_witness(g, a, b)
    b_not_a = _difference_witness(g, b, a)
    if a_not_b is None and b_not_a is None:
        return NestingAnswer(Nesting.EQUAL)
    if a_not_b is None:
        return NestingAnswer(Nesting.SUBSET)
    if b_not_a is None:
        return NestingAnswer(Nesting.SUPERSET)
    return NestingAnswer(Nesting.CROSSING, {"both": meet, "first_only": a_not_b, "second_only": b_not_a})


def contains(g: GraphHandle, region: Region, x: VertexId, budget: Budget | int | None = None) -> bool:
    return component(g, region, budget).contains(g, x)


def cone_region(g: GraphHandle, v: VertexId) -> Region:
    """The region formed by the cone of ``v``."""
    return Region(frozenset(g.cone_boundary(v)), v)

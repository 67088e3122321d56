"""Dense finite subgraphs from a nested family of regions, and building such a
family out of per-end region sequences."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from .ends import Mode, is_good
from .extract_theorem2 import SCHEMA_VERSION
from .graph_core import DomainError, GraphHandle, VertexId, Window, induced_window
from .regions import (
    Budget,
    BudgetExhausted,
    Nesting,
    Region,
    _budget,
    component,
    component_seed,
    components,
    neighbourhood,
    nestedness,
    vertex_boundary,
)


class CoverFailed(RuntimeError):
    """The frontier search ran out of budget before every direction was closed.

    ``direction`` is the seed of an open component; ``failing`` counts family
    regions met inside open components that avoid v but miss the mode.
    """

    def __init__(self, direction: VertexId, failing: int, rounds: int):
        self.direction = direction
        self.failing = failing
        self.rounds = rounds
        why = (f"{failing} family regions avoiding v fail the mode" if failing
               else "no family region fits there")
        self.premise_failed = bool(failing)
        super().__init__(f"direction {direction!r} still open after {rounds} rounds: {why}")


class NestStalled(RuntimeError):
    def __init__(self, end, scanned: int):
        self.end = end
        self.scanned = scanned
        super().__init__(f"no region for end {end!r} avoids the accumulated boundary among {scanned} scanned")


@dataclass
class NestedFamily:
    regions: list[Region]
    provenance: str  # "generator", "corollary5" or "checked"
    ends: list = field(default_factory=list)

    def __iter__(self) -> Iterator[Region]:
        return iter(self.regions)

    def __len__(self) -> int:
        return len(self.regions)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "nest",
            "provenance": self.provenance,
            "regions": [r.to_json() for r in self.regions],
            "ends": list(self.ends),
        }


def first_crossing(g: GraphHandle, regions: list[Region], budget: Budget | int | None = None):
    """First pair (i, j) whose regions cross or cannot be compared, else None."""
    budget = _budget(budget)
    for i, j in itertools.combinations(range(len(regions)), 2):
        rel = nestedness(g, regions[i], regions[j], budget).relation
        if rel in (Nesting.CROSSING, Nesting.UNKNOWN):
            return i, j
    return None


def disjointify(g: GraphHandle, regions: Iterable[Region], budget: Budget | int | None = None) -> list[Region]:
    """Keep the maximal regions of a nested collection (duplicates collapse).

    Raises DomainError if two regions cross.
    """
    budget = _budget(budget)
    regions = list(regions)
    keep: list[Region] = []
    for i, r in enumerate(regions):
        maximal = True
        for j, other in enumerate(regions):
            if i == j:
                continue
            rel = nestedness(g, r, other, budget).relation
            if rel is Nesting.CROSSING:
                raise DomainError(f"regions {r.seed!r} and {other.seed!r} cross")
            if rel is Nesting.UNKNOWN:
                raise BudgetExhausted("nestedness undecided")
            if rel is Nesting.SUBSET or (rel is Nesting.EQUAL and j < i):
                maximal = False
                break
        if maximal:
            keep.append(r)
    return keep


def _in_any(g, comps, x) -> bool:
    return any(c.contains(g, x) for c in comps)


def _leftover(g, D, chosen, budget, limit):
    """Vertices of component D outside every chosen region, or None if more
    than ``limit`` of them are found."""
    comps = [component(g, r, budget) for r in chosen]
    starts = sorted(w for s in D.separator for w in g.neighbors(s) if D.contains(g, w))
    seen = set()
    queue = deque()
    for w in starts:
        if w not in seen and not _in_any(g, comps, w):
            seen.add(w)
            queue.append(w)
    while queue:
        x = queue.popleft()
        budget.spend()
        for w in g.neighbors(x):
            if w in seen or w in D.separator or _in_any(g, comps, w):
                continue
            seen.add(w)
            if len(seen) > limit:
                return None
            queue.append(w)
    return seen


def cover_ends(g: GraphHandle, family: Iterable[Region], v: VertexId, mode: Mode,
               budget: Budget | int | None = None, horizon: int = 64, rounds: int = 8,
               leftover_limit: int = 5000) -> list[Region]:
    """Finitely many disjoint family regions avoiding ``v`` that together hold
    every end.

    Frontier search: X starts as {v}.  For each component D of G - X (in order
    of its least boundary vertex) the maximal family regions inside D that
    avoid v and pass ``mode`` are taken; D is closed once only finitely many of
    its vertices remain uncovered, and those join X.  Otherwise V+(D) joins X
    and D is retried.
    """
    budget = _budget(budget)
    g.validate(v)
    pool = list(itertools.islice(family, horizon))
    X = frozenset({v})
    chosen: list[Region] = []
    open_dirs: list = []
    failed: set[Region] = set()
    try:
        return _frontier(g, pool, v, X, chosen, open_dirs, failed, mode, budget, rounds, leftover_limit)
    except BudgetExhausted:
        if not open_dirs:
            raise
        raise CoverFailed(open_dirs[0][1].seed, len(failed), rounds) from None


def _frontier(g, pool, v, X, chosen, open_dirs, failed, mode, budget, rounds, leftover_limit):
    for rnd in range(rounds + 1):
        open_dirs.clear()
        base = X
        for D in sorted(components(g, base, budget), key=lambda c: component_seed(g, c)):
            if D.finite:
                X |= D.explicit
                continue
            d_region = Region(base, component_seed(g, D))
            inside = []
            for r in pool:
                if component(g, r, budget).contains(g, v):
                    continue
                if nestedness(g, r, d_region, budget).relation not in (Nesting.SUBSET, Nesting.EQUAL):
                    continue
                if is_good(g, r, mode, budget):
                    inside.append(r)
                else:
                    failed.add(r)
            top = disjointify(g, inside, budget)
            # an infinite component needs at least one region to cover its ends
            rest = _leftover(g, D, top, budget, leftover_limit) if top else None
            if rest is None:
                open_dirs.append((D, d_region))
                continue
            chosen.extend(top)
            X |= rest
        if not open_dirs:
            return disjointify(g, chosen, budget)
        if rnd == rounds:
            raise CoverFailed(open_dirs[0][1].seed, len(failed), rounds)
        for D, d_region in open_dirs:
            X |= vertex_boundary(g, d_region, budget)
    raise AssertionError("unreachable")


def residual(g: GraphHandle, regions: Iterable[Region], v: VertexId,
             budget: Budget | int | None = None) -> Window:
    """All vertices reachable from ``v`` without entering a chosen region."""
    budget = _budget(budget)
    comps = [component(g, r, budget) for r in regions]
    if _in_any(g, comps, v):
        raise DomainError(f"{v!r} lies in a chosen region")
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        budget.spend()
        for w in g.neighbors(x):
            if w not in seen and not _in_any(g, comps, w):
                seen.add(w)
                queue.append(w)
    return induced_window(g, seen)


def assemble_H(g: GraphHandle, X: Window | Iterable[VertexId], regions: Iterable[Region],
               budget: Budget | int | None = None) -> Window:
    """G induced on X and the vertex boundaries of the regions.

    Edges between boundaries of different regions are kept.
    """
    budget = _budget(budget)
    vs = set(X.vertices if isinstance(X, Window) else X)
    for r in regions:
        vs |= vertex_boundary(g, r, budget)
    return induced_window(g, vs)


@dataclass
class NestedReport:
    v: VertexId
    mode: Mode
    regions: list[Region]
    X: Window
    H: Window
    spent: int

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "extract4",
            "v": self.v,
            "mode": self.mode.to_json(),
            "regions": [r.to_json() for r in self.regions],
            "residual": list(self.X.vertices),
            "H": {
                "vertices": list(self.H.vertices),
                "edges": [list(e) for e in self.H.edges],
                "degrees": {u: self.H.degree(u) for u in self.H.vertices},
                "min_degree": self.H.min_degree(),
                "average_degree": str(self.H.average_degree()),
            },
            "budget": {"oracle_spent": self.spent},
        }


def extract4(g: GraphHandle, family: Iterable[Region], v: VertexId, mode: Mode,
             budget: Budget | int | None = None, horizon: int = 64) -> NestedReport:
    budget = _budget(budget)
    regions = cover_ends(g, family, v, mode, budget, horizon)
    X = residual(g, regions, v, budget)
    H = assemble_H(g, X, regions, budget)
    return NestedReport(v, mode, regions, X, H, budget.spent)


def corollary5_nest(g: GraphHandle, sequences: Mapping | Callable, end_stream: Iterable,
                    count: int = 50, budget: Budget | int | None = None, scan: int = 256) -> NestedFamily:
    """Choose regions C_1, C_2, ... from per-end sequences.

    For the n-th end of the stream, C_n is the first region of its sequence not
    chosen before whose component misses N(C_1) u ... u N(C_{n-1}).
    ``sequences`` maps an end to an iterable of regions (or is a callable).
    """
    budget = _budget(budget)
    get = sequences if callable(sequences) else sequences.__getitem__
    cache: dict = {}
    nxt: dict = {}
    acc: set[VertexId] = set()
    out: list[Region] = []
    ends: list = []
    stream = iter(end_stream)
    while len(out) < count:
        end = next(stream, None)
        if end is None:
            break
        if end not in cache:
            cache[end] = (iter(get(end)), [])
            nxt[end] = 0
        it, seen = cache[end]
        i = nxt[end]
        found = None
        while i < scan:
            while len(seen) <= i:
                r = next(it, None)
                if r is None:
                    raise NestStalled(end, i)
                seen.append(r)
            r = seen[i]
            comp = component(g, r, budget)
            if not any(comp.contains(g, s) for s in acc):
                found = r
                break
            i += 1
        if found is None:
            raise NestStalled(end, i)
        nxt[end] = i + 1
        out.append(found)
        ends.append(end)
        acc |= neighbourhood(g, found, budget)
    return NestedFamily(out, "corollary5", ends)

"""Ends named by generators, defining sequences and good-region queries."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .graph_core import DomainError, GraphHandle, VertexId, bfs_layers
from .regions import (
    Answer,
    Budget,
    BudgetExhausted,
    Nesting,
    Region,
    _budget,
    _cone_ancestors,
    avg_out_degree,
    complement_connected,
    component,
    min_out_degree,
    nestedness,
)

EndId = str


@dataclass(frozen=True)
class Mode:
    """Goodness of a region: minimum out-degree >= k, or average out-degree > q.

    ``connected`` additionally asks that G - C be connected.  ``s0`` is the
    start set used by the extraction (required nonempty for the average mode
    there, optional otherwise).
    """

    kind: str
    k: int | None = None
    q: Fraction | None = None
    connected: bool = True
    s0: tuple[VertexId, ...] = field(default=())

    def __post_init__(self):
        if self.kind == "min":
            if self.k is None or self.k < 1:
                raise DomainError("minimum-degree mode needs k >= 1")
        elif self.kind == "avg":
            if self.q is None:
                raise DomainError("average-degree mode needs q")
            object.__setattr__(self, "q", Fraction(self.q))
        else:
            raise DomainError(f"unknown mode kind {self.kind!r}")
        object.__setattr__(self, "s0", tuple(sorted(set(self.s0))))

    @classmethod
    def min_degree(cls, k: int, connected: bool = True, s0: Iterable[VertexId] = ()) -> "Mode":
        return cls("min", k=k, connected=connected, s0=tuple(s0))

    @classmethod
    def avg_degree(cls, q, s0: Iterable[VertexId] = (), connected: bool = True) -> "Mode":
        return cls("avg", q=Fraction(q), connected=connected, s0=tuple(s0))

    def to_json(self) -> dict:
        out = {"kind": self.kind, "connected": self.connected, "s0": list(self.s0)}
        if self.kind == "min":
            out["k"] = self.k
        else:
            out["q"] = str(self.q)
        return out

    def describe(self) -> str:
        core = f"min out-degree >= {self.k}" if self.kind == "min" else f"avg out-degree > {self.q}"
        return core + (" with connected complement" if self.connected else "")


@dataclass(frozen=True)
class Goodness:
    good: bool
    min_out: object
    avg_out: Fraction | None
    complement: Answer | None
    reason: str = ""


def region_goodness(g: GraphHandle, region: Region, mode: Mode, budget: Budget | int | None = None) -> Goodness:
    """Recompute the out-degree statistics of ``region`` and judge it under ``mode``."""
    budget = _budget(budget)
    mn = min_out_degree(g, region, budget)
    try:
        avg = avg_out_degree(g, region, budget)
    except DomainError:
        avg = None
    if mode.kind == "min":
        ok = mn >= mode.k
        reason = "" if ok else f"min out-degree {mn} < {mode.k}"
    else:
        ok = avg is not None and avg > mode.q
        reason = "" if ok else f"avg out-degree {avg} <= {mode.q}"
    comp = None
    if ok and mode.connected:
        comp = complement_connected(g, region, budget)
        if comp is not Answer.YES:
            ok = False
            reason = f"complement connected: {comp.value}"
    return Goodness(ok, mn, avg, comp, reason)


def is_good(g: GraphHandle, region: Region, mode: Mode, budget: Budget | int | None = None) -> bool:
    return region_goodness(g, region, mode, budget).good


# -- lives_in ------------------------------------------------------------------

def _family(g: GraphHandle):
    fam = g.oracle
    if not hasattr(fam, "end_branch"):
        raise DomainError(f"{g.name} does not name its ends")
    return fam


def home_vertex(g: GraphHandle, end: EndId, S: Iterable[VertexId],
                budget: Budget | int | None = None) -> VertexId:
    """First vertex of the end's branch whose cone misses ``S``.

    That cone holds a tail of every ray of the end, so the end lives in the
    component of G - S containing the returned vertex.
    """
    S = frozenset(S)
    budget = _budget(budget)
    anc = _cone_ancestors(g, S)
    for x in _family(g).end_branch(end):
        budget.spend()
        if x not in anc:
            return x
    raise AssertionError("unreachable")


def home_region(g: GraphHandle, end: EndId, S: Iterable[VertexId],
                budget: Budget | int | None = None) -> Region:
    S = frozenset(S)
    return Region(S, home_vertex(g, end, S, budget))


def lives_in(g: GraphHandle, end: EndId, region: Region, budget: Budget | int | None = None) -> Answer:
    budget = _budget(budget)
    try:
        x = home_vertex(g, end, region.separator, budget)
        comp = component(g, region, budget)
    except BudgetExhausted:
        return Answer.UNKNOWN
    return Answer.YES if comp.contains(g, x) else Answer.NO


# -- end oracles -----------------------------------------------------------------

class OracleExhausted(RuntimeError):
    """No qualifying region in the scanned prefix of the end's defining sequence."""

    def __init__(self, end: EndId, mode: Mode, scanned: int, premise_failed: bool, detail: str = ""):
        self.end = end
        self.mode = mode
        self.scanned = scanned
        self.premise_failed = premise_failed
        why = "premise fails" if premise_failed else "budget too small"
        super().__init__(f"no region for end {end!r} with {mode.describe()} among {scanned} scanned ({why})"
                         + (f": {detail}" if detail else ""))


class EndOracle:
    """Serves regions from a generator's canonical defining sequences."""

    def __init__(self, g: GraphHandle, horizon: int = 64):
        self.g = g
        self.family = _family(g)
        self.horizon = horizon
        self.exact = bool(getattr(self.family, "self_similar", False))

    def ends(self) -> Iterator[EndId]:
        return self.family.ends()

    def sequence(self, end: EndId) -> Iterator[Region]:
        return self.family.defining_sequence(end)

    def good_region_for(self, end: EndId, avoid: Iterable[VertexId], mode: Mode,
                        budget: Budget | int | None = None) -> Region:
        return good_region_for(self, end, avoid, mode, budget)


def good_region_for(oracle: EndOracle, end: EndId, avoid: Iterable[VertexId], mode: Mode,
                    budget: Budget | int | None = None) -> Region:
    g = oracle.g
    avoid = frozenset(avoid)
    budget = _budget(budget)
    eligible = 0
    last_reason = ""
    try:
        for region in itertools.islice(oracle.sequence(end), oracle.horizon):
            comp = component(g, region, budget)
            if any(comp.contains(g, a) for a in avoid):
                continue
            eligible += 1
            verdict = region_goodness(g, region, mode, budget)
            if verdict.good:
                return region
            last_reason = verdict.reason
    except BudgetExhausted as exc:
        raise OracleExhausted(end, mode, eligible, False, str(exc)) from None
    raise OracleExhausted(end, mode, eligible, oracle.exact and eligible > 0, last_reason)


# -- finite-depth statistics -------------------------------------------------------

def limit_degree_profile(g: GraphHandle, sequence: Iterable[Region], depth: int,
                         budget: Budget | int | None = None) -> list[tuple[object, Fraction | None]]:
    """(min out-degree, average out-degree) of the first ``depth`` regions."""
    budget = _budget(budget)
    out = []
    for region in itertools.islice(sequence, depth):
        mn = min_out_degree(g, region, budget)
        try:
            avg = avg_out_degree(g, region, budget)
        except DomainError:
            avg = None
        out.append((mn, avg))
    return out


@dataclass(frozen=True)
class PrefixCheck:
    strictly_nested: bool
    vanishing: dict[int, int | None]


def check_defining_prefix(g: GraphHandle, regions: list[Region], radii: Iterable[int],
                          budget: Budget | int | None = None) -> PrefixCheck:
    """Strict nesting of consecutive regions, and for each radius r the first
    index whose region misses the ball of radius r around the root (None if
    no region in the prefix does)."""
    budget = _budget(budget)
    nested = all(
        nestedness(g, b, a, budget).relation is Nesting.SUBSET for a, b in zip(regions, regions[1:])
    )
    comps = [component(g, r, budget) for r in regions]
    vanishing: dict[int, int | None] = {}
    for r in radii:
        ball_vs = [v for layer in bfs_layers(g, g.root, r) for v in layer]
        vanishing[r] = next(
            (i for i, c in enumerate(comps) if not any(c.contains(g, v) for v in ball_vs)), None
        )
    return PrefixCheck(nested, vanishing)

"""Finite dense subgraphs from good regions around every end.

The extraction keeps a finite connected separator S_n such that every
component of G - S_n is infinite and every processed end lives in a good
component.  Once every component of G - S_n is good, H = G[S_n u N(S_n)] has
the required minimum (or average) degree.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

import networkx as nx

from .ends import EndOracle, Mode, OracleExhausted, home_region, is_good, lives_in, region_goodness
from .graph_core import DomainError, GraphHandle, VertexId, Window, induced_window
from .regions import (
    Answer,
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
    out_degrees,
    vertex_boundary,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Budgets:
    oracle: int = 200_000
    iterations: int = 50


# -- separator maintenance -----------------------------------------------------

def connectify(g: GraphHandle, X: Iterable[VertexId], allowed: Callable[[VertexId], bool],
               budget: Budget) -> frozenset:
    """Join the components of G[X] by shortest paths through allowed vertices.

    Deterministic: the component holding the least vertex grows first, and
    BFS visits neighbours in sorted order.
    """
    X = set(X)
    while True:
        parts = _parts(g, X)
        if len(parts) <= 1:
            return frozenset(X)
        start = min(parts, key=min)
        prev: dict[VertexId, VertexId | None] = {v: None for v in start}
        queue = deque(sorted(start))
        hit = None
        while queue and hit is None:
            x = queue.popleft()
            budget.spend()
            for w in g.neighbors(x):
                if w in prev:
                    continue
                if w in X:
                    prev[w] = x
                    hit = w
                    break
                if allowed(w):
                    prev[w] = x
                    queue.append(w)
        if hit is None:
            raise DomainError("separator cannot be connected inside the allowed set")
        y = prev[hit]
        while y is not None and y not in start:
            X.add(y)
            y = prev[y]


def _parts(g: GraphHandle, X: set) -> list[frozenset]:
    h = nx.Graph()
    h.add_nodes_from(X)
    h.add_edges_from((v, w) for v in X for w in g.neighbors(v) if w in X)
    return [frozenset(c) for c in nx.connected_components(h)]


def absorb_finite(g: GraphHandle, S: Iterable[VertexId], budget: Budget) -> frozenset:
    """Add every finite component of G - S to S."""
    S = frozenset(S)
    extra = set()
    for comp in components(g, S, budget):
        if comp.finite:
            extra |= comp.explicit
    return S | extra


def init_S0(g: GraphHandle, mode: Mode, budget: Budget | int | None = None) -> frozenset:
    budget = _budget(budget)
    if mode.kind == "avg" and not mode.s0:
        raise DomainError("average-degree mode needs a nonempty start set s0")
    start = set(mode.s0) or {g.root}
    for v in start:
        g.validate(v)
    S = connectify(g, start, lambda _: True, budget)
    return absorb_finite(g, S, budget)


# -- state -------------------------------------------------------------------------

@dataclass
class ExtractState:
    separator: frozenset
    assigned: dict = field(default_factory=dict)  # end -> Region over the current separator
    n: int = 0
    history: list = field(default_factory=list)

    def record(self, end, adopted: Region | None, note: str = "") -> None:
        self.history.append({
            "n": self.n,
            "end": end,
            "separator": sorted(self.separator),
            "adopted": adopted.to_json() if adopted else None,
            "assigned": {e: r.seed for e, r in sorted(self.assigned.items())},
            "note": note,
        })


def start_state(g: GraphHandle, mode: Mode, budget: Budget | int | None = None) -> ExtractState:
    state = ExtractState(init_S0(g, mode, budget))
    state.record(None, None, "start")
    return state


def _rebase(g: GraphHandle, S: frozenset, region: Region) -> Region:
    return Region(S, region.seed)


def step(g: GraphHandle, state: ExtractState, end, oracle: EndOracle, mode: Mode,
         budget: Budget | int | None = None) -> ExtractState:
    """Make ``end`` live in a good component of G - S_{n+1}.

    Raises OracleExhausted when no good region is found for the end.
    """
    budget = _budget(budget)
    S = state.separator
    home = home_region(g, end, S, budget)
    if is_good(g, home, mode, budget):
        state.assigned[end] = Region(S, component_seed(g, component(g, home, budget)))
        state.n += 1
        state.record(end, None, "already good")
        return state
    chosen = oracle.good_region_for(end, S, mode, budget)
    home_comp = component(g, home, budget)
    new_comp = component(g, chosen, budget)
    N = neighbourhood(g, chosen, budget)

    def allowed(x):
        return x in S or (home_comp.contains(g, x) and not new_comp.contains(g, x))

    S1 = connectify(g, S | N, allowed, budget)
    S1 = absorb_finite(g, S1, budget)
    state.separator = S1
    state.assigned = {e: _rebase(g, S1, r) for e, r in state.assigned.items()}
    state.assigned[end] = Region(S1, chosen.seed)
    state.n += 1
    state.record(end, chosen, "adopted")
    return state


# -- checks ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionCheck:
    lives: bool
    connected: bool
    all_infinite: bool
    persistent: bool

    @property
    def ok(self) -> bool:
        return self.lives and self.connected and self.all_infinite and self.persistent


def check_conditions(g: GraphHandle, state: ExtractState, mode: Mode,
                     previous: dict | None = None, budget: Budget | int | None = None) -> ConditionCheck:
    """Re-derive the four invariants of the extraction from the oracle.

    ``previous`` maps ends to the regions assigned one step earlier; each must
    still denote the same vertex set.
    """
    budget = _budget(budget)
    S = state.separator
    lives = all(
        lives_in(g, e, r, budget) is Answer.YES and is_good(g, r, mode, budget) and r.separator == S
        for e, r in state.assigned.items()
    )
    connected = len(_parts(g, set(S))) == 1
    all_infinite = all(not c.finite for c in components(g, S, budget))
    persistent = True
    for e, old in (previous or {}).items():
        new = state.assigned.get(e)
        if new is None or nestedness(g, old, new, budget).relation is not Nesting.EQUAL:
            persistent = False
    return ConditionCheck(lives, connected, all_infinite, persistent)


def stationary(g: GraphHandle, S: frozenset, mode: Mode, budget: Budget | int | None = None) -> bool:
    """True when every component of G - S is good."""
    budget = _budget(budget)
    for comp in components(g, S, budget):
        if comp.finite or not is_good(g, Region(S, component_seed(g, comp)), mode, budget):
            return False
    return True


# -- the run ----------------------------------------------------------------------------

@dataclass
class ExtractionReport:
    H: Window
    mode: Mode
    separator: frozenset
    history: list
    status: str  # "stationary" or "iteration-budget"
    spent: int
    iterations: int

    @property
    def complete(self) -> bool:
        return self.status == "stationary"

    def degrees(self) -> dict[VertexId, int]:
        return {v: self.H.degree(v) for v in self.H.vertices}

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "extract2",
            "status": self.status,
            "mode": self.mode.to_json(),
            "separator": sorted(self.separator),
            "H": {
                "vertices": list(self.H.vertices),
                "edges": [list(e) for e in self.H.edges],
                "degrees": self.degrees(),
                "min_degree": self.H.min_degree() if len(self.H) else None,
                "average_degree": str(self.H.average_degree()) if len(self.H) else None,
            },
            "history": self.history,
            "budget": {"oracle_spent": self.spent, "iterations": self.iterations},
        }


def closed_neighbourhood(g: GraphHandle, S: Iterable[VertexId]) -> Window:
    S = set(S)
    return induced_window(g, S | {w for s in S for w in g.neighbors(s)})


def extract(g: GraphHandle, oracle: EndOracle, mode: Mode, budgets: Budgets = Budgets(),
            on_step: Callable[[ExtractState], None] | None = None) -> ExtractionReport:
    """Run the extraction until every component of G - S_n is good.

    Ends are taken from the oracle's enumeration in order.  Once stationary,
    every end seen in one pass of the enumeration is assigned its component.
    OracleExhausted propagates; running out of iterations returns a report
    with status ``iteration-budget``.
    """
    budget = Budget(budgets.oracle)
    state = start_state(g, mode, budget)
    if on_step:
        on_step(state)
    ends = oracle.ends()
    status = "iteration-budget"
    for _ in range(budgets.iterations):
        if stationary(g, state.separator, mode, budget):
            status = "stationary"
            break
        end = next(ends, None)
        if end is None:
            break
        step(g, state, end, oracle, mode, budget)
        if on_step:
            on_step(state)
    else:
        if stationary(g, state.separator, mode, budget):
            status = "stationary"
    if status == "stationary":
        _assign_remaining(g, state, oracle, budget)
    return ExtractionReport(closed_neighbourhood(g, state.separator), mode, state.separator,
                            state.history, status, budget.spent, state.n)


def _assign_remaining(g, state, oracle, budget, limit: int = 64) -> None:
    for end in itertools.islice(oracle.ends(), limit):
        if end in state.assigned:
            break
        home = home_region(g, end, state.separator, budget)
        state.assigned[end] = Region(state.separator, component_seed(g, component(g, home, budget)))
    state.history.append({
        "n": state.n,
        "end": None,
        "separator": sorted(state.separator),
        "adopted": None,
        "assigned": {e: r.seed for e, r in sorted(state.assigned.items())},
        "note": "stationary",
    })


# -- the compactness search ---------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    region: Region
    witness: VertexId
    out_degree: int


@dataclass(frozen=True)
class AllGood:
    separator: frozenset
    H: Window
    expansions: int


@dataclass(frozen=True)
class BadChain:
    chain: tuple[ChainStep, ...]
    exhausted: bool = False  # True when the budget ran out before the target length

    def __len__(self) -> int:
        return len(self.chain)


def _bad_witness(g, region, threshold, budget):
    degs = out_degrees(g, region, budget)
    low = [(d, v) for v, d in degs.items() if d < threshold]
    if not low:
        return None
    d, v = min(low)
    return ChainStep(region, v, d)


def intro_search(g: GraphHandle, threshold: int, budget: Budget | int | None = None,
                 length: int = 10, max_expansions: int = 200) -> AllGood | BadChain:
    """Grow S from the root by the boundaries of bad components.

    A component C of G - S is bad when some vertex of V+(C) has out-degree
    below ``threshold``.  Returns AllGood when no component is bad, or a
    strictly nested chain of bad regions of the requested length.
    """
    budget = _budget(budget)
    chain: list[ChainStep] = []
    try:
        S = absorb_finite(g, {g.root}, budget)
        for expansion in range(max_expansions + 1):
            bad = []
            for comp in components(g, S, budget):
                region = Region(S, component_seed(g, comp))
                w = _bad_witness(g, region, threshold, budget)
                if w is not None:
                    bad.append(w)
            if not bad:
                return AllGood(S, closed_neighbourhood(g, S), expansion)
            pick = None
            if chain:
                pick = next((b for b in bad if nestedness(g, b.region, chain[-1].region, budget).relation
                             is Nesting.SUBSET), None)
            if pick is None:
                chain = []
                pick = bad[0]
            chain.append(pick)
            if len(chain) >= length:
                return BadChain(tuple(chain))
            S = absorb_finite(g, S | vertex_boundary(g, pick.region, budget), budget)
    except BudgetExhausted:
        return BadChain(tuple(chain), exhausted=True)
    return BadChain(tuple(chain), exhausted=True)


def verify_chain(g: GraphHandle, chain: BadChain, threshold: int, budget: Budget | int | None = None) -> bool:
    """Re-check every chain step's witness and the strict nesting of the chain."""
    budget = _budget(budget)
    for st in chain.chain:
        degs = out_degrees(g, st.region, budget)
        if degs.get(st.witness) != st.out_degree or st.out_degree >= threshold:
            return False
    return all(nestedness(g, b.region, a.region, budget).relation is Nesting.SUBSET
               for a, b in zip(chain.chain, chain.chain[1:]))


__all__ = [
    "Budgets", "ExtractState", "ExtractionReport", "ConditionCheck", "AllGood", "BadChain", "ChainStep",
    "init_S0", "start_state", "step", "extract", "check_conditions", "stationary", "connectify",
    "absorb_finite", "closed_neighbourhood", "intro_search", "verify_chain", "OracleExhausted",
    "region_goodness",
]

"""Independent checks for windows and extraction certificates.

Nothing here trusts numbers produced elsewhere: k-cores are peeled from
scratch, densest subgraphs come from an exact max-flow parametric search, and
certificates are re-derived from the graph oracle.
"""

from __future__ import annotations

import heapq
import itertools
import random
from fractions import Fraction
from typing import Iterable, Mapping

import networkx as nx
import numpy as np

from .graph_core import DomainError, GraphHandle, VertexId, Window, induced_window

DENSEST_MAX_VERTICES = 2000
BRUTE_MAX_VERTICES = 12


class WindowTooLarge(DomainError):
    pass


def peeling_trace(window: Window, k: int) -> list[VertexId]:
    """Vertices removed while peeling to the k-core, in removal order.

    Always removes a vertex of minimum current degree, ties by vertex order.
    """
    adj = {v: set(ns) for v, ns in window.adjacency().items()}
    deg = {v: len(ns) for v, ns in adj.items()}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed: set[VertexId] = set()
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        if d >= k:
            break
        removed.add(v)
        order.append(v)
        for w in adj[v]:
            if w not in removed:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order


def k_core(window: Window, k: int) -> Window:
    removed = set(peeling_trace(window, k))
    return window.subwindow(v for v in window.vertices if v not in removed)


def densest_subgraph(window: Window) -> tuple[Window, Fraction]:
    """Nonempty sub-window of maximum average degree, with that degree exactly.

    Dinkelbach iteration over Goldberg's cut network: for a guess g = a/b the
    minimum s-t cut (integer capacities, scaled by b) finds the vertex set
    maximising |E(U)| - g|U|; the guess is raised to the density of that set
    until no set beats it.
    """
    n = len(window)
    if n == 0:
        raise DomainError("densest subgraph of an empty window")
    if n > DENSEST_MAX_VERTICES:
        raise WindowTooLarge(f"window has {n} vertices; exact densest subgraph is limited to "
                             f"{DENSEST_MAX_VERTICES}")
    if not window.edges:
        v = window.vertices[0]
        return window.subwindow([v]), Fraction(0)
    best = set(window.vertices)
    density = Fraction(len(window.edges), n)
    while True:
        better = _beats(window, density)
        if better is None:
            break
        best = better
        sub = window.subwindow(best)
        density = Fraction(len(sub.edges), len(sub))
    sub = window.subwindow(best)
    return sub, 2 * density


def _beats(window: Window, density: Fraction) -> set[VertexId] | None:
    """A vertex set with |E(U)| / |U| > density, or None."""
    a, b = density.numerator, density.denominator
    m = len(window.edges)
    net = nx.DiGraph()
    for v in window.vertices:
        d = window.degree(v)
        net.add_edge("__s", ("v", v), capacity=m * b)
        net.add_edge(("v", v), "__t", capacity=m * b + 2 * a - d * b)
    for u, v in window.edges:
        net.add_edge(("v", u), ("v", v), capacity=b)
        net.add_edge(("v", v), ("v", u), capacity=b)
    cut, (src_side, _) = nx.minimum_cut(net, "__s", "__t")
    # cut = b*m*n + 2*b*|U|*(g - |E(U)|/|U|) for the source side U
    if cut >= m * b * len(window):
        return None
    found = {x[1] for x in src_side if x != "__s"}
    return found or None


def brute_min_degree(window: Window, k: int) -> bool:
    """True iff some nonempty vertex subset induces minimum degree >= k (exhaustive)."""
    n = len(window)
    if n > BRUTE_MAX_VERTICES:
        raise WindowTooLarge(f"brute force is limited to {BRUTE_MAX_VERTICES} vertices")
    if n == 0:
        return False
    masks = np.arange(1, 1 << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    for i, bits in enumerate(_adjacency_bits(window)):
        member = (masks >> i) & 1
        deg = _popcount(masks & bits)
        ok &= (member == 0) | (deg >= k)
    return bool(ok.any())


def brute_densest(window: Window) -> Fraction:
    """Maximum average degree over all nonempty vertex subsets (exhaustive)."""
    n = len(window)
    if n > BRUTE_MAX_VERTICES:
        raise WindowTooLarge(f"brute force is limited to {BRUTE_MAX_VERTICES} vertices")
    if n == 0:
        raise DomainError("empty window")
    masks = np.arange(1, 1 << n, dtype=np.int64)
    idx = {v: i for i, v in enumerate(window.vertices)}
    edges = np.zeros(masks.shape, dtype=np.int64)
    for u, v in window.edges:
        edges += ((masks >> idx[u]) & 1) & ((masks >> idx[v]) & 1)
    sizes = _popcount(masks)
    best = Fraction(0)
    for s in range(1, n + 1):
        sel = edges[sizes == s]
        if sel.size:
            best = max(best, Fraction(2 * int(sel.max()), s))
    return best


def _adjacency_bits(window: Window) -> list[int]:
    idx = {v: i for i, v in enumerate(window.vertices)}
    bits = [0] * len(window)
    for u, v in window.edges:
        bits[idx[u]] |= 1 << idx[v]
        bits[idx[v]] |= 1 << idx[u]
    return bits


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.uint64)
    return np.bitwise_count(a).astype(np.int64) if hasattr(np, "bitwise_count") else np.array(
        [bin(int(x)).count("1") for x in a], dtype=np.int64)


# -- the highest-vertex argument -------------------------------------------------

def _heights(g: GraphHandle, window: Window) -> Mapping[VertexId, int]:
    fam = g.oracle
    if getattr(fam, "name", None) != "theorem3":
        raise DomainError("highest-vertex check only applies to theorem3 windows")
    return {v: fam.height(v) for v in window.vertices}


def highest_vertex_holds(g: GraphHandle, window: Window) -> bool:
    """For every highest vertex v: some horizontal edge vw has an end of degree
    <= 2, or v has degree <= 1."""
    if not window.vertices:
        return True
    h = _heights(g, window)
    top = max(h.values())
    adj = window.adjacency()
    for v in (x for x in window.vertices if h[x] == top):
        horiz = [w for w in adj[v] if h[w] == h[v]]
        if horiz:
            if len(adj[v]) > 2 and all(len(adj[w]) > 2 for w in horiz):
                return False
        elif len(adj[v]) > 1:
            return False
    return True


def highest_vertex_check(g: GraphHandle, window: Window, samples: int = 200, seed: int = 0) -> bool:
    """Run the highest-vertex argument on the window, every stage of its 3-core
    peeling, and ``samples`` random sub-windows."""
    _heights(g, window)
    if not highest_vertex_holds(g, window):
        return False
    remaining = list(window.vertices)
    for v in peeling_trace(window, 3):
        remaining.remove(v)
        if not highest_vertex_holds(g, window.subwindow(remaining)):
            return False
    rng = random.Random(seed)
    for _ in range(samples):
        size = rng.randint(1, len(window))
        sub = window.subwindow(rng.sample(window.vertices, size))
        if not highest_vertex_holds(g, sub):
            return False
    return True


# -- certificates -------------------------------------------------------------------

def check_certificate(report: Mapping, g: GraphHandle) -> bool:
    """Re-derive a report's subgraph H from the oracle and re-judge its claim."""
    try:
        h = report["H"]
        vertices = list(h["vertices"])
        if not vertices:
            return False
        fresh = induced_window(g, vertices)
        stored_edges = sorted(tuple(sorted(e)) for e in h["edges"])
        if stored_edges != list(fresh.edges):
            return False
        degrees = {v: fresh.degree(v) for v in fresh.vertices}
        if {k: int(v) for k, v in h["degrees"].items()} != degrees:
            return False
        if report.get("kind") == "extract2":
            sep = set(report["separator"])
            expected = sep | {w for s in sep for w in g.neighbors(s)}
            if expected != set(vertices):
                return False
        elif report.get("kind") == "extract4":
            from .regions import Region, vertex_boundary

            expected = set(report["residual"])
            for r in report["regions"]:
                expected |= vertex_boundary(g, Region.from_json(r))
            if expected != set(vertices):
                return False
        mode = report["mode"]
        if mode["kind"] == "min":
            return fresh.min_degree() >= mode["k"]
        return fresh.average_degree() > Fraction(mode["q"])
    except (KeyError, TypeError, ValueError):
        return False


def random_window(rng: random.Random, max_vertices: int, p: float | None = None) -> Window:
    """Random simple graph on at most ``max_vertices`` vertices (test utility)."""
    n = rng.randint(1, max_vertices)
    p = rng.random() if p is None else p
    vs = [f"v{i:02d}" for i in range(n)]
    es = [(u, v) for u, v in itertools.combinations(vs, 2) if rng.random() < p]
    deg = {v: 0 for v in vs}
    for u, v in es:
        deg[u] += 1
        deg[v] += 1
    return Window.build(vs, es, deg)


def batch(windows: Iterable[Window], k: int) -> list[bool]:
    return [len(k_core(w, k)) > 0 for w in windows]

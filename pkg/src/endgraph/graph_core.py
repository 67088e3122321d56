"""Lazy locally finite graphs and finite windows into them.

A graph is never materialized.  It is a :class:`GraphHandle` wrapping an
oracle object that answers neighbor queries for string vertex addresses.
Finite windows (:class:`Window`) are induced snapshots that carry the true
degree of every vertex in the ambient graph, so that truncation never
leaks into degree computations.

Oracles may additionally expose a *cone structure*: a rooted tree on the
vertex set (``cone_parent``) such that the cone of ``v`` (the set of its
descendants) is connected, infinite, laminar with all other cones, and has a
finite, computable neighbourhood ``cone_boundary(v)``.  The regions module
uses it to decide component questions exactly.
"""

from __future__ import annotations

import json
import threading
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

VertexId = str


class AddressError(ValueError):
    """Raised for a malformed or out-of-family vertex address."""


class DomainError(ValueError):
    """Raised when an operation is applied outside its domain."""


class Oracle:
    """Base class for neighbor oracles.

    Subclasses implement :meth:`neighbors` and :meth:`validate`; the cone
    methods are optional and only used when ``has_cones`` is true.
    """

    name = "oracle"
    has_cones = False

    @property
    def root(self) -> VertexId:
        raise NotImplementedError

    @property
    def params(self) -> dict[str, int]:
        return {}

    def validate(self, v: VertexId) -> None:
        raise NotImplementedError

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        raise NotImplementedError

    def level(self, v: VertexId) -> int:
        raise DomainError(f"{self.name} has no level function")

    def cone_parent(self, v: VertexId) -> VertexId | None:
        raise DomainError(f"{self.name} has no cone structure")

    def cone_boundary(self, v: VertexId) -> tuple[VertexId, ...]:
        raise DomainError(f"{self.name} has no cone structure")

    def in_cone(self, a: VertexId, x: VertexId) -> bool:
        # generic: climb from x
        y: VertexId | None = x
        while y is not None:
            if y == a:
                return True
            y = self.cone_parent(y)
        return False


class FiniteOracle(Oracle):
    """A finite graph given by an edge list; used for test doubles and DOT input."""

    name = "finite"

    def __init__(self, edges: Iterable[tuple[VertexId, VertexId]], root: VertexId | None = None,
                 vertices: Iterable[VertexId] = ()):
        adj: dict[VertexId, set[VertexId]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                continue
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        if not adj:
            raise DomainError("finite graph needs at least one vertex")
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._root = root if root is not None else min(self._adj)
        if self._root not in self._adj:
            raise AddressError(f"root {self._root!r} is not a vertex")

    @property
    def root(self) -> VertexId:
        return self._root

    def vertices(self) -> list[VertexId]:
        return sorted(self._adj)

    def validate(self, v: VertexId) -> None:
        if v not in self._adj:
            raise AddressError(f"unknown vertex {v!r}")

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        self.validate(v)
        return self._adj[v]


class GraphHandle:
    """Immutable handle on a locally finite graph.

    Neighbor lists are memoized; the cache is guarded by a lock so the handle
    can be shared between threads.
    """

    def __init__(self, oracle: Oracle):
        self.oracle = oracle
        self._cache: dict[VertexId, tuple[VertexId, ...]] = {}
        self._lock = threading.Lock()
        # per-handle memo for explored components; owned by the regions module
        self.memo: dict = {}
        self.memo_lock = threading.Lock()

    def __repr__(self) -> str:
        return f"GraphHandle({self.name!r}, {self.params!r})"

    @classmethod
    def finite(cls, edges, root=None, vertices=()) -> "GraphHandle":
        return cls(FiniteOracle(edges, root, vertices))

    @property
    def name(self) -> str:
        return self.oracle.name

    @property
    def params(self) -> dict[str, int]:
        return dict(self.oracle.params)

    @property
    def root(self) -> VertexId:
        return self.oracle.root

    @property
    def has_cones(self) -> bool:
        return self.oracle.has_cones

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        try:
            return self._cache[v]
        except KeyError:
            pass
        ns = tuple(sorted(self.oracle.neighbors(v)))
        with self._lock:
            self._cache.setdefault(v, ns)
        return ns

    def degree(self, v: VertexId) -> int:
        return len(self.neighbors(v))

    def validate(self, v: VertexId) -> None:
        self.oracle.validate(v)

    def level(self, v: VertexId) -> int:
        return self.oracle.level(v)

    def cone_parent(self, v: VertexId) -> VertexId | None:
        return self.oracle.cone_parent(v)

    def cone_boundary(self, v: VertexId) -> tuple[VertexId, ...]:
        return tuple(sorted(self.oracle.cone_boundary(v)))

    def in_cone(self, a: VertexId, x: VertexId) -> bool:
        return self.oracle.in_cone(a, x)


def neighbors(g: GraphHandle, v: VertexId) -> tuple[VertexId, ...]:
    return g.neighbors(v)


def degree(g: GraphHandle, v: VertexId) -> int:
    return g.degree(v)


@dataclass(frozen=True)
class Window:
    """Finite induced subgraph annotated with degrees in the ambient graph."""

    vertices: tuple[VertexId, ...]
    edges: tuple[tuple[VertexId, VertexId], ...]
    true_degree: Mapping[VertexId, int] = field(compare=False)

    @classmethod
    def build(cls, vertices: Iterable[VertexId], edges: Iterable[tuple[VertexId, VertexId]],
              true_degree: Mapping[VertexId, int]) -> "Window":
        vs = tuple(sorted(set(vertices)))
        es = tuple(sorted({(u, v) if u < v else (v, u) for u, v in edges}))
        return cls(vs, es, dict((v, true_degree[v]) for v in vs))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._vset

    @property
    def _vset(self) -> frozenset:
        s = self.__dict__.get("_vset_cache")
        if s is None:
            s = frozenset(self.vertices)
            object.__setattr__(self, "_vset_cache", s)
        return s

    def adjacency(self) -> dict[VertexId, list[VertexId]]:
        adj = self.__dict__.get("_adj_cache")
        if adj is None:
            adj = {v: [] for v in self.vertices}
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            for ns in adj.values():
                ns.sort()
            object.__setattr__(self, "_adj_cache", adj)
        return adj

    def degree(self, v: VertexId) -> int:
        return len(self.adjacency()[v])

    def boundary(self, v: VertexId) -> bool:
        """True when ``v`` has a neighbour outside the window."""
        return self.true_degree[v] > self.degree(v)

    def min_degree(self) -> int:
        if not self.vertices:
            raise DomainError("empty window has no minimum degree")
        return min(self.degree(v) for v in self.vertices)

    def average_degree(self) -> Fraction:
        if not self.vertices:
            raise DomainError("empty window has no average degree")
        return Fraction(2 * len(self.edges), len(self.vertices))

    def subwindow(self, vertices: Iterable[VertexId]) -> "Window":
        keep = set(vertices)
        missing = keep - self._vset
        if missing:
            raise DomainError(f"vertices not in window: {sorted(missing)[:5]}")
        es = [(u, v) for u, v in self.edges if u in keep and v in keep]
        return Window.build(keep, es, self.true_degree)

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(self.vertices)
        h.add_edges_from(self.edges)
        return h

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "true_degree": {v: self.true_degree[v] for v in self.vertices},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Window":
        return cls.build(data["vertices"], [tuple(e) for e in data["edges"]], data["true_degree"])


def induced_window(g: GraphHandle, vertices: Iterable[VertexId]) -> Window:
    vs = set(vertices)
    edges = []
    deg = {}
    for v in vs:
        ns = g.neighbors(v)
        deg[v] = len(ns)
        edges.extend((v, w) for w in ns if w in vs and v < w)
    return Window.build(vs, edges, deg)


def bfs_layers(g: GraphHandle, v: VertexId, r: int) -> Iterator[list[VertexId]]:
    seen = {v}
    layer = [v]
    for _ in range(r + 1):
        yield layer
        nxt = []
        for u in layer:
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            return
        layer = sorted(nxt)


def ball(g: GraphHandle, v: VertexId, r: int) -> Window:
    if r < 0:
        raise DomainError("radius must be nonnegative")
    g.validate(v)
    vs: list[VertexId] = []
    for layer in bfs_layers(g, v, r):
        vs.extend(layer)
    return induced_window(g, vs)


def truncation(g: GraphHandle, depth: int) -> Window:
    """Induced window on all vertices of level at most ``depth``."""
    root = g.root
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen and g.level(w) <= depth:
                seen.add(w)
                queue.append(w)
    return induced_window(g, seen)


def avg_set_degree(g: GraphHandle, U: Iterable[VertexId]) -> Fraction:
    """Average of the G-degrees of the vertices of ``U`` as an exact fraction."""
    us = set(U)
    if not us:
        raise DomainError("average degree of an empty set")
    return Fraction(sum(g.degree(v) for v in us), len(us))


def window_to_dot(w: Window, name: str = "window") -> str:
    lines = [f"graph {json.dumps(name)} {{"]
    for v in w.vertices:
        lines.append(f'  {json.dumps(v)} [label={json.dumps(f"{v} ({w.true_degree[v]})")}, '
                     f"true_degree={w.true_degree[v]}];")
    for u, v in w.edges:
        lines.append(f"  {json.dumps(u)} -- {json.dumps(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def window_from_dot(text: str) -> Window:
    """Parse DOT written by :func:`window_to_dot` (a small, fixed subset of DOT)."""
    import re

    node_re = re.compile(r'^\s*("(?:[^"\\]|\\.)*")\s*\[(.*)\];\s*$')
    edge_re = re.compile(r'^\s*("(?:[^"\\]|\\.)*")\s*--\s*("(?:[^"\\]|\\.)*");\s*$')
    deg_re = re.compile(r"true_degree=(\d+)")
    vertices, edges, deg = [], [], {}
    for line in text.splitlines():
        m = edge_re.match(line)
        if m:
            edges.append((json.loads(m.group(1)), json.loads(m.group(2))))
            continue
        m = node_re.match(line)
        if m:
            v = json.loads(m.group(1))
            vertices.append(v)
            d = deg_re.search(m.group(2))
            deg[v] = int(d.group(1)) if d else None
    w_deg = {}
    count: dict[VertexId, int] = {v: 0 for v in vertices}
    for u, v in edges:
        count[u] += 1
        count[v] += 1
    for v in vertices:
        w_deg[v] = deg[v] if deg[v] is not None else count[v]
    return Window.build(vertices, edges, w_deg)


# -- family descriptors ----------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[tuple[str, int], ...] = ()

    def get(self, key: str, default: int | None = None) -> int | None:
        return dict(self.params).get(key, default)

    @classmethod
    def make(cls, family: str, **params: int) -> "FamilySpec":
        return cls(family, tuple(sorted((k, int(v)) for k, v in params.items() if v is not None)))


def parse_descriptor(text: str) -> FamilySpec:
    data = json.loads(text)
    if not isinstance(data, dict) or "family" not in data:
        raise DomainError("descriptor needs a 'family' field")
    params = data.get("params", {})
    if any(not isinstance(v, int) for v in params.values()):
        raise DomainError("descriptor params must be integers")
    return FamilySpec.make(str(data["family"]), **params)


def format_descriptor(spec: FamilySpec) -> str:
    return json.dumps({"family": spec.family, "params": dict(spec.params)}, sort_keys=True)

"""The k-regular tree drawn in the plane with every level closed into a cycle.

Address grammar: ``L<n>.<i>`` is the i-th vertex (left to right) of level n.
The root ``L0.0`` has k children, every other vertex k - 1.  Levels of size 2
get a single edge, larger levels a cycle.  The graph is planar with one end,
named ``*``.

The cone structure enumerates vertices level by level, so every cone is a
suffix of that enumeration.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterator

from ..graph_core import AddressError, DomainError, VertexId
from ..regions import Region
from .base import EndId, Family

_ADDR = re.compile(r"^L(0|[1-9][0-9]*)\.(0|[1-9][0-9]*)$")


class LeveledTreeCycles(Family):
    name = "leveled_tree_cycles"

    def __init__(self, spec):
        super().__init__(spec)
        if self.k < 2:
            raise DomainError("leveled_tree_cycles needs k >= 2")
        self._pos = lru_cache(maxsize=None)(self._parse)

    @property
    def root(self) -> VertexId:
        return "L0.0"

    def size(self, n: int) -> int:
        return 1 if n == 0 else self.k * (self.k - 1) ** (n - 1)

    def _parse(self, v):
        m = _ADDR.match(v) if isinstance(v, str) else None
        if not m:
            raise AddressError(f"bad leveled_tree_cycles address {v!r}")
        n, i = int(m.group(1)), int(m.group(2))
        if i >= self.size(n):
            raise AddressError(f"bad leveled_tree_cycles address {v!r}")
        return n, i

    def validate(self, v: VertexId) -> None:
        self._pos(v)

    def _children(self, n, i):
        if n == 0:
            return [(1, c) for c in range(self.k)]
        return [(n + 1, i * (self.k - 1) + c) for c in range(self.k - 1)]

    def _around(self, n, i):
        size = self.size(n)
        if size == 1:
            return []
        if size == 2:
            return [(n, 1 - i)]
        return [(n, (i - 1) % size), (n, (i + 1) % size)]

    def _nbrs(self, n, i):
        out = self._children(n, i) + self._around(n, i)
        if n == 1:
            out.append((0, 0))
        elif n > 1:
            out.append((n - 1, i // (self.k - 1)))
        return out

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        return tuple(sorted(_fmt(p) for p in self._nbrs(*self._pos(v))))

    def level(self, v: VertexId) -> int:
        return self._pos(v)[0]

    def cone_parent(self, v):
        n, i = self._pos(v)
        if i > 0:
            return _fmt((n, i - 1))
        if n == 0:
            return None
        return _fmt((n - 1, self.size(n - 1) - 1))

    def cone_children(self, v):
        n, i = self._pos(v)
        return (_fmt((n, i + 1)) if i + 1 < self.size(n) else _fmt((n + 1, 0)),)

    def in_cone(self, a, x):
        return self._pos(x) >= self._pos(a)

    def cone_boundary(self, v):
        n, i = self._pos(v)
        key = (n, i)
        out = set()
        for m in (n - 1, n):
            if m < 0:
                continue
            stop = i if m == n else self.size(m)
            for j in range(stop):
                if any(p >= key for p in self._nbrs(m, j)):
                    out.add(_fmt((m, j)))
        return tuple(sorted(out))

    def parse_end(self, end: EndId):
        if end != "*":
            raise AddressError("leveled_tree_cycles has the single end '*'")
        return end

    def ends(self) -> Iterator[EndId]:
        return iter(["*"])

    def end_branch(self, end: EndId) -> Iterator[VertexId]:
        self.parse_end(end)
        for n in itertools.count():
            for i in range(self.size(n)):
                yield _fmt((n, i))

    def canonical_ray(self, end: EndId) -> Iterator[VertexId]:
        self.parse_end(end)
        for n in itertools.count():
            yield _fmt((n, 0))

    def defining_sequence(self, end: EndId) -> Iterator[Region]:
        self.parse_end(end)
        for n in itertools.count(1):
            first = _fmt((n, 0))
            yield Region(frozenset(self.cone_boundary(first)), first)

    def nested_family(self) -> Iterator[Region]:
        return self.defining_sequence("*")


def _fmt(p) -> VertexId:
    return f"L{p[0]}.{p[1]}"

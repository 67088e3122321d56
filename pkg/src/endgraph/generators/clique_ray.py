"""Cliques Q0, Q1, ... of size k, consecutive cliques completely joined.

Address grammar: ``q0.j`` for the shared first clique, ``a<i>.<j>`` and
``b<i>.<j>`` (``i >= 1``, ``0 <= j < k``) for the cliques of ray ``a`` and,
when ``rays=2``, ray ``b`` glued to it at Q0.  With ``cross=m`` (``rays=2``,
``m >= 1``) one extra edge joins ``a<m>.0`` and ``b<m>.0``.

End ids are ``a`` and ``b``.  The tail region C_i is everything from clique
i on; its boundary is Q_i and every boundary vertex sends k edges back to
Q_{i-1} and has k - 1 clique mates, so out-degree 2k - 1.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterator

from ..graph_core import AddressError, DomainError, VertexId
from ..regions import Region
from .base import EndId, Family

_ADDR = re.compile(r"^(q|a|b)(0|[1-9][0-9]*)\.(0|[1-9][0-9]*)$")


class CliqueRay(Family):
    name = "clique_ray"

    def __init__(self, spec):
        super().__init__(spec)
        self.rays = spec.get("rays", 1)
        self.cross = spec.get("cross", 0)
        if self.rays not in (1, 2):
            raise DomainError("clique_ray supports rays=1 or rays=2")
        if self.cross and (self.rays != 2 or self.cross < 1):
            raise DomainError("cross edges need rays=2 and cross >= 1")
        self.branches = "ab"[: self.rays]
        self._pos = lru_cache(maxsize=None)(self._parse)

    @property
    def root(self) -> VertexId:
        return "q0.0"

    def _parse(self, v: VertexId) -> tuple[str, int, int]:
        m = _ADDR.match(v) if isinstance(v, str) else None
        if not m:
            raise AddressError(f"bad clique_ray address {v!r}")
        b, i, j = m.group(1), int(m.group(2)), int(m.group(3))
        if j >= self.k or (b == "q") != (i == 0) or (b != "q" and b not in self.branches):
            raise AddressError(f"bad clique_ray address {v!r}")
        return b, i, j

    def validate(self, v: VertexId) -> None:
        self._pos(v)

    def clique(self, branch: str, i: int) -> list[VertexId]:
        b = "q" if i == 0 else branch
        return [f"{b}{i}.{j}" for j in range(self.k)]

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        b, i, j = self._pos(v)
        out = [w for w in self.clique(b, i) if w != v]
        if i == 0:
            for br in self.branches:
                out += self.clique(br, 1)
        else:
            out += self.clique(b, i - 1) + self.clique(b, i + 1)
        if self.cross and i == self.cross and j == 0:
            out.append(f"{'b' if b == 'a' else 'a'}{i}.0")
        return tuple(sorted(out))

    def level(self, v: VertexId) -> int:
        return self._pos(v)[1]

    def cone_parent(self, v: VertexId) -> VertexId | None:
        b, i, j = self._pos(v)
        if j > 0:
            return f"{b}{i}.{j - 1}"
        if i == 0:
            return None
        return self.clique(b, i - 1)[-1]

    def cone_children(self, v: VertexId) -> tuple[VertexId, ...]:
        b, i, j = self._pos(v)
        if j < self.k - 1:
            return (f"{b}{i}.{j + 1}",)
        if i == 0:
            return tuple(f"{br}1.0" for br in self.branches)
        return (f"{b}{i + 1}.0",)

    def in_cone(self, a: VertexId, x: VertexId) -> bool:
        ba, ia, ja = self._pos(a)
        bx, ix, jx = self._pos(x)
        if ia == 0:
            return ix > 0 or jx >= ja
        return bx == ba and (ix, jx) >= (ia, ja)

    def cone_boundary(self, v: VertexId) -> tuple[VertexId, ...]:
        b, i, j = self._pos(v)
        out = [f"{b}{i}.{jj}" for jj in range(j)]
        if i > 0:
            out += self.clique(b, i - 1)
            if self.cross and i <= self.cross:
                other = "b" if b == "a" else "a"
                if (i, j) <= (self.cross, 0):
                    out.append(f"{other}{self.cross}.0")
        return tuple(sorted(out))

    # -- ends -----------------------------------------------------------

    def parse_end(self, end: EndId):
        if end not in self.branches:
            raise AddressError(f"clique_ray end must be one of {list(self.branches)}, got {end!r}")
        return end

    def ends(self) -> Iterator[EndId]:
        return itertools.cycle(self.branches)

    def end_branch(self, end: EndId) -> Iterator[VertexId]:
        self.parse_end(end)
        yield from self.clique("q", 0)
        for i in itertools.count(1):
            yield from self.clique(end, i)

    def canonical_ray(self, end: EndId) -> Iterator[VertexId]:
        self.parse_end(end)
        yield "q0.0"
        for i in itertools.count(1):
            yield f"{end}{i}.0"

    def tail(self, end: EndId, i: int) -> Region:
        """The tail region from clique ``i >= 1`` of ray ``end``."""
        self.parse_end(end)
        if i < 1:
            raise DomainError("tail index must be at least 1")
        first = f"{end}{i}.0"
        return Region(frozenset(self.cone_boundary(first)), first)

    def defining_sequence(self, end: EndId) -> Iterator[Region]:
        for i in itertools.count(1):
            yield self.tail(end, i)

    def nested_family(self) -> Iterator[Region]:
        for i in itertools.count(1):
            for br in self.branches:
                yield self.tail(br, i)

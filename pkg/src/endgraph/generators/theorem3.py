"""Iterated subdivided-clique tree: every vertex and end has degree >= k, yet
no finite subgraph has minimum degree above 2.

Construction.  ``T`` is the rooted tree in which every vertex has k + 1
successors; the successors of each vertex get a subdivided K_{k+1} on top
(horizontal edges through *subdividing* vertices).  That is one copy of
``T+``.  Every subdividing vertex is the root of a further copy of ``T+``,
and so on without end.  The oracle expands this lazily.

Address grammar.  A vertex is a ``/``-separated list of segments.  Every
segment but the last is a subdividing vertex naming the copy the next
segment lives in.

* ``T`` followed by a dotted child path is a tree vertex of the current
  copy, e.g. ``T0.2``; bare ``T`` is the global root and may only appear
  alone (the root of a later copy is the subdividing vertex it sits on).
* ``S<path>:<i>-<j>`` (``i < j``) subdivides the horizontal edge between
  children ``i`` and ``j`` of the tree vertex at ``<path>``, e.g. ``S:0-1``
  or ``S0.2:1-3``.

Example: ``S:0-1/T2`` is child 2 of the copy rooted at ``S:0-1``.

Heights: the global root has height 0, vertical edges go up by one and
horizontal edges stay on one height.

Cones.  The cone of a tree vertex is its up-closure: its tree descendants,
the subdividing vertices between children of those, and every copy above
them.  The cone of a subdividing vertex is itself plus the copy above it.
Only the cone's own root has neighbours outside it.

End tokens select a cone child: ``c`` for tree child ``c`` and ``i-j`` for
the subdividing vertex between children ``i`` and ``j``.  The end ``"|0"``
climbs child 0 forever; ``"|0-1"`` passes through subdividing vertices only.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterator

from ..graph_core import AddressError, VertexId
from ..regions import Region
from .base import EndId, Family

_T = re.compile(r"^T((?:0|[1-9][0-9]*)(?:\.(?:0|[1-9][0-9]*))*)?$")
_S = re.compile(r"^S((?:0|[1-9][0-9]*)(?:\.(?:0|[1-9][0-9]*))*)?:(0|[1-9][0-9]*)-(0|[1-9][0-9]*)$")

Seg = tuple  # ("T", path) or ("S", path, i, j)


def _path_str(path) -> str:
    return ".".join(map(str, path))


def _seg_str(seg: Seg) -> str:
    if seg[0] == "T":
        return "T" + _path_str(seg[1])
    return f"S{_path_str(seg[1])}:{seg[2]}-{seg[3]}"


def _fmt(segs) -> VertexId:
    return "/".join(_seg_str(s) for s in segs)


class Theorem3(Family):
    name = "theorem3"

    def __init__(self, spec):
        super().__init__(spec)
        self.n = self.k + 1
        self._segs = lru_cache(maxsize=None)(self._parse)
        self._height = lru_cache(maxsize=None)(self._height_of)

    @property
    def root(self) -> VertexId:
        return "T"

    # -- addresses ---------------------------------------------------------

    def _parse(self, v: VertexId) -> tuple[Seg, ...]:
        if not isinstance(v, str) or not v:
            raise AddressError(f"bad theorem3 address {v!r}")
        parts = v.split("/")
        segs = []
        for idx, part in enumerate(parts):
            last = idx == len(parts) - 1
            m = _S.match(part)
            if m:
                path = tuple(int(t) for t in m.group(1).split(".")) if m.group(1) else ()
                i, j = int(m.group(2)), int(m.group(3))
                if not (0 <= i < j < self.n):
                    raise AddressError(f"bad subdividing pair in {v!r}")
                segs.append(("S", path, i, j))
            else:
                m = _T.match(part)
                if not m or not last:
                    raise AddressError(f"bad theorem3 address {v!r}")
                path = tuple(int(t) for t in m.group(1).split(".")) if m.group(1) else ()
                if not path and idx > 0:
                    raise AddressError(f"copy root written as T in {v!r}; use the subdividing vertex")
                segs.append(("T", path))
            if any(c >= self.n for c in segs[-1][1]):
                raise AddressError(f"child index out of range in {v!r}")
        return tuple(segs)

    def validate(self, v: VertexId) -> None:
        self._segs(v)

    def _node(self, prefix: tuple[Seg, ...], path: tuple[int, ...]) -> tuple[Seg, ...]:
        """Canonical segments of the tree position ``path`` in the copy ``prefix``."""
        if path:
            return prefix + (("T", path),)
        return prefix if prefix else (("T", ()),)

    def _as_node(self, segs):
        """(copy prefix, path) viewing a vertex as a position of its own copy."""
        last = segs[-1]
        if last[0] == "T":
            return segs[:-1], last[1]
        return segs, ()

    def is_subdividing(self, v: VertexId) -> bool:
        return self._segs(v)[-1][0] == "S"

    # -- adjacency ---------------------------------------------------------

    def _tree_children(self, segs):
        prefix, path = self._as_node(segs)
        return [prefix + (("T", path + (c,)),) for c in range(self.n)]

    def _subdividers(self, segs):
        prefix, path = self._as_node(segs)
        return [prefix + (("S", path, i, j),) for i in range(self.n) for j in range(i + 1, self.n)]

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        segs = self._segs(v)
        out = self._tree_children(segs)
        last = segs[-1]
        if last[0] == "T" and last[1]:
            prefix, path = segs[:-1], last[1]
            out.append(self._node(prefix, path[:-1]))
            c = path[-1]
            out += [prefix + (("S", path[:-1], min(c, d), max(c, d)),) for d in range(self.n) if d != c]
        elif last[0] == "S":
            prefix, (_, path, i, j) = segs[:-1], last
            out += [prefix + (("T", path + (i,)),), prefix + (("T", path + (j,)),)]
        return tuple(sorted(_fmt(s) for s in out))

    def horizontal(self, u: VertexId, w: VertexId) -> bool:
        return self.height(u) == self.height(w)

    def _height_of(self, v: VertexId) -> int:
        segs = self._segs(v)
        last = segs[-1]
        base = self._height(_fmt(segs[:-1])) if len(segs) > 1 else 0
        return base + len(last[1]) + (1 if last[0] == "S" else 0)

    def height(self, v: VertexId) -> int:
        return self._height(v)

    def level(self, v: VertexId) -> int:
        return self._height(v)

    # -- cones -------------------------------------------------------------

    def cone_parent(self, v: VertexId) -> VertexId | None:
        segs = self._segs(v)
        last = segs[-1]
        if last[0] == "T":
            if not last[1]:
                return None
            return _fmt(self._node(segs[:-1], last[1][:-1]))
        return _fmt(self._node(segs[:-1], last[1]))

    def cone_children(self, v: VertexId) -> tuple[VertexId, ...]:
        segs = self._segs(v)
        return tuple(_fmt(s) for s in self._tree_children(segs) + self._subdividers(segs))

    def in_cone(self, a: VertexId, x: VertexId) -> bool:
        steps = self._height(x) - self._height(a)
        if steps < 0:
            return False
        y = x
        for _ in range(steps):
            y = self.cone_parent(y)
        return y == a

    def cone_boundary(self, v: VertexId) -> tuple[VertexId, ...]:
        segs = self._segs(v)
        own = {_fmt(s) for s in self._tree_children(segs)}
        return tuple(w for w in self.neighbors(v) if w not in own)

    # -- the regions C_s -----------------------------------------------------

    def endpoints(self, s: VertexId) -> tuple[VertexId, VertexId]:
        segs = self._segs(s)
        last = segs[-1]
        if last[0] != "S":
            raise AddressError(f"{s!r} is not a subdividing vertex")
        _, path, i, j = last
        return _fmt(segs[:-1] + (("T", path + (i,)),)), _fmt(segs[:-1] + (("T", path + (j,)),))

    def c_s(self, s: VertexId) -> Region:
        """Up-closure of {t, s, t'} with the edges ts and st'; separator = its neighbourhood."""
        t, t2 = self.endpoints(s)
        inside = {s, t, t2}
        sep = set()
        for x in inside:
            sep.update(w for w in self.cone_boundary(x) if w not in inside)
        return Region(frozenset(sep), s)

    def first_subdivider(self, t: VertexId) -> VertexId:
        """The least subdividing vertex horizontally adjacent to tree vertex ``t``."""
        cands = [w for w in self.neighbors(t) if self.is_subdividing(w) and self.horizontal(t, w)]
        if not cands:
            raise AddressError(f"{t!r} has no horizontal edges")
        return min(cands)

    # -- ends --------------------------------------------------------------

    def branch_tokens(self) -> list[str]:
        return [str(c) for c in range(self.n)] + [
            f"{i}-{j}" for i in range(self.n) for j in range(i + 1, self.n)
        ]

    def child_by_token(self, v: VertexId, token: str) -> VertexId:
        segs = self._segs(v)
        prefix, path = self._as_node(segs)
        if "-" in token:
            i, j = map(int, token.split("-"))
            return _fmt(prefix + (("S", path, i, j),))
        return _fmt(prefix + (("T", path + (int(token),)),))

    def canonical_ray(self, end: EndId) -> Iterator[VertexId]:
        """A ray of the end whose vertical edges all go upwards."""
        prev = None
        for x in self.end_branch(end):
            if prev is not None and self.is_subdividing(x) and self.cone_parent(x) == prev:
                yield self.endpoints(x)[0]
            yield x
            prev = x

    def defining_sequence(self, end: EndId) -> Iterator[Region]:
        """Regions C_s along the canonical ray.

        A subdividing vertex s on the ray contributes C_s; a tree vertex left
        by a vertical edge contributes C_s for its least horizontal neighbour s.
        """
        ray = self.canonical_ray(end)
        x = next(ray)
        for nxt in ray:
            if self.is_subdividing(x):
                yield self.c_s(x)
            elif self._segs(x)[-1][1] and self.cone_parent(nxt) == x and not self.is_subdividing(nxt):
                yield self.c_s(self.first_subdivider(x))
            x = nxt

    def nested_family(self) -> Iterator[Region]:
        # the C_s are not nested; only plain cones are offered here
        return super().nested_family()

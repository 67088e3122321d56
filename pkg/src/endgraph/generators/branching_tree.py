"""The k-branching tree T_k.

Address grammar: ``r`` is the root, ``r.i.j...`` the vertex reached by the
child indices ``i, j, ...`` (each in ``0..k-1``).  End tokens are child
indices; the end ``"0.1|2"`` follows children 0, 1 and then 2 forever.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from ..graph_core import AddressError, VertexId
from ..regions import Region
from .base import EndId, Family


class BranchingTree(Family):
    name = "branching_tree"

    def __init__(self, spec):
        super().__init__(spec)
        self._path = lru_cache(maxsize=None)(self._parse)

    @property
    def root(self) -> VertexId:
        return "r"

    def _parse(self, v: VertexId) -> tuple[int, ...]:
        if not isinstance(v, str) or not (v == "r" or v.startswith("r.")):
            raise AddressError(f"bad branching_tree address {v!r}")
        if v == "r":
            return ()
        try:
            path = tuple(int(t) for t in v[2:].split("."))
        except ValueError:
            raise AddressError(f"bad branching_tree address {v!r}") from None
        if any(not 0 <= i < self.k for i in path) or v != _fmt(path):
            raise AddressError(f"bad branching_tree address {v!r}")
        return path

    def validate(self, v: VertexId) -> None:
        self._path(v)

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        path = self._path(v)
        out = [_fmt(path + (i,)) for i in range(self.k)]
        if path:
            out.append(_fmt(path[:-1]))
        return tuple(sorted(out))

    def level(self, v: VertexId) -> int:
        return len(self._path(v))

    def cone_parent(self, v: VertexId) -> VertexId | None:
        path = self._path(v)
        return _fmt(path[:-1]) if path else None

    def cone_children(self, v: VertexId) -> tuple[VertexId, ...]:
        path = self._path(v)
        return tuple(_fmt(path + (i,)) for i in range(self.k))

    def cone_boundary(self, v: VertexId) -> tuple[VertexId, ...]:
        p = self.cone_parent(v)
        return (p,) if p is not None else ()

    def in_cone(self, a: VertexId, x: VertexId) -> bool:
        self._path(a)
        self._path(x)
        return x == a or x.startswith(a + ".")

    def branch_tokens(self) -> list[str]:
        return [str(i) for i in range(self.k)]

    def child_by_token(self, v: VertexId, token: str) -> VertexId:
        return _fmt(self._path(v) + (int(token),))

    def defining_sequence(self, end: EndId) -> Iterator[Region]:
        """Up-closure of ``t`` together with ``t^-``, never taking ``t^-`` as the root."""
        branch = self.end_branch(end)
        next(branch)
        next(branch)
        for t in branch:
            yield self.upclosure_with_parent(t)

    def upclosure_with_parent(self, t: VertexId) -> Region:
        """Region ``{t^-} + up-closure(t)`` with separator ``N`` of it."""
        path = self._path(t)
        if len(path) < 2:
            raise AddressError("t^- must not be the root")
        t_minus = path[:-1]
        sep = {_fmt(t_minus[:-1])}
        sep.update(_fmt(t_minus + (i,)) for i in range(self.k) if i != path[-1])
        return Region(frozenset(sep), t)


def _fmt(path: tuple[int, ...]) -> VertexId:
    return "r" if not path else "r." + ".".join(map(str, path))

from __future__ import annotations

import itertools
from typing import Iterator

from ..graph_core import AddressError, DomainError, FamilySpec, Oracle, VertexId
from ..regions import Region

EndId = str


class Family(Oracle):
    """A built-in infinite family with cone structure and named ends.

    Every family is connected, locally finite and comes with a cone tree
    (``cone_parent``/``cone_children``) whose cones are infinite.  Ends are
    named by eventually periodic branches of the cone tree, encoded as
    ``"prefix|period"`` token lists (family-specific tokens).
    """

    has_cones = True
    # canonical defining sequences look alike from some index on, so a scan
    # that finds no good region certifies that none exists
    self_similar = True

    def __init__(self, spec: FamilySpec):
        self.spec = spec
        self.k = spec.get("k", 3)
        if self.k < 1:
            raise DomainError("k must be at least 1")

    @property
    def params(self) -> dict[str, int]:
        return dict(self.spec.params)

    def cone_children(self, v: VertexId) -> tuple[VertexId, ...]:
        raise NotImplementedError

    def cone_boundary(self, v: VertexId) -> tuple[VertexId, ...]:
        return tuple(w for w in self.neighbors(v) if not self.in_cone(v, w))

    # -- ends -----------------------------------------------------------

    def branch_tokens(self) -> list[str]:
        """Tokens that select a cone child, in canonical order."""
        raise NotImplementedError

    def child_by_token(self, v: VertexId, token: str) -> VertexId:
        raise NotImplementedError

    def parse_end(self, end: EndId) -> tuple[tuple[str, ...], tuple[str, ...]]:
        if end.count("|") != 1:
            raise AddressError(f"end {end!r} must look like 'prefix|period'")
        pre, per = end.split("|")
        prefix = tuple(t for t in pre.split(".") if t)
        period = tuple(t for t in per.split(".") if t)
        if not period:
            raise AddressError(f"end {end!r} has an empty period")
        valid = set(self.branch_tokens())
        bad = [t for t in prefix + period if t not in valid]
        if bad:
            raise AddressError(f"end {end!r} uses unknown tokens {bad}")
        return prefix, period

    def end_branch(self, end: EndId) -> Iterator[VertexId]:
        """Cone-tree vertices along the end's branch, starting at the root."""
        prefix, period = self.parse_end(end)
        v = self.root
        yield v
        for tok in itertools.chain(prefix, itertools.cycle(period)):
            v = self.child_by_token(v, tok)
            yield v

    def canonical_ray(self, end: EndId) -> Iterator[VertexId]:
        return self.end_branch(end)

    def ends(self) -> Iterator[EndId]:
        """Eventually periodic ends, by increasing description length."""
        toks = self.branch_tokens()
        for n in itertools.count(1):
            for plen in range(n):
                for pre in itertools.product(toks, repeat=plen):
                    for per in itertools.product(toks, repeat=n - plen):
                        if not _primitive(per) or (pre and pre[-1] == per[-1]):
                            continue
                        yield ".".join(pre) + "|" + ".".join(per)

    def defining_sequence(self, end: EndId) -> Iterator[Region]:
        raise NotImplementedError

    def nested_family(self) -> Iterator[Region]:
        """Cone regions of non-root vertices in breadth-first order."""
        frontier = [self.root]
        while frontier:
            nxt = []
            for v in frontier:
                for c in self.cone_children(v):
                    yield Region(frozenset(self.cone_boundary(c)), c)
                    nxt.append(c)
            frontier = nxt


def _primitive(word: tuple) -> bool:
    n = len(word)
    return not any(n % d == 0 and word == word[:d] * (n // d) for d in range(1, n))


def cone_region(fam: Family, v: VertexId) -> Region:
    return Region(frozenset(fam.cone_boundary(v)), v)

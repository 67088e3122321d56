import itertools

import networkx as nx
import pytest

from endgraph.ends import check_defining_prefix
from endgraph.generators import canonical_nested_family, make_graph
from endgraph.graph_core import AddressError, DomainError, ball, truncation
from endgraph.regions import (
    Answer,
    Nesting,
    complement_connected,
    component,
    min_out_degree,
    nestedness,
    out_degrees,
    vertex_boundary,
)

ALL = [
    ("branching_tree", {"k": 2}),
    ("branching_tree", {"k": 3}),
    ("leveled_tree_cycles", {"k": 3}),
    ("leveled_tree_cycles", {"k": 4}),
    ("theorem3", {"k": 3}),
    ("clique_ray", {"k": 3}),
    ("clique_ray", {"k": 3, "rays": 2}),
    ("clique_ray", {"k": 3, "rays": 2, "cross": 2}),
]


def interior(w):
    return [v for v in w.vertices if not w.boundary(v)]


def test_branching_tree_degrees():
    g = make_graph("branching_tree", k=3)
    w = ball(g, "r", 4)
    assert g.degree("r") == 3
    assert all(w.true_degree[v] == 4 for v in w.vertices if v != "r")


@pytest.mark.parametrize("k", [3, 4, 5])
def test_theorem3_min_degree_at_least_k(k):
    g = make_graph("theorem3", k=k)
    w = truncation(g, 3)
    inner = interior(w)
    assert inner
    assert min(w.degree(v) for v in inner) >= k
    assert min(w.true_degree.values()) >= k


def test_theorem3_subdividing_vertices():
    g = make_graph("theorem3", k=3)
    fam = g.oracle
    for s in ["S:0-1", "S2.1:0-3", "S:0-1/S1:2-3"]:
        horiz = [w for w in g.neighbors(s) if fam.horizontal(s, w)]
        up = [w for w in g.neighbors(s) if fam.height(w) == fam.height(s) + 1]
        assert sorted(horiz) == sorted(fam.endpoints(s))
        assert len(up) == fam.k + 1


@pytest.mark.parametrize("s", ["S:0-1", "S:2-3", "S1:0-2", "S3.3:1-2", "S:0-1/S:1-3", "S:0-1/S2:0-3"])
def test_theorem3_boundary_edges_of_c_s(s):
    g = make_graph("theorem3", k=3)
    fam = g.oracle
    r = fam.c_s(s)
    assert vertex_boundary(g, r) == set(fam.endpoints(s))
    for t in fam.endpoints(s):
        out = [w for w in g.neighbors(t) if w in r.separator]
        vertical = [w for w in out if not fam.horizontal(t, w)]
        assert len(vertical) == 1
        assert len(out) - 1 == fam.k - 1
    assert min_out_degree(g, r) == fam.k
    assert complement_connected(g, r) is Answer.YES


@pytest.mark.parametrize("end", ["|0", "|1-2", "0.2|3.0-1", "|0-1.2"])
def test_theorem3_ray_tails_lie_in_c_s(end):
    g = make_graph("theorem3", k=3)
    fam = g.oracle
    ray = list(itertools.islice(fam.canonical_ray(end), 40))
    for r in itertools.islice(fam.defining_sequence(end), 8):
        comp = component(g, r)
        inside = [comp.contains(g, x) for x in ray]
        first = inside.index(True)
        assert all(inside[first:]), (end, r.seed)


def test_theorem3_canonical_ray_goes_upward():
    g = make_graph("theorem3", k=3)
    fam = g.oracle
    ray = list(itertools.islice(fam.canonical_ray("|0-1"), 20))
    for x, y in zip(ray, ray[1:]):
        assert y in g.neighbors(x)
        assert fam.height(y) >= fam.height(x)


def test_leveled_graph_is_planar_with_degrees_at_least_k():
    g = make_graph("leveled_tree_cycles", k=4)
    w = truncation(g, 4)
    assert nx.check_planarity(w.to_networkx())[0]
    assert min(w.true_degree.values()) >= 4
    assert list(g.oracle.ends()) == ["*"]


def test_leveled_needs_k_two():
    with pytest.raises(DomainError):
        make_graph("leveled_tree_cycles", k=1)


class TestCliqueRay:
    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_tail_boundary_and_degrees(self, k):
        g = make_graph("clique_ray", k=k)
        fam = g.oracle
        for i in (1, 2, 5):
            r = fam.tail("a", i)
            assert vertex_boundary(g, r) == set(fam.clique("a", i))
            assert set(out_degrees(g, r).values()) == {2 * k - 1}
            assert complement_connected(g, r) is Answer.YES
        assert g.degree(f"a3.{k - 1}") == 3 * k - 1

    def test_cross_edge(self):
        g = make_graph("clique_ray", k=3, rays=2, cross=2)
        assert "b2.0" in g.neighbors("a2.0")
        assert "b2.1" not in g.neighbors("a2.0")

    def test_bad_parameters(self):
        with pytest.raises(DomainError):
            make_graph("clique_ray", k=3, rays=3)
        with pytest.raises(DomainError):
            make_graph("clique_ray", k=3, cross=2)

    def test_end_names(self):
        fam = make_graph("clique_ray", k=3, rays=2).oracle
        assert list(itertools.islice(fam.ends(), 4)) == ["a", "b", "a", "b"]
        with pytest.raises(AddressError):
            fam.parse_end("c")


@pytest.mark.parametrize("name,params", ALL)
def test_cone_boundary_is_neighbourhood_of_cone(name, params):
    g = make_graph(name, **params)
    for v in [x for x in ball(g, g.root, 2).vertices][:25]:
        near = ball(g, v, 3)
        cone = {x for x in near.vertices if g.in_cone(v, x)}
        seen = {w for x in cone for w in g.neighbors(x) if w not in cone and not g.in_cone(v, w)}
        assert seen <= set(g.cone_boundary(v))
        for w in g.cone_boundary(v):
            assert not g.in_cone(v, w)
            assert any(g.in_cone(v, x) for x in g.neighbors(w))
        if name == "branching_tree":
            assert set(g.cone_boundary(v)) == seen


@pytest.mark.parametrize("name,params", ALL)
def test_cone_parent_chain_matches_in_cone(name, params):
    g = make_graph(name, **params)
    for x in ball(g, g.root, 2).vertices:
        chain = []
        y = x
        while y is not None:
            chain.append(y)
            y = g.cone_parent(y)
        assert chain[-1] == g.root
        for a in ball(g, g.root, 1).vertices:
            assert g.in_cone(a, x) == (a in chain)


@pytest.mark.parametrize("name,params", ALL)
def test_nested_family_is_pairwise_nested(name, params):
    g = make_graph(name, **params)
    # leveled regions have a whole level as separator, so keep that prefix short
    regions = list(itertools.islice(canonical_nested_family(g), 8 if name == "leveled_tree_cycles" else 25))
    for a, b in itertools.combinations(regions, 2):
        assert nestedness(g, a, b).relation not in (Nesting.CROSSING, Nesting.UNKNOWN)


def test_theorem3_c_s_family_is_not_nested():
    g = make_graph("theorem3", k=3)
    fam = g.oracle
    assert nestedness(g, fam.c_s("S:0-1"), fam.c_s("S:0-2")).relation is Nesting.CROSSING


@pytest.mark.parametrize("name,params", ALL)
def test_defining_sequences_shrink_and_vanish(name, params):
    g = make_graph(name, **params)
    fam = g.oracle
    for end in itertools.islice(fam.ends(), 3):
        regions = list(itertools.islice(fam.defining_sequence(end), 10))
        check = check_defining_prefix(g, regions, radii=[0, 1, 2])
        assert check.strictly_nested, end
        assert all(i is not None for i in check.vanishing.values()), (end, check.vanishing)


@pytest.mark.parametrize("name,params", ALL)
def test_ends_are_distinct_and_parse(name, params):
    fam = make_graph(name, **params).oracle
    ends = list(itertools.islice(fam.ends(), 30))
    assert len(set(ends)) == len(set(ends[: len(set(ends))]))
    for e in ends:
        fam.parse_end(e)

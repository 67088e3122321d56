import copy
import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endgraph.ends import Mode
from endgraph.extract_theorem2 import extract
from endgraph.generators import canonical_end_oracle, make_graph
from endgraph.graph_core import DomainError, Window, ball, truncation
from endgraph.verify import (
    WindowTooLarge,
    brute_densest,
    brute_min_degree,
    check_certificate,
    densest_subgraph,
    highest_vertex_check,
    highest_vertex_holds,
    k_core,
    peeling_trace,
)


def from_nx(h):
    h = nx.convert_node_labels_to_integers(h)
    vs = [f"v{i:02d}" for i in h.nodes]
    es = [(f"v{u:02d}", f"v{v:02d}") for u, v in h.edges]
    deg = {f"v{i:02d}": d for i, d in h.degree()}
    return Window.build(vs, es, deg)


@st.composite
def windows(draw, max_n=12):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(p for p, k in zip(pairs, keep) if k)
    return from_nx(h)


def test_cycle_and_path():
    assert len(k_core(from_nx(nx.cycle_graph(10)), 2)) == 10
    assert len(k_core(from_nx(nx.path_graph(10)), 2)) == 0


def test_small_densest():
    assert densest_subgraph(from_nx(nx.complete_graph(4)))[1] == 3
    assert densest_subgraph(from_nx(nx.star_graph(5)))[1] == Fraction(5, 3)
    sub, d = densest_subgraph(from_nx(nx.disjoint_union(nx.complete_graph(5), nx.path_graph(4))))
    assert d == 4 and len(sub) == 5
    assert densest_subgraph(from_nx(nx.empty_graph(3)))[1] == 0


def test_brute_examples():
    assert brute_min_degree(from_nx(nx.cycle_graph(5)), 2)
    assert not brute_min_degree(from_nx(nx.balanced_tree(2, 2)), 2)


def test_size_limits():
    with pytest.raises(WindowTooLarge):
        brute_min_degree(from_nx(nx.path_graph(13)), 1)
    with pytest.raises(WindowTooLarge):
        densest_subgraph(from_nx(nx.path_graph(2001)))


@settings(max_examples=200, deadline=None)
@given(windows(), st.integers(min_value=1, max_value=5))
def test_k_core_matches_brute_force(w, k):
    assert (len(k_core(w, k)) > 0) == brute_min_degree(w, k)


@settings(max_examples=150, deadline=None)
@given(windows(), st.integers(min_value=1, max_value=5))
def test_k_core_properties(w, k):
    core = k_core(w, k)
    assert k_core(core, k) == core
    assert set(k_core(w, k + 1).vertices) <= set(core.vertices)
    if len(core):
        assert core.min_degree() >= k
    trace = peeling_trace(w, k)
    assert set(trace) | set(core.vertices) == set(w.vertices)
    assert not set(trace) & set(core.vertices)


@settings(max_examples=100, deadline=None)
@given(windows(max_n=10))
def test_densest_matches_enumeration(w):
    sub, d = densest_subgraph(w)
    assert d == brute_densest(w)
    assert sub.average_degree() == d


@pytest.mark.parametrize("k", [3, 4])
def test_theorem3_windows_have_empty_three_core(k):
    g = make_graph("theorem3", k=k)
    w = truncation(g, 3)
    assert len(k_core(w, 3)) == 0
    assert len(k_core(ball(g, "S:0-1/T0", 3), 3)) == 0


def test_highest_vertex_check():
    g = make_graph("theorem3", k=3)
    assert highest_vertex_check(g, ball(g, "T", 3), samples=100)
    single = ball(g, "T0", 0)
    assert highest_vertex_holds(g, single)
    with pytest.raises(DomainError):
        highest_vertex_check(make_graph("branching_tree", k=2), ball(make_graph("branching_tree", k=2), "r", 2))


def test_highest_vertex_holds_detects_violation():
    # K4 on a horizontal level of theorem3 vertices would break the argument;
    # fake one by taking a window whose top vertices have degree three
    g = make_graph("theorem3", k=3)
    top = ["T0", "T1", "T2", "T3"]
    w = Window.build(top, list(itertools.combinations(top, 2)), {v: 8 for v in top})
    assert not highest_vertex_holds(g, w)


class TestCertificate:
    g = make_graph("clique_ray", k=3)
    report = extract(g, canonical_end_oracle(g), Mode.min_degree(3)).to_json()

    def test_valid(self):
        assert check_certificate(self.report, self.g)

    def test_vertex_deleted(self):
        bad = copy.deepcopy(self.report)
        v = bad["H"]["vertices"].pop()
        bad["H"]["edges"] = [e for e in bad["H"]["edges"] if v not in e]
        del bad["H"]["degrees"][v]
        assert not check_certificate(bad, self.g)

    def test_degree_tampered(self):
        bad = copy.deepcopy(self.report)
        first = bad["H"]["vertices"][0]
        bad["H"]["degrees"][first] += 1
        assert not check_certificate(bad, self.g)

    def test_claim_rejudged(self):
        bad = copy.deepcopy(self.report)
        bad["mode"]["k"] = 50
        assert not check_certificate(bad, self.g)

    def test_garbage(self):
        assert not check_certificate({}, self.g)

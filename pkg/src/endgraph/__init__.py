"""Ends, regions and finite dense subgraphs of locally finite infinite graphs."""

from .ends import EndOracle, Mode, OracleExhausted, good_region_for, lives_in, region_goodness
from .extract_nested import assemble_H, corollary5_nest, cover_ends, disjointify, extract4, residual
from .extract_theorem2 import extract, init_S0, intro_search, step
from .generators import canonical_end_oracle, canonical_nested_family, make_graph
from .graph_core import GraphHandle, Window, ball, induced_window, truncation
from .regions import (
    Answer,
    Budget,
    BudgetExhausted,
    Nesting,
    Region,
    avg_out_degree,
    complement_connected,
    min_out_degree,
    nestedness,
    same_component,
    vertex_boundary,
)
from .verify import brute_min_degree, check_certificate, densest_subgraph, highest_vertex_check, k_core

__all__ = [
    "Answer", "Budget", "BudgetExhausted", "EndOracle", "GraphHandle", "Mode", "Nesting", "OracleExhausted",
    "Region", "Window", "assemble_H", "avg_out_degree", "ball", "brute_min_degree", "canonical_end_oracle",
    "canonical_nested_family", "check_certificate", "complement_connected", "corollary5_nest", "cover_ends",
    "densest_subgraph", "disjointify", "extract", "extract4", "good_region_for", "highest_vertex_check",
    "induced_window", "init_S0", "intro_search", "k_core", "lives_in", "make_graph", "min_out_degree",
    "nestedness", "region_goodness", "residual", "same_component", "step", "truncation", "vertex_boundary",
]

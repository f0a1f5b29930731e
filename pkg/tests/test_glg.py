from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given

from oracles import all_graphs, connected_glg_codes, glg_by_construction, sympy_counts
from salemgraphs.exact_spectra import char_poly, count_roots_below
from salemgraphs.glg import (
    check_partition, gcp, generalized_line_graph, is_glg, is_line_graph, recognize_glg, recognize_glg_all,
)
from salemgraphs.graph_core import (
    canonical_form, complete_graph, cycle_graph, empty_graph, graph_from_edges, is_connected, is_isomorphic,
    path_graph, star_graph,
)
from test_graph_core import graphs

CLAW = star_graph(3)
DIAMOND = gcp(4, 1)


def test_gcp_examples():
    assert gcp(3, 1) == path_graph(3) or is_isomorphic(gcp(3, 1), path_graph(3))
    assert is_isomorphic(gcp(4, 2), cycle_graph(4))
    assert gcp(2, 0) == complete_graph(2)
    with pytest.raises(ValueError):
        gcp(4, 3)


def test_generalized_line_graph_examples():
    assert generalized_line_graph(path_graph(3), [0, 0, 0]) == complete_graph(2)
    assert is_isomorphic(generalized_line_graph(complete_graph(3), [0, 0, 0]), complete_graph(3))
    assert generalized_line_graph(graph_from_edges(1, []), [1]) == empty_graph(2)
    with pytest.raises(ValueError):
        generalized_line_graph(path_graph(3), [0, 0])


def test_generalized_line_graph_matches_construction():
    rng = random.Random(1)
    for level in all_graphs(5):
        for h in level.values():
            a = [rng.randint(0, 2) for _ in range(h.n)]
            assert generalized_line_graph(h, a) == glg_by_construction(h, a)


def test_recognize_examples():
    part = recognize_glg(complete_graph(3))
    assert part is not None and len(part.blocks) == 1 and check_partition(complete_graph(3), part)
    with pytest.raises(ValueError):
        recognize_glg(empty_graph(2))


def test_claw_is_generalized_line_graph():
    # the claw is L(P3; (1,0,0)): one edge meets a pendant 2-cycle and the other edge
    assert is_isomorphic(generalized_line_graph(path_graph(3), [1, 0, 0]), CLAW)
    part = recognize_glg(CLAW)
    assert part is not None and check_partition(CLAW, part)
    assert not is_line_graph(CLAW)


def test_diamond_is_line_graph():
    # K4 minus an edge is the line graph of the paw (a triangle with a pendant edge)
    paw = graph_from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    assert is_isomorphic(generalized_line_graph(paw, [0] * 4), DIAMOND)
    assert is_line_graph(DIAMOND)
    assert is_line_graph(complete_graph(3))


def test_recognition_matches_constructive_oracle():
    glg = connected_glg_codes(6)
    line = connected_glg_codes(6, line_only=True)
    for level in all_graphs(6)[1:]:
        for g in level.values():
            if not is_connected(g):
                continue
            code = canonical_form(g)
            assert (recognize_glg(g) is not None) == (code in glg)
            assert is_line_graph(g) == (code in line)


def test_round_trip_trees():
    for level in all_graphs(6)[1:]:
        for t in level.values():
            if not is_connected(t) or t.num_edges() != t.n - 1:
                continue
            for a in itertools.product(range(4), repeat=t.n):
                if sum(a) > 3:
                    continue
                g = generalized_line_graph(t, a)
                if g.n == 0 or not is_connected(g):
                    continue
                part = recognize_glg(g)
                assert part is not None and check_partition(g, part)


@given(graphs(max_n=8, min_n=1))
def test_glg_least_eigenvalue(g):
    if not is_connected(g):
        return
    part = recognize_glg(g)
    if part is not None:
        assert check_partition(g, part)
        assert count_roots_below(char_poly(g), -2) == 0
        assert sympy_counts(g)[1] == 0
    if is_line_graph(g):
        assert part is not None


def test_partition_clauses():
    for g in (complete_graph(4), DIAMOND, gcp(5, 2), cycle_graph(6), CLAW):
        for part in recognize_glg_all(g):
            assert check_partition(g, part)
            for v in range(g.n):
                blocks = part.blocks_at(v)
                assert len(blocks) <= 2
                if len(blocks) == 2:
                    for b in blocks:
                        assert all(g.has_edge(v, u) for u in b.vertices if u != v)
            for b1, b2 in itertools.combinations(part.blocks, 2):
                assert len(b1.vertices & b2.vertices) <= 1


def test_m2_has_two_partitions():
    m2 = gcp(4, 1)
    parts = recognize_glg_all(m2)
    assert len({tuple(sorted((tuple(sorted(b.vertices)), b.matching_size) for b in p.blocks))
                for p in parts}) >= 2


def test_is_glg_componentwise():
    g = graph_from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (3, 5), (3, 6)])
    assert is_glg(g)
    assert not is_glg(graph_from_edges(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6)]))

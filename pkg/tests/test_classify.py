from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from oracles import random_connected, random_salem_graphs, sympy_counts
from salemgraphs.classify import (
    Kind, a_tilde, cyclotomic_structural_oracle, d_tilde, e6_tilde, e7_tilde, e8_tilde, is_cyclotomic,
    is_one_salem, is_salem, m_salem_index, m_salem_index_bruteforce, mah_partition, one_vertex_witnesses,
    salem_classify, smith_graphs,
)
from salemgraphs.exact_spectra import char_poly, count_roots_above, count_roots_below, integer_largest_root
from salemgraphs.families import FamilyInstance, PathSpec, build_family
from salemgraphs.graph_core import (
    complete_graph, cycle_graph, empty_graph, graph_from_edges, induced_subgraph, is_bipartite,
    is_connected, path_graph, star_graph,
)
from test_graph_core import graphs


def _sm(name, *lengths):
    return build_family(FamilyInstance(name, tuple(PathSpec(k, False) for k in lengths)))


def test_smith_graph_shapes():
    assert [e6_tilde().n, e7_tilde().n, e8_tilde().n] == [7, 8, 9]
    assert a_tilde(4) == cycle_graph(5)
    assert d_tilde(4) == star_graph(4) or sorted(d_tilde(4).degrees()) == [1, 1, 1, 1, 4]
    assert d_tilde(5).n == 6


def test_is_cyclotomic_examples():
    for g in [e6_tilde(), e7_tilde(), e8_tilde()] + [a_tilde(n) for n in range(2, 11)] + \
            [d_tilde(n) for n in range(4, 11)]:
        assert is_cyclotomic(g)
    assert not is_cyclotomic(complete_graph(4))
    assert is_cyclotomic(empty_graph(0))


def test_smith_graphs_are_maximal():
    for h in smith_graphs(10):
        for k in range(1, 1 << h.n):
            g = graph_from_edges(h.n + 1, h.edges() + [(v, h.n) for v in range(h.n) if k >> v & 1])
            assert not is_cyclotomic(g)


def test_structural_oracle_examples():
    assert cyclotomic_structural_oracle(path_graph(7))
    assert cyclotomic_structural_oracle(cycle_graph(5))
    assert not cyclotomic_structural_oracle(complete_graph(4))
    with pytest.raises(ValueError):
        cyclotomic_structural_oracle(empty_graph(2))


def test_cyclotomic_agrees_with_smith_on_all_connected_small_graphs():
    from oracles import all_graphs
    for level in all_graphs(7):
        for g in level.values():
            if is_connected(g):
                assert is_cyclotomic(g) == cyclotomic_structural_oracle(g)


@given(graphs(max_n=8))
def test_cyclotomic_matches_sympy(g):
    assert is_cyclotomic(g) == (sympy_counts(g) == (0, 0))


def test_salem_classify_examples():
    tol = Fraction(1, 2 ** 30)
    c = salem_classify(complete_graph(4), tol)
    assert c.kind is Kind.SALEM_TRIVIAL and c.lambda1.contains(3)
    golden = (3 + 5 ** 0.5) / 2
    assert float(c.tau.lo) <= golden <= float(c.tau.hi)
    assert salem_classify(cycle_graph(4)).kind is Kind.CYCLOTOMIC
    assert salem_classify(_sm("G2", 0, 2)).kind is Kind.SALEM_NONTRIVIAL
    assert salem_classify(empty_graph(0)).kind is Kind.CYCLOTOMIC


def test_bipartite_triviality():
    # K_{1,5}: lambda1^2 = 5 is an integer, so trivial although lambda1 is irrational
    c = salem_classify(star_graph(5))
    assert c.kind is Kind.SALEM_TRIVIAL and c.bipartite
    # K_{1,4} + pendant on a leaf: bipartite Salem with lambda1^2 irrational
    g = graph_from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)])
    assert salem_classify(g).kind is Kind.SALEM_NONTRIVIAL


def test_bipartite_salem_may_have_eigenvalue_below_minus_two():
    # a bipartite graph has a symmetric spectrum, so -lambda1 < -2 is allowed
    g = star_graph(5)
    assert sympy_counts(g) == (1, 1) and is_salem(g)


@given(graphs(max_n=8))
def test_classification_invariants(g):
    c = salem_classify(g)
    above, below = sympy_counts(g)
    bip = is_bipartite(g) is not None
    assert (c.kind is Kind.CYCLOTOMIC) == (above == 0 and below == 0)
    if c.kind.is_salem:
        assert above == 1 and (bip or below == 0)
        assert c.tau is not None and c.tau.lo > 1
        p = char_poly(g)
        assert count_roots_above(p, 2) == 1
        dmax = max(g.degrees())
        if bip:
            import sympy
            lam2 = sympy.Poly(list(reversed(list(p.coeffs))), sympy.Symbol("x"))
            roots = [r for r in sympy.real_roots(lam2)]
            trivial = max(roots) ** 2 == int(max(roots) ** 2)
        else:
            trivial = integer_largest_root(p, dmax) is not None
        assert (c.kind is Kind.SALEM_TRIVIAL) == bool(trivial)
    elif c.kind is Kind.NOT_SALEM:
        assert above != 1 or (not bip and below > 0)


def test_m_index_examples():
    assert m_salem_index(complete_graph(4)) == 1
    assert m_salem_index(complete_graph(5)) == 2
    with pytest.raises(ValueError):
        m_salem_index(graph_from_edges(8, [(i, j) for i in range(4) for j in range(i)]))
    with pytest.raises(ValueError):
        m_salem_index(cycle_graph(4))


def test_m_index_rejects_disconnected():
    g = graph_from_edges(5, [(i, j) for i in range(4) for j in range(i)])
    assert is_salem(g)
    with pytest.raises(ValueError):
        m_salem_index(g)


def test_m_index_against_bruteforce():
    rng = random.Random(2)
    for g in random_salem_graphs(rng, 150):
        assert m_salem_index(g) == m_salem_index_bruteforce(g)


def test_m_index_hereditary():
    rng = random.Random(8)
    for g in random_salem_graphs(rng, 120):
        if m_salem_index(g) != 1:
            continue
        for w in range(g.n):
            h = g.remove_vertices([w])
            assert is_cyclotomic(h) or one_vertex_witnesses(h)


def test_one_salem():
    assert is_one_salem(complete_graph(4))
    assert not is_one_salem(complete_graph(5))
    assert not is_one_salem(cycle_graph(5))


def _check_mah(g, part):
    assert part.M | part.A | part.H == frozenset(range(g.n))
    assert not (part.M & part.A or part.M & part.H or part.A & part.H)
    core = induced_subgraph(g, sorted(part.M))
    assert count_roots_above(char_poly(core), 2) >= 1
    for v in part.M:
        sub = induced_subgraph(g, sorted(part.M - {v}))
        assert count_roots_above(char_poly(sub), 2) == 0
    for v in part.A | part.H:
        assert (v in part.A) == any(g.has_edge(v, u) for u in part.M)
    assert is_cyclotomic(induced_subgraph(g, sorted(part.H)))


def test_mah_examples():
    p = mah_partition(complete_graph(4))
    assert p.M == frozenset(range(4)) and not p.A and not p.H
    m1 = graph_from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    p = mah_partition(m1)
    assert p.M == frozenset(range(4)) and not p.A and not p.H
    g = _sm("G2", 0, 3)
    _check_mah(g, mah_partition(g))
    g = _sm("G2", 4, 3)
    p = mah_partition(g)
    _check_mah(g, p)
    assert p.H
    with pytest.raises(ValueError):
        mah_partition(cycle_graph(5))


def test_mah_invariants_random():
    rng = random.Random(4)
    for g in random_salem_graphs(rng, 150):
        if is_bipartite(g) is None:
            _check_mah(g, mah_partition(g))

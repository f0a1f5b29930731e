from __future__ import annotations

import itertools
import json
from collections import Counter

import pytest

from salemgraphs import families as fam
from salemgraphs.classify import is_cyclotomic, is_one_salem, m_salem_index, salem_classify
from salemgraphs.exact_spectra import char_poly, count_roots_above, count_roots_below
from salemgraphs.families import (
    BipComponentSpec, FamilyInstance, PathSpec, attach_choices, attachable_gcps, automorphisms,
    bipartite_component_shapes, bipartite_exception_check, build_bipartite, build_family,
    enumerate_family_instances, family_corpus, family_ids, grow_MA_states, hat_variants, load_catalog,
    minimal_graphs, slot_symmetries,
)
from salemgraphs.glg import gcp, recognize_glg
from salemgraphs.graph_core import (
    canonical_form, complete_graph, graph_from_edges, induced_subgraph, is_bipartite, is_connected,
    is_isomorphic, path_graph,
)

SPORADIC = [f"G{i}" for i in range(26, 32)]
INFINITE = [f"G{i}" for i in range(1, 26)]


def P(k, hat=False):
    return PathSpec(k, hat)


def named(n_edges: str, names: str) -> object:
    idx = {v: i for i, v in enumerate(names.split())}
    return graph_from_edges(len(idx), [(idx[a], idx[b]) for a, b in (e.split("-") for e in n_edges.split())])


def test_catalog_ids_and_checksum():
    assert family_ids() == [f"G{i}" for i in range(1, 32)]
    for fid in SPORADIC:
        assert load_catalog()[fid].slots == ()


def test_catalog_checksum_detects_tampering():
    from importlib import resources
    raw = json.loads(resources.files("salemgraphs").joinpath("data/families.json").read_text())
    assert len(fam.parse_catalog(raw)) == 31
    raw["families"][0]["edges"].append([0, 2])
    with pytest.raises(ValueError, match="checksum"):
        fam.parse_catalog(raw)
    with pytest.raises(ValueError):
        fam.parse_catalog(dict(raw, version=99))


def test_hat_convention_example():
    g11 = named("a-b a-c a-e a-d b-c b-d b-h", "a b c d e h")
    g11hat = named("a-b a-c a-e a-d b-c b-d b-h h-ha h-hb", "a b c d e h ha hb")
    assert is_isomorphic(build_family(FamilyInstance("G10", (P(1), P(1)))), g11)
    assert is_isomorphic(build_family(FamilyInstance("G10", (P(1), P(1, True)))), g11hat)


def test_hat_variant_total():
    assert sum(len(hat_variants(f)) for f in INFINITE) == 60


def test_parameter_bounds():
    with pytest.raises(ValueError):
        build_family(FamilyInstance("G2", (P(0), P(1))))
    with pytest.raises(ValueError):
        build_family(FamilyInstance("G1", (P(0), P(0), P(0))))
    build_family(FamilyInstance("G1", (P(0, True), P(0), P(0))))
    with pytest.raises(ValueError):
        build_family(FamilyInstance("G1", (P(1),)))
    with pytest.raises(ValueError):
        build_family(FamilyInstance("G26", (P(1),)))
    with pytest.raises(ValueError, match="unknown"):
        build_family(FamilyInstance("G99", ()))


def test_sporadic_graphs_are_one_salem_glg():
    for fid in SPORADIC:
        g = build_family(FamilyInstance(fid, ()))
        assert recognize_glg(g) is not None
        assert salem_classify(g).kind.is_salem
        assert m_salem_index(g) == 1


def test_minimal_instances_are_one_salem():
    seen = Counter()
    for inst, g in enumerate_family_instances(9, INFINITE):
        seen[inst.family] += 1
        assert is_connected(g) and is_bipartite(g) is None
        assert salem_classify(g).kind.is_salem and m_salem_index(g) == 1
        assert recognize_glg(g) is not None
        assert any(count_roots_above(char_poly(induced_subgraph(g, t)), 2) == 0
                   for t in itertools.combinations(range(g.n), 3) if all(g.has_edge(x, y) for x, y in
                                                                          itertools.combinations(t, 2)))
    assert set(seen) == set(INFINITE)


def test_instances_unique_up_to_slot_symmetry():
    insts = [inst for inst, _ in enumerate_family_instances(10)]
    assert len(insts) == len(set(insts))
    for inst in insts:
        for sg in slot_symmetries(inst.family):
            img = [None] * len(inst.params)
            for i, p in enumerate(inst.params):
                img[sg[i]] = p
            assert tuple(img) >= inst.params or tuple(img) not in {i.params for i in insts if i.family == inst.family}


def test_symmetric_instances_are_isomorphic():
    for fid in INFINITE:
        t = load_catalog()[fid]
        for sg in slot_symmetries(fid):
            params = [P(s.least(False) + 1 + i) if s.kind == "pendant" else P(s.least(False) + i)
                      for i, s in enumerate(t.slots)]
            img = [None] * len(params)
            for i, p in enumerate(params):
                img[sg[i]] = p
            try:
                g2 = build_family(FamilyInstance(fid, tuple(img)))
            except ValueError:
                continue
            assert is_isomorphic(build_family(FamilyInstance(fid, tuple(params))), g2)


def test_corpus_size_is_stable():
    assert len(family_corpus(10)) == 510


def test_automorphisms():
    assert len(automorphisms(complete_graph(4))) == 24
    assert len(automorphisms(path_graph(5))) == 2


def test_minimal_graphs():
    m = minimal_graphs()
    assert [g.num_edges() for g in m] == [4, 5, 6]
    for g in m:
        assert not is_cyclotomic(g)
        for r in range(1, g.n):
            for keep in itertools.combinations(range(g.n), r):
                h = induced_subgraph(g, keep)
                if is_connected(h):
                    assert is_cyclotomic(h)
    assert count_roots_above(char_poly(m[2]), 2) == 1 and char_poly(m[2])(3) == 0


def test_attachable_gcps():
    got = [(g.n, g.n * (g.n - 1) // 2 - g.num_edges(), k) for g, k in attachable_gcps()]
    assert got == [(2, 0, 2), (3, 1, 1), (3, 0, 3), (4, 1, 2), (4, 0, 4), (5, 2, 1)]
    assert all(not is_isomorphic(g, gcp(4, 2)) for g, _ in attachable_gcps())


def test_grow_ma_members_are_salem_with_minimal_core():
    states = grow_MA_states()
    mins = minimal_graphs()
    for st in states:
        g = st.graph
        assert count_roots_above(char_poly(g), 2) == 1 and count_roots_below(char_poly(g), -2) == 0
        assert recognize_glg(g) is not None
        core = induced_subgraph(g, range(4))
        assert any(is_isomorphic(core, m) for m in mins)
        assert any(is_cyclotomic(g.remove_vertices([v])) for v in range(4))
        # every vertex outside the core is an A-vertex, so H is empty
        assert all(any(g.has_edge(v, u) for u in range(4)) for v in range(4, g.n))
    assert max(st.graph.n for st in states) >= 11


def test_component_shapes():
    shapes = bipartite_component_shapes(10)
    for name, g in shapes.items():
        assert is_connected(g) and is_cyclotomic(g) and is_bipartite(g) is not None, name
    assert is_isomorphic(fam._d(3), path_graph(3))


def _spec(name, g, attach):
    return BipComponentSpec(name, g, frozenset(attach))


def test_build_bipartite_examples():
    e6 = bipartite_component_shapes(8)["E6"]
    # the end of a length-2 arm extends E6 to E~6
    names = {bipartite_exception_check([_spec("E6", e6, s)]) for s in attach_choices(e6) if len(s) == 1}
    assert "E~6" in names
    k1 = _spec("P1", path_graph(1), [0])
    assert bipartite_exception_check([k1] * 4) == "D~4"
    assert bipartite_exception_check([_spec("P2", path_graph(2), [0])]) == "cyclotomic"
    assert salem_classify(build_bipartite([k1] * 5)).kind.is_salem
    p5 = path_graph(5)
    assert "E~6" in {bipartite_exception_check([k1, _spec("P5", p5, s)]) for s in attach_choices(p5)}
    p4 = path_graph(4)
    assert "E~8" in {bipartite_exception_check([_spec("P4", p4, s), _spec("P4", p4, t)])
                     for s in attach_choices(p4) for t in attach_choices(p4)}


def test_build_bipartite_rejects_invalid_specs():
    with pytest.raises(ValueError):
        build_bipartite([_spec("P3", path_graph(3), [])])
    with pytest.raises(ValueError):
        build_bipartite([_spec("P3", path_graph(3), [0, 1])])
    with pytest.raises(ValueError):
        build_bipartite([_spec("K4", complete_graph(4), [0])])


def test_bipartite_soundness_small():
    for comps in fam.enumerate_bipartite(6):
        g = build_bipartite(comps)
        assert is_bipartite(g) is not None and is_connected(g)
        if not is_cyclotomic(g):
            assert is_one_salem(g) and m_salem_index(g) == 1
        else:
            assert len(comps) <= 4

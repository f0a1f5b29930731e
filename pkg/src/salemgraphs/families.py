"""Explicit constructions of 1-Salem graphs.

* The bipartite construction: a hub joined to one colour class subset S_i of
  each of several connected cyclotomic bipartite graphs H_i, with the table
  of cyclotomic outcomes.
* The minimal non-cyclotomic generalized line graphs M1, M2, M3, the GCPs
  that can be attached around them, and the closure growing M to M u A.
* The catalog of the 25 infinite families G1..G25 and the sporadic G26..G31,
  read from ``data/families.json``.  A pendant slot grows a path of the
  given number of edges; a hatted path ends in two extra leaves (a snake's
  tongue).  An internal slot joins two template vertices by a path.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterator, Sequence

from .classify import _arms, a_tilde, d_tilde, e6_tilde, e7_tilde, e8_tilde, is_cyclotomic
from .exact_spectra import eig_count_above, eig_count_below
from .glg import gcp, recognize_glg
from .graph_core import (
    CanonicalCode,
    Graph,
    canonical_form,
    complete_graph,
    cycle_graph,
    graph_from_edges,
    is_bipartite,
    is_connected,
    path_graph,
)

CATALOG_FORMAT = "salemgraphs-family-catalog"
CATALOG_VERSION = 1


# small utilities ----------------------------------------------------------

def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All automorphisms of a small graph, by backtracking."""
    deg = g.degrees()
    out = []
    image = [-1] * g.n
    used = [False] * g.n

    def rec(v: int) -> None:
        if v == g.n:
            out.append(tuple(image))
            return
        for w in range(g.n):
            if used[w] or deg[w] != deg[v]:
                continue
            if all(g.has_edge(u, v) == g.has_edge(image[u], w) for u in range(v)):
                image[v], used[w] = w, True
                rec(v + 1)
                used[w] = False
                image[v] = -1

    rec(0)
    return out


def _one_salem_with_core(h: Graph, core: Sequence[int]) -> bool:
    """Salem with some vertex of ``core`` whose deletion is cyclotomic."""
    if eig_count_above(h, 2) != 1 or eig_count_below(h, -2) != 0:
        return False
    return any(is_cyclotomic(h.remove_vertices([v])) for v in core)


# path specs and the catalog ---------------------------------------------

@dataclass(frozen=True, order=True)
class PathSpec:
    length: int
    hatted: bool = False

    def __str__(self) -> str:
        return f"{self.length}^" if self.hatted else str(self.length)


@dataclass(frozen=True)
class Slot:
    param: str
    kind: str
    at: int | None = None
    ends: tuple[int, int] | None = None
    min: int = 0
    hat: bool = False
    hat_min: int | None = None

    def least(self, hatted: bool) -> int:
        if hatted and self.hat_min is not None:
            return self.hat_min
        return self.min


@dataclass(frozen=True)
class Template:
    id: str
    n: int
    edges: tuple[tuple[int, int], ...]
    slots: tuple[Slot, ...]

    def graph(self) -> Graph:
        return graph_from_edges(self.n, self.edges)


def _catalog_digest(families: list) -> str:
    blob = json.dumps(families, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@lru_cache(maxsize=None)
def load_catalog() -> dict[str, Template]:
    raw = json.loads(resources.files("salemgraphs").joinpath("data/families.json").read_text())
    return parse_catalog(raw)


def parse_catalog(raw: dict) -> dict[str, Template]:
    """Validate format, version and checksum of a decoded catalog and build its templates."""
    if raw.get("format") != CATALOG_FORMAT or raw.get("version") != CATALOG_VERSION:
        raise ValueError("unsupported family catalog")
    if raw.get("checksum") != _catalog_digest(raw["families"]):
        raise ValueError("family catalog checksum mismatch")
    out = {}
    for rec in raw["families"]:
        slots = []
        for s in rec["slots"]:
            slots.append(Slot(s["param"], s["kind"], s.get("at"),
                              tuple(s["ends"]) if "ends" in s else None,
                              s.get("min", 0), s.get("hat", False), s.get("hat_min")))
        out[rec["id"]] = Template(rec["id"], rec["n"], tuple(tuple(e) for e in rec["edges"]), tuple(slots))
    return out


def family_ids() -> list[str]:
    return list(load_catalog())


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    params: tuple = ()

    def __str__(self) -> str:
        return f"{self.family}({','.join(str(p) for p in self.params)})"


def _instance_order(t: Template, params: Sequence[PathSpec]) -> int:
    n = t.n
    for s, p in zip(t.slots, params):
        if s.kind == "pendant":
            n += p.length + (2 if p.hatted else 0)
        else:
            n += p.length - 1
    return n


def _check_params(t: Template, params: Sequence[PathSpec]) -> None:
    if len(params) != len(t.slots):
        raise ValueError(f"{t.id} takes {len(t.slots)} parameters")
    for s, p in zip(t.slots, params):
        if p.hatted and not s.hat:
            raise ValueError(f"{t.id}: parameter {s.param} cannot carry a hat")
        if p.length < s.least(p.hatted):
            raise ValueError(f"{t.id}: parameter {s.param} must be >= {s.least(p.hatted)}")


def build_family(inst: FamilyInstance) -> Graph:
    cat = load_catalog()
    if inst.family not in cat:
        raise ValueError(f"unknown family {inst.family}")
    t = cat[inst.family]
    params = [p if isinstance(p, PathSpec) else PathSpec(int(p)) for p in inst.params]
    _check_params(t, params)
    edges = list(t.edges)
    nxt = t.n
    for s, p in zip(t.slots, params):
        if s.kind == "pendant":
            end = s.at
            for _ in range(p.length):
                edges.append((end, nxt))
                end, nxt = nxt, nxt + 1
            if p.hatted:
                edges += [(end, nxt), (end, nxt + 1)]
                nxt += 2
        else:
            u, w = s.ends
            prev = u
            for _ in range(p.length - 1):
                edges.append((prev, nxt))
                prev, nxt = nxt, nxt + 1
            edges.append((prev, w))
    return graph_from_edges(nxt, edges)


@lru_cache(maxsize=None)
def slot_symmetries(family: str) -> tuple[tuple[int, ...], ...]:
    """Permutations of slot positions induced by template automorphisms."""
    t = load_catalog()[family]
    keys = []
    for s in t.slots:
        keys.append((s.kind, frozenset([s.at]) if s.kind == "pendant" else frozenset(s.ends)))
    out = set()
    for a in automorphisms(t.graph()):
        moved = [(k, frozenset(a[x] for x in vs)) for k, vs in keys]
        if set(moved) != set(keys):
            continue
        out.add(tuple(keys.index(m) for m in moved))
    return tuple(sorted(out))


def hat_variants(family: str) -> list[tuple[bool, ...]]:
    """Hat patterns on the hat-capable slots, one per symmetry orbit."""
    t = load_catalog()[family]
    capable = [i for i, s in enumerate(t.slots) if s.hat]
    syms = slot_symmetries(family)
    reps = []
    seen = set()
    for bits in itertools.product((False, True), repeat=len(capable)):
        pattern = [False] * len(t.slots)
        for i, b in zip(capable, bits):
            pattern[i] = b
        orbit = set()
        for sg in syms:
            img = [False] * len(t.slots)
            for i, b in enumerate(pattern):
                img[sg[i]] = b
            orbit.add(tuple(img))
        if orbit & seen:
            continue
        seen |= orbit
        reps.append(tuple(pattern))
    return reps


def _slot_choices(s: Slot, budget: int) -> list[tuple[PathSpec, int]]:
    out = []
    hats = (False, True) if s.hat else (False,)
    for hatted in hats:
        for length in itertools.count(s.least(hatted)):
            cost = length + 2 * hatted if s.kind == "pendant" else length - 1
            if cost > budget:
                break
            out.append((PathSpec(length, hatted), cost))
    return out


def enumerate_family_instances(max_vertices: int, families: Sequence[str] | None = None
                               ) -> Iterator[tuple[FamilyInstance, Graph]]:
    """Every instance with at most max_vertices vertices, once per slot-symmetry orbit."""
    cat = load_catalog()
    for fid in (families if families is not None else cat):
        t = cat[fid]
        if t.n > max_vertices:
            continue
        syms = slot_symmetries(fid)

        def rec(i: int, budget: int, acc: list[PathSpec]) -> Iterator[tuple[PathSpec, ...]]:
            if i == len(t.slots):
                yield tuple(acc)
                return
            for p, cost in _slot_choices(t.slots[i], budget):
                acc.append(p)
                yield from rec(i + 1, budget - cost, acc)
                acc.pop()

        for params in rec(0, max_vertices - t.n, []):
            images = []
            for sg in syms:
                img = [None] * len(params)
                for i, p in enumerate(params):
                    img[sg[i]] = p
                try:
                    _check_params(t, img)
                except ValueError:
                    continue
                images.append(tuple(img))
            if params != min(images):
                continue
            inst = FamilyInstance(fid, params)
            yield inst, build_family(inst)


def family_corpus(max_vertices: int) -> dict[CanonicalCode, FamilyInstance]:
    out: dict[CanonicalCode, FamilyInstance] = {}
    for inst, g in enumerate_family_instances(max_vertices):
        out.setdefault(canonical_form(g), inst)
    return out


# M, A and the growth closure ----------------------------------------------

def minimal_graphs() -> list[Graph]:
    """M1 (triangle plus a pendant edge), M2 (K4 minus an edge), M3 (K4)."""
    m1 = graph_from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    m2 = graph_from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    return [m1, m2, complete_graph(4)]


def attachable_gcps() -> list[tuple[Graph, int]]:
    """The GCPs that may be attached or expanded to, with their numbers of maximal-degree vertices."""
    out = []
    for n, m in ((2, 0), (3, 1), (3, 0), (4, 1), (4, 0), (5, 2)):
        g = gcp(n, m)
        out.append((g, sum(1 for d in g.degrees() if d == n - 1)))
    return out


@dataclass(frozen=True)
class CoreGraph:
    """A graph whose vertices 0..3 form the minimal core M."""

    graph: Graph

    @property
    def core(self) -> range:
        return range(4)

    def colours(self) -> list[int]:
        return [1 if v < 4 else 0 for v in range(self.graph.n)]

    def code(self) -> CanonicalCode:
        return canonical_form(self.graph, self.colours())


def _extend(g: Graph, nbrs: Sequence[int]) -> Graph:
    n = g.n
    return graph_from_edges(n + 1, g.edges() + [(u, n) for u in nbrs])


def _accept(h: Graph) -> bool:
    return _one_salem_with_core(h, range(4)) and recognize_glg(h) is not None


@lru_cache(maxsize=None)
def grow_MA_states() -> tuple[CoreGraph, ...]:
    """All (graph, M) pairs G|M u A, up to M-preserving isomorphism.

    Starting from M1, M2, M3, vertices adjacent to M are added one at a
    time while the graph stays a 1-Salem generalized line graph.  Every
    G|M u A arises this way: its induced subgraphs containing M keep both
    properties, and each of them is connected since A-vertices touch M.
    """
    level = {CoreGraph(m).code(): CoreGraph(m) for m in minimal_graphs()}
    states = dict(level)
    while level:
        nxt: dict[CanonicalCode, CoreGraph] = {}
        for st in level.values():
            g = st.graph
            a_side = list(range(4, g.n))
            for r in range(1, 5):
                for ms in itertools.combinations(range(4), r):
                    for s in range(len(a_side) + 1):
                        for as_ in itertools.combinations(a_side, s):
                            h = _extend(g, ms + as_)
                            if not _accept(h):
                                continue
                            c = CoreGraph(h)
                            code = c.code()
                            if code not in states and code not in nxt:
                                nxt[code] = c
        states.update(nxt)
        level = nxt
    return tuple(states.values())


def grow_MA() -> set[CanonicalCode]:
    """Isomorphism classes (as plain graphs) of the graphs G|M u A."""
    return {canonical_form(st.graph) for st in grow_MA_states()}


def grow_full(max_vertices: int) -> set[CanonicalCode]:
    """Connected non-bipartite 1-Salem generalized line graphs with at most max_vertices vertices.

    Independent of the catalog: every state G|M u A is extended by vertices
    not adjacent to M, in breadth-first order, keeping the 1-Salem and
    generalized line graph properties.
    """
    level = {st.code(): st for st in grow_MA_states() if st.graph.n <= max_vertices}
    seen = dict(level)
    while level:
        nxt: dict[CanonicalCode, CoreGraph] = {}
        for st in level.values():
            g = st.graph
            if g.n >= max_vertices:
                continue
            outer = list(range(4, g.n))
            for s in range(1, len(outer) + 1):
                for nb in itertools.combinations(outer, s):
                    h = _extend(g, nb)
                    if not _accept(h):
                        continue
                    c = CoreGraph(h)
                    code = c.code()
                    if code not in seen and code not in nxt:
                        nxt[code] = c
        seen.update(nxt)
        level = nxt
    return {canonical_form(st.graph) for st in seen.values()}


# bipartite construction ----------------------------------------------------

def _d(n: int) -> Graph:
    """D_n: a path of n-2 vertices with two leaves at one end (D_3 is P_3)."""
    return _arms((1, 1, n - 3))


def bipartite_component_shapes(max_order: int) -> dict[str, Graph]:
    """Connected cyclotomic bipartite graphs with at most max_order vertices, by name."""
    out: dict[str, Graph] = {}
    for n in range(1, max_order + 1):
        out[f"P{n}"] = path_graph(n)
    for n in range(4, max_order + 1):
        out[f"D{n}"] = _d(n)
    for name, arms in (("E6", (1, 2, 2)), ("E7", (1, 2, 3)), ("E8", (1, 2, 4)),
                       ("E~6", (2, 2, 2)), ("E~7", (1, 3, 3)), ("E~8", (1, 2, 5))):
        g = _arms(arms)
        if g.n <= max_order:
            out[name] = g
    for n in range(4, max_order + 1, 2):
        out[f"C{n}"] = cycle_graph(n)
    for n in range(4, max_order):
        out[f"D~{n}"] = d_tilde(n)
    return out


@dataclass(frozen=True)
class BipComponentSpec:
    shape: str
    graph: Graph
    attach: frozenset[int]

    def validate(self) -> None:
        if not self.attach:
            raise ValueError("attach set must be nonempty")
        if any(not 0 <= v < self.graph.n for v in self.attach):
            raise ValueError("attach vertex out of range")
        if not is_connected(self.graph) or not is_cyclotomic(self.graph):
            raise ValueError(f"{self.shape} is not a connected cyclotomic graph")
        sides = is_bipartite(self.graph)
        if sides is None:
            raise ValueError(f"{self.shape} is not bipartite")
        if not (self.attach <= sides[0] or self.attach <= sides[1]):
            raise ValueError("attach set is not monochromatic")


def build_bipartite(components: Sequence[BipComponentSpec]) -> Graph:
    """Hub vertex 0 joined to the attach set of every component."""
    edges = []
    offset = 1
    for c in components:
        c.validate()
        edges += [(u + offset, v + offset) for u, v in c.graph.edges()]
        edges += [(0, v + offset) for v in sorted(c.attach)]
        offset += c.graph.n
    return graph_from_edges(offset, edges)


def attach_choices(g: Graph) -> list[frozenset[int]]:
    """Nonempty monochromatic vertex sets of g, one per automorphism orbit."""
    sides = is_bipartite(g)
    if sides is None:
        raise ValueError("graph is not bipartite")
    autos = automorphisms(g)
    reps, seen = [], set()
    for side in sides:
        verts = sorted(side)
        for r in range(1, len(verts) + 1):
            for s in itertools.combinations(verts, r):
                fs = frozenset(s)
                if fs in seen:
                    continue
                seen |= {frozenset(a[v] for v in s) for a in autos}
                reps.append(fs)
    return reps


def bipartite_atoms(max_order: int) -> list[BipComponentSpec]:
    out = []
    for name, g in bipartite_component_shapes(max_order).items():
        for s in attach_choices(g):
            out.append(BipComponentSpec(name, g, s))
    return out


def enumerate_bipartite(max_total: int) -> Iterator[tuple[BipComponentSpec, ...]]:
    """Every multiset of (shape, attach set) with at most max_total component vertices."""
    atoms = sorted(bipartite_atoms(max_total), key=lambda a: a.graph.n)

    def rec(start: int, budget: int, acc: list[BipComponentSpec]) -> Iterator[tuple[BipComponentSpec, ...]]:
        if acc:
            yield tuple(acc)
        for i in range(start, len(atoms)):
            a = atoms[i]
            if a.graph.n > budget:
                break
            acc.append(a)
            yield from rec(i, budget - a.graph.n, acc)
            acc.pop()

    yield from rec(0, max_total, [])


@lru_cache(maxsize=None)
def _smith_names(max_order: int) -> dict[CanonicalCode, str]:
    named = [("E~6", e6_tilde()), ("E~7", e7_tilde()), ("E~8", e8_tilde())]
    named += [(f"A~{n}", a_tilde(n)) for n in range(2, max_order)]
    named += [(f"D~{n}", d_tilde(n)) for n in range(4, max_order)]
    return {canonical_form(g): name for name, g in named if g.n <= max_order}


def bipartite_exception_check(components: Sequence[BipComponentSpec]) -> str | None:
    """Name of the maximal cyclotomic graph built, "cyclotomic" for a smaller one, else None."""
    g = build_bipartite(components)
    if not is_cyclotomic(g):
        return None
    return _smith_names(max(g.n, 9)).get(canonical_form(g), "cyclotomic")


def cyclotomic_exception_cases(max_total: int) -> set[tuple[tuple[CanonicalCode, ...], str]]:
    """Table of cyclotomic outcomes: (sorted component codes, result name) pairs.

    Parametric rows are expanded for component totals up to max_total.
    D_3 denotes P_3 here.
    """
    def d(n: int) -> Graph:
        return path_graph(3) if n == 3 else _d(n)

    rows: list[tuple[list[Graph], str]] = []
    e6, e7, e8 = _arms((1, 2, 2)), _arms((1, 2, 3)), _arms((1, 2, 4))
    p = path_graph
    rows += [([e6], "E~6"), ([p(7)], "E~7"), ([e7], "E~7"), ([p(8)], "E~8"), ([d(8)], "E~8"), ([e8], "E~8")]
    rows += [([p(n)], f"A~{n}") for n in range(3, max_total + 1, 2)]
    rows += [([d(n)], f"D~{n}") for n in range(4, max_total + 1)]
    rows += [([p(1), p(5)], "E~6"), ([p(1), d(6)], "E~7"), ([p(2), p(5)], "E~7"), ([p(1), p(7)], "E~8"),
             ([p(4), p(4)], "E~8"), ([p(3), d(5)], "E~8"), ([p(2), e6], "E~8"), ([p(1), e7], "E~8")]
    rows += [([d(a), d(b)], f"D~{a + b}") for a in range(3, max_total + 1) for b in range(a, max_total + 1 - a)]
    rows += [([p(2)] * 3, "E~6"), ([p(1), p(3), p(3)], "E~7"), ([p(1), p(2), p(5)], "E~8")]
    rows += [([p(1), p(1), d(n - 2)], f"D~{n}") for n in range(5, max_total + 1)]
    rows += [([p(1)] * 4, "D~4")]
    out = set()
    for comps, name in rows:
        if sum(c.n for c in comps) <= max_total:
            out.add((tuple(sorted(canonical_form(c) for c in comps)), name))
    return out

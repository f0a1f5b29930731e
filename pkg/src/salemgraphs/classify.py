"""Spectral classification: cyclotomic, Salem (trivial or not), m-Salem index.

All decisions are exact.  Eigenvalue counts at the integer thresholds +-2
come from ``exact_spectra.eig_count_above``/``eig_count_below``; enclosures
of lambda_1 and tau are rational intervals refined by exact sign tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .exact_spectra import (
    RationalInterval,
    char_poly,
    compute_tau,
    eig_count_above,
    eig_count_below,
    even_part,
    integer_largest_root,
    lambda1_enclosure,
)
from .graph_core import (
    Graph,
    cycle_graph,
    graph_from_edges,
    induced_subgraph,
    is_bipartite,
    is_connected,
)

DEFAULT_TOL = Fraction(1, 2 ** 40)


class Kind(str, Enum):
    CYCLOTOMIC = "Cyclotomic"
    SALEM_TRIVIAL = "SalemTrivial"
    SALEM_NONTRIVIAL = "SalemNontrivial"
    NOT_SALEM = "NotSalem"

    @property
    def is_salem(self) -> bool:
        return self in (Kind.SALEM_TRIVIAL, Kind.SALEM_NONTRIVIAL)


@dataclass(frozen=True)
class Classification:
    kind: Kind
    lambda1: RationalInterval | None = None
    tau: RationalInterval | None = None
    m_index: int | None = None
    bipartite: bool = False


def is_cyclotomic(g: Graph) -> bool:
    """All eigenvalues in [-2, 2]."""
    return g.n == 0 or (eig_count_above(g, 2) == 0 and eig_count_below(g, -2) == 0)


def is_salem(g: Graph) -> bool:
    if eig_count_above(g, 2) != 1:
        return False
    return is_bipartite(g) is not None or eig_count_below(g, -2) == 0


def salem_classify(g: Graph, tol=DEFAULT_TOL, with_m_index: bool = False) -> Classification:
    tol = Fraction(tol)
    bip = is_bipartite(g) is not None
    above = eig_count_above(g, 2) if g.n else 0
    below = eig_count_below(g, -2) if g.n else 0
    if above == 0 and below == 0:
        return Classification(Kind.CYCLOTOMIC, bipartite=bip)
    lam = lambda1_enclosure(g, tol)
    if above != 1 or (not bip and below != 0):
        return Classification(Kind.NOT_SALEM, lambda1=lam, bipartite=bip)
    chi = char_poly(g)
    dmax = max(g.degrees())
    if bip:
        _, p = even_part(chi)
        trivial = integer_largest_root(p, dmax * dmax) is not None
    else:
        trivial = integer_largest_root(chi, dmax) is not None
    kind = Kind.SALEM_TRIVIAL if trivial else Kind.SALEM_NONTRIVIAL
    m = m_salem_index(g) if with_m_index and is_connected(g) else None
    return Classification(kind, lambda1=lam, tau=compute_tau(g, tol), m_index=m, bipartite=bip)


# m-Salem index ------------------------------------------------------------

def _induced_k4s(g: Graph) -> list[int]:
    out = []
    for a, b, c, d in combinations(range(g.n), 4):
        if all(g.has_edge(x, y) for x, y in combinations((a, b, c, d), 2)):
            out.append((1 << a) | (1 << b) | (1 << c) | (1 << d))
    return out


def m_salem_index(g: Graph) -> int:
    """Least m such that deleting some m vertices leaves a cyclotomic graph.

    Deletion sets are tried by increasing size.  A set is skipped when it
    misses some vertex set already known to induce a non-cyclotomic graph
    (every induced K4, and the complements of earlier failed deletions),
    since then the remaining graph contains that set.
    """
    if not is_connected(g):
        raise ValueError("m-Salem index is defined for connected graphs only")
    if not is_salem(g):
        raise ValueError("graph is not Salem")
    obstructions = _induced_k4s(g)
    full = (1 << g.n) - 1
    for m in range(1, g.n + 1):
        for s in combinations(range(g.n), m):
            mask = sum(1 << v for v in s)
            if any(not (mask & w) for w in obstructions):
                continue
            if is_cyclotomic(g.remove_vertices(s)):
                return m
            obstructions.append(full & ~mask)
    raise AssertionError("the empty graph is cyclotomic")


def m_salem_index_bruteforce(g: Graph) -> int:
    """Reference search without pruning, for testing."""
    if not is_connected(g) or not is_salem(g):
        raise ValueError("requires a connected Salem graph")
    for m in range(1, g.n + 1):
        for s in combinations(range(g.n), m):
            if is_cyclotomic(g.remove_vertices(s)):
                return m
    raise AssertionError("unreachable")


def one_vertex_witnesses(g: Graph) -> list[int]:
    """Vertices whose deletion leaves a cyclotomic graph."""
    return [v for v in range(g.n) if is_cyclotomic(g.remove_vertices([v]))]


def is_one_salem(g: Graph) -> bool:
    return is_connected(g) and is_salem(g) and bool(one_vertex_witnesses(g))


# M / A / H partition -----------------------------------------------------

@dataclass(frozen=True)
class MAHPartition:
    M: frozenset[int]
    A: frozenset[int]
    H: frozenset[int]


def mah_partition(g: Graph) -> MAHPartition:
    """Split V into a minimal non-cyclotomic-top core M, its neighbours A, the rest H.

    M is found by deleting vertices in label order while lambda_1 > 2
    survives, repeated to a fixed point; the result depends on labels.
    """
    if eig_count_above(g, 2) != 1:
        raise ValueError("requires lambda_1 > 2 >= lambda_2")
    core = list(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in list(core):
            rest = [u for u in core if u != v]
            if eig_count_above(induced_subgraph(g, rest), 2) >= 1:
                core = rest
                changed = True
    m = frozenset(core)
    a = frozenset(v for v in range(g.n) if v not in m and any(g.has_edge(v, u) for u in m))
    h = frozenset(range(g.n)) - m - a
    if not is_cyclotomic(induced_subgraph(g, h)):
        raise ValueError("G|H is not cyclotomic; graph is not Salem")
    return MAHPartition(m, a, h)


# Smith's list, used as an independent oracle ----------------------------

def _arms(lengths: Iterable[int]) -> Graph:
    """A centre with pendant paths of the given numbers of vertices."""
    edges, nxt = [], 1
    for k in lengths:
        prev = 0
        for _ in range(k):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return graph_from_edges(nxt, edges)


def e6_tilde() -> Graph:
    return _arms((2, 2, 2))


def e7_tilde() -> Graph:
    return _arms((1, 3, 3))


def e8_tilde() -> Graph:
    return _arms((1, 2, 5))


def a_tilde(n: int) -> Graph:
    """The cycle on n+1 vertices."""
    return cycle_graph(n + 1)


def d_tilde(n: int) -> Graph:
    """n+1 vertices: a path on n-3 vertices with two leaves at each end.

    For n = 4 the path is a single vertex carrying all four leaves.
    """
    if n < 4:
        raise ValueError("D~n needs n >= 4")
    c = n - 3
    edges = [(i, i + 1) for i in range(c - 1)]
    edges += [(0, c), (0, c + 1), (c - 1, c + 2), (c - 1, c + 3)]
    return graph_from_edges(c + 4, edges)


def _embeds_induced(g: Graph, host: Graph) -> bool:
    """Whether g is isomorphic to an induced subgraph of host (backtracking)."""
    if g.n > host.n:
        return False
    order = _bfs_order(g)
    image = [-1] * g.n
    used = [False] * host.n
    gdeg, hdeg = g.degrees(), host.degrees()

    def rec(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for w in range(host.n):
            if used[w] or hdeg[w] < gdeg[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if g.has_edge(u, v) != host.has_edge(image[u], w):
                    ok = False
                    break
            if ok:
                image[v], used[w] = w, True
                if rec(i + 1):
                    return True
                image[v], used[w] = -1, False
        return False

    return rec(0)


def _bfs_order(g: Graph) -> list[int]:
    seen, order = set(), []
    for s in range(g.n):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return order


def smith_graphs(max_order: int) -> list[Graph]:
    """Maximal connected cyclotomic graphs with at most max_order vertices."""
    out = [e6_tilde(), e7_tilde(), e8_tilde()]
    out += [a_tilde(n) for n in range(2, max_order)]
    out += [d_tilde(n) for n in range(4, max_order)]
    return [h for h in out if h.n <= max_order]


def cyclotomic_structural_oracle(g: Graph) -> bool:
    """Connected g is cyclotomic iff it is induced in a graph of Smith's list."""
    if not is_connected(g):
        raise ValueError("oracle expects a connected graph")
    if g.n <= 1:
        return True
    return any(_embeds_induced(g, h) for h in smith_graphs(max(g.n + 2, 9)))

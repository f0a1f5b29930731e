"""Small simple graphs on at most 64 vertices.

Adjacency is stored as one integer bitset per vertex, so neighbourhood
intersections and induced subgraphs are cheap.  Canonical labelling uses
colour refinement followed by an individualise-and-refine search with
automorphism pruning, which is ample for the graph sizes met here.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_VERTICES = 64


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on the vertices 0..n-1.

    ``adj[v]`` is an integer whose bit ``u`` is set iff u ~ v.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or (row >> v) & 1:
                raise ValueError(f"bad adjacency row for vertex {v}")
            for u in _bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency at ({u}, {v})")

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def remove_vertices(self, drop: Iterable[int]) -> "Graph":
        drop = set(drop)
        return induced_subgraph(self, [v for v in range(self.n) if v not in drop])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def graph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build the simple graph on n vertices with the given edges."""
    if not 0 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    rows = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def graph_from_matrix(a) -> Graph:
    a = np.asarray(a)
    n = a.shape[0]
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if a[u, v]])


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return graph_from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    """Subgraph induced on ``keep``, relabelled in increasing original order."""
    keep = sorted(set(keep))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(keep)}
    mask = sum(1 << v for v in keep)
    rows = []
    for v in keep:
        row = 0
        for u in _bits(g.adj[v] & mask):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(keep), tuple(rows))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex v renamed perm[v]."""
    return graph_from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for h in graphs:
        edges += [(u + off, v + off) for u, v in h.edges()]
        off += h.n
    return graph_from_edges(off, edges)


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by least vertex."""
    seen = 0
    comps = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Return a 2-colouring (A, B) or None.

    In every component the least vertex goes to side A.
    """
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in _bits(g.adj[v]):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return None
    a = frozenset(v for v in range(g.n) if side[v] == 0)
    return a, frozenset(range(g.n)) - a


# canonical labelling ------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-class label: vertex count plus the minimal adjacency word."""

    code: bytes

    def __repr__(self) -> str:
        return f"CanonicalCode({self.code.hex()})"


def _refine(g: Graph, colors: list[int]) -> list[int]:
    """Equitable refinement; new colours are ranks of (old colour, neighbour colours).

    Everything is computed from colours only, so the result is label invariant.
    """
    n = g.n
    ncol = len(set(colors))
    while True:
        sig = []
        for v in range(n):
            nb = sorted(colors[u] for u in _bits(g.adj[v]))
            sig.append((colors[v], tuple(nb)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == ncol:
            return new
        colors, ncol = new, len(ranks)


def _individualize(colors: list[int], v: int) -> list[int]:
    # v gets a colour just below the rest of its cell
    return [2 * c + (0 if (c != colors[v] or u == v) else 1) for u, c in enumerate(colors)]


def _word(g: Graph, colors: list[int]) -> bytes:
    """Adjacency word of g under the discrete colouring ``colors``."""
    order = sorted(range(g.n), key=colors.__getitem__)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    bits = bytearray()
    for i, v in enumerate(order):
        row = 0
        for u in _bits(g.adj[v]):
            row |= 1 << (g.n - 1 - pos[u])
        bits += row.to_bytes(8, "big")
    return bytes([g.n]) + bytes(bits)


def _canon_search(g: Graph, colors: Sequence[int] | None = None) -> tuple[bytes, list[int]]:
    """Return (minimal word, a vertex order achieving it).

    Optional vertex ``colors`` are respected: only colour-preserving
    relabellings are considered, and the sorted colours join the word.
    """
    best: list = [None, None, None]  # word, vertex order, individualised path
    autos: list[list[int]] = []

    def orbit_reps(cell: list[int], fixed: list[int]) -> list[int]:
        # orbits of the group generated by known automorphisms fixing `fixed`
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in autos:
            if all(a[f] == f for f in fixed):
                for v in cell:
                    w = a[v]
                    if w in parent:
                        rv, rw = find(v), find(w)
                        if rv != rw:
                            parent[max(rv, rw)] = min(rv, rw)
        return [find(v) for v in cell]

    def rec(colors: list[int], fixed: list[int]) -> int | None:
        # returns a depth to unwind to when an automorphism makes the
        # rest of the current subtree redundant
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            w = _word(g, colors)
            order = sorted(range(g.n), key=colors.__getitem__)
            if best[0] is None or w < best[0]:
                best[0], best[1], best[2] = w, order, list(fixed)
                return None
            if w == best[0]:
                a = [0] * g.n
                for x, y in zip(order, best[1]):
                    a[x] = y
                autos.append(a)
                d = 0
                while fixed[d] == best[2][d]:
                    d += 1
                return d
            return None
        depth = len(fixed)
        done: list[int] = []
        for v in target:
            if done:
                reps = dict(zip(target, orbit_reps(target, fixed)))
                if any(reps[v] == reps[u] for u in done):
                    continue
            done.append(v)
            r = rec(_refine(g, _individualize(colors, v)), fixed + [v])
            if r is not None and r < depth:
                return r
        return None

    if g.n == 0:
        return bytes([0]), []
    if colors is None:
        start = [0] * g.n
        tail = b""
    else:
        if len(colors) != g.n:
            raise ValueError("need one colour per vertex")
        ranks = {c: i for i, c in enumerate(sorted(set(colors)))}
        start = [ranks[c] for c in colors]
        tail = b"|" + b"".join(int(c).to_bytes(8, "big", signed=True) for c in sorted(colors))
    rec(_refine(g, start), [])
    return best[0] + tail, best[1]


def canonical_form(g: Graph, colors: Sequence[int] | None = None) -> CanonicalCode:
    """Code that is equal for two graphs iff they are isomorphic.

    With integer vertex ``colors`` the isomorphisms must preserve colours.
    """
    return CanonicalCode(_canon_search(g, colors)[0])


def canonical_labeling(g: Graph) -> list[int]:
    """Vertex order realising the canonical code."""
    return _canon_search(g)[1]


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return relabel(g, perm)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges() == h.num_edges() and canonical_form(g) == canonical_form(h)


# graph6 -------------------------------------------------------------------

def write_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("graph6 writer supports n <= 62")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s or any(not 63 <= ord(ch) <= 126 for ch in s):
        raise ValueError(f"malformed graph6 string {text!r}")
    data = [ord(ch) - 63 for ch in s]
    if data[0] < 63:
        n, data = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    else:
        raise ValueError(f"unsupported graph6 size header in {text!r}")
    nbits = n * (n - 1) // 2
    if len(data) != (nbits + 5) // 6:
        raise ValueError(f"graph6 body has wrong length in {text!r}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (data[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if k < len(data) * 6 and any((data[m // 6] >> (5 - m % 6)) & 1 for m in range(k, len(data) * 6)):
        raise ValueError(f"nonzero padding in {text!r}")
    return graph_from_edges(n, edges)

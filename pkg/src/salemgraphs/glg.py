"""Generalized cocktail party graphs and generalized line graphs.

A connected graph is a generalized line graph iff its edges split into
GCP blocks with: (i) two blocks meeting in at most one vertex, (ii) every
vertex in at most two blocks, (iii) a vertex shared by two blocks being
adjacent to everything else in both.  Because of (i) every block is an
induced subgraph, so a block containing the edge uv is {u, v} plus a
subset of N(u) | N(v).  Recognition backtracks over such blocks for the
first uncovered edge.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .graph_core import Graph, _bits, components, graph_from_edges, induced_subgraph, is_connected


@dataclass(frozen=True)
class Block:
    vertices: frozenset[int]
    removed: frozenset[tuple[int, int]]

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def matching_size(self) -> int:
        return len(self.removed)


@dataclass(frozen=True)
class GCPPartition:
    blocks: tuple[Block, ...]

    def blocks_at(self, v: int) -> list[Block]:
        return [b for b in self.blocks if v in b.vertices]


def gcp(n: int, m: int) -> Graph:
    """K_n minus the matching (0,1), (2,3), ... of size m."""
    if not 0 <= m <= n // 2:
        raise ValueError(f"GCP({n},{m}) needs 0 <= m <= n/2")
    removed = {(2 * i, 2 * i + 1) for i in range(m)}
    return graph_from_edges(n, [e for e in combinations(range(n), 2) if e not in removed])


def generalized_line_graph(root: Graph, a: Sequence[int]) -> Graph:
    """L(root; a): line graph of root with a[i] pendant 2-cycles at vertex i.

    Each 2-cycle contributes two parallel edges to a fresh vertex; the two
    copies share both endpoints and so are not adjacent to each other.
    """
    if len(a) != root.n:
        raise ValueError("need one multiplicity per root vertex")
    edges = [(u, v, None) for u, v in root.edges()]
    fresh = root.n
    for v, k in enumerate(a):
        if k < 0:
            raise ValueError("negative multiplicity")
        for _ in range(k):
            edges.append((v, fresh, 0))
            edges.append((v, fresh, 1))
            fresh += 1
    out = []
    for i, j in combinations(range(len(edges)), 2):
        shared = {edges[i][0], edges[i][1]} & {edges[j][0], edges[j][1]}
        if len(shared) == 1:
            out.append((i, j))
    return graph_from_edges(len(edges), out)


def _is_gcp_set(g: Graph, mask: int) -> bool:
    for x in _bits(mask):
        if ((mask & ~g.adj[x]) & ~(1 << x)).bit_count() > 1:
            return False
    return True


def _is_clique_set(g: Graph, mask: int) -> bool:
    return all((mask & ~g.adj[x]) == 1 << x for x in _bits(mask))


def _maximal(g: Graph, x: int, mask: int) -> bool:
    return (mask & ~g.adj[x]) == 1 << x


def _partitions(g: Graph, cliques_only: bool) -> Iterator[list[int]]:
    """Yield every valid block partition, blocks as vertex bitmasks."""
    edges = g.edges()
    covered: set[tuple[int, int]] = set()
    blocks_of: list[list[int]] = [[] for _ in range(g.n)]
    blocks: list[int] = []
    ok_set = _is_clique_set if cliques_only else _is_gcp_set

    def rec() -> Iterator[list[int]]:
        for e in edges:
            if e not in covered:
                break
        else:
            yield list(blocks)
            return
        u, v = e
        pool = list(_bits((g.adj[u] | g.adj[v]) & ~((1 << u) | (1 << v))))
        for r in range(len(pool), -1, -1):  # largest blocks first
            for extra in combinations(pool, r):
                mask = (1 << u) | (1 << v)
                for x in extra:
                    mask |= 1 << x
                if not ok_set(g, mask):
                    continue
                bedges = [(x, y) for x in _bits(mask) for y in _bits(g.adj[x] & mask) if x < y]
                if any(be in covered for be in bedges):
                    continue
                good = True
                for x in _bits(mask):
                    if len(blocks_of[x]) >= 2:
                        good = False
                        break
                    for other in blocks_of[x]:
                        if (other & mask).bit_count() > 1 or not _maximal(g, x, other) or not _maximal(g, x, mask):
                            good = False
                            break
                    if not good:
                        break
                if not good:
                    continue
                covered.update(bedges)
                for x in _bits(mask):
                    blocks_of[x].append(mask)
                blocks.append(mask)
                yield from rec()
                blocks.pop()
                for x in _bits(mask):
                    blocks_of[x].pop()
                covered.difference_update(bedges)

    yield from rec()


def _as_partition(g: Graph, masks: list[int]) -> GCPPartition:
    out = []
    for mask in masks:
        vs = list(_bits(mask))
        removed = frozenset((x, y) for x, y in combinations(vs, 2) if not g.has_edge(x, y))
        out.append(Block(frozenset(vs), removed))
    return GCPPartition(tuple(out))


def recognize_glg(g: Graph) -> GCPPartition | None:
    """A GCP partition witnessing that g is a generalized line graph, or None."""
    if not is_connected(g):
        raise ValueError("recognition expects a connected graph")
    for masks in _partitions(g, cliques_only=False):
        return _as_partition(g, masks)
    return None


def recognize_glg_all(g: Graph) -> list[GCPPartition]:
    """Every valid GCP partition of g."""
    if not is_connected(g):
        raise ValueError("recognition expects a connected graph")
    return [_as_partition(g, masks) for masks in _partitions(g, cliques_only=False)]


def is_glg(g: Graph) -> bool:
    """Generalized line graph test; components are tested separately."""
    return all(recognize_glg(induced_subgraph(g, c)) is not None for c in components(g))


def is_line_graph(g: Graph) -> bool:
    """Edge partition into cliques with every vertex in at most two cliques."""
    if not is_connected(g):
        raise ValueError("recognition expects a connected graph")
    for _ in _partitions(g, cliques_only=True):
        return True
    return False


def check_partition(g: Graph, part: GCPPartition) -> bool:
    """Independent validation of the three partition clauses and the cover."""
    seen = set()
    for b in part.blocks:
        vs = sorted(b.vertices)
        for x in vs:
            missing = [y for y in vs if y != x and not g.has_edge(x, y)]
            if len(missing) > 1:
                return False
        for x, y in combinations(vs, 2):
            if g.has_edge(x, y):
                if (x, y) in seen:
                    return False
                seen.add((x, y))
    if seen != set(g.edges()):
        return False
    for b1, b2 in combinations(part.blocks, 2):
        common = b1.vertices & b2.vertices
        if len(common) > 1:
            return False
        for x in common:
            for b in (b1, b2):
                if any(y != x and not g.has_edge(x, y) for y in b.vertices):
                    return False
    return all(len(part.blocks_at(v)) <= 2 for v in range(g.n))

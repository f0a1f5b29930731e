"""E8 roots, Weyl reflections and the isometry-pruned hereditary search.

Roots are stored in doubled coordinates over an orthogonal basis e1..e8 of
norm 2, so +-e_i become +-2 in one slot and the half-sum roots become +-1 in
four slots.  The inner product of two roots is (d . d') / 2.

The search lists root indices in increasing order.  A list is rejected if
some isometry in S maps it to a set whose sorted index list is
lexicographically smaller.  For lex order on sorted lists every prefix of a
lex-minimal set in an orbit is itself unrejected, so this pruning is sound
for any subset S of the Weyl group.

For a chosen list with doubled coordinate rows D, the Gram matrix of the
represented graph is A + 2I = D D^T / 2, whose nonzero spectrum is that of
M = D^T D / 2.  Hence the number of eigenvalues of A above 2 equals the
number of eigenvalues of M^ = D^T D above 8, and M^ is only 8 x 8 and is
updated by a rank-one term per root.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numba as nb
import numpy as np

from .classify import is_cyclotomic, is_salem, m_salem_index
from .exact_spectra import _berkowitz_i64, eig_count_above, eig_count_below, sign_changes_i64
from .glg import recognize_glg
from .graph_core import (
    CanonicalCode,
    Graph,
    canonical_form,
    canonical_graph,
    graph_from_edges,
    is_bipartite,
    is_connected,
    write_graph6,
)

INDEX_STRINGS = ("1234", "1256", "1278", "1357", "1368", "1458", "1467",
                 "2358", "2367", "2457", "2468", "3456", "3478", "5678")
MAX_DEPTH = 31


@dataclass(frozen=True, order=True)
class RootVec:
    d: tuple[int, ...]

    def ip(self, other: "RootVec") -> int:
        s = sum(a * b for a, b in zip(self.d, other.d))
        return s // 2

    def norm(self) -> int:
        return self.ip(self)

    def __neg__(self) -> "RootVec":
        return RootVec(tuple(-x for x in self.d))


@lru_cache(maxsize=None)
def e8_roots() -> tuple[RootVec, ...]:
    """The 240 roots, sorted lexicographically by doubled coordinates."""
    out = []
    for i in range(8):
        for s in (2, -2):
            d = [0] * 8
            d[i] = s
            out.append(tuple(d))
    for word in INDEX_STRINGS:
        idx = [int(ch) - 1 for ch in word]
        for signs in itertools.product((1, -1), repeat=4):
            d = [0] * 8
            for k, s in zip(idx, signs):
                d[k] = s
            out.append(tuple(d))
    return tuple(RootVec(d) for d in sorted(out))


@lru_cache(maxsize=None)
def _tables() -> tuple[np.ndarray, np.ndarray, dict]:
    roots = e8_roots()
    d = np.array([r.d for r in roots], dtype=np.int64)
    ip = (d @ d.T) // 2
    index = {r.d: i for i, r in enumerate(roots)}
    return d, ip, index


@dataclass(frozen=True)
class Isometry:
    """An element of W(E8) given by its action on root indices.

    ``matrix2`` is twice the 8 x 8 matrix acting on coordinates; it is
    integral because every column is (half) a doubled-coordinate root.
    """

    perm: tuple[int, ...]
    matrix2: tuple[tuple[int, ...], ...]
    label: str = ""

    def apply(self, r: RootVec) -> RootVec:
        m = np.array(self.matrix2, dtype=np.int64)
        return RootVec(tuple(int(x) // 2 for x in m @ np.array(r.d)))

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other."""
        perm = tuple(self.perm[i] for i in other.perm)
        m = np.array(self.matrix2) @ np.array(other.matrix2) // 2
        return Isometry(perm, tuple(tuple(int(x) for x in row) for row in m), f"{self.label}*{other.label}")


def _reflection(k: int) -> Isometry:
    d, ip, index = _tables()
    r = d[k]
    perm = tuple(index[tuple(int(x) for x in d[j] - ip[j, k] * r)] for j in range(240))
    # v -> v - <v, r> r with <v, r> = v.r / 2, so 2R = 2I - r r^T
    m2 = 2 * np.eye(8, dtype=np.int64) - np.outer(r, r)
    return Isometry(perm, tuple(tuple(int(x) for x in row) for row in m2), f"s{k}")


@lru_cache(maxsize=None)
def reflections() -> tuple[Isometry, ...]:
    """One reflection per antipodal pair, indexed by the lex-larger root."""
    roots = e8_roots()
    out = []
    for k, r in enumerate(roots):
        if r > -r:
            out.append(_reflection(k))
    return tuple(out)


def is_valid_isometry(s: Isometry) -> bool:
    """Permutes the roots, preserves every inner product, agrees with its matrix."""
    d, ip, _ = _tables()
    p = np.array(s.perm)
    if sorted(s.perm) != list(range(240)):
        return False
    if not np.array_equal(ip[np.ix_(p, p)], ip):
        return False
    m = np.array(s.matrix2, dtype=np.int64)
    return np.array_equal((d @ m.T) // 2, d[p]) and not ((d @ m.T) % 2).any()


def _perm_array(isos: Sequence[Isometry]) -> np.ndarray:
    return np.array([s.perm for s in isos], dtype=np.int16).reshape(len(isos), 240)


@lru_cache(maxsize=None)
def _compat() -> np.ndarray:
    """Bitmask rows: j is a legal partner of i when ip(i, j) is 0 or 1."""
    _, ip, _ = _tables()
    out = np.zeros((240, 4), dtype=np.uint64)
    for i in range(240):
        for j in range(240):
            if j != i and ip[i, j] in (0, 1):
                out[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
    return out


# the search kernel ------------------------------------------------------

@nb.njit(cache=True)
def _eig_above8(mm):
    b = mm.copy()
    for i in range(8):
        b[i, i] -= 8
    return sign_changes_i64(_berkowitz_i64(b))


@nb.njit(cache=True)
def _rejected(perms, chosen, k, img):
    for s in range(perms.shape[0]):
        for i in range(k):
            img[i] = perms[s, chosen[i]]
        im = np.sort(img[:k])
        for i in range(k):
            if im[i] < chosen[i]:
                return True
            if im[i] > chosen[i]:
                break
    return False


@nb.njit(cache=True)
def _push(d, chosen, depth, c, mat, witness, cyc):
    """Try to extend the node at `depth` by root c; fill child state on success."""
    mn = mat[depth].copy()
    for a in range(8):
        for b in range(8):
            mn[a, b] += d[c, a] * d[c, b]
    e = _eig_above8(mn)
    if e >= 2:
        return False
    kk = depth + 1
    if e == 0:
        for w in range(kk):
            witness[kk, w] = True
        cyc[kk] = True
    else:
        # a deletion witness of the child is the new root or a parent witness
        anyw = cyc[depth]
        for w in range(kk):
            witness[kk, w] = False
        witness[kk, depth] = cyc[depth]
        for w in range(depth):
            if witness[depth, w] or cyc[depth]:
                mw = mn.copy()
                r = chosen[w]
                for a in range(8):
                    for b in range(8):
                        mw[a, b] -= d[r, a] * d[r, b]
                if _eig_above8(mw) == 0:
                    witness[kk, w] = True
                    anyw = True
        if not anyw:
            return False
        cyc[kk] = False
    mat[kk] = mn
    return True


@nb.njit(cache=True)
def _search(d, perms, compat, maxn, use_prune, prefix, npre, out, lens, cap):
    """DFS below `prefix`; records every accepted node deeper than the prefix.

    Returns the number of recorded nodes, or -1 if `out` overflowed, or -2
    if the prefix itself is not accepted.
    """
    chosen = np.zeros(MAX_DEPTH + 1, np.int64)
    mat = np.zeros((MAX_DEPTH + 1, 8, 8), np.int64)
    cand = np.zeros((MAX_DEPTH + 1, 4), np.uint64)
    nxt = np.zeros(MAX_DEPTH + 1, np.int64)
    witness = np.zeros((MAX_DEPTH + 1, MAX_DEPTH + 1), np.bool_)
    cyc = np.zeros(MAX_DEPTH + 1, np.bool_)
    img = np.zeros(MAX_DEPTH + 1, np.int64)
    cyc[0] = True
    for w in range(4):
        cand[0, w] = ~np.uint64(0)
    for depth in range(npre):
        c = prefix[depth]
        if not (cand[depth, c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
            return -2
        chosen[depth] = c
        if not _push(d, chosen, depth, c, mat, witness, cyc):
            return -2
        for w in range(4):
            cand[depth + 1, w] = cand[depth, w] & compat[c, w]
    nrec = 0
    depth = npre
    nxt[depth] = prefix[npre - 1] + 1 if npre > 0 else 0
    if depth >= maxn:
        return 0
    while depth >= npre:
        found = False
        c = nxt[depth]
        while c < 240:
            if (cand[depth, c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                chosen[depth] = c
                ok = True
                if use_prune and _rejected(perms, chosen, depth + 1, img):
                    ok = False
                if ok and _push(d, chosen, depth, c, mat, witness, cyc):
                    kk = depth + 1
                    if nrec >= cap:
                        return -1
                    for i in range(kk):
                        out[nrec, i] = chosen[i]
                    lens[nrec] = kk
                    nrec += 1
                    for w in range(4):
                        cand[kk, w] = cand[depth, w] & compat[c, w]
                    nxt[depth] = c + 1
                    if kk < maxn:
                        depth = kk
                        nxt[depth] = c + 1
                        found = True
                        break
            c += 1
        if not found:
            depth -= 1
    return nrec


def _run_kernel(prefix: Sequence[int], maxn: int, perms: np.ndarray, prune: bool) -> list[tuple[int, ...]]:
    d, _, _ = _tables()
    if maxn > MAX_DEPTH:
        raise ValueError(f"depth limited to {MAX_DEPTH}")
    pre = np.zeros(MAX_DEPTH + 1, np.int64)
    pre[:len(prefix)] = prefix
    cap = 1 << 14
    while True:
        out = np.zeros((cap, MAX_DEPTH + 1), np.int16)
        lens = np.zeros(cap, np.int64)
        nrec = _search(d, perms, _compat(), maxn, prune, pre, len(prefix), out, lens, cap)
        if nrec == -2:
            raise ValueError(f"prefix {list(prefix)} is not an accepted node")
        if nrec >= 0:
            return [tuple(int(x) for x in out[i, :lens[i]]) for i in range(nrec)]
        cap *= 4


# isometry sets ----------------------------------------------------------

def _rejects(perm: np.ndarray, nodes: np.ndarray, lens: np.ndarray) -> np.ndarray:
    """Boolean vector: which nodes (rows, padded with 255) perm rejects."""
    big = np.iinfo(np.int32).max
    img = np.where(nodes < 240, perm[np.minimum(nodes, 239)], big)
    img.sort(axis=1)
    base = np.where(nodes < 240, nodes, big)
    diff = img != base
    first = np.argmax(diff, axis=1)
    has = diff.any(axis=1)
    rows = np.arange(len(nodes))
    return has & (img[rows, first] < base[rows, first])


@lru_cache(maxsize=None)
def _calibrated_extras(count: int, depth: int) -> tuple[Isometry, ...]:
    """Greedy choice of reflection-pair products with the largest pruning gain.

    Calibration nodes are those of the reflections-only census search up to
    `depth` roots, each weighted by the size of its subtree there.
    """
    refl = reflections()
    nodes = _run_kernel((), depth, _perm_array(refl), True)
    width = depth
    arr = np.full((len(nodes), width), 255, dtype=np.int64)
    lens = np.array([len(x) for x in nodes])
    for i, x in enumerate(nodes):
        arr[i, :len(x)] = x
    # subtree weights
    index = {x: i for i, x in enumerate(nodes)}
    weight = np.ones(len(nodes), dtype=np.int64)
    for x in nodes:
        for k in range(1, len(x)):
            weight[index[x[:k]]] += 1
    _, ip, _ = _tables()
    roots = [k for k, r in enumerate(e8_roots()) if r > -r]
    cands = []
    for i, j in itertools.permutations(range(len(refl)), 2):
        if abs(ip[roots[i], roots[j]]) == 1:
            cands.append((i, j))
    perms = _perm_array(refl)
    alive = np.ones(len(nodes), dtype=bool)
    hit = {}
    for i, j in cands:
        prod = perms[i][perms[j]].astype(np.int64)
        hit[(i, j)] = _rejects(prod, arr, lens)
    chosen: list[Isometry] = []
    for _ in range(count):
        best, best_gain = None, -1
        for key in cands:
            gain = int(weight[hit[key] & alive].sum())
            if gain > best_gain:
                best, best_gain = key, gain
        i, j = best
        chosen.append(refl[i].compose(refl[j]))
        # a rejected node removes its whole subtree
        killed = hit[best] & alive
        for n in np.nonzero(killed)[0]:
            pre = nodes[n]
            for m, x in enumerate(nodes):
                if alive[m] and x[:len(pre)] == pre:
                    alive[m] = False
        cands.remove(best)
    return tuple(chosen)


def isometry_set(extras: int | str = 42, seed: int = 0, calibration_depth: int = 5) -> tuple[Isometry, ...]:
    """The 120 reflections plus extra Weyl group elements.

    ``extras`` is a count of greedily calibrated reflection-pair products,
    ``"none"``, or ``"random"`` (42 pair products chosen with ``seed``).
    """
    refl = reflections()
    if extras in (0, "none"):
        return refl
    if extras == "random":
        rng = np.random.default_rng(seed)
        pairs = rng.choice(len(refl), size=(42, 2), replace=True)
        return refl + tuple(refl[i].compose(refl[j]) for i, j in pairs if i != j)
    return refl + _calibrated_extras(int(extras), calibration_depth)


def isometry_digest(isos: Sequence[Isometry]) -> str:
    h = hashlib.sha256()
    for s in isos:
        h.update(np.array(s.perm, dtype=np.int16).tobytes())
    return h.hexdigest()[:16]


# graphs from roots ------------------------------------------------------

def gram_graph(roots: Sequence[RootVec]) -> Graph:
    """Graph with u ~ v iff the roots have inner product 1."""
    if len(set(roots)) != len(roots):
        raise ValueError("roots must be distinct")
    edges = []
    for i, j in itertools.combinations(range(len(roots)), 2):
        p = roots[i].ip(roots[j])
        if p == 1:
            edges.append((i, j))
        elif p != 0:
            raise ValueError(f"inner product {p} between roots {i} and {j}")
    return graph_from_edges(len(roots), edges)


def graph_of_indices(idx: Sequence[int]) -> Graph:
    _, ip, _ = _tables()
    return graph_from_edges(len(idx), [(a, b) for a, b in itertools.combinations(range(len(idx)), 2)
                                       if ip[idx[a], idx[b]] == 1])


def distinct_node_graphs(nodes: Sequence[Sequence[int]]) -> list[Graph]:
    """Graphs of the given root lists, with repeated adjacency patterns dropped."""
    _, ip, _ = _tables()
    by_len: dict[int, list] = {}
    for x in nodes:
        by_len.setdefault(len(x), []).append(x)
    out = []
    for k, group in sorted(by_len.items()):
        arr = np.array(group, dtype=np.int64).reshape(len(group), k)
        iu, ju = np.triu_indices(k, 1)
        pattern = ip[arr[:, iu], arr[:, ju]] == 1
        for row in np.unique(pattern, axis=0):
            out.append(graph_from_edges(k, [(int(a), int(b)) for a, b, e in zip(iu, ju, row) if e]))
    return out


def is_representable(g: Graph, spectral_shortcut: bool = True) -> list[RootVec] | None:
    """Roots realising A + 2I as a Gram matrix, or None.

    The first vertex (in BFS order) is sent to root 0; W(E8) is transitive
    on roots so nothing is lost.  Twins (vertices with equal neighbourhoods
    apart from each other) receive increasing root indices.  With the
    shortcut, graphs with an eigenvalue below -2 are rejected at once since
    A + 2I would not be positive semidefinite.
    """
    if g.n == 0:
        return []
    if g.n > 240:
        return None
    if spectral_shortcut and eig_count_below(g, -2) > 0:
        return None
    _, ip, _ = _tables()
    n1 = [sum(1 << j for j in range(240) if ip[i, j] == 1) for i in range(240)]
    n0 = [sum(1 << j for j in range(240) if ip[i, j] == 0 and j != i) for i in range(240)]
    order: list[int] = []
    seen = set()
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
    twin_before: dict[int, list[int]] = {}
    for i, v in enumerate(order):
        for u in order[:i]:
            if (g.adj[u] & ~(1 << v)) == (g.adj[v] & ~(1 << u)):
                twin_before.setdefault(v, []).append(u)
    assign: dict[int, int] = {}
    full = (1 << 240) - 1

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        allowed = full
        for u, r in assign.items():
            allowed &= n1[r] if g.has_edge(u, v) else n0[r]
        if i == 0:
            allowed &= 1
        for u in twin_before.get(v, ()):
            allowed &= ~((1 << (assign[u] + 1)) - 1)
        while allowed:
            low = allowed & -allowed
            r = low.bit_length() - 1
            allowed ^= low
            assign[v] = r
            if rec(i + 1):
                return True
            del assign[v]
        return False

    if not rec(0):
        return None
    roots = e8_roots()
    return [roots[assign[v]] for v in range(g.n)]


# hereditary enumeration --------------------------------------------------

def census_predicate(h: Graph) -> bool:
    """At most one eigenvalue above 2, and cyclotomic after at most one deletion."""
    e = eig_count_above(h, 2) if h.n else 0
    if e == 0:
        return True
    if e > 1:
        return False
    return any(is_cyclotomic(h.remove_vertices([v])) for v in range(h.n))


@dataclass
class SearchState:
    chosen: list[int]
    frontier: int
    results: set


def enumerate_hereditary(P: Callable[[Graph], bool] | None = None, max_vertices: int = 8,
                         prune: bool = True, isometries: Sequence[Isometry] | None = None,
                         check_hereditary: bool = True) -> set[CanonicalCode]:
    """Canonical codes of all E8-representable graphs with property P.

    ``P=None`` selects the census predicate and the compiled kernel; any
    other callable runs a plain Python search, which is only practical for
    strongly restrictive P or small ``max_vertices``.

    Without pruning the kernel search is anchored at root 0: the Weyl group
    is transitive on roots, so every representable graph has a
    representation whose least root index is 0.
    """
    isos = isometry_set() if isometries is None else tuple(isometries)
    perms = _perm_array(isos)
    if P is None:
        if prune:
            nodes = _run_kernel((), max_vertices, perms, True)
        elif max_vertices > 0:
            nodes = [(0,)] + _run_kernel((0,), max_vertices, perms, False)
        else:
            nodes = []
        out = {canonical_form(h) for h in distinct_node_graphs(nodes)}
        out.add(canonical_form(graph_from_edges(0, [])))
        return out
    if not P(graph_from_edges(0, [])):
        raise ValueError("P must hold for the empty graph")
    _, ip, _ = _tables()
    compat = [sum(1 << j for j in range(240) if j != i and ip[i, j] in (0, 1)) for i in range(240)]
    state = SearchState([], 0, {canonical_form(graph_from_edges(0, []))})

    def rec(allowed: int) -> None:
        k = len(state.chosen)
        if k == max_vertices:
            return
        start = state.chosen[-1] + 1 if state.chosen else 0
        mask = allowed >> start << start
        if k == 0:
            # an anchor restricts the first choice only
            allowed = (1 << 240) - 1
        while mask:
            low = mask & -mask
            c = low.bit_length() - 1
            mask ^= low
            state.chosen.append(c)
            state.frontier = c + 1
            ch = np.array(state.chosen)
            if prune and len(state.chosen) > 0:
                img = np.sort(perms[:, ch].astype(np.int64), axis=1)
                diff = img != ch
                first = np.argmax(diff, axis=1)
                rows = np.arange(len(img))
                if (diff.any(axis=1) & (img[rows, first] < ch[first])).any():
                    state.chosen.pop()
                    continue
            h = graph_of_indices(state.chosen)
            if P(h):
                if check_hereditary:
                    for w in range(h.n):
                        if not P(h.remove_vertices([w])):
                            raise ValueError(f"predicate is not hereditary: fails on {write_graph6(h)} minus {w}")
                state.results.add(canonical_form(h))
                rec(allowed & compat[c])
            state.chosen.pop()

    if prune:
        rec((1 << 240) - 1)
    elif max_vertices > 0:
        # anchored at root 0, as in the kernel search
        rec(1)
    return state.results


# the census --------------------------------------------------------------

def census_nodes(max_vertices: int = MAX_DEPTH, isometries: Sequence[Isometry] | None = None,
                 prune: bool = True, split_depth: int = 4,
                 parts: Iterable[int] | None = None) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Accepted root lists of the census search.

    The tree is cut at ``split_depth``: the head (all nodes up to that
    depth) is returned first, then the subtrees below each head node of
    depth exactly ``split_depth`` whose position is in ``parts``.
    Returns (head nodes, deeper nodes).
    """
    isos = isometry_set() if isometries is None else tuple(isometries)
    perms = _perm_array(isos)
    head = _run_kernel((), min(split_depth, max_vertices), perms, prune)
    frontier = [x for x in head if len(x) == split_depth]
    deep: list[tuple[int, ...]] = []
    if max_vertices > split_depth:
        chosen = range(len(frontier)) if parts is None else parts
        for p in chosen:
            deep += _run_kernel(frontier[p], max_vertices, perms, prune)
    return head, deep


def partition_prefixes(split_depth: int = 4, isometries: Sequence[Isometry] | None = None) -> list[tuple[int, ...]]:
    isos = isometry_set() if isometries is None else tuple(isometries)
    head = _run_kernel((), split_depth, _perm_array(isos), True)
    return [x for x in head if len(x) == split_depth]


def subtree_nodes(prefix: Sequence[int], max_vertices: int,
                  isometries: Sequence[Isometry] | None = None, prune: bool = True) -> list[tuple[int, ...]]:
    isos = isometry_set() if isometries is None else tuple(isometries)
    return _run_kernel(tuple(prefix), max_vertices, _perm_array(isos), prune)


def census_filter(h: Graph) -> bool:
    """Connected, non-bipartite, 1-Salem, and not a generalized line graph."""
    if h.n == 0 or not is_connected(h) or is_bipartite(h) is not None:
        return False
    if not is_salem(h):
        return False
    if m_salem_index(h) != 1:
        return False
    return recognize_glg(h) is None


def survivors_from_nodes(nodes: Sequence[Sequence[int]]) -> dict[CanonicalCode, Graph]:
    out: dict[CanonicalCode, Graph] = {}
    seen: set[CanonicalCode] = set()
    for h in distinct_node_graphs(nodes):
        code = canonical_form(h)
        if code in seen:
            continue
        seen.add(code)
        if census_filter(h):
            if eig_count_below(h, -2) != 0:
                raise AssertionError("Gram-represented graph with an eigenvalue below -2")
            out[code] = canonical_graph(h)
    return out


def one_salem_census(max_vertices: int = MAX_DEPTH, isometries: Sequence[Isometry] | None = None,
                     prune: bool = True) -> tuple[dict[int, int], list[Graph]]:
    """Histogram by order of the census survivors, and the survivors themselves."""
    head, deep = census_nodes(max_vertices, isometries, prune)
    surv = survivors_from_nodes(head + deep)
    graphs = sorted(surv.values(), key=lambda h: (h.n, write_graph6(h)))
    hist: dict[int, int] = {}
    for h in graphs:
        hist[h.n] = hist.get(h.n, 0) + 1
    return dict(sorted(hist.items())), graphs


def _lettered(pairs: str) -> Graph:
    return graph_from_edges(11, [(ord(p[0]) - 97, ord(p[1]) - 97) for p in pairs.split()])


# the two largest census survivors, vertices a..k
LARGEST_SURVIVORS = (
    _lettered("ab ac bd cd ce de ef eg fh gi hi hj ik"),
    _lettered("ab ac bd cd ce de ej ef eg ek jf fg gk fh gi"),
)


# partitioned runs and checkpoints ---------------------------------------

CHECKPOINT_MAGIC = "salemgraphs-census-checkpoint"
CHECKPOINT_VERSION = 1


@dataclass
class Checkpoint:
    """Progress of a partitioned census run.

    Partition i < ``partitions`` is the subtree below the i-th accepted
    root list of length ``split_depth``; partition ``partitions`` is the
    head of the tree (all lists of length at most ``split_depth``).
    """

    max_vertices: int
    split_depth: int
    isometries: str
    partitions: int
    completed: set[int]
    survivors: set[str]

    def dumps(self) -> str:
        bitmap = 0
        for i in self.completed:
            bitmap |= 1 << i
        lines = [f"{CHECKPOINT_MAGIC} {CHECKPOINT_VERSION}",
                 f"max_vertices {self.max_vertices}",
                 f"split_depth {self.split_depth}",
                 f"isometries {self.isometries}",
                 f"partitions {self.partitions}",
                 f"completed {bitmap:x}",
                 f"survivors {len(self.survivors)}"]
        lines += sorted(self.survivors)
        body = "\n".join(lines) + "\n"
        return body + f"sha256 {hashlib.sha256(body.encode()).hexdigest()}\n"

    @classmethod
    def loads(cls, text: str) -> "Checkpoint":
        lines = text.splitlines()
        if not lines or not lines[-1].startswith("sha256 "):
            raise ValueError("checkpoint is truncated")
        body = "\n".join(lines[:-1]) + "\n"
        if hashlib.sha256(body.encode()).hexdigest() != lines[-1].split()[1]:
            raise ValueError("checkpoint checksum mismatch")
        head = lines[0].split()
        if head != [CHECKPOINT_MAGIC, str(CHECKPOINT_VERSION)]:
            raise ValueError("not a census checkpoint of a supported version")
        fields = dict(line.split(" ", 1) for line in lines[1:7])
        bitmap = int(fields["completed"], 16)
        count = int(fields["survivors"])
        surv = lines[7:7 + count]
        if len(surv) != count or 7 + count != len(lines) - 1:
            raise ValueError("checkpoint survivor block has the wrong length")
        parts = int(fields["partitions"])
        return cls(int(fields["max_vertices"]), int(fields["split_depth"]), fields["isometries"],
                   parts, {i for i in range(parts + 1) if bitmap >> i & 1}, set(surv))


def _partition_survivors(args: tuple) -> tuple[int, list[str]]:
    index, prefix, maxn, perms, prune = args
    if prefix is None:
        nodes = _run_kernel((), maxn, perms, prune)
    else:
        nodes = _run_kernel(prefix, maxn, perms, prune)
    return index, [write_graph6(h) for h in survivors_from_nodes(nodes).values()]


def run_census(max_vertices: int = MAX_DEPTH, workers: int = 1, checkpoint: str | None = None,
               split_depth: int = 4, isometries: Sequence[Isometry] | None = None,
               stop_after: int | None = None) -> Checkpoint:
    """Census over all partitions, resuming from and updating ``checkpoint``.

    ``stop_after`` ends the run after that many newly completed partitions
    (used to exercise resumption).  The survivor set does not depend on the
    number of workers or on the order in which partitions finish.
    """
    import os
    from concurrent.futures import ProcessPoolExecutor

    if workers < 1:
        raise ValueError("workers must be >= 1")
    isos = isometry_set() if isometries is None else tuple(isometries)
    perms = _perm_array(isos)
    split = min(split_depth, max_vertices)
    head = _run_kernel((), split, perms, True)
    frontier = [x for x in head if len(x) == split] if max_vertices > split else []
    state = Checkpoint(max_vertices, split, isometry_digest(isos), len(frontier), set(), set())
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            old = Checkpoint.loads(fh.read())
        if (old.max_vertices, old.split_depth, old.isometries, old.partitions) != (
                state.max_vertices, state.split_depth, state.isometries, state.partitions):
            raise ValueError("checkpoint was written for a different run configuration")
        state = old
    todo = [i for i in range(len(frontier) + 1) if i not in state.completed]
    if stop_after is not None:
        todo = todo[:stop_after]
    jobs = [(i, tuple(frontier[i]) if i < len(frontier) else None,
             max_vertices if i < len(frontier) else split, perms, True) for i in todo]

    def save() -> None:
        if checkpoint:
            tmp = checkpoint + ".tmp"
            with open(tmp, "w") as fh:
                fh.write(state.dumps())
            os.replace(tmp, checkpoint)

    if workers == 1:
        results = map(_partition_survivors, jobs)
        for i, surv in results:
            state.survivors.update(surv)
            state.completed.add(i)
            save()
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for i, surv in pool.map(_partition_survivors, jobs):
                state.survivors.update(surv)
                state.completed.add(i)
                save()
    return state


def histogram(graph6_lines: Iterable[str]) -> dict[int, int]:
    from .graph_core import parse_graph6
    hist: dict[int, int] = {}
    for line in graph6_lines:
        n = parse_graph6(line).n
        hist[n] = hist.get(n, 0) + 1
    return dict(sorted(hist.items()))

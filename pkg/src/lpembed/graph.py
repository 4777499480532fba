"""Unweighted input graphs, exact hop distances, and exact weighted host metrics."""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path


class GraphError(ValueError):
    """Raised when an input graph violates the simple/connected contract."""


class DisconnectedGraph(GraphError):
    def __init__(self, vertex: int):
        super().__init__(f"graph disconnected: vertex {vertex} unreachable from vertex 0")
        self.vertex = vertex


@dataclass(frozen=True)
class Graph:
    """Simple, undirected, connected graph on vertices ``0..n-1``.

    Build instances with :meth:`from_edges`, which validates the invariants.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 1:
            raise GraphError("graph must have at least one vertex")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphError(f"parallel edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        g = cls(n, tuple(tuple(sorted(s)) for s in nbrs))
        dist = bfs_distances(g, 0)
        for v, d in enumerate(dist):
            if d < 0:
                raise DisconnectedGraph(v)
        return g

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def csr(self) -> csr_matrix:
        rows = [u for u in range(self.n) for _ in self.adj[u]]
        cols = [v for u in range(self.n) for v in self.adj[u]]
        data = np.ones(len(rows), dtype=np.int64)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))


def bfs_distances(g: Graph, s: int) -> list[int]:
    """Hop distances from ``s``; unreachable vertices get -1."""
    if not 0 <= s < g.n:
        raise IndexError(f"source {s} out of range")
    dist = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in g.adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def all_pairs_distances(g: Graph) -> np.ndarray:
    """n x n int64 matrix of hop distances (one BFS per source, done in C by scipy)."""
    if g.n == 1:
        return np.zeros((1, 1), dtype=np.int64)
    d = shortest_path(g.csr(), method="D", directed=False, unweighted=True)
    return d.astype(np.int64)


def ball(g: Graph, s: int, k: int) -> frozenset[int]:
    if k < 0:
        return frozenset()
    return frozenset(v for v, d in enumerate(bfs_distances(g, s)) if d <= k)


def components_avoiding(g: Graph, forbidden: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the subgraph induced by ``V - forbidden``.

    Components are listed by their smallest vertex.
    """
    blocked = set(forbidden)
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start] or start in blocked:
            continue
        seen[start] = True
        comp = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if not seen[v] and v not in blocked:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class WeightedGraph:
    """Host graph with exact non-negative rational edge lengths.

    Nodes ``0..n_real-1`` are the embedded vertices; any further nodes are
    Steiner points.
    """

    n_nodes: int
    edges: tuple[tuple[int, int, Fraction], ...]
    n_real: int

    @classmethod
    def uniform(cls, n_nodes: int, pairs: Iterable[tuple[int, int]], length: Fraction | int,
                n_real: int | None = None) -> WeightedGraph:
        w = Fraction(length)
        return cls(n_nodes, tuple((u, v, w) for u, v in pairs),
                   n_nodes if n_real is None else n_real)

    def relabel(self, length: Fraction | int) -> WeightedGraph:
        """Same topology with every edge set to ``length``."""
        w = Fraction(length)
        return WeightedGraph(self.n_nodes, tuple((u, v, w) for u, v, _ in self.edges), self.n_real)

    def neighbors(self) -> list[list[tuple[int, Fraction]]]:
        out: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.n_nodes)]
        for u, v, w in self.edges:
            out[u].append((v, w))
            out[v].append((u, w))
        return out


@dataclass(frozen=True)
class RationalMatrix:
    """Exact rational matrix stored as integer numerators over one positive denominator."""

    num: np.ndarray
    den: int

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return Fraction(int(self.num[i, j]), self.den)

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    def restrict(self, k: int) -> RationalMatrix:
        return RationalMatrix(self.num[:k, :k], self.den)

    @classmethod
    def from_int(cls, m: np.ndarray, scale: Fraction | int = 1) -> RationalMatrix:
        s = Fraction(scale)
        return cls(np.asarray(m, dtype=np.int64) * s.numerator, s.denominator)

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(int(x), self.den) for x in row] for row in self.num]


def _common_denominator(weights: Sequence[Fraction]) -> int:
    den = 1
    for w in weights:
        den = den * w.denominator // math.gcd(den, w.denominator)
    return den


def weighted_all_pairs(wg: WeightedGraph, rows: Sequence[int] | None = None) -> RationalMatrix:
    """Exact shortest-path lengths between ``rows`` (default: real vertices).

    Lengths are scaled to integers by their common denominator, so every sum
    and comparison is exact. Zero-length edges are contracted first; if the
    remaining edges share one length the problem reduces to hop counts.
    """
    rows = list(range(wg.n_real) if rows is None else rows)
    weights = [w for _, _, w in wg.edges]
    if any(w < 0 for w in weights):
        raise ValueError("negative edge length")
    den = _common_denominator(weights)

    # contract zero-length edges
    up = list(range(wg.n_nodes))

    def find(x: int) -> int:
        while up[x] != x:
            up[x] = up[up[x]]
            x = up[x]
        return x

    for u, v, w in wg.edges:
        if w == 0:
            up[find(u)] = find(v)
    comp_id: dict[int, int] = {}
    comp = [comp_id.setdefault(find(x), len(comp_id)) for x in range(wg.n_nodes)]
    k = len(comp_id)
    arcs = [(comp[u], comp[v], int(w * den)) for u, v, w in wg.edges if w > 0]
    arcs = [(a, b, w) for a, b, w in arcs if a != b]
    sources = sorted({comp[r] for r in rows})
    pos = {c: i for i, c in enumerate(sources)}
    pick = np.asarray([pos[comp[r]] for r in rows], dtype=np.int64)

    if not arcs:
        if k > 1:
            raise GraphError("host graph disconnected")
        return RationalMatrix(np.zeros((len(rows), len(rows)), dtype=np.int64), 1)

    if all(w == arcs[0][2] for _, _, w in arcs):
        us = [a for a, _, _ in arcs]
        vs = [b for _, b, _ in arcs]
        adj = csr_matrix((np.ones(len(us)), (us, vs)), shape=(k, k))
        hops = shortest_path(adj, method="D", directed=False, unweighted=True, indices=sources)
        if np.isinf(hops).any():
            raise GraphError("host graph disconnected")
        dist = hops[:, sources].astype(np.int64) * arcs[0][2]
    else:
        nbrs: list[list[tuple[int, int]]] = [[] for _ in range(k)]
        for a, b, w in arcs:
            nbrs[a].append((b, w))
            nbrs[b].append((a, w))
        dist = np.zeros((len(sources), len(sources)), dtype=np.int64)
        for i, src in enumerate(sources):
            d = _dijkstra(nbrs, src)
            if None in d:
                raise GraphError("host graph disconnected")
            dist[i] = [d[c] for c in sources]
    return _reduced(dist[np.ix_(pick, pick)], den)


def _dijkstra(nbrs: list[list[tuple[int, int]]], s: int) -> list[int | None]:
    dist: list[int | None] = [None] * len(nbrs)
    dist[s] = 0
    heap = [(0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in nbrs[u]:
            nd = d + w
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def _reduced(num: np.ndarray, den: int) -> RationalMatrix:
    g = math.gcd(int(np.gcd.reduce(num.ravel())) if num.size else 0, den)
    if g > 1:
        return RationalMatrix(num // g, den // g)
    return RationalMatrix(num, den)

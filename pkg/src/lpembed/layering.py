"""Layering partition of a graph around a root, its layering tree, and support vertices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, bfs_distances


class InvariantViolation(RuntimeError):
    """A structural property that the theory guarantees did not hold (implementation bug)."""


@dataclass(frozen=True)
class LayeringPartition:
    """Clusters of every BFS sphere around ``root``.

    Cluster 0 is always ``{root}``. Clusters are numbered in
    ``(layer, smallest member)`` order, members are sorted, and
    ``parent[c]`` / ``support[c]`` are ``-1`` for the root cluster.
    """

    root: int
    layer: tuple[int, ...]
    cluster_of: tuple[int, ...]
    clusters: tuple[tuple[int, ...], ...]
    cluster_layer: tuple[int, ...]
    parent: tuple[int, ...]
    support: tuple[int, ...]

    @property
    def depth(self) -> int:
        return self.cluster_layer[-1]

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.clusters]
        for c, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(c)
        return kids


class _DisjointSet:
    def __init__(self, n: int):
        self.up = list(range(n))

    def find(self, x: int) -> int:
        up = self.up
        while up[x] != x:
            up[x] = up[up[x]]
            x = up[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.up[rb] = ra
            else:
                self.up[ra] = rb


def build_layering_partition(g: Graph, s: int) -> LayeringPartition:
    """Cluster each sphere by connectivity outside the ball one layer up.

    Layers are added deepest first to a union-find, so when layer ``i`` is
    inserted the structure holds exactly the subgraph induced by layers ``>= i``.
    """
    layer = bfs_distances(g, s)
    depth = max(layer)
    spheres: list[list[int]] = [[] for _ in range(depth + 1)]
    for v, i in enumerate(layer):
        spheres[i].append(v)

    dsu = _DisjointSet(g.n)
    groups: list[list[list[int]]] = [[] for _ in range(depth + 1)]
    for i in range(depth, -1, -1):
        for u in spheres[i]:
            for v in g.adj[u]:
                if layer[v] >= i:
                    dsu.union(u, v)
        by_rep: dict[int, list[int]] = {}
        for u in spheres[i]:
            by_rep.setdefault(dsu.find(u), []).append(u)
        groups[i] = sorted(by_rep.values(), key=lambda c: c[0])

    clusters: list[tuple[int, ...]] = []
    cluster_layer: list[int] = []
    cluster_of = [0] * g.n
    for i in range(depth + 1):
        for members in groups[i]:
            cid = len(clusters)
            clusters.append(tuple(members))
            cluster_layer.append(i)
            for v in members:
                cluster_of[v] = cid

    lp = LayeringPartition(
        root=s,
        layer=tuple(layer),
        cluster_of=tuple(cluster_of),
        clusters=tuple(clusters),
        cluster_layer=tuple(cluster_layer),
        parent=(),
        support=(),
    )
    parent = layering_tree(lp, g)
    support = choose_supports(lp, g)
    return LayeringPartition(lp.root, lp.layer, lp.cluster_of, lp.clusters, lp.cluster_layer,
                             tuple(parent), tuple(support))


def layering_tree(lp: LayeringPartition, g: Graph) -> list[int]:
    """Parent cluster of every cluster in the layering tree (``-1`` for the root)."""
    parent = [-1] * len(lp.clusters)
    for cid, members in enumerate(lp.clusters):
        if cid == 0:
            continue
        i = lp.cluster_layer[cid]
        above = {lp.cluster_of[v] for u in members for v in g.adj[u] if lp.layer[v] == i - 1}
        if len(above) != 1:
            raise InvariantViolation(
                f"cluster {cid} is adjacent to {len(above)} clusters of layer {i - 1}")
        parent[cid] = above.pop()
    return parent


def choose_supports(lp: LayeringPartition, g: Graph) -> list[int]:
    """Smallest-id vertex of the previous layer adjacent to each non-root cluster."""
    support = [-1] * len(lp.clusters)
    for cid, members in enumerate(lp.clusters):
        if cid == 0:
            continue
        i = lp.cluster_layer[cid]
        support[cid] = min(v for u in members for v in g.adj[u] if lp.layer[v] == i - 1)
    return support


def cluster_diameters(lp: LayeringPartition, dm: np.ndarray) -> list[int]:
    out = []
    for members in lp.clusters:
        idx = np.asarray(members)
        out.append(int(dm[np.ix_(idx, idx)].max()))
    return out


def max_cluster_diameter(lp: LayeringPartition, dm: np.ndarray) -> int:
    return max(cluster_diameters(lp, dm))


def format_layering(lp: LayeringPartition, names: list[str], diameters: list[int] | None = None) -> str:
    """One line per cluster: id, layer, parent, support, diameter, members."""
    lines = []
    for cid, members in enumerate(lp.clusters):
        parent = "-" if lp.parent[cid] < 0 else str(lp.parent[cid])
        support = "-" if lp.support[cid] < 0 else names[lp.support[cid]]
        diam = "" if diameters is None else f" diam={diameters[cid]}"
        lines.append(f"cluster {cid} layer={lp.cluster_layer[cid]} parent={parent} "
                     f"support={support}{diam} members={','.join(names[v] for v in members)}")
    return "\n".join(lines)

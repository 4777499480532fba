from __future__ import annotations

from lpembed.graph import Graph


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def branching_cycle(k: int, loops: list[int]) -> Graph:
    """Two arcs of length ``k`` from vertex 0, whose ends a, b are joined by one path per entry of ``loops``.

    A path of length L gives the cluster right below {a, b} a son whose two
    vertices are min(2k + 2, L - 2) apart.
    """
    a, b = k, 2 * k
    edges = [(0, 1)] + [(i, i + 1) for i in range(1, k)]
    edges += [(0, k + 1)] + [(i, i + 1) for i in range(k + 1, 2 * k)]
    nxt = 2 * k + 1
    for length in loops:
        prev = a
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, b))
    return Graph.from_edges(nxt, edges)

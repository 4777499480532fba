"""Exact multiplicative distortion of a host metric against the input graph metric.

Host distances arrive as a :class:`RationalMatrix` ``num / den``; every
comparison below is done on integers, never on floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, RationalMatrix, WeightedGraph, _common_denominator, _dijkstra


@dataclass(frozen=True)
class DistortionReport:
    non_contracting: bool
    max_ratio: Fraction
    worst_expansion_pair: tuple[int, int] | None
    worst_contraction_pair: tuple[int, int] | None
    # (max of d_host - d_G, max of d_G - d_host) over all pairs
    additive_slack: tuple[Fraction, Fraction]
    ratio_by_distance: dict[int, Fraction]

    def max_ratio_from(self, d: int) -> Fraction | None:
        """Largest ratio among pairs with ``d_G >= d``."""
        vals = [r for k, r in self.ratio_by_distance.items() if k >= d]
        return max(vals) if vals else None

    def within(self, bound: Fraction) -> bool:
        return self.non_contracting and self.max_ratio <= bound

    def lines(self) -> list[str]:
        def pair(p):
            return "-" if p is None else f"{p[0]} {p[1]}"
        return [
            f"non_contracting: {str(self.non_contracting).lower()}",
            f"max_ratio: {self.max_ratio} ({float(self.max_ratio):.6g})",
            f"worst_expansion_pair: {pair(self.worst_expansion_pair)}",
            f"worst_contraction_pair: {pair(self.worst_contraction_pair)}",
            f"additive_slack: {self.additive_slack[0]} {self.additive_slack[1]}",
        ]


def multiplicative_report(dG: np.ndarray, host: RationalMatrix) -> DistortionReport:
    n = dG.shape[0]
    if n == 1:
        return DistortionReport(True, Fraction(1), None, None, (Fraction(0), Fraction(0)), {})
    num, den = host.num, host.den
    scaled_g = dG * den
    off = ~np.eye(n, dtype=bool)

    contract = (num < scaled_g) & off
    worst_contraction = None
    if contract.any():
        # most contracted pair: smallest host/G ratio
        best = None
        for i, j in zip(*np.nonzero(np.triu(contract))):
            r = Fraction(int(num[i, j]), den * int(dG[i, j]))
            if best is None or r < best[0]:
                best = (r, (int(i), int(j)))
        worst_contraction = best[1]

    by_d: dict[int, Fraction] = {}
    best_pair = None
    best_ratio = None
    upper = np.triu(off)
    for d in np.unique(dG[upper]):
        d = int(d)
        mask = (dG == d) & upper
        vals = np.where(mask, num, -1)
        k = int(np.argmax(vals))
        i, j = divmod(k, n)
        r = Fraction(int(num[i, j]), den * d)
        by_d[d] = r
        if best_ratio is None or r > best_ratio:
            best_ratio, best_pair = r, (i, j)

    diff = num - scaled_g
    slack = (Fraction(int(diff.max()), den), Fraction(int((-diff).max()), den))
    return DistortionReport(not contract.any(), best_ratio, best_pair, worst_contraction, slack, by_d)


def edge_sufficient_expansion(g: Graph, host: RationalMatrix, bound: Fraction) -> bool:
    """Every G-edge stretched to at most ``bound``; summing along a shortest path extends this to all pairs."""
    bound = Fraction(bound)
    lim = bound * host.den
    return all(host.num[u, v] <= lim for u, v in g.edges)


def edge_sufficient_noncontraction(dG: np.ndarray, host: WeightedGraph) -> bool:
    """Every host hop between consecutive real vertices is at least their G-distance.

    Runs of Steiner points are collapsed: from each real vertex we search
    through Steiner nodes only, and each real vertex reached that way counts
    as one virtual host edge with the shortest such length.
    """
    n = host.n_real
    if n == 1:
        return True
    weights = [w for _, _, w in host.edges]
    den = _common_denominator(weights)
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(host.n_nodes)]
    for u, v, w in host.edges:
        nbrs[u].append((v, int(w * den)))
        nbrs[v].append((u, int(w * den)))
    for u, v, w in host.edges:
        if u < n and v < n and w < int(dG[u, v]):
            return False
    if host.n_nodes == n:
        return True
    for s in range(n):
        # real vertices other than s are sinks: strip their outgoing arcs
        masked = [nb if (x == s or x >= n) else [] for x, nb in enumerate(nbrs)]
        dist = _dijkstra(masked, s)
        for v in range(n):
            if v != s and dist[v] is not None and dist[v] < int(dG[s, v]) * den:
                return False
    return True

"""Tree approximants built from a layering partition, and their exact certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .distortion import DistortionReport, edge_sufficient_expansion, multiplicative_report
from .graph import Graph, RationalMatrix, WeightedGraph, all_pairs_distances, weighted_all_pairs
from .layering import LayeringPartition, build_layering_partition, max_cluster_diameter


def build_H(lp: LayeringPartition) -> list[tuple[int, int]]:
    """Edges of the tree that joins every cluster member to the cluster's support vertex."""
    return [(lp.support[cid], v)
            for cid, members in enumerate(lp.clusters) if cid > 0
            for v in members]


def steiner_id(lp: LayeringPartition, cid: int) -> int:
    return len(lp.layer) + cid


def build_H_prime(lp: LayeringPartition) -> WeightedGraph:
    """Tree with one Steiner point per cluster and 0/1 edge labels.

    Members hang off their cluster's Steiner point at length 0 and the
    Steiner point hangs off the support vertex at length 1. The root
    cluster's Steiner point is a pendant 0-edge leaf at the root.
    """
    n = len(lp.layer)
    edges = []
    for cid, members in enumerate(lp.clusters):
        p = n + cid
        for v in members:
            edges.append((v, p, Fraction(0)))
        if cid > 0:
            edges.append((p, lp.support[cid], Fraction(1)))
    return WeightedGraph(n + len(lp.clusters), tuple(edges), n)


def compute_ell_H(H_edges: list[tuple[int, int]], dm: np.ndarray) -> int:
    if not H_edges:
        return 1
    return max(int(dm[u, v]) for u, v in H_edges)


def compute_ell_Hprime(D: int, m: int) -> Fraction:
    # +1 on D keeps same-cluster pairs (two Steiner hops apart) non-contracted
    return Fraction(max(D + 1, m), 2)


def lower_bound_lambda(D: int, m: int) -> Fraction:
    """Lower bound on the optimal tree distortion from the cluster diameter and H-edge stretch."""
    if m >= 5:
        from_m = Fraction(m + 1, 3)
    else:
        from_m = max(Fraction(1), Fraction(m - 1, 2))
    return max(Fraction(1), Fraction(D, 3), from_m)


@dataclass(frozen=True)
class TreeEmbedding:
    lp: LayeringPartition
    H: WeightedGraph
    Hprime: WeightedGraph
    ellH: int
    ellHprime: Fraction
    D: int
    m: int
    LB: Fraction

    @property
    def H_ell(self) -> WeightedGraph:
        return self.H.relabel(self.ellH)

    @property
    def Hprime_ell(self) -> WeightedGraph:
        return self.Hprime.relabel(self.ellHprime)


def approximate_tree_embedding(g: Graph, s: int, dm: np.ndarray | None = None) -> TreeEmbedding:
    if dm is None:
        dm = all_pairs_distances(g)
    lp = build_layering_partition(g, s)
    h_edges = build_H(lp)
    D = max_cluster_diameter(lp, dm)
    m = compute_ell_H(h_edges, dm)
    return TreeEmbedding(
        lp=lp,
        H=WeightedGraph.uniform(g.n, h_edges, 1),
        Hprime=build_H_prime(lp),
        ellH=m,
        ellHprime=compute_ell_Hprime(D, m),
        D=D,
        m=m,
        LB=lower_bound_lambda(D, m),
    )


def tree_metric_on_V(t: WeightedGraph) -> RationalMatrix:
    """Pairwise path lengths between the real vertices of a weighted tree."""
    return weighted_all_pairs(t)


@dataclass(frozen=True)
class TreeCertificate:
    report_H: DistortionReport
    report_Hprime: DistortionReport
    additive_H_ok: bool
    additive_Hprime_ok: bool
    bound_H_ok: bool
    bound_Hprime_ok: bool
    factor_H_ok: bool
    factor_Hprime_ok: bool
    shortcut_agrees: bool

    @property
    def ok(self) -> bool:
        return all((self.report_H.non_contracting, self.report_Hprime.non_contracting,
                    self.additive_H_ok, self.additive_Hprime_ok, self.bound_H_ok, self.bound_Hprime_ok,
                    self.factor_H_ok, self.factor_Hprime_ok, self.shortcut_agrees))


def certify_tree_embedding(g: Graph, te: TreeEmbedding, dm: np.ndarray,
                           with_labels: bool = True) -> TreeCertificate:
    """Check every guarantee of the tree pipeline exactly over all vertex pairs.

    ``with_labels`` also checks the additive bounds of the unit/0-1 trees;
    that needs a Dijkstra per vertex on the 0/1 tree and is the slow part.
    """
    n = g.n
    dH = weighted_all_pairs(te.H)
    dH_ell = RationalMatrix.from_int(dH.num, te.ellH)
    dHp_ell = weighted_all_pairs(te.Hprime_ell)
    rep_H = multiplicative_report(dm, dH_ell)
    rep_Hp = multiplicative_report(dm, dHp_ell)

    # H_ell <= ellH * (d_G + 2)
    bound_H = bool(np.all(dH.num <= dm + 2))
    # H'_ell <= 2 * ellHprime * (d_G + 1), compared on integer numerators
    lim = 2 * te.ellHprime
    bound_Hp = bool(np.all(dHp_ell.num * lim.denominator
                           <= (dm + 1) * lim.numerator * dHp_ell.den))
    if n == 1:
        bound_Hp = True

    factor_H = rep_H.max_ratio <= 9 * te.LB
    factor_Hp = rep_Hp.max_ratio <= 6 * te.LB + 2

    # stretch over G-edges alone must already give the all-pairs maximum
    shortcut = True
    if n > 1:
        edge_max_H = max(dH_ell[u, v] for u, v in g.edges)
        edge_max_Hp = max(dHp_ell[u, v] for u, v in g.edges)
        shortcut = (edge_max_H == rep_H.max_ratio and edge_max_Hp == rep_Hp.max_ratio
                    and edge_sufficient_expansion(g, dH_ell, edge_max_H)
                    and edge_sufficient_expansion(g, dHp_ell, edge_max_Hp))

    add_H = add_Hp = True
    if with_labels and n > 1:
        add_H = bool(np.all((dH.num - 2 <= dm) & (dm <= dH.num + te.D)))
        dHp = weighted_all_pairs(te.Hprime)
        assert dHp.den == 1
        add_Hp = bool(np.all((dHp.num <= dm) & (dm <= dHp.num + te.D)))
    return TreeCertificate(rep_H, rep_Hp, add_H, add_Hp, bound_H, bound_Hp,
                           factor_H, factor_Hp, shortcut)

"""Cluster taxonomy for a candidate distortion: small/medium/big, cells, spread sons, far triples."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Graph, components_avoiding
from .layering import LayeringPartition


@dataclass(frozen=True)
class LambdaParams:
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")

    @property
    def Lambda(self) -> Fraction:
        return 4 * self.lam + 2

    @property
    def Delta(self) -> Fraction:
        return 8 * self.lam + 6

    @property
    def big(self) -> Fraction:
        return 16 * self.lam + 12

    @property
    def almost_big(self) -> Fraction:
        return 16 * self.lam + 10

    @property
    def weight(self) -> Fraction:
        return 20 * self.lam + 15


class ClusterClass(enum.Enum):
    SMALL = "small"
    MEDIUM = "medium"
    BIG = "big"


class FarTripleFound(Exception):
    def __init__(self, cid: int, triple: tuple[int, int, int]):
        super().__init__(f"cluster {cid} has pairwise far vertices {triple}")
        self.cid = cid
        self.triple = triple


@dataclass(frozen=True)
class ClusterAnalysis:
    cid: int
    cls: ClusterClass
    diameter: int
    almost_big: bool
    focal: tuple[int, int] | None
    cells: tuple[tuple[int, ...], ...]
    # one center per cell; for a small cluster, its smallest member
    centers: tuple[int, ...]
    spread: bool = False

    @property
    def bifocal(self) -> bool:
        return self.focal is not None

    def cell_of(self, v: int) -> int:
        for k, cell in enumerate(self.cells):
            if v in cell:
                return k
        raise KeyError(v)


def far_triple(members: Sequence[int], dm: np.ndarray, threshold: Fraction) -> tuple[int, int, int] | None:
    """Lexicographically smallest triple of members pairwise farther apart than ``threshold``."""
    if len(members) < 3:
        return None
    idx = np.asarray(sorted(members))
    far = dm[np.ix_(idx, idx)] > math.floor(threshold)
    fi = far.astype(np.int64)
    if not ((fi @ fi) * fi).any():
        return None
    k = len(idx)
    for i in range(k):
        for j in np.nonzero(far[i, i + 1:])[0] + i + 1:
            common = np.nonzero(far[i, j + 1:] & far[j, j + 1:])[0]
            if common.size:
                return int(idx[i]), int(idx[j]), int(idx[common[0] + j + 1])
    return None


def classify_cluster(cid: int, members: Sequence[int], dm: np.ndarray, params: LambdaParams) -> ClusterAnalysis:
    triple = far_triple(members, dm, params.Lambda)
    if triple is not None:
        raise FarTripleFound(cid, triple)
    idx = np.asarray(members)
    sub = dm[np.ix_(idx, idx)]
    diam = int(sub.max())
    if diam <= params.Lambda:
        return ClusterAnalysis(cid, ClusterClass.SMALL, diam, False, None,
                               (tuple(members),), (members[0],))
    # members are sorted, so the first maximal entry in row-major order is the
    # lexicographically smallest diametral pair
    a, b = divmod(int(np.argmax(sub)), len(members))
    c1, c2 = int(idx[a]), int(idx[b])
    near1 = sub[a] <= sub[b]
    cell1 = tuple(int(v) for v in idx[near1])
    cell2 = tuple(int(v) for v in idx[~near1])
    cls = ClusterClass.BIG if diam > params.big else ClusterClass.MEDIUM
    almost = cls is ClusterClass.MEDIUM and diam > params.almost_big
    return ClusterAnalysis(cid, cls, diam, almost, (c1, c2), (cell1, cell2), (c1, c2))


def _adjacent(g: Graph, a: Sequence[int], b: set[int]) -> bool:
    return any(v in b for u in a for v in g.adj[u])


def is_spread(child_members: Sequence[int], father: ClusterAnalysis, g: Graph) -> bool:
    if not father.bifocal:
        return False
    child = set(child_members)
    return all(_adjacent(g, cell, child) for cell in father.cells)


def fiber(g: Graph, lp: LayeringPartition, cid: int, child: int) -> frozenset[int]:
    k = lp.cluster_layer[cid]
    inside = [v for v, i in enumerate(lp.layer) if i <= k]
    probe = lp.clusters[child][0]
    for comp in components_avoiding(g, inside):
        if probe in comp:
            return comp | frozenset(lp.clusters[cid])
    raise ValueError(f"cluster {child} is not below cluster {cid}")


def is_delta_separated(analysis: ClusterAnalysis, dm: np.ndarray, delta: Fraction) -> bool:
    if not analysis.bifocal:
        raise ValueError(f"cluster {analysis.cid} is not bifocal")
    c1, c2 = (np.asarray(c) for c in analysis.cells)
    return bool(dm[np.ix_(c1, c2)].min() > delta)


def analyze_clusters(g: Graph, lp: LayeringPartition, dm: np.ndarray,
                     params: LambdaParams) -> list[ClusterAnalysis]:
    """Classify every cluster and mark spread sons. Raises :class:`FarTripleFound`."""
    out = [classify_cluster(cid, members, dm, params) for cid, members in enumerate(lp.clusters)]
    for cid in range(1, len(out)):
        father = out[lp.parent[cid]]
        out[cid] = replace(out[cid], spread=is_spread(lp.clusters[cid], father, g))
    return out


class ClusterInvariantViolation(AssertionError):
    pass


def _cell_diameter(cell: Sequence[int], dm: np.ndarray) -> int:
    idx = np.asarray(cell)
    return int(dm[np.ix_(idx, idx)].max())


def _separation(a: ClusterAnalysis, dm: np.ndarray) -> int:
    c1, c2 = (np.asarray(c) for c in a.cells)
    return int(dm[np.ix_(c1, c2)].min())


def cluster_invariant_violations(g: Graph, lp: LayeringPartition, dm: np.ndarray,
                             analyses: Sequence[ClusterAnalysis], params: LambdaParams) -> list[str]:
    """Structural facts every far-triple-free classification must satisfy.

    Checked: cell diameters of bifocal clusters are at most 2*Lambda; big
    clusters are (8lam+8)-separated and almost-big ones (8lam+6)-separated,
    with cells of diameter at most Lambda; the father of a big or almost-big
    cluster is bifocal, the cluster is spread and the father-neighbors of its
    two focal centers fall into different father cells; no son of a big
    cluster has one cell adjacent to both father cells.
    """
    lam = params.lam
    bad = []
    for a in analyses:
        if not a.bifocal:
            continue
        for cell in a.cells:
            if _cell_diameter(cell, dm) > 2 * params.Lambda:
                bad.append(f"cluster {a.cid}: cell diameter exceeds 2*Lambda")
        wide = a.cls is ClusterClass.BIG or a.almost_big
        if wide:
            need = 8 * lam + 8 if a.cls is ClusterClass.BIG else 8 * lam + 6
            if not _separation(a, dm) > need:
                bad.append(f"cluster {a.cid}: cells not {need}-separated")
            if any(_cell_diameter(cell, dm) > params.Lambda for cell in a.cells):
                bad.append(f"cluster {a.cid}: wide cluster with a cell wider than Lambda")
            if a.cid == 0:
                continue
            father = analyses[lp.parent[a.cid]]
            if not father.bifocal:
                bad.append(f"cluster {a.cid}: father {father.cid} of a wide cluster is not bifocal")
                continue
            if not a.spread:
                bad.append(f"cluster {a.cid}: wide cluster is not spread")
            fset = set(lp.clusters[father.cid])
            sides = [{father.cell_of(z) for z in g.adj[c] if z in fset} for c in a.focal]
            if sides[0] & sides[1]:
                bad.append(f"cluster {a.cid}: focal centers reach the same father cell")
    for a in analyses:
        if a.cid == 0:
            continue
        father = analyses[lp.parent[a.cid]]
        if father.cls is not ClusterClass.BIG:
            continue
        fcells = [set(c) for c in father.cells]
        for cell in a.cells:
            if all(_adjacent(g, cell, fc) for fc in fcells):
                bad.append(f"cluster {a.cid}: a cell touches both cells of big father {father.cid}")
    return bad


def assert_cluster_invariants(g: Graph, lp: LayeringPartition, dm: np.ndarray,
                          analyses: Sequence[ClusterAnalysis], params: LambdaParams) -> None:
    bad = cluster_invariant_violations(g, lp, dm, analyses, params)
    if bad:
        raise ClusterInvariantViolation("; ".join(bad))

"""Outerplanar host construction for a candidate distortion, or a witness that none exists."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import networkx as nx
import numpy as np

from .clusters import (ClusterAnalysis, ClusterClass, FarTripleFound, LambdaParams,
                       analyze_clusters)
from .distortion import (DistortionReport, edge_sufficient_expansion, edge_sufficient_noncontraction,
                         multiplicative_report)
from .graph import Graph, WeightedGraph, all_pairs_distances, weighted_all_pairs
from .layering import InvariantViolation, LayeringPartition, build_layering_partition

log = logging.getLogger(__name__)


class ObstructionKind(enum.Enum):
    FAR_TRIPLE = "FarTriple"
    TWO_BIG_SONS = "TwoBigSons"
    BIG_WITH_TWO_SPREAD_SONS = "BigWithTwoSpreadSons"


@dataclass(frozen=True)
class Obstruction:
    """Witness that no embedding into an outerplanar metric has distortion ``<= lam``.

    ``clusters`` is ``(cid,)`` for a far triple and ``(C, C', C'')`` otherwise;
    ``vertices`` holds the far triple.
    """

    kind: ObstructionKind
    lam: Fraction
    clusters: tuple[int, ...]
    vertices: tuple[int, ...] = ()


@dataclass(frozen=True)
class CaseDecision:
    child: int
    father: int
    case: int
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Embedding:
    n: int
    lam: Fraction
    weight: Fraction
    edges: tuple[tuple[int, int], ...]
    decisions: tuple[CaseDecision, ...] = ()
    analyses: tuple[ClusterAnalysis, ...] = field(default=(), repr=False)

    @property
    def host(self) -> WeightedGraph:
        return WeightedGraph.uniform(self.n, self.edges, self.weight)


OuterplanarOutcome = Union[Embedding, Obstruction]


class BoundViolation(AssertionError):
    def __init__(self, pair: tuple[int, int], message: str):
        super().__init__(f"{message} at pair {pair}")
        self.pair = pair


def _adjacent(g: Graph, a, b) -> bool:
    bs = set(b)
    return any(v in bs for u in a for v in g.adj[u])


def _father_cell(child_members, father: ClusterAnalysis, g: Graph) -> int:
    touching = [k for k, cell in enumerate(father.cells) if _adjacent(g, cell, child_members)]
    if not touching:
        raise InvariantViolation(f"cluster {father.cid} has no cell adjacent to its son")
    if len(touching) == 2:
        if father.cls is ClusterClass.BIG:
            raise InvariantViolation(
                f"a non-spread son of big cluster {father.cid} touches both of its cells")
        return father.cell_of(min(father.cells[0] + father.cells[1]))
    return touching[0]


def attach_case(child: ClusterAnalysis, child_members, father: ClusterAnalysis,
                g: Graph) -> CaseDecision:
    """Host edges joining ``child`` to its father, by the four attachment cases."""
    if child.cls is ClusterClass.SMALL or (
            child.cls is ClusterClass.MEDIUM and not (father.cls is ClusterClass.BIG and child.spread)):
        case = 1 if child.cls is ClusterClass.SMALL else 2
        c = father.centers[_father_cell(child_members, father, g)]
        edges = [(c, v) for v in child_members]
    elif child.cls is ClusterClass.MEDIUM:
        case = 3
        c1, c2 = father.centers
        edges = [(c1, v) for v in child_members]
        cell2 = set(father.cells[1])
        touching = [v for v in child_members if any(x in cell2 for x in g.adj[v])]
        # one closing edge from the second center, not a full join
        edges.append((c2, min(touching) if touching else min(child_members)))
    else:
        case = 4
        if not father.bifocal:
            raise InvariantViolation(f"big cluster {child.cid} has a non-bifocal father {father.cid}")
        orientations = []
        for a, b in ((0, 1), (1, 0)):
            if (_adjacent(g, child.cells[a], father.cells[0])
                    and _adjacent(g, child.cells[b], father.cells[1])):
                orientations.append((a, b))
        if not orientations:
            raise InvariantViolation(
                f"cells of big cluster {child.cid} do not match the cells of {father.cid}")
        if len(orientations) == 2:
            a, b = (0, 1) if child.centers[0] < child.centers[1] else (1, 0)
        else:
            a, b = orientations[0]
        c1, c2 = father.centers
        edges = [(c1, v) for v in child.cells[a]] + [(c2, v) for v in child.cells[b]]
    return CaseDecision(child.cid, father.cid, case, tuple(edges))


def approximate_outerplanar_embedding(g: Graph, s: int, lam, dm: np.ndarray | None = None,
                                      lp: LayeringPartition | None = None) -> OuterplanarOutcome:
    params = LambdaParams(Fraction(lam))
    if dm is None:
        dm = all_pairs_distances(g)
    if lp is None:
        lp = build_layering_partition(g, s)
    try:
        analyses = analyze_clusters(g, lp, dm, params)
    except FarTripleFound as exc:
        return Obstruction(ObstructionKind.FAR_TRIPLE, params.lam, (exc.cid,), exc.triple)

    kids = lp.children()
    decisions = []
    for cid, a in enumerate(analyses):
        sons = kids[cid]
        big_sons = [c for c in sons if analyses[c].cls is ClusterClass.BIG]
        if len(big_sons) >= 2:
            return Obstruction(ObstructionKind.TWO_BIG_SONS, params.lam, (cid, big_sons[0], big_sons[1]))
        if a.cls is ClusterClass.BIG:
            spread = [c for c in sons if analyses[c].spread]
            if len(spread) >= 2:
                return Obstruction(ObstructionKind.BIG_WITH_TWO_SPREAD_SONS, params.lam,
                                   (cid, spread[0], spread[1]))
        for c in sons:
            decisions.append(attach_case(analyses[c], lp.clusters[c], a, g))

    edges = sorted({(min(u, v), max(u, v)) for d in decisions for u, v in d.edges})
    return Embedding(g.n, params.lam, params.weight, tuple(edges), tuple(decisions), tuple(analyses))


def _host_nx(n: int, edges) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(edges)
    return h


def check_outerplanar_structure(n: int, edges) -> bool:
    """True iff every block is a single edge or a chordless cycle."""
    h = _host_nx(n, edges)
    if not nx.is_connected(h):
        return False
    for block in nx.biconnected_component_edges(h):
        nodes = {x for e in block for x in e}
        if len(block) > 1 and len(block) != len(nodes):
            return False
    return True


def host_cycles(n: int, edges) -> list[list[int]]:
    """Vertex sets of the cycle blocks of a host, one list per block."""
    h = _host_nx(n, edges)
    out = []
    for block in nx.biconnected_component_edges(h):
        if len(block) > 1:
            out.append(sorted({x for e in block for x in e}))
    return sorted(out)


def verify_outerplanar_bounds(g: Graph, emb: Embedding, dm: np.ndarray | None = None) -> DistortionReport:
    """Exact check of ``d_G <= d_G' <= (100 lam + 75) d_G``; raises :class:`BoundViolation`."""
    if dm is None:
        dm = all_pairs_distances(g)
    bound = 5 * emb.weight
    host = emb.host
    d_host = weighted_all_pairs(host)
    fast_expand = edge_sufficient_expansion(g, d_host, bound)
    fast_contract = edge_sufficient_noncontraction(dm, host)
    report = multiplicative_report(dm, d_host)
    if fast_expand != (report.max_ratio <= bound) or fast_contract != report.non_contracting:
        raise BoundViolation(report.worst_expansion_pair or (0, 0),
                             "edge-sufficient checks disagree with the full scan")
    if not report.non_contracting:
        raise BoundViolation(report.worst_contraction_pair, "host contracts")
    if report.max_ratio > bound:
        raise BoundViolation(report.worst_expansion_pair, f"stretch exceeds {bound}")
    return report


class InvalidWitness(AssertionError):
    pass


def require_valid_obstruction(g: Graph, lp: LayeringPartition, dm: np.ndarray, ob: Obstruction) -> None:
    if not validate_obstruction(g, lp, dm, ob):
        raise InvalidWitness(f"{ob.kind.value} witness {ob.clusters} {ob.vertices} does not recheck")


def _diam_and_cells(members, dm: np.ndarray):
    best = (-1, None)
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if dm[u, v] > best[0]:
                best = (int(dm[u, v]), (u, v))
    diam, pair = best
    if pair is None:
        return 0, None, (tuple(members),)
    c1, c2 = pair
    cell1 = tuple(x for x in members if dm[x, c1] <= dm[x, c2])
    cell2 = tuple(x for x in members if dm[x, c1] > dm[x, c2])
    return diam, pair, (cell1, cell2)


def validate_obstruction(g: Graph, lp: LayeringPartition, dm: np.ndarray, ob: Obstruction) -> bool:
    """Recheck a witness from raw distances, independently of the classifier."""
    lam = Fraction(ob.lam)
    Lambda = 4 * lam + 2
    big = 16 * lam + 12

    def pairwise_far(vs) -> bool:
        return all(dm[a, b] > Lambda for i, a in enumerate(vs) for b in vs[i + 1:])

    def no_far_triple(members) -> bool:
        ms = list(members)
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                if dm[ms[i], ms[j]] <= Lambda:
                    continue
                for k in range(j + 1, len(ms)):
                    if dm[ms[i], ms[k]] > Lambda and dm[ms[j], ms[k]] > Lambda:
                        return False
        return True

    def is_big(cid) -> bool:
        members = lp.clusters[cid]
        diam, _, _ = _diam_and_cells(members, dm)
        return diam > big and no_far_triple(members)

    if ob.kind is ObstructionKind.FAR_TRIPLE:
        (cid,) = ob.clusters
        vs = ob.vertices
        return (len(set(vs)) == 3 and all(lp.cluster_of[v] == cid for v in vs)
                and pairwise_far(list(vs)))

    c, c1, c2 = ob.clusters
    if c1 == c2 or lp.parent[c1] != c or lp.parent[c2] != c:
        return False
    if ob.kind is ObstructionKind.TWO_BIG_SONS:
        return is_big(c1) and is_big(c2)

    if not is_big(c):
        return False
    _, _, cells = _diam_and_cells(lp.clusters[c], dm)
    for son in (c1, c2):
        members = set(lp.clusters[son])
        if not all(any(v in members for u in cell for v in g.adj[u]) for cell in cells):
            return False
    return True


@dataclass(frozen=True)
class LambdaSearch:
    lam: Fraction
    outcome: Embedding
    candidates: tuple[Fraction, ...]
    tried: tuple[tuple[Fraction, str], ...]
    non_monotone: tuple[Fraction, ...] = ()


def lambda_candidates(dm: np.ndarray) -> list[Fraction]:
    """Every lambda at which some cluster threshold crosses an observed distance."""
    cands = {Fraction(1)}
    for d in np.unique(dm):
        d = int(d)
        for off, scale in ((2, 4), (6, 8), (10, 16), (12, 16)):
            x = Fraction(d - off, scale)
            if x >= 1:
                cands.add(x)
    return sorted(cands)


def find_min_feasible_lambda(g: Graph, s: int, dm: np.ndarray | None = None,
                             scan_all: bool = False) -> LambdaSearch:
    """Smallest candidate lambda at which the construction succeeds.

    Candidates are scanned upward rather than bisected, since feasibility is
    not known to be monotone. With ``scan_all`` the scan continues past the
    first success and any later obstruction is logged.
    """
    if dm is None:
        dm = all_pairs_distances(g)
    lp = build_layering_partition(g, s)
    cands = lambda_candidates(dm)
    tried = []
    found = None
    late_failures = []
    for lam in cands:
        out = approximate_outerplanar_embedding(g, s, lam, dm, lp)
        tried.append((lam, "Embedding" if isinstance(out, Embedding) else out.kind.value))
        if isinstance(out, Embedding):
            if found is None:
                found = (lam, out)
                if not scan_all:
                    break
        elif found is not None:
            late_failures.append(lam)
            log.warning("feasibility not monotone: obstruction at lambda=%s after success at %s",
                        lam, found[0])
    if found is None:
        raise InvariantViolation("no candidate lambda produced an embedding")
    return LambdaSearch(found[0], found[1], tuple(cands), tuple(tried), tuple(late_failures))

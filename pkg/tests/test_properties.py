from fractions import Fraction

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from lpembed.clusters import LambdaParams, cluster_invariant_violations, far_triple
from lpembed.distortion import edge_sufficient_expansion, multiplicative_report
from lpembed.generators import GenSpec, SplitMix64, generate
from lpembed.graph import Graph, WeightedGraph, all_pairs_distances, weighted_all_pairs
from lpembed.io import format_edge_list, load_graph
from lpembed.layering import build_layering_partition, max_cluster_diameter
from lpembed.outerplanar import (Embedding, approximate_outerplanar_embedding, check_outerplanar_structure,
                                 host_cycles, lambda_candidates, validate_obstruction, verify_outerplanar_bounds)
from lpembed.tree_embed import approximate_tree_embedding, certify_tree_embedding

from oracles import apsp, brute_far_triple, floyd_warshall, reference_clusters

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def connected_graphs(draw, max_n=24):
    n = draw(st.integers(1, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    edges = {(p, v) for v, p in zip(range(1, n), parents)}
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))
    for u, v in extra:
        if u != v:
            edges.add((min(u, v), max(u, v)))
    edges = {(min(u, v), max(u, v)) for u, v in edges}
    g = Graph.from_edges(n, sorted(edges))
    s = draw(st.integers(0, n - 1))
    return g, s


@SETTINGS
@given(connected_graphs())
def test_layering_matches_component_reference(gs):
    g, s = gs
    lp = build_layering_partition(g, s)
    assert {frozenset(c) for c in lp.clusters} == reference_clusters(g, s)
    for cid in range(1, len(lp.clusters)):
        p = lp.parent[cid]
        assert lp.cluster_layer[p] == lp.cluster_layer[cid] - 1
        assert any(lp.support[cid] in g.adj[v] for v in lp.clusters[cid])
        assert lp.support[cid] in lp.clusters[p]


@SETTINGS
@given(connected_graphs())
def test_tree_pipeline_bounds(gs):
    g, s = gs
    dm = all_pairs_distances(g)
    te = approximate_tree_embedding(g, s, dm)
    cert = certify_tree_embedding(g, te, dm)
    assert cert.ok
    # the unit tree H is exact from the root
    dH = weighted_all_pairs(te.H)
    assert all(dH[s, v] == dm[s, v] for v in range(g.n))
    assert te.D == max_cluster_diameter(te.lp, dm)


@SETTINGS
@given(connected_graphs(max_n=40), st.integers(0, 2 ** 32))
def test_far_triple_is_exact(gs, seed):
    g, _ = gs
    dm = all_pairs_distances(g)
    rng = SplitMix64(seed)
    members = sorted({rng.below(g.n) for _ in range(min(g.n, 12))})
    threshold = Fraction(rng.below(8), 1 + rng.below(2))
    assert far_triple(members, dm, threshold) == brute_far_triple(members, dm.tolist(), threshold)


@st.composite
def weighted_graphs(draw):
    n = draw(st.integers(1, 10))
    real = draw(st.integers(1, n))
    weights = st.fractions(min_value=0, max_value=5, max_denominator=6)
    edges = [(draw(st.integers(0, v - 1)), v, draw(weights)) for v in range(1, n)]
    for _ in range(draw(st.integers(0, n))):
        u, v = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if u != v:
            edges.append((u, v, draw(weights)))
    return WeightedGraph(n, tuple(edges), real)


@SETTINGS
@given(weighted_graphs())
def test_weighted_distances_match_floyd_warshall(wg):
    d = weighted_all_pairs(wg)
    ref = floyd_warshall(wg.n_nodes, wg.edges)
    k = wg.n_real
    assert all(d[i, j] == ref[i][j] for i in range(k) for j in range(k))


@SETTINGS
@given(connected_graphs(), st.integers(1, 4), st.integers(1, 3))
def test_edge_check_agrees_with_full_matrix(gs, num, den):
    g, s = gs
    assume(g.n > 1)
    dm = all_pairs_distances(g)
    te = approximate_tree_embedding(g, s, dm)
    host = weighted_all_pairs(te.Hprime_ell)
    bound = Fraction(num * te.m, den)
    assert edge_sufficient_expansion(g, host, bound) == multiplicative_report(dm, host).within(bound)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(3, 60), st.integers(0, 6), st.integers(0, 2 ** 32), st.data())
def test_outerplanar_outcomes_are_sound(n, chords, seed, data):
    chords = min(chords, n * (n - 1) // 2 - (n - 1))
    g = generate(GenSpec("treePlusChords", n=n, chords=chords, seed=seed))
    dm = all_pairs_distances(g)
    s = data.draw(st.integers(0, n - 1))
    lp = build_layering_partition(g, s)
    lam = data.draw(st.sampled_from(lambda_candidates(dm)))
    out = approximate_outerplanar_embedding(g, s, lam, dm, lp)
    if isinstance(out, Embedding):
        assert check_outerplanar_structure(g.n, out.edges)
        cycles = host_cycles(g.n, out.edges)
        assert all(len(c) % 2 == 0 for c in cycles)
        on_cycles = [v for c in cycles for v in c]
        assert len(on_cycles) == len(set(on_cycles))
        verify_outerplanar_bounds(g, out, dm)
        assert cluster_invariant_violations(g, lp, dm, out.analyses, LambdaParams(lam)) == []
    else:
        assert validate_obstruction(g, lp, dm, out)


@SETTINGS
@given(st.integers(0, 2 ** 64 - 1), st.integers(1, 1000))
def test_below_in_range(seed, bound):
    rng = SplitMix64(seed)
    assert 0 <= rng.below(bound) < bound


@SETTINGS
@given(connected_graphs())
def test_edge_list_round_trip(gs):
    g, _ = gs
    names = [f"n{i}" for i in range(g.n)]
    text = format_edge_list(names, g.edges) + "".join(f"{x}\n" for x in names)
    g2, names2 = load_graph(text)
    # names are renumbered by first appearance; compare distance matrices under the renaming
    perm = [names2.index(x) for x in names]
    d1 = np.asarray(apsp(g))
    d2 = all_pairs_distances(g2)[np.ix_(perm, perm)]
    assert (d1 == d2).all()

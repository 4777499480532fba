import pytest

from lpembed.graph import Graph, all_pairs_distances
from lpembed.layering import (InvariantViolation, LayeringPartition, build_layering_partition,
                              cluster_diameters, format_layering, layering_tree, max_cluster_diameter)

from helpers import complete, cycle, path, star
from oracles import reference_clusters


def clusters_as_sets(lp):
    return {frozenset(c) for c in lp.clusters}


def test_tree_clusters_are_singletons():
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
    lp = build_layering_partition(g, 1)
    assert all(len(c) == 1 for c in lp.clusters)
    # support of a singleton is its BFS parent
    for cid in range(1, len(lp.clusters)):
        v = lp.clusters[cid][0]
        assert lp.support[cid] in g.adj[v]
        assert lp.layer[lp.support[cid]] == lp.layer[v] - 1


def test_six_cycle_clusters():
    g = cycle(6)
    lp = build_layering_partition(g, 0)
    assert [list(c) for c in lp.clusters] == [[0], [1, 5], [2, 4], [3]]
    assert clusters_as_sets(lp) == reference_clusters(g, 0)
    assert list(lp.parent) == [-1, 0, 1, 2]
    # {v2, v4} has candidate supports v1 and v5
    assert lp.support[2] == 1
    assert lp.support[1] == 0


def test_k4_clusters():
    g = complete(4)
    lp = build_layering_partition(g, 0)
    assert clusters_as_sets(lp) == {frozenset([0]), frozenset([1, 2, 3])}
    assert lp.support[1] == 0


def test_star_from_center_has_singleton_children():
    lp = build_layering_partition(star(3), 0)
    assert len(lp.clusters) == 4
    assert all(lp.parent[c] == 0 for c in range(1, 4))


def test_path_gamma_is_a_path():
    lp = build_layering_partition(path(5), 0)
    assert list(lp.parent) == [-1, 0, 1, 2, 3]


def test_cluster_ids_ordered_by_layer_then_min_member():
    lp = build_layering_partition(cycle(9), 4)
    keys = [(lp.cluster_layer[c], min(m)) for c, m in enumerate(lp.clusters)]
    assert keys == sorted(keys)
    assert lp.clusters[0] == (4,)


def test_diameters():
    g = cycle(6)
    lp = build_layering_partition(g, 0)
    dm = all_pairs_distances(g)
    assert cluster_diameters(lp, dm) == [0, 2, 2, 0]
    assert max_cluster_diameter(lp, dm) == 2
    tree = Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    assert max_cluster_diameter(build_layering_partition(tree, 0), all_pairs_distances(tree)) == 0


def test_hundred_cycle_max_cluster_diameter_is_fifty():
    g = cycle(100)
    lp = build_layering_partition(g, 0)
    dm = all_pairs_distances(g)
    brute = max(max(int(dm[u, v]) for u in c for v in c) for c in lp.clusters)
    assert brute == 50
    assert max_cluster_diameter(lp, dm) == 50


def test_layering_tree_rejects_bad_partition():
    g = cycle(4)
    lp = build_layering_partition(g, 0)
    # split {1, 3} into two clusters and merge layer 2 into the wrong parent structure
    bad = LayeringPartition(
        root=0, layer=lp.layer, cluster_of=(0, 1, 3, 2),
        clusters=((0,), (1,), (3,), (2,)), cluster_layer=(0, 1, 1, 2),
        parent=(-1, 0, 0, 1), support=(-1, 0, 0, 1))
    with pytest.raises(InvariantViolation):
        layering_tree(bad, g)


def test_format_layering():
    g = cycle(6)
    lp = build_layering_partition(g, 0)
    names = [f"v{i}" for i in range(6)]
    text = format_layering(lp, names)
    assert text.splitlines()[1] == "cluster 1 layer=1 parent=0 support=v0 members=v1,v5"

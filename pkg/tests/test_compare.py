import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hgm.compare import (degree_flip_bound, edge_flip_bound, ged_bound, iso_distance,
                         tensor_distance)
from hgm.errors import HGMError
from hgm.generators import complete, cycle, erdos_renyi, path, petersen
from hgm.graph import Graph, parse_edge_list, permute_graph, toggle_edge

from conftest import graphs, random_connected
from oracles import bfs_distances, graph_edges, tensor_l1


def dist(g):
    return bfs_distances(g.n, graph_edges(g))


def test_identity_and_simple_pair():
    g = petersen()
    r = tensor_distance(g, g)
    assert r.d_ten == 0 and r.disagreeing_pairs == 0 and r.d_ten_normalized == 0
    r = tensor_distance(path(3), complete(3))
    # oracle: only (0, 2) and (2, 0) move, from scale 2 to scale 1
    assert r.d_ten == 4 == tensor_l1(dist(path(3)), dist(complete(3)))
    assert r.disagreeing_pairs == 2
    assert r.d_ten_normalized == 4 / (3 * 2 * 2)
    assert r.slices_path_used


def test_rejects_different_n():
    with pytest.raises(HGMError, match="different vertex counts"):
        tensor_distance(path(3), path(4))


def test_disconnected_pairs_count_once():
    g = parse_edge_list("0 1\n1 2\n2 3")
    h = parse_edge_list("0 1\n2 3")
    r = tensor_distance(g, h)
    dense_g = np.stack([np.array(dist(g)) == k for k in (1, 2, 3)], axis=-1)
    dense_h = np.stack([np.array(dist(h)) == k for k in (1, 2, 3)], axis=-1)
    assert r.d_ten == int((dense_g != dense_h).sum()) == 8
    assert r.disagreeing_pairs == 8


def test_iso_distance():
    rng = np.random.default_rng(0)
    g = random_connected(8, 0.4, seed=1)
    assert iso_distance(g, permute_graph(g, rng.permutation(8))) == 0
    assert iso_distance(path(3), complete(3)) == 4
    with pytest.raises(HGMError, match="exponential cost guard"):
        iso_distance(cycle(10), path(10))
    assert iso_distance(cycle(10), cycle(10), max_n=10) == 0


def test_iso_brute_force_oracle():
    g, h = path(5), parse_edge_list("0 1\n0 2\n0 3\n3 4")
    dg, dh = np.array(dist(g)), np.array(dist(h))
    best = min(tensor_l1(dg, dh[np.ix_(p, p)]) for p in map(list, itertools.permutations(range(5))))
    assert iso_distance(g, h) == best


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=3, max_n=7), graphs(min_n=3, max_n=7))
def test_iso_below_labelled(g, h):
    if g.n != h.n:
        return
    assert iso_distance(g, h) <= tensor_distance(g, h).d_ten


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 24).flatmap(lambda n: st.tuples(graphs(n, n), graphs(n, n))))
def test_paths_agree_with_dense_oracle(pair):
    g, h = pair
    r = tensor_distance(g, h)  # raises if slice and distance paths disagree
    assert r.d_ten == tensor_l1(dist(g), dist(h)) if r.depth else r.d_ten == 0


def test_edge_flip_complete_graph():
    obs, bound, deg = edge_flip_bound(complete(4), (0, 1))
    assert (obs, bound) == (4, 34)  # M_0 = 1, M_1 = 4 in K_4
    assert deg == degree_flip_bound(3, 2) == 2 * 9 * (1 + 4)
    assert degree_flip_bound(2, 3) == 2 * (1 + 9 + 25)


def test_toggle_round_trip():
    g = cycle(8)
    h = toggle_edge(toggle_edge(g, 0, 4), 0, 4)
    assert tensor_distance(g, h).d_ten == 0


def test_edge_flip_requires_connectivity():
    with pytest.raises(HGMError):
        edge_flip_bound(path(4), (1, 2))
    obs, bound, _ = edge_flip_bound(path(4), (1, 2), allow_disconnected=True)
    assert obs <= bound


def test_edge_flip_bound_random():
    rng = np.random.default_rng(7)
    g = random_connected(40, 0.1, seed=3)
    for _ in range(100):
        a, b = rng.choice(40, 2, replace=False)
        h = toggle_edge(g, int(a), int(b))
        try:
            obs, bound, deg = edge_flip_bound(g, (int(a), int(b)))
        except HGMError:
            continue
        assert obs <= bound <= deg + 1e-9
        g = h


def test_ged_bound():
    rng = np.random.default_rng(11)
    for trial in range(30):
        g = random_connected(24, 0.2, seed=trial)
        h = g
        r = int(rng.integers(1, 6))
        for _ in range(r):
            a, b = rng.choice(24, 2, replace=False)
            h = toggle_edge(h, int(a), int(b))
        obs, bound, toggles = ged_bound(g, h)
        assert toggles <= r
        assert obs <= bound


def test_metric_axioms_small():
    rng = np.random.default_rng(5)
    for _ in range(50):
        gs = [erdos_renyi(12, 0.3, seed=int(rng.integers(1 << 30))) for _ in range(3)]
        d = {(i, j): tensor_distance(gs[i], gs[j]).d_ten for i in range(3) for j in range(3)}
        for i in range(3):
            assert d[i, i] == 0
            for j in range(3):
                assert d[i, j] == d[j, i] >= 0
                assert (d[i, j] == 0) == (gs[i] == gs[j])
                for k in range(3):
                    assert d[i, k] <= d[i, j] + d[j, k]


def test_permutation_equivariance():
    rng = np.random.default_rng(2)
    g, h = random_connected(16, 0.25, seed=1), random_connected(16, 0.25, seed=2)
    base = tensor_distance(g, h).d_ten
    for _ in range(10):
        p = rng.permutation(16)
        assert tensor_distance(permute_graph(g, p), permute_graph(h, p)).d_ten == base


def test_empty_graphs():
    e = Graph.from_edges(4, [])
    r = tensor_distance(e, e)
    assert r.d_ten == 0 and r.depth == 0 and r.d_ten_normalized == 0

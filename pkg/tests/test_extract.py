from __future__ import annotations

from fractions import Fraction

import pytest

from minorforge import (
    average_degree,
    complete_graph,
    dense_connected_minor,
    dense_connected_minor_with_trace,
    disjoint_k_connected_collection,
    graph_from_edge_list,
    induced_subgraph,
    k_connected_subgraph,
    mader_min_degree_minor,
    mader_min_degree_minor_with_trace,
    peel_dense_subset,
    random_graph,
    replay_extraction,
    require_valid,
    vertex_connectivity,
)
from minorforge.errors import (
    HypothesisViolatedError,
    InsufficientError,
)
from minorforge.rng import Rng, derive_seed

from conftest import petersen


def _two_cliques(k: int):
    """Disjoint K_k + K_k with one bridging edge."""
    edges = []
    for base in (0, k):
        edges += [(base + i, base + j) for i in range(k) for j in range(i + 1, k)]
    edges.append((k - 1, k))
    return graph_from_edge_list(2 * k, sorted(edges))


def test_mader_on_complete_graph():
    model = mader_min_degree_minor(complete_graph(6), 6)
    pat = require_valid(model).pattern
    assert pat.n == 6 and pat.m == 15


def test_mader_postconditions_on_seeded_graphs():
    for i in range(30):
        rng = Rng(derive_seed(30, i))
        d = (6, 8, 10)[i % 3]
        while True:
            n = 20 + rng.below(41)
            p = Fraction(rng.below(5) + 4, 10)
            g = random_graph(n, p, rng.spawn(rng.below(1 << 30)))
            if average_degree(g) >= d - 1:
                break
        model = mader_min_degree_minor(g, d)
        pat = require_valid(model).pattern
        assert 2 <= pat.n <= d
        assert 2 * pat.min_degree() >= d


def test_mader_rejects_sparse_host():
    path = graph_from_edge_list(6, [(i, i + 1) for i in range(5)])
    with pytest.raises(HypothesisViolatedError):
        mader_min_degree_minor(path, 6)
    with pytest.raises(HypothesisViolatedError):
        mader_min_degree_minor(complete_graph(5), 1)


def test_trace_replays_to_the_same_model():
    rng = Rng(derive_seed(31, 0))
    g = random_graph(24, Fraction(1, 2), rng)
    model, trace = mader_min_degree_minor_with_trace(g, 8)
    replayed = replay_extraction(g, trace)
    assert replayed.fragments == model.fragments
    assert trace.final_model.fragments == model.fragments


def test_dense_connected_contract():
    # two cliques banged together force the cut-restriction step
    g = _two_cliques(6)
    model = dense_connected_minor(g, 6)
    pat = require_valid(model).pattern
    assert 2 <= pat.n <= 6
    assert 3 * pat.min_degree() >= 6
    assert 6 * vertex_connectivity(pat) >= 6


def test_dense_connected_on_seeded_graphs():
    for i in range(20):
        rng = Rng(derive_seed(32, i))
        d = (6, 8)[i % 2]
        while True:
            n = 20 + rng.below(31)
            g = random_graph(n, Fraction(3, 5), rng.spawn(rng.below(1 << 30)))
            if average_degree(g) >= d:
                break
        model, trace = dense_connected_minor_with_trace(g, d)
        pat = require_valid(model).pattern
        assert pat.n <= d
        assert 3 * pat.min_degree() >= d
        assert 6 * vertex_connectivity(pat) >= d
        assert replay_extraction(g, trace).fragments == model.fragments


def test_peel_dense_subset_postcondition():
    g = petersen()
    kept = peel_dense_subset(g, range(10), 3, 1)
    kept_set = set(kept)
    for v in kept:
        inside = len(g.neighbors(v) & kept_set)
        assert inside >= max(1, Fraction(g.degree(v), 3))
    # a guaranteed-surplus instance stays nonempty
    dense = complete_graph(12)
    assert peel_dense_subset(dense, range(12), 3, 2)
    with pytest.raises(HypothesisViolatedError):
        peel_dense_subset(g, range(10), 2, 1)


def test_k_connected_subgraph():
    g = complete_graph(10)
    keep = k_connected_subgraph(g, 2)
    sub, _ = induced_subgraph(g, keep)
    assert vertex_connectivity(sub) >= 2
    with pytest.raises(HypothesisViolatedError):
        k_connected_subgraph(petersen(), 1)  # average degree 3 < 4


def test_disjoint_collection_and_insufficiency():
    g = _two_cliques(9)
    found = disjoint_k_connected_collection(g, 2, max_size=9, want=2)
    assert len(found) == 2
    assert not set(found[0]) & set(found[1])
    for keep in found:
        sub, _ = induced_subgraph(g, keep)
        assert vertex_connectivity(sub) >= 2
    with pytest.raises(InsufficientError) as info:
        disjoint_k_connected_collection(g, 2, max_size=9, want=3)
    assert info.value.found == 2

from __future__ import annotations

from fractions import Fraction

import pytest

from minorforge import (
    bipartite_random_contraction,
    build_dense_minor,
    build_dense_minor_bipartite,
    build_dense_minor_in_dense_graph,
    complete_graph,
    connect_within,
    graph_from_edge_list,
    hitting_set_check,
    induced_subgraph,
    is_eps_t_dense,
    random_bipartite,
    random_graph,
    require_valid,
    sample_hitting_set,
)
from minorforge.errors import (
    AttemptsExhaustedError,
    DisconnectedHostError,
    HypothesisViolatedError,
    PathTooLongError,
)
from minorforge.params import undominated_bound
from minorforge.rng import Rng, derive_seed

from conftest import brute_connected, petersen


def test_hitting_set_check_by_hand():
    g = complete_graph(6)
    # s = {0,1}: contained in the first set only; nothing is undominated
    covered, undominated, ok = hitting_set_check(
        g, {0, 1}, [{0, 1, 2}, {3, 4}], Fraction(1, 2), 0
    )
    assert covered == 1
    assert undominated == 0
    assert ok  # 1 <= (1/2)*2 and 0 <= 0
    _, _, strict = hitting_set_check(
        g, {0, 1}, [{0, 1, 2}, {3, 4}], Fraction(1, 4), 0
    )
    assert not strict  # 1 > (1/4)*2


def test_hitting_set_undominated_count():
    star = graph_from_edge_list(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    covered, undominated, _ = hitting_set_check(
        star, {1}, [], Fraction(1, 2), 5
    )
    assert covered == 0
    assert undominated == 3  # 2, 3, 4 have no neighbor at the leaf


def test_sample_hitting_set_on_near_complete_host():
    rng = Rng(derive_seed(50, 0))
    g = complete_graph(36)
    a_list = [{1, 2}, {5, 6}, {10}]  # sizes within the eps^(1/r)*n/12 bound
    result = sample_hitting_set(g, a_list, 2, Fraction(1, 2), 36, rng)
    assert 1 <= len(result.s) <= 2
    cap = undominated_bound(Fraction(1, 2), 2, 36)
    covered, undominated, ok = hitting_set_check(
        g, result.s, a_list, Fraction(1, 2), cap
    )
    assert ok
    assert (covered, undominated) == (result.covered_failures, result.undominated)
    replay = sample_hitting_set(
        g, a_list, 2, Fraction(1, 2), 36, Rng(derive_seed(50, 0))
    )
    assert replay.s == result.s and replay.attempts == result.attempts


def test_sample_hitting_set_validates():
    g = complete_graph(10)
    rng = Rng(0)
    with pytest.raises(HypothesisViolatedError):
        sample_hitting_set(g, [], 0, Fraction(1, 2), 10, rng)
    with pytest.raises(HypothesisViolatedError):
        sample_hitting_set(g, [], 2, Fraction(2), 10, rng)
    with pytest.raises(HypothesisViolatedError):
        sample_hitting_set(g, [], 2, Fraction(1, 2), 100, rng)  # scale > 6n
    with pytest.raises(HypothesisViolatedError):
        # one candidate set above the size bound
        sample_hitting_set(g, [set(range(10))], 2, Fraction(1, 2), 10, rng)


def test_sample_hitting_set_exhaustion_warns_and_raises():
    # an empty graph leaves everything undominated, so no draw can pass
    g = graph_from_edge_list(8, [])
    with pytest.warns(UserWarning):
        with pytest.raises(AttemptsExhaustedError) as info:
            sample_hitting_set(g, [], 2, Fraction(1, 4), 8, Rng(3), max_attempts=5)
    assert info.value.attempts == 5
    assert info.value.hypothesis_ok is False


def test_connect_within():
    g = petersen()
    out = connect_within(g, {0, 2})
    assert set(out) >= {0, 2}
    assert brute_connected(g, out)
    split = graph_from_edge_list(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedHostError):
        connect_within(split, {0, 2})
    far = graph_from_edge_list(6, [(i, i + 1) for i in range(5)])
    with pytest.raises(PathTooLongError):
        connect_within(far, {0, 5}, max_path_len=2)


def test_build_dense_minor_fast_path_on_complete_host():
    model = build_dense_minor(
        complete_graph(24), Fraction(1, 4), 3, Fraction(1, 4), Rng(1)
    )
    pat = require_valid(model).pattern
    assert is_eps_t_dense(pat, Fraction(1, 4), 3)


def test_build_dense_minor_seeded_random_host():
    g = random_graph(120, Fraction(1, 2), Rng(derive_seed(51, 0)))
    model = build_dense_minor(g, Fraction(1, 10), 4, Fraction(6), Rng(derive_seed(51, 1)))
    pat = require_valid(model).pattern
    assert pat.n == 4
    assert is_eps_t_dense(pat, Fraction(1, 10), 4)
    again = build_dense_minor(
        g, Fraction(1, 10), 4, Fraction(6), Rng(derive_seed(51, 1))
    )
    assert again.fragments == model.fragments


def test_build_dense_minor_validates():
    g = complete_graph(20)
    with pytest.raises(HypothesisViolatedError):
        build_dense_minor(g, Fraction(1, 2), 3, Fraction(1), Rng(0))  # eps cap
    with pytest.raises(HypothesisViolatedError):
        build_dense_minor(g, Fraction(1, 4), 1, Fraction(1), Rng(0))
    sparse = graph_from_edge_list(20, [(i, i + 1) for i in range(19)])
    with pytest.raises(HypothesisViolatedError):
        build_dense_minor(sparse, Fraction(1, 4), 3, Fraction(8), Rng(0))


def test_build_in_dense_graph():
    g = complete_graph(40)
    model = build_dense_minor_in_dense_graph(g, Fraction(1, 5), 3, Rng(7))
    assert is_eps_t_dense(require_valid(model).pattern, Fraction(1, 5), 3)
    with pytest.raises(HypothesisViolatedError):
        build_dense_minor_in_dense_graph(g, Fraction(1, 5), 4, Rng(7))  # n < 12t


def test_bipartite_random_contraction():
    g = random_bipartite(6, 6, Fraction(1), Rng(0))
    side_a = tuple(range(6))
    side_b = tuple(range(6, 12))
    roots = {6, 7, 8}
    pattern, model = bipartite_random_contraction(g, side_a, side_b, 0, roots, Rng(4))
    assert pattern.n == 3
    require_valid(model)
    used = model.used_vertices()
    assert roots <= used
    assert 0 not in used
    with pytest.raises(HypothesisViolatedError):
        bipartite_random_contraction(g, side_a, side_b, 6, roots, Rng(4))


def test_build_dense_minor_bipartite():
    g = random_bipartite(40, 40, Fraction(4, 5), Rng(derive_seed(52, 0)))
    side_a = tuple(range(40))
    side_b = tuple(range(40, 80))
    model = build_dense_minor_bipartite(
        g, side_a, side_b, Fraction(1, 5), 3, Fraction(1, 8), Rng(derive_seed(52, 1))
    )
    pat = require_valid(model).pattern
    assert is_eps_t_dense(pat, Fraction(1, 5), 3)
    with pytest.raises(HypothesisViolatedError):
        build_dense_minor_bipartite(
            g, side_a, side_b, Fraction(1, 5), 3, Fraction(10**6), Rng(0)
        )

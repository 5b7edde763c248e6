from __future__ import annotations

from fractions import Fraction

import pytest

from minorforge import (
    MinorModel,
    attached_model_search,
    complement_max_degree,
    complete_graph,
    find_separation_avoiding,
    graph_from_edge_list,
    is_attached_to,
    random_graph,
    require_valid,
    rooted_from_minor,
)
from minorforge.errors import HypothesisViolatedError
from minorforge.rng import Rng, derive_seed

from conftest import all_separations


def _brute_avoiding_separation_exists(g, s, t_order, d_sets, n_avoid):
    s = frozenset(s)
    for a, b in all_separations(g):
        if not s <= a:
            continue
        if len(a & b) >= t_order:
            continue
        far = b - a
        if sum(1 for d in d_sets if d <= far) > n_avoid:
            return True
    return False


def _random_instance(rng):
    n = 5 + rng.below(4)
    g = random_graph(n, Fraction(2, 5), rng.spawn(1))
    verts = list(range(n))
    rng.shuffle(verts)
    s = frozenset(verts[: 1 + rng.below(2)])
    pool = [v for v in verts if v not in s]
    d_sets = []
    at = 0
    for _ in range(rng.below(4)):
        size = 1 + rng.below(2)
        if at + size > len(pool):
            break
        d_sets.append(frozenset(pool[at: at + size]))
        at += size
    t_order = 1 + rng.below(3)
    n_avoid = rng.below(3)
    return g, s, t_order, d_sets, n_avoid


def test_separation_search_matches_brute_force():
    found_some = refused_some = False
    for i in range(50):
        rng = Rng(derive_seed(40, i))
        g, s, t_order, d_sets, n_avoid = _random_instance(rng)
        got = find_separation_avoiding(g, s, t_order, d_sets, n_avoid)
        expect = _brute_avoiding_separation_exists(g, s, t_order, d_sets, n_avoid)
        if got is None:
            assert not expect
            refused_some = True
        else:
            assert expect
            found_some = True
            assert got.violations(g) == []
            assert s <= got.a
            assert got.order < t_order
            far = got.b - got.a
            assert sum(1 for d in d_sets if d <= far) > n_avoid
    assert found_some and refused_some  # the ensemble exercises both branches


def test_separation_search_validates_inputs():
    g = complete_graph(5)
    with pytest.raises(HypothesisViolatedError):
        find_separation_avoiding(g, {0}, 2, [set()], 0)
    with pytest.raises(HypothesisViolatedError):
        find_separation_avoiding(g, {0}, 2, [{1, 2}, {2, 3}], 0)
    with pytest.raises(HypothesisViolatedError):
        find_separation_avoiding(g, {0}, 2, [{1}], -1)
    # more subfamilies required than sets given: vacuously none
    assert find_separation_avoiding(g, {0}, 2, [{1}], 3) is None


def test_attached_search_on_complete_host():
    g = complete_graph(10)
    model = attached_model_search(g, (0, 1), [{v} for v in range(10)], 0)
    report = require_valid(model)
    assert len(model.fragments) == 8
    assert is_attached_to(model, (0, 1))
    assert complement_max_degree(report.pattern) == 0


def test_attached_search_on_seeded_dense_graphs():
    done = 0
    i = 0
    while done < 12:
        rng = Rng(derive_seed(41, i))
        i += 1
        n = 8 + rng.below(5)
        g = random_graph(n, Fraction(4, 5), rng.spawn(1))
        n_avoid = complement_max_degree(g)
        t = 1 + rng.below(2)
        if n < n_avoid + 2 * t or not g.is_connected():
            continue
        s = tuple(range(t))
        model = attached_model_search(g, s, [{v} for v in range(n)], n_avoid)
        report = require_valid(model)
        assert len(model.fragments) == n - t
        assert is_attached_to(model, s)
        assert complement_max_degree(report.pattern) <= n_avoid
        done += 1


def test_attached_search_rejects_blocked_host():
    # two K_5 blocks joined by a single edge; one cut vertex shields the far side
    edges = []
    for base in (0, 5):
        edges += [(base + i, base + j) for i in range(5) for j in range(i + 1, 5)]
    edges.append((4, 5))
    g = graph_from_edge_list(10, sorted(edges))
    d_list = [{v} for v in (5, 6, 7, 8, 9)]
    with pytest.raises(HypothesisViolatedError) as info:
        attached_model_search(g, (0, 1), d_list, 0)
    assert info.value.evidence is not None  # carries the separation


def test_attached_search_validates_inputs():
    g = complete_graph(6)
    singles = [{v} for v in range(6)]
    with pytest.raises(HypothesisViolatedError):
        attached_model_search(g, (), singles, 0)
    with pytest.raises(HypothesisViolatedError):
        attached_model_search(g, (0,), [{1}, {1, 2}], 0)
    with pytest.raises(HypothesisViolatedError):
        attached_model_search(g, (0, 1, 2), singles, 2)  # 6 < 2 + 2*3


def test_rooted_from_minor():
    g = complete_graph(12)
    j_model = MinorModel(g, [{v} for v in range(12)])
    model = rooted_from_minor(g, (0, 1, 2), j_model, 0)
    assert len(model.fragments) == 9
    assert is_attached_to(model, (0, 1, 2))


def test_rooted_from_minor_demands_connectivity():
    # two K_6 blocks and one bridge: the degree and count hypotheses hold
    # but a single vertex separates the sides
    edges = []
    for base in (0, 6):
        edges += [(base + i, base + j) for i in range(6) for j in range(i + 1, 6)]
    edges.append((5, 6))
    g = graph_from_edge_list(12, sorted(edges))
    j_model = MinorModel(g, [{v} for v in range(12)])
    with pytest.raises(HypothesisViolatedError) as info:
        rooted_from_minor(g, (0, 6), j_model, 6)
    assert info.value.evidence is not None  # names a cutset

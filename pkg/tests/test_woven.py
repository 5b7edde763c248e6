from __future__ import annotations

from fractions import Fraction

import pytest

from minorforge import (
    MinorModel,
    PathFamily,
    audit_path_family,
    check_wovenness,
    complete_graph,
    graph_from_edge_list,
    is_eps_t_dense,
    is_rooted_at,
    pattern_graph,
    realize_woven_from_dense_minor,
    require_valid,
    weave,
)
from minorforge.errors import (
    HypothesisViolatedError,
    TooLargeError,
    WovennessFailedError,
)
from minorforge.rng import Rng


def _cut_gadget():
    """Two K_4 blocks glued on vertices {0, 1}: every route between the
    outer parts must pass the shared pair."""
    edges = set()
    for block in ({0, 1, 2, 3}, {0, 1, 4, 5}):
        bs = sorted(block)
        for i in range(4):
            for j in range(i + 1, 4):
                edges.add((bs[i], bs[j]))
    return graph_from_edge_list(6, sorted(edges))


def test_complete_graph_is_woven():
    report = check_wovenness(complete_graph(5), Fraction(1, 2), 1, 1)
    assert report.verdict == "proven"
    assert report.mode == "exhaustive"
    assert report.counterexample is None
    # roots, sources, targets each range over all five vertices: overlaps
    # with the roots and the trivial source=target pair are admissible
    assert report.checked == 5 * 5 * 5
    for rec in report.records[:5]:
        assert rec.ok


def test_gadget_is_refuted_with_certificate():
    g = _cut_gadget()
    report = check_wovenness(g, Fraction(1, 2), 2, 1)
    assert report.verdict == "refuted-with-counterexample"
    bad = report.counterexample
    assert bad is not None
    assert not bad.ok
    # the stored triple really separates: both glue vertices are roots, so
    # any source left of the cut cannot reach a target on the right
    assert set(bad.roots) == {0, 1}


def test_sampled_mode_finds_counterexamples_too():
    g = _cut_gadget()
    report = check_wovenness(
        g, Fraction(1, 2), 2, 1, mode="sampled", trials=400, rng=Rng(5)
    )
    assert report.verdict == "refuted-with-counterexample"
    assert report.mode == "sampled"


def test_sampled_mode_on_good_host():
    report = check_wovenness(
        complete_graph(6), Fraction(1, 2), 1, 1, mode="sampled", trials=20, rng=Rng(1)
    )
    assert report.verdict == "no-counterexample-found"
    assert report.checked == 20


def test_exhaustive_cap_and_validation():
    with pytest.raises(TooLargeError):
        check_wovenness(complete_graph(10), Fraction(1, 2), 1, 1)
    with pytest.raises(HypothesisViolatedError):
        check_wovenness(complete_graph(5), Fraction(1, 2), 0, 1)
    with pytest.raises(HypothesisViolatedError):
        check_wovenness(complete_graph(5), Fraction(0), 1, 1)
    with pytest.raises(HypothesisViolatedError):
        check_wovenness(complete_graph(5), Fraction(1, 2), 1, -1)


def test_weave_reroutes_through_fenced_vertices():
    g = complete_graph(8)
    fence = (0, 1, 2, 3, 4)
    prior = PathFamily(((5, 2, 6), (7,)), "linkage", pairs=((5, 6), (7, 7)))
    assert audit_path_family(g, prior) == []
    model, rerouted = weave(g, fence, roots=(0, 1), prior_linkage=prior)
    require_valid(model)
    assert is_rooted_at(model, (0, 1))
    assert is_eps_t_dense(pattern_graph(model), Fraction(1, 2), 2)
    assert audit_path_family(g, rerouted) == []
    assert rerouted.pairs == prior.pairs
    # endpoints survive, the visited fence interior may be swapped out
    for old, new in zip(prior.paths, rerouted.paths):
        assert old[0] == new[0] and old[-1] == new[-1]
    assert not model.used_vertices() & rerouted.vertices() - {0, 1}


def test_weave_validates_inputs():
    g = complete_graph(8)
    prior = PathFamily(((5, 2, 6),), "linkage", pairs=((5, 6),))
    with pytest.raises(HypothesisViolatedError):
        weave(g, (0, 1, 2), roots=(0, 7), prior_linkage=prior)  # root off fence
    bad_kind = PathFamily(((5, 2, 6),), "between", s={5}, t={6})
    with pytest.raises(HypothesisViolatedError):
        weave(g, (0, 1, 2), roots=(0,), prior_linkage=bad_kind)


def test_weave_rejects_bogus_realizer():
    g = complete_graph(8)
    prior = PathFamily(((5, 2, 6),), "linkage", pairs=((5, 6),))

    def liar(sub, roots_sub, pairs_sub):
        # claims a model that is not rooted where it should be
        model = MinorModel(sub, [frozenset({v}) for v in range(2)])
        fam = PathFamily(
            tuple((s,) if s == t else (s, t) for s, t in pairs_sub),
            "linkage",
            pairs=tuple(pairs_sub),
        )
        return model, fam

    with pytest.raises(WovennessFailedError):
        weave(g, (0, 1, 2, 3), roots=(3,), prior_linkage=prior, realizer=liar)


def test_realize_from_dense_minor_end_to_end():
    g = complete_graph(80)
    request = ((0, 1), tuple(range(60, 66)), tuple(range(66, 72)))
    model, fam = realize_woven_from_dense_minor(g, Fraction(1, 2), 2, request)
    require_valid(model)
    assert is_rooted_at(model, request[0])
    assert is_eps_t_dense(pattern_graph(model), Fraction(1, 2), 2)
    assert audit_path_family(g, fam) == []
    assert fam.pairs == tuple(zip(request[1], request[2]))
    assert not model.used_vertices() & fam.vertices()


def test_realize_validates_connectivity_and_shape():
    small = complete_graph(12)  # connectivity 11 < 16
    request = ((0, 1), tuple(range(2, 8)), tuple(range(8, 14)))
    with pytest.raises(HypothesisViolatedError):
        realize_woven_from_dense_minor(
            small, Fraction(1, 2), 2, ((0, 1), tuple(range(2, 8)), (8, 9, 10, 11, 2, 3))
        )
    g = complete_graph(80)
    with pytest.raises(HypothesisViolatedError):
        # sources overlap the roots
        realize_woven_from_dense_minor(
            g, Fraction(1, 2), 2, ((0, 1), (1, 2, 3, 4, 5, 6), tuple(range(10, 16)))
        )
    with pytest.raises(HypothesisViolatedError):
        # wrong source count for a = 2
        realize_woven_from_dense_minor(
            g, Fraction(1, 2), 2, ((0, 1), (2, 3), (4, 5))
        )

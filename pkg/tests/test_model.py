from __future__ import annotations

import pytest

from minorforge import (
    MinorModel,
    anticomplete,
    complete_graph,
    compose_models,
    contract_model,
    graph_from_edge_list,
    is_attached_to,
    is_core,
    is_rooted_at,
    pattern_graph,
    require_valid,
    sub_model,
    validate_model,
)
from minorforge.errors import InvalidModelError

from conftest import petersen


def _path6():
    return graph_from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])


def test_valid_model_report():
    g = _path6()
    m = MinorModel(g, [{0, 1}, {2}, {4, 5}])
    report = validate_model(m)
    assert report.valid
    assert report.violations == []
    # pattern: {0,1}-{2} adjacent, {2}-{4,5} not (3 sits between)
    pat = pattern_graph(m)
    assert pat.n == 3
    assert pat.has_edge(0, 1)
    assert not pat.has_edge(1, 2)


def test_validation_catches_each_defect():
    g = _path6()
    for frags, needle in [
        ([{0, 1}, {1, 2}], "share"),
        ([{0}, set()], "empty"),
        ([{0, 2}], "connected"),
        ([{0, 9}], "outside host"),
    ]:
        report = validate_model(MinorModel(g, frags))
        assert not report.valid
        assert any(needle in reason for _, reason in report.violations)
        with pytest.raises(InvalidModelError):
            require_valid(MinorModel(g, frags))


def test_contract_model_matches_pattern():
    g = petersen()
    m = MinorModel(g, [{0, 5}, {1, 6}, {2, 7}])
    assert contract_model(m) == pattern_graph(m)


def test_rooted_and_attached_conventions():
    g = _path6()
    m = MinorModel(g, [{0, 1}, {2, 3}, {4, 5}])
    assert is_rooted_at(m, (1, 2, 5))
    assert not is_rooted_at(m, (0, 1, 5))  # two roots in one fragment
    assert not is_rooted_at(m, (1, 2))     # count mismatch
    # attached: only the first |s| fragments carry the roots
    assert is_attached_to(m, (1, 3))
    assert not is_attached_to(m, (1, 5))   # 5 lives in fragment 2, not 1


def test_anticomplete():
    g = _path6()
    assert anticomplete(g, {0, 1}, {3, 4})
    assert not anticomplete(g, {0, 1}, {2})


def test_compose_models():
    g = complete_graph(6)
    outer = MinorModel(g, [{0, 1}, {2}, {3}, {4, 5}])
    inner = MinorModel(pattern_graph(outer), [{0, 1}, {2, 3}])
    final = require_valid(compose_models(outer, inner)).pattern
    assert final == pattern_graph(inner)
    assert compose_models(outer, inner).fragments[0] == frozenset({0, 1, 2})


def test_sub_model():
    g = _path6()
    m = MinorModel(g, [{0, 1}, {2, 3}, {4, 5}])
    picked = sub_model(m, (2, 0))
    assert picked.fragments == (frozenset({4, 5}), frozenset({0, 1}))


def test_is_core():
    g = petersen()
    m = MinorModel(g, [{0, 1}, {5, 8}])  # 0-5 spoke realizes the adjacency
    assert validate_model(m).valid
    assert is_core(m, {0, 5})
    assert not is_core(m, {1, 8})  # 1-8 is not an edge

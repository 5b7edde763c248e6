from __future__ import annotations

from fractions import Fraction

from minorforge import (
    complete_graph,
    graph_from_edge_list,
    pair_vertex_cut,
    random_graph,
    vertex_connectivity,
    vertex_connectivity_with_cutset,
)
from minorforge.flow import SetFlow
from minorforge.rng import Rng, derive_seed

from conftest import brute_connected, brute_disjoint_paths, brute_vertex_connectivity, petersen


def test_connectivity_structured():
    assert vertex_connectivity(complete_graph(7)) == 6
    assert vertex_connectivity(petersen()) == 3
    path = graph_from_edge_list(4, [(0, 1), (1, 2), (2, 3)])
    assert vertex_connectivity(path) == 1
    two_parts = graph_from_edge_list(4, [(0, 1), (2, 3)])
    k, cut = vertex_connectivity_with_cutset(two_parts)
    assert k == 0 and cut == ()


def test_connectivity_cutset_certificate():
    # two triangles sharing vertex 3
    g = graph_from_edge_list(
        5, [(0, 1), (0, 3), (1, 3), (2, 3), (2, 4), (3, 4)]
    )
    k, cut = vertex_connectivity_with_cutset(g)
    assert k == 1
    assert cut == (3,)
    rest = set(range(g.n)) - set(cut)
    assert not brute_connected(g, rest)


def test_connectivity_matches_brute_force():
    for i in range(40):
        rng = Rng(derive_seed(20, i))
        n = 2 + rng.below(6)
        p = Fraction(rng.below(10) + 1, 11)
        g = random_graph(n, p, rng.spawn(1))
        assert vertex_connectivity(g) == brute_vertex_connectivity(g)


def test_pair_vertex_cut():
    # 0 and 4 joined through the 1,2,3 layer
    g = graph_from_edge_list(
        5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
    )
    value, cut = pair_vertex_cut(g, 0, 4)
    assert value == 3
    assert cut == (1, 2, 3)
    assert pair_vertex_cut(g, 0, 4, limit=2) == (2, None)
    g2 = graph_from_edge_list(3, [(0, 1), (1, 2)])
    value2, cut2 = pair_vertex_cut(g2, 0, 2)
    assert value2 == 1 and cut2 == (1,)
    rest = set(range(g2.n)) - set(cut2)
    assert not brute_connected(g2, rest)


def test_set_flow_value_matches_brute_paths():
    for i in range(30):
        rng = Rng(derive_seed(21, i))
        n = 4 + rng.below(5)
        g = random_graph(n, Fraction(1, 2), rng.spawn(1))
        verts = list(range(n))
        rng.shuffle(verts)
        s = frozenset(verts[:2])
        t = frozenset(verts[2:4])
        flow = SetFlow(g, s, t)
        value = flow.run()
        assert brute_disjoint_paths(g, s, t, value)
        assert not brute_disjoint_paths(g, s, t, value + 1)


def test_set_flow_paths_are_disjoint():
    g = petersen()
    flow = SetFlow(g, {0, 1}, {7, 8})
    value = flow.run()
    paths = flow.paths()
    assert len(paths) == value
    seen: set[int] = set()
    for path in paths:
        assert path[0] in {0, 1} and path[-1] in {7, 8}
        assert not (set(path) & seen)
        for u, v in zip(path, path[1:]):
            assert g.has_edge(u, v)
        seen |= set(path)

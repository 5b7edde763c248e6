"""Immutable simple graphs on vertices 0..n-1.

Adjacency is kept both as frozensets (the API) and as per-vertex bitmasks
(used by the solvers; int.bit_count makes common-neighbor counting cheap).
All density comparisons are exact rational arithmetic over Fraction; floats
appear only where a parameter is sized from a log or a root.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotAnEdgeError, OrderTooSmallError, UnknownVertexError
from .rng import Rng


class Graph:
    __slots__ = ("n", "m", "_adj", "_bits")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise OrderTooSmallError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        bits = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertexError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise NotAnEdgeError(f"loop at {u} not allowed")
            if v in adj[u]:
                continue
            adj[u].add(v)
            adj[v].add(u)
            bits[u] |= 1 << v
            bits[v] |= 1 << u
            m += 1
        self.n = n
        self.m = m
        self._adj = tuple(frozenset(s) for s in adj)
        self._bits = tuple(bits)

    # -- basic access ------------------------------------------------------

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise UnknownVertexError(f"vertex {v} out of range for n={self.n}")

    def neighbors(self, v: int) -> frozenset[int]:
        self.check_vertex(v)
        return self._adj[v]

    def neighbor_bits(self, v: int) -> int:
        return self._bits[v]

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def vertices(self) -> range:
        return range(self.n)

    def min_degree(self) -> int:
        if self.n == 0:
            raise OrderTooSmallError("min_degree of the empty graph")
        return min(len(s) for s in self._adj)

    def max_degree(self) -> int:
        if self.n == 0:
            raise OrderTooSmallError("max_degree of the empty graph")
        return max(len(s) for s in self._adj)

    def audit(self) -> None:
        """Structural self-check: symmetry, no loops, handshake."""
        degsum = 0
        for v in range(self.n):
            assert v not in self._adj[v], f"loop at {v}"
            for w in self._adj[v]:
                assert v in self._adj[w], f"asymmetric edge ({v},{w})"
            assert self._bits[v] == mask_of(self._adj[v])
            degsum += len(self._adj[v])
        assert degsum == 2 * self.m, "handshake violated"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self._bits == other._bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self._bits))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- connectivity helpers ---------------------------------------------

    def component_masks(self) -> list[int]:
        """Connected components as bitmasks, ordered by least vertex."""
        seen = 0
        out = []
        full = (1 << self.n) - 1
        while seen != full:
            start = (~seen & full) & -(~seen & full)  # lowest unseen bit
            comp = start
            frontier = start
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    nxt |= self._bits[b.bit_length() - 1]
                frontier = nxt & ~comp
                comp |= frontier
            out.append(comp)
            seen |= comp
        return out

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(self.component_masks()) == 1


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_vertices(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        mask ^= b
        out.append(b.bit_length() - 1)
    return out


# -- statistics -------------------------------------------------------------


def average_degree(g: Graph) -> Fraction:
    """2m/n, exact; the empty graph counts as 0."""
    if g.n == 0:
        return Fraction(0)
    return Fraction(2 * g.m, g.n)


def edge_density(g: Graph) -> Fraction:
    """m / C(n,2), exact."""
    if g.n < 2:
        raise OrderTooSmallError("edge density needs at least 2 vertices")
    return Fraction(g.m, g.n * (g.n - 1) // 2)


def is_eps_t_dense(g: Graph, eps: Fraction, t: int | None = None) -> bool:
    """True iff g has t vertices (default: all of them) and m >= (1-eps)*C(t,2)."""
    if g.n < 2:
        raise OrderTooSmallError("density predicate needs at least 2 vertices")
    if t is not None and g.n != t:
        return False
    pairs = g.n * (g.n - 1) // 2
    return Fraction(g.m) >= (1 - Fraction(eps)) * pairs


def complement_max_degree(g: Graph) -> int:
    """Largest number of non-neighbors over all vertices: n - 1 - min degree."""
    if g.n == 0:
        raise OrderTooSmallError("complement degree of the empty graph")
    return g.n - 1 - g.min_degree()


# -- derived graphs ---------------------------------------------------------


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph plus the relabel map: new index i is old vertex map[i]."""
    old = sorted(set(keep))
    for v in old:
        g.check_vertex(v)
    pos = {v: i for i, v in enumerate(old)}
    edges = []
    for i, v in enumerate(old):
        for w in g.neighbors(v):
            if w in pos and v < w:
                edges.append((i, pos[w]))
    return Graph(len(old), edges), tuple(old)


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Contract edge uv into a simple graph on n-1 vertices."""
    graph, _ = contract_edge_mapped(g, u, v)
    return graph


def contract_edge_mapped(g: Graph, u: int, v: int) -> tuple[Graph, tuple[int, ...]]:
    """contract_edge plus the old-to-new index map (u and v share an image)."""
    if not g.has_edge(u, v):
        raise NotAnEdgeError(f"({u},{v}) is not an edge")
    lo, hi = min(u, v), max(u, v)
    old_to_new = []
    for x in range(g.n):
        if x < hi:
            old_to_new.append(x)
        elif x == hi:
            old_to_new.append(lo)
        else:
            old_to_new.append(x - 1)
    edges = set()
    for a, b in g.edges():
        na, nb = old_to_new[a], old_to_new[b]
        if na != nb:
            edges.add((min(na, nb), max(na, nb)))
    return Graph(g.n - 1, sorted(edges)), tuple(old_to_new)


def greedy_dense_subgraph(g: Graph, t: int) -> tuple[int, ...]:
    """Peel minimum-degree vertices down to a t-subset; density never drops.

    Each deletion removes a vertex of degree <= average, so the survivor's
    exact density is >= the density before; asserted at every step.
    """
    if not (2 <= t <= g.n):
        raise OrderTooSmallError(f"need 2 <= t <= {g.n}, got t={t}")
    alive = set(range(g.n))
    deg = {v: g.degree(v) for v in alive}
    density = edge_density(g)
    while len(alive) > t:
        v = min(alive, key=lambda x: (deg[x], x))
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
        del deg[v]
        sub_edges = sum(deg.values()) // 2
        k = len(alive)
        new_density = Fraction(sub_edges, k * (k - 1) // 2)
        assert new_density >= density, "min-degree peel decreased density"
        density = new_density
    return tuple(sorted(alive))


# -- generators -------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def random_graph(n: int, p: Fraction, rng: Rng) -> Graph:
    """G(n,p): each pair independently, exact Bernoulli, pairs in sorted order."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0,1]")
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.bernoulli(p):
                edges.append((u, v))
    return Graph(n, edges)


def random_bipartite(a: int, b: int, p: Fraction, rng: Rng) -> Graph:
    """Random bipartite graph; side A is 0..a-1, side B is a..a+b-1."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0,1]")
    edges = []
    for u in range(a):
        for v in range(a, a + b):
            if rng.bernoulli(p):
                edges.append((u, v))
    return Graph(a + b, edges)


def graph_from_edge_list(n: int, edges: Sequence[tuple[int, int]]) -> Graph:
    return Graph(n, edges)

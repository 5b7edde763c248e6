"""Exact chromatic number and chromatic separability.

Branch-and-bound: a greedy clique gives the lower bound, saturation-greedy
the upper bound, and the k-colorability search precolors the clique and never
opens more than one fresh color per step.  Both solvers are exponential and
guarded by caps from config.
"""

from __future__ import annotations

from .config import active_caps
from .errors import TooLargeError
from .graph import Graph, induced_subgraph


def _greedy_clique(g: Graph) -> list[int]:
    """A maximal clique grown greedily from each high-degree seed; best kept."""
    if g.n == 0:
        return []
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    best: list[int] = []
    for seed in order[: min(5, g.n)]:
        clique = [seed]
        cand = set(g.neighbors(seed))
        while cand:
            u = min(cand, key=lambda x: (-len(g.neighbors(x) & cand), x))
            clique.append(u)
            cand &= g.neighbors(u)
        if len(clique) > len(best):
            best = clique
    return best


def _greedy_coloring(g: Graph) -> list[int]:
    """Saturation-first greedy; complete, used only as an upper bound."""
    color = [-1] * g.n
    for _ in range(g.n):
        pick, pick_key = -1, None
        for v in range(g.n):
            if color[v] != -1:
                continue
            sat = {color[w] for w in g.neighbors(v) if color[w] != -1}
            key = (-len(sat), -g.degree(v), v)
            if pick_key is None or key < pick_key:
                pick, pick_key, pick_sat = v, key, sat
        c = 0
        while c in pick_sat:
            c += 1
        color[pick] = c
    return color


def _colorable_with(g: Graph, k: int, clique: list[int]) -> list[int] | None:
    """Backtracking k-coloring with the clique precolored; None if impossible."""
    if len(clique) > k:
        return None
    color = [-1] * g.n
    for i, v in enumerate(clique):
        color[v] = i
    uncolored = g.n - len(clique)

    def step(remaining: int, max_used: int) -> bool:
        if remaining == 0:
            return True
        pick, pick_key, pick_sat = -1, None, 0
        for v in range(g.n):
            if color[v] != -1:
                continue
            sat = 0
            for w in g.neighbors(v):
                if color[w] != -1:
                    sat |= 1 << color[w]
            key = (-sat.bit_count(), -g.degree(v), v)
            if pick_key is None or key < pick_key:
                pick, pick_key, pick_sat = v, key, sat
        limit = min(k, max_used + 1)
        for c in range(limit):
            if not (pick_sat >> c) & 1:
                color[pick] = c
                if step(remaining - 1, max(max_used, c + 1)):
                    return True
                color[pick] = -1
        return False

    if step(uncolored, len(clique)):
        return color
    return None


def chromatic_number_exact(g: Graph, cap: int | None = None) -> int:
    """Exact chi(g); refuses graphs over the configured vertex cap."""
    cap = active_caps().coloring if cap is None else cap
    if g.n > cap:
        raise TooLargeError(f"coloring cap {cap} exceeded by n={g.n}")
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    clique = _greedy_clique(g)
    ub = max(_greedy_coloring(g)) + 1
    for k in range(len(clique), ub + 1):
        if _colorable_with(g, k, clique) is not None:
            return k
    return ub


def two_coloring(g: Graph) -> list[int] | None:
    """Explicit proper 2-coloring when one exists (BFS layering), else None."""
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def is_chromatic_separable(g: Graph, m: int, cap: int | None = None):
    """Whether disjoint vertex sets A, B exist with chi(G[A]), chi(G[B]) >= chi(G)-m.

    Returns (False, None) or (True, (a_tuple, b_tuple)).  Since chromatic
    number is monotone under vertex addition, it suffices to scan bipartitions
    A, V-A; chi values per subset are cached.
    """
    cap = active_caps().separable if cap is None else cap
    if g.n > cap:
        raise TooLargeError(f"separability cap {cap} exceeded by n={g.n}")
    chi = chromatic_number_exact(g, cap=max(cap, g.n))
    need = chi - m
    if need <= 0:
        # even empty subgraphs qualify
        return True, ((), ())
    memo: dict[int, int] = {}

    def chi_of(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        verts = [v for v in range(g.n) if (mask >> v) & 1]
        sub, _ = induced_subgraph(g, verts)
        val = chromatic_number_exact(sub, cap=max(cap, g.n))
        memo[mask] = val
        return val

    full = (1 << g.n) - 1
    # vertex 0 pinned to side A so each unordered split is visited once
    for half in range(1 << (g.n - 1)):
        a_mask = (half << 1) | 1
        b_mask = full & ~a_mask
        if a_mask.bit_count() < need or b_mask.bit_count() < need:
            continue
        if chi_of(a_mask) >= need and chi_of(b_mask) >= need:
            a = tuple(v for v in range(g.n) if (a_mask >> v) & 1)
            b = tuple(v for v in range(g.n) if (b_mask >> v) & 1)
            return True, (a, b)
    return False, None

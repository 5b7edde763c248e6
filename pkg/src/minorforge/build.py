"""Randomized constructions of (eps,t)-dense minors: the hitting-set sampler,
the branch-set growth rounds, the dense-graph variant, and the bipartite
random-contraction pipeline."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    AttemptsExhaustedError,
    DensityNotMetError,
    DisconnectedHostError,
    HypothesisViolatedError,
    InvalidBipartitionError,
    PathTooLongError,
)
from .extract import dense_connected_minor
from .graph import (
    Graph,
    average_degree,
    complement_max_degree,
    induced_subgraph,
    is_eps_t_dense,
)
from .model import MinorModel, compose_models, require_valid
from .params import (
    DEFAULT_MAX_ATTEMPTS,
    DEFAULT_MAX_PATH_LEN,
    degree_target,
    desk_sample_size,
    power_hypothesis,
    sqrt_log_inv,
    undominated_bound,
)
from .rng import Rng


@dataclass(frozen=True)
class HittingSetResult:
    s: tuple[int, ...]
    covered_failures: int
    undominated: int
    attempts: int


@dataclass
class BuildState:
    """Progress of a branch-set growth: sets placed so far, how many earlier
    sets each one is anticomplete to, and the remaining-graph view."""

    placed: list[frozenset[int]] = field(default_factory=list)
    anticomplete_budget: list[int] = field(default_factory=list)
    host: Graph | None = None


def hitting_set_check(
    g: Graph, s, a_list, eps: Fraction, undominated_cap: int
) -> tuple[int, int, bool]:
    """The acceptance test for a sampled set, shared with the test suite:
    counts indices whose set contains s, and vertices outside s with no
    neighbor in s; passes iff the first is at most eps * len(a_list) and
    the second is at most the cap."""
    s_set = frozenset(s)
    covered = sum(1 for a in a_list if s_set <= frozenset(a))
    undominated = sum(
        1
        for v in range(g.n)
        if v not in s_set and not g.neighbors(v) & s_set
    )
    ok = covered <= Fraction(eps) * len(a_list) and undominated <= undominated_cap
    return covered, undominated, ok


def sample_hitting_set(
    g: Graph,
    a_list,
    r: int,
    eps,
    n: int,
    rng: Rng,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> HittingSetResult:
    """Up to r vertices drawn uniformly with repetition, retried until the
    two-part acceptance test passes: few given sets contain the draw, and
    few vertices are left without a neighbor in it."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise HypothesisViolatedError("eps must lie strictly between 0 and 1")
    if r < 1:
        raise HypothesisViolatedError("the sample size must be at least 1")
    if max_attempts < 1:
        raise HypothesisViolatedError("need at least one attempt")
    if not (n >= g.n and 6 * g.n >= n):
        raise HypothesisViolatedError(
            "the scale parameter must lie within [|g|, 6|g|]"
        )
    a_sets = []
    cap = undominated_bound(eps, r, n)
    for i, a in enumerate(a_list):
        a_set = frozenset(a)
        for v in a_set:
            g.check_vertex(v)
        if len(a_set) > cap:
            raise HypothesisViolatedError(
                f"set {i} exceeds the eps^(1/r)*n/12 size bound"
            )
        a_sets.append(a_set)
    if g.n >= 2:
        base = Fraction(complement_max_degree(g), g.n - 1)
        hypothesis_ok = power_hypothesis(eps, r, base)
    else:
        hypothesis_ok = True
    if not hypothesis_ok:
        warnings.warn(
            "degree hypothesis fails for this host; sampling may exhaust "
            "its attempts",
            stacklevel=2,
        )
    for attempt in range(1, max_attempts + 1):
        draw = rng.sample_with_replacement(range(g.n), r)
        s_set = frozenset(draw)
        covered, undominated, ok = hitting_set_check(g, s_set, a_sets, eps, cap)
        if ok:
            return HittingSetResult(
                tuple(sorted(s_set)), covered, undominated, attempt
            )
    raise AttemptsExhaustedError(
        f"no sample passed the check in {max_attempts} attempts",
        max_attempts,
        hypothesis_ok,
    )


def _comps_in(g: Graph, vs) -> list[set[int]]:
    """Connected components of g restricted to vs, sorted by least vertex."""
    left = set(vs)
    out = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in left and w not in comp:
                    comp.add(w)
                    stack.append(w)
        left -= comp
        out.append(comp)
    return sorted(out, key=min)


def connect_within(
    g: Graph, s, max_path_len: int = DEFAULT_MAX_PATH_LEN
) -> tuple[int, ...]:
    """Superset of s inducing a connected subgraph, built by stitching the
    pieces of g[s] together along shortest paths."""
    s_set = set(s)
    for v in s_set:
        g.check_vertex(v)
    if not s_set:
        return ()
    if not g.is_connected():
        raise DisconnectedHostError("stitching needs a connected host")
    b = set(s_set)
    while True:
        comps = _comps_in(g, b)
        if len(comps) == 1:
            break
        core = next(c for c in comps if min(b) in c)
        # multi-source BFS from the core to the nearest other piece
        parent: dict[int, int] = {v: -1 for v in core}
        queue = sorted(core)
        hit = None
        while queue and hit is None:
            nxt = []
            for u in queue:
                for w in sorted(g.neighbors(u)):
                    if w in parent:
                        continue
                    parent[w] = u
                    if w in b:
                        hit = w
                        break
                    nxt.append(w)
                if hit is not None:
                    break
            queue = nxt
        assert hit is not None  # host is connected
        path = [hit]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        if len(path) - 1 > max_path_len:
            raise PathTooLongError(
                f"stitching path needs {len(path) - 1} edges"
            )
        b.update(path)
    assert len(b) <= max_path_len * len(s_set)
    return tuple(sorted(b))


def _grow_round(
    h: Graph,
    state: BuildState,
    r: int,
    eps: Fraction,
    n_scale: int,
    rng: Rng,
    max_attempts: int,
    max_path_len: int,
) -> None:
    """One placement round: sample a hitting set in the remaining graph
    against the non-neighbor sets of everything placed, stitch it connected,
    and record it."""
    used: set[int] = set().union(*state.placed) if state.placed else set()
    keep = sorted(set(range(h.n)) - used)
    f_graph, old = induced_subgraph(h, keep)
    state.host = f_graph
    a_list = []
    for b_set in state.placed:
        a_list.append(
            frozenset(
                i
                for i, v in enumerate(old)
                if not h.neighbors(v) & b_set
            )
        )
    res = sample_hitting_set(
        f_graph, a_list, r, eps, n_scale, rng, max_attempts
    )
    stitched = connect_within(f_graph, res.s, max_path_len)
    b_new = frozenset(old[i] for i in stitched)
    count = sum(
        1 for b_set in state.placed if not _touches(h, b_new, b_set)
    )
    k = len(state.placed)
    assert count <= eps * k, "stitched set lost the sampled adjacency"
    state.placed.append(b_new)
    state.anticomplete_budget.append(count)


def _touches(g: Graph, a, b) -> bool:
    return any(g.neighbors(v) & b for v in a)


def _split_fast(h: Graph, t: int, eps: Fraction):
    """Cheap deterministic candidate: t-1 singletons plus the rest as one
    lump; works whenever the extracted pattern is essentially complete."""
    if h.n < t:
        return None
    rest = frozenset(range(t - 1, h.n))
    if len(_comps_in(h, rest)) != 1:
        return None
    frags = [frozenset((i,)) for i in range(t - 1)] + [rest]
    model = MinorModel(h, frags)
    if is_eps_t_dense(require_valid(model).pattern, eps, t):
        return model
    return None


def build_dense_minor(
    g: Graph, eps, t: int, c_scale, rng: Rng,
    *, max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> MinorModel:
    """(eps,t)-dense minor from average degree: extract a low-order dense
    connected minor, then place t branch sets by hitting-set rounds."""
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 3):
        raise HypothesisViolatedError("eps must lie strictly between 0 and 1/3")
    if t < 2:
        raise HypothesisViolatedError("t must be at least 2")
    c_scale = Fraction(c_scale)
    if c_scale <= 0:
        raise HypothesisViolatedError("the scale constant must be positive")
    if float(average_degree(g)) < float(c_scale) * t * sqrt_log_inv(eps):
        raise HypothesisViolatedError(
            "average degree below the scaled threshold"
        )
    d = max(degree_target(eps, t, c_scale), t)
    h_model = dense_connected_minor(g, d)
    h = require_valid(h_model).pattern
    fast = _split_fast(h, t, eps)
    if fast is not None:
        return compose_models(h_model, fast)
    r = desk_sample_size(eps, t, d)
    state = BuildState(host=h)
    for _ in range(t):
        _grow_round(
            h, state, r, eps, d, rng, max_attempts,
            DEFAULT_MAX_PATH_LEN,
        )
    inner = MinorModel(h, state.placed)
    final = compose_models(h_model, inner)
    if not is_eps_t_dense(require_valid(final).pattern, eps, t):
        raise DensityNotMetError("final pattern misses the density target")
    return final


def build_dense_minor_in_dense_graph(
    g: Graph, eps, t: int, rng: Rng, *, max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> MinorModel:
    """(eps,t)-dense minor inside an already-dense host: grow t cores in a
    low-complement-degree third of the graph, then stitch each core
    connected through fresh common neighbors outside it."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise HypothesisViolatedError("eps must lie strictly between 0 and 1")
    if t < 2:
        raise HypothesisViolatedError("t must be at least 2")
    n = g.n
    if n < 12 * t:
        raise HypothesisViolatedError("need at least 12*t vertices")
    r = n // (12 * t)
    total = math.comb(n, 2)
    q = Fraction(total - g.m, total)
    if not power_hypothesis(eps, r, 12 * q):
        raise HypothesisViolatedError(
            "the complement-density hypothesis fails at this size"
        )
    by_missing = sorted(range(n), key=lambda v: (n - 1 - g.degree(v), v))
    s_pool = by_missing[: n // 3]
    limit = 2 * q * n
    if any(n - 1 - g.degree(v) > limit for v in s_pool):
        raise HypothesisViolatedError(
            "not enough vertices with few non-neighbors"
        )
    s_pool_set = frozenset(s_pool)
    cores: list[frozenset[int]] = []
    for k in range(t):
        used = set().union(*cores) if cores else set()
        keep = sorted(s_pool_set - used)
        f_graph, old = induced_subgraph(g, keep)
        a_list = [
            frozenset(
                i for i, v in enumerate(old) if not g.neighbors(v) & core
            )
            for core in cores
        ]
        res = sample_hitting_set(f_graph, a_list, r, eps, n, rng, max_attempts)
        cores.append(frozenset(old[i] for i in res.s))
    fragments = _stitch_outside(g, cores, s_pool_set)
    model = MinorModel(g, fragments)
    if not is_eps_t_dense(require_valid(model).pattern, eps, t):
        raise DensityNotMetError("final pattern misses the density target")
    return model


def _stitch_outside(
    g: Graph, cores: list[frozenset[int]], s_pool: frozenset[int]
) -> list[frozenset[int]]:
    """Join each core's pieces through unused common neighbors outside the
    pool, keeping all fragments pairwise disjoint."""
    used: set[int] = set(s_pool)
    out: list[frozenset[int]] = []
    for core in cores:
        b = set(core)
        while True:
            comps = _comps_in(g, b)
            if len(comps) <= 1:
                break
            u, v = min(comps[0]), min(comps[1])
            shared = sorted(
                (g.neighbors(u) & g.neighbors(v)) - used
            )
            if not shared:
                raise HypothesisViolatedError(
                    "ran out of fresh common neighbors while stitching"
                )
            w = shared[0]
            used.add(w)
            b.add(w)
        out.append(frozenset(b))
    return out


def _check_bipartition(g: Graph, side_a, side_b) -> tuple[frozenset, frozenset]:
    a_set, b_set = frozenset(side_a), frozenset(side_b)
    for v in a_set | b_set:
        g.check_vertex(v)
    if a_set & b_set or len(a_set) + len(b_set) != g.n:
        raise InvalidBipartitionError("sides must partition the vertices")
    for u, w in g.edges():
        if (u in a_set) == (w in a_set):
            raise InvalidBipartitionError(
                f"edge ({u}, {w}) does not cross the bipartition"
            )
    return a_set, b_set


def bipartite_random_contraction(
    g: Graph, side_a, side_b, u0: int, s, rng: Rng
) -> tuple[Graph, MinorModel]:
    """Every vertex on side_a (except u0) with a neighbor in s picks one
    uniformly and is contracted into it; returns the resulting pattern on s
    and its model."""
    a_set, _ = _check_bipartition(g, side_a, side_b)
    g.check_vertex(u0)
    if u0 not in a_set:
        raise HypothesisViolatedError("the anchor must lie on side_a")
    s_set = frozenset(s)
    if not s_set:
        raise HypothesisViolatedError("the root set must be nonempty")
    if not s_set <= g.neighbors(u0):
        raise HypothesisViolatedError("roots must be neighbors of the anchor")
    phi: dict[int, int] = {}
    for u in sorted(a_set - {u0}):
        cands = sorted(g.neighbors(u) & s_set)
        if cands:
            phi[u] = cands[rng.below(len(cands))]
    fragments = [
        frozenset({x} | {u for u, y in phi.items() if y == x})
        for x in sorted(s_set)
    ]
    model = MinorModel(g, fragments)
    return require_valid(model).pattern, model


def _greedy_cross_pairs(g: Graph, t: int, eps: Fraction):
    """Cheap deterministic candidate: t disjoint edges as fragments."""
    taken: set[int] = set()
    frags = []
    for u, w in g.edges():
        if u in taken or w in taken:
            continue
        frags.append(frozenset((u, w)))
        taken.update((u, w))
        if len(frags) == t:
            break
    if len(frags) < t:
        return None
    model = MinorModel(g, frags)
    if is_eps_t_dense(require_valid(model).pattern, eps, t):
        return model
    return None


def build_dense_minor_bipartite(
    g: Graph, side_a, side_b, eps, t: int, c_scale, rng: Rng,
    *, max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> MinorModel:
    """(eps,t)-dense minor in a bipartite host with enough edges: contract a
    random choice function onto part of a low-degree anchor's neighborhood,
    then build inside the contracted pattern."""
    a_set, b_set = _check_bipartition(g, side_a, side_b)
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 3):
        raise HypothesisViolatedError("eps must lie strictly between 0 and 1/3")
    if t < 2:
        raise HypothesisViolatedError("t must be at least 2")
    c_scale = Fraction(c_scale)
    if c_scale <= 0:
        raise HypothesisViolatedError("the scale constant must be positive")
    if len(a_set) < len(b_set):
        a_set, b_set = b_set, a_set
    if not b_set:
        raise HypothesisViolatedError("both sides must be nonempty")
    d_eff = t * sqrt_log_inv(eps)
    threshold = (
        float(c_scale) * d_eff * math.sqrt(len(a_set) * len(b_set))
        + t * g.n
    )
    if g.m < threshold:
        raise HypothesisViolatedError("edge count below the scaled threshold")
    fast = _greedy_cross_pairs(g, t, eps)
    if fast is not None:
        return fast
    p = math.sqrt(len(a_set) / len(b_set))
    n_pick = max(math.ceil(float(c_scale) / 2 * d_eff / p + t), 12 * t)
    candidates = [
        v
        for v in sorted(a_set, key=lambda v: (g.degree(v), v))
        if g.degree(v) >= n_pick
    ][:8]
    attempts = 0
    for ci, u0 in enumerate(candidates):
        roots = sorted(g.neighbors(u0))[:n_pick]
        for trial in range(8):
            attempts += 1
            child = rng.spawn(ci, trial)
            pattern, cmodel = bipartite_random_contraction(
                g, a_set, b_set, u0, roots, child
            )
            try:
                inner = build_dense_minor_in_dense_graph(
                    pattern, eps, t, child.spawn(1),
                    max_attempts=max_attempts,
                )
            except (HypothesisViolatedError, AttemptsExhaustedError,
                    DensityNotMetError):
                continue
            final = compose_models(cmodel, inner)
            if is_eps_t_dense(require_valid(final).pattern, eps, t):
                return final
    raise AttemptsExhaustedError(
        f"no certified pattern in {max(attempts, 1)} attempts",
        max(attempts, 1),
        True,
    )

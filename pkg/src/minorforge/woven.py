"""Simultaneous rooted dense models and linkages ("wovenness").

A host is (eps, a, b)-woven when for every root set R of size a and
endpoint lists S, T of length b (equal entries allowed only at equal
index), some dense-pattern model rooted at R coexists with a linkage
joining the pairs, the two meeting exactly in R & (S | T).

Three entry points: ``check_wovenness`` decides the property triple by
triple, ``weave`` reroutes an existing linkage around a chosen subgraph
while planting a rooted model inside it, and
``realize_woven_from_dense_minor`` produces a witness for one request in
a highly connected host carrying a very dense minor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .build import build_dense_minor
from .config import active_caps
from .connectivity import vertex_connectivity_with_cutset
from .errors import (
    DensityNotMetError,
    HypothesisViolatedError,
    InternalInfeasibleError,
    TooLargeError,
    WovennessFailedError,
)
from .graph import (
    Graph,
    complement_max_degree,
    greedy_dense_subgraph,
    induced_subgraph,
    is_eps_t_dense,
)
from .model import MinorModel, is_rooted_at, require_valid
from .params import DEFAULT_C_SCALE
from .paths import (
    PathFamily,
    _valid_pair_convention,
    audit_path_family,
    require_paths,
)
from .rng import Rng
from .rooted import rooted_from_minor

__all__ = [
    "WovenReport",
    "WovenTriple",
    "check_wovenness",
    "realize_woven_from_dense_minor",
    "weave",
]


@dataclass(frozen=True)
class WovenTriple:
    """One tested (roots, sources, targets) choice and its outcome."""

    roots: tuple[int, ...]
    sources: tuple[int, ...]
    targets: tuple[int, ...]
    ok: bool
    model: MinorModel | None = None
    linkage: PathFamily | None = None


@dataclass(frozen=True)
class WovenReport:
    """Verdict plus the per-triple records behind it.

    verdict is "proven" or "refuted-with-counterexample" in exhaustive
    mode and "no-counterexample-found" or "refuted-with-counterexample"
    in sampled mode.
    """

    verdict: str
    eps: Fraction
    a: int
    b: int
    mode: str
    checked: int
    records: tuple[WovenTriple, ...]
    counterexample: WovenTriple | None


def _audit_or_none(g: Graph, fam: PathFamily) -> str | None:
    problems = audit_path_family(g, fam)
    return problems[0] if problems else None


def _touching(g: Graph, fa, fb) -> bool:
    mask = 0
    for w in fb:
        mask |= 1 << w
    return any(g.neighbor_bits(v) & mask for v in fa)


def _pattern_dense(pattern: Graph, eps: Fraction, a: int) -> bool:
    # one vertex has no pair to miss; the shared predicate starts at two
    if a == 1:
        return pattern.n == 1
    return is_eps_t_dense(pattern, eps, a)


def _spend(budget: list[int]) -> None:
    budget[0] -= 1
    if budget[0] <= 0:
        raise TooLargeError("wovenness search budget exhausted")


def _rooted_dense_model(
    g: Graph, allowed: frozenset[int], roots, eps: Fraction, budget: list[int]
) -> MinorModel | None:
    """Exhaustive search for a model rooted at ``roots`` with fragments
    inside ``allowed`` whose pattern misses at most an eps share of its
    pairs.  Fragments grow one adjacent vertex at a time; states are
    deduplicated, so the search covers every tuple of disjoint connected
    supersets of the root singletons."""
    a = len(roots)
    target = (1 - eps) * Fraction(a * (a - 1), 2)
    start = tuple(frozenset((r,)) for r in roots)
    seen = {start}
    stack = [start]
    while stack:
        _spend(budget)
        frags = stack.pop()
        joined = sum(
            1
            for i in range(a)
            for j in range(i + 1, a)
            if _touching(g, frags[i], frags[j])
        )
        if a == 1 or Fraction(joined) >= target:
            return MinorModel(g, frags)
        used = set().union(*frags)
        fresh = []
        for idx in range(a):
            grow: set[int] = set()
            for v in frags[idx]:
                grow |= g.neighbors(v)
            for v in sorted(grow):
                if v in allowed and v not in used:
                    cand = (
                        frags[:idx] + (frags[idx] | {v},) + frags[idx + 1 :]
                    )
                    if cand not in seen:
                        seen.add(cand)
                        fresh.append(cand)
        stack.extend(reversed(fresh))
    return None


def _triple_witness(
    g: Graph, eps: Fraction, roots, pairs, budget: list[int]
) -> tuple[MinorModel, PathFamily] | None:
    """Decide one triple exactly: enumerate every linkage for ``pairs``
    that stays off the non-endpoint roots, and for each try to plant a
    rooted dense model in what remains.  ``None`` means no witness
    exists for this triple."""
    root_set = set(roots)
    endpoint_set = {v for p in pairs for v in p}
    forbidden = root_set - endpoint_set
    k = len(pairs)
    paths: list[tuple[int, ...]] = []
    used: set[int] = set()

    def attempt_model():
        allowed = frozenset(
            v for v in range(g.n) if v not in used
        ) | (root_set & endpoint_set)
        model = _rooted_dense_model(g, allowed, roots, eps, budget)
        if model is None:
            return None
        fam = PathFamily(list(paths), "linkage", pairs=pairs)
        return model, require_paths(g, fam)

    def rec(i: int):
        if i == k:
            return attempt_model()
        s, t = pairs[i]
        if s in used or t in used:
            return None
        if s == t:
            used.add(s)
            paths.append((s,))
            out = rec(i + 1)
            paths.pop()
            used.discard(s)
            return out
        avoid = forbidden | (endpoint_set - {s, t})
        acc = [s]
        on = {s}

        def walk(cur: int):
            _spend(budget)
            for w in sorted(g.neighbors(cur)):
                if w == t:
                    path = tuple(acc) + (t,)
                    used.update(path)
                    paths.append(path)
                    out = rec(i + 1)
                    paths.pop()
                    used.difference_update(path)
                    if out is not None:
                        return out
                elif w not in on and w not in avoid and w not in used:
                    on.add(w)
                    acc.append(w)
                    out = walk(w)
                    acc.pop()
                    on.discard(w)
                    if out is not None:
                        return out
            return None

        return walk(s)

    return rec(0)


def _all_triples(n: int, a: int, b: int):
    for roots in combinations(range(n), a):
        for srcs in combinations(range(n), b):
            for tgts in permutations(range(n), b):
                if all(
                    srcs[i] != tgts[j]
                    for i in range(b)
                    for j in range(b)
                    if i != j
                ):
                    yield roots, srcs, tgts


def _sample_distinct(rng: Rng, n: int, k: int) -> tuple[int, ...]:
    pool = list(range(n))
    out = []
    for _ in range(k):
        out.append(pool.pop(rng.below(len(pool))))
    return tuple(sorted(out))


def _sampled_triples(n: int, a: int, b: int, trials: int, rng: Rng):
    if a > n or b > n:
        return
    for trial in range(trials):
        child = rng.spawn(trial)
        for _retry in range(256):
            roots = _sample_distinct(child, n, a)
            srcs = _sample_distinct(child, n, b)
            tgts: list[int] = []
            for i in range(b):
                banned = set(tgts) | {srcs[j] for j in range(b) if j != i}
                cands = [v for v in range(n) if v not in banned]
                if not cands:
                    break
                tgts.append(cands[child.below(len(cands))])
            if len(tgts) == b:
                yield roots, srcs, tuple(tgts)
                break
        else:
            raise HypothesisViolatedError(
                "could not sample endpoint lists under the collision rule"
            )


def check_wovenness(
    g: Graph,
    eps,
    a: int,
    b: int,
    mode: str = "exhaustive",
    trials: int = 64,
    rng: Rng | None = None,
) -> WovenReport:
    """Test the woven property triple by triple.

    Exhaustive mode enumerates every admissible (roots, sources,
    targets) choice on hosts up to the configured order cap and decides
    each one exactly, so the verdict is "proven" or
    "refuted-with-counterexample".  Sampled mode draws ``trials``
    triples from ``rng`` and decides those; absence of a failure only
    yields "no-counterexample-found", while any failing triple still
    certifies refutation.
    """
    caps = active_caps()
    eps = Fraction(eps)
    if eps <= 0:
        raise HypothesisViolatedError("eps must be positive")
    if a < 1:
        raise HypothesisViolatedError("need at least one root")
    if b < 0:
        raise HypothesisViolatedError("the pair count cannot be negative")
    if mode not in ("exhaustive", "sampled"):
        raise HypothesisViolatedError(f"unknown mode {mode!r}")
    if mode == "exhaustive":
        if g.n > caps.woven:
            raise TooLargeError(
                f"exhaustive wovenness is capped at {caps.woven} vertices"
            )
        triples = _all_triples(g.n, a, b)
    else:
        triples = _sampled_triples(
            g.n, a, b, trials, rng if rng is not None else Rng(0)
        )
    budget = [caps.search_nodes]
    records: list[WovenTriple] = []
    counterexample: WovenTriple | None = None
    for roots, srcs, tgts in triples:
        witness = _triple_witness(
            g, eps, roots, tuple(zip(srcs, tgts)), budget
        )
        if witness is None:
            counterexample = WovenTriple(roots, srcs, tgts, False)
            records.append(counterexample)
            break
        model, fam = witness
        records.append(WovenTriple(roots, srcs, tgts, True, model, fam))
    if counterexample is not None:
        verdict = "refuted-with-counterexample"
    elif mode == "exhaustive":
        verdict = "proven"
    else:
        verdict = "no-counterexample-found"
    return WovenReport(
        verdict=verdict,
        eps=eps,
        a=a,
        b=b,
        mode=mode,
        checked=len(records),
        records=tuple(records),
        counterexample=counterexample,
    )


def weave(
    g: Graph,
    f_vertices,
    roots,
    prior_linkage: PathFamily,
    *,
    eps=Fraction(1, 2),
    realizer=None,
):
    """Reroute ``prior_linkage`` so it crosses ``f_vertices`` only along
    freshly planted paths, while rooting a dense-pattern model at
    ``roots`` inside that vertex set.

    Every prior path meeting the set is truncated at its first and last
    vertices there; the stretch between them is replaced by a path found
    together with the model.  ``realizer`` is called as
    ``realizer(sub_host, root_ids, pair_list)`` on the induced subgraph
    (ids relabeled) and must return a rooted model plus a linkage for
    the listed pairs; by default an exhaustive witness search runs.
    Returns the model and the rerouted family; both audited, with
    failures raised as WovennessFailedError.
    """
    caps = active_caps()
    eps = Fraction(eps)
    f_set = frozenset(f_vertices)
    for v in f_set:
        g.check_vertex(v)
    root_list = sorted(set(roots))
    if not root_list:
        raise HypothesisViolatedError("need at least one root")
    if not f_set.issuperset(root_list):
        raise HypothesisViolatedError("roots must lie in the chosen set")
    if prior_linkage.kind != "linkage" or prior_linkage.pairs is None:
        raise HypothesisViolatedError("prior family must be a linkage")
    require_paths(g, prior_linkage)
    prior = prior_linkage.paths
    pairs = prior_linkage.pairs

    crossing: list[int] = []
    cut_at: dict[int, tuple[int, int]] = {}
    for i, p in enumerate(prior):
        inside = [j for j, v in enumerate(p) if v in f_set]
        if inside:
            crossing.append(i)
            cut_at[i] = (inside[0], inside[-1])

    sub, old_of_new = induced_subgraph(g, f_set)
    new_of_old = {v: j for j, v in enumerate(old_of_new)}
    roots_sub = tuple(new_of_old[r] for r in root_list)
    pairs_sub = tuple(
        (new_of_old[prior[i][cut_at[i][0]]], new_of_old[prior[i][cut_at[i][1]]])
        for i in crossing
    )

    if realizer is None:
        budget = [caps.search_nodes]
        witness = _triple_witness(sub, eps, roots_sub, pairs_sub, budget)
        if witness is None:
            raise WovennessFailedError(
                "no rooted dense model coexists with the induced pairs"
            )
        model_sub, fam_sub = witness
    else:
        model_sub, fam_sub = realizer(sub, roots_sub, pairs_sub)
        if model_sub.host != sub:
            raise WovennessFailedError("realizer model lives off the subgraph")
        try:
            require_valid(model_sub)
        except Exception as exc:
            raise WovennessFailedError(
                f"realizer model invalid: {exc}"
            ) from exc
        if fam_sub.kind != "linkage" or fam_sub.pairs != pairs_sub:
            raise WovennessFailedError("realizer linkage joins the wrong pairs")
        if audit := _audit_or_none(sub, fam_sub):
            raise WovennessFailedError(f"realizer linkage invalid: {audit}")

    # pull the witness back to host ids
    frags = [
        frozenset(old_of_new[x] for x in frag) for frag in model_sub.fragments
    ]
    model = MinorModel(g, frags)
    rerouted = list(prior)
    for pos, i in enumerate(crossing):
        first, last = cut_at[i]
        middle = tuple(old_of_new[x] for x in fam_sub.paths[pos])
        rerouted[i] = prior[i][:first] + middle + prior[i][last + 1 :]
    fam = PathFamily(rerouted, "linkage", pairs=pairs)

    # audits: family contract, vertex origins, model quality, and the
    # model-linkage intersection bound
    problems = _audit_or_none(g, fam)
    if problems:
        raise WovennessFailedError(f"rerouted family invalid: {problems}")
    prior_vertices = prior_linkage.vertices()
    if not fam.vertices() <= f_set | prior_vertices:
        raise WovennessFailedError("rerouted family left the allowed ground")
    try:
        report = require_valid(model)
    except Exception as exc:
        raise WovennessFailedError(f"witness model invalid: {exc}") from exc
    if not is_rooted_at(model, root_list):
        raise WovennessFailedError("witness model is not rooted as requested")
    if not _pattern_dense(report.pattern, eps, len(root_list)):
        raise WovennessFailedError("witness pattern misses the density mark")
    endpoint_set = {v for p in pairs for v in p}
    meet = model.used_vertices() & fam.vertices()
    if not meet <= (set(root_list) & endpoint_set):
        raise WovennessFailedError(
            "model and linkage meet outside the shared roots"
        )
    return model, fam


def _bfs_path_within(g: Graph, allowed, s: int, t: int):
    if s == t:
        return (s,)
    prev: dict[int, int | None] = {s: None}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u)):
            if w in allowed and w not in prev:
                prev[w] = u
                if w == t:
                    path = [t]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return tuple(reversed(path))
                queue.append(w)
    return None


def realize_woven_from_dense_minor(
    g: Graph,
    eps,
    a: int,
    request,
    dense_model: MinorModel | None = None,
    c_scale=None,
    rng: Rng | None = None,
) -> tuple[MinorModel, PathFamily]:
    """Witness one woven request in an 8a-connected host that carries a
    (eps/256, 32a)-dense minor.

    ``request`` is (roots, sources, targets) with a roots and 3a
    endpoints per list; roots may not appear among the endpoints here.
    The construction peels low-quality branch sets from the dense minor,
    re-attaches the remainder to fresh root neighbors plus the
    endpoints, routes each pair through a shared extra branch set, and
    assembles the rooted model from the first a attached fragments.
    Returns the model and the linkage, fully audited and disjoint.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise HypothesisViolatedError("eps must be positive")
    if a < 2:
        raise HypothesisViolatedError("need at least two roots")
    r_req, s_req, t_req = request
    r_tuple = tuple(r_req)
    s_tuple = tuple(s_req)
    t_tuple = tuple(t_req)
    b = 3 * a
    if len(r_tuple) != a or len(set(r_tuple)) != a:
        raise HypothesisViolatedError(f"need exactly {a} distinct roots")
    if len(s_tuple) != b or len(t_tuple) != b:
        raise HypothesisViolatedError(f"need exactly {b} endpoints per side")
    for v in r_tuple + s_tuple + t_tuple:
        g.check_vertex(v)
    problem = _valid_pair_convention(list(zip(s_tuple, t_tuple)))
    if problem:
        raise HypothesisViolatedError(problem)
    endpoint_set = set(s_tuple) | set(t_tuple)
    if set(r_tuple) & endpoint_set:
        raise HypothesisViolatedError(
            "roots and endpoints must be disjoint for this construction"
        )

    kappa, cutset = vertex_connectivity_with_cutset(g)
    if kappa < 8 * a:
        raise HypothesisViolatedError(
            f"host connectivity {kappa} is below {8 * a}",
            evidence=cutset,
        )

    eps_fine = eps / 256
    t_dense = 32 * a
    if dense_model is not None:
        rep = require_valid(dense_model)
        if dense_model.host != g:
            raise HypothesisViolatedError(
                "the dense model must live in the given host"
            )
        if not is_eps_t_dense(rep.pattern, eps_fine, t_dense):
            raise DensityNotMetError("the supplied model is not dense enough")
        j_model = dense_model
    else:
        j_model = None
        if g.n >= t_dense:
            cand = greedy_dense_subgraph(g, t_dense)
            sub, _ = induced_subgraph(g, cand)
            if is_eps_t_dense(sub, eps_fine, t_dense):
                j_model = MinorModel(
                    g, [frozenset((v,)) for v in cand]
                )
        if j_model is None:
            j_model = build_dense_minor(
                g,
                eps_fine,
                t_dense,
                DEFAULT_C_SCALE if c_scale is None else c_scale,
                rng if rng is not None else Rng(0),
            )

    # drop branch sets whose pattern vertex misses too many others, then
    # those touching the roots or the collapsed equal pairs
    pat = require_valid(j_model).pattern
    half = eps * a / 2
    trivial = [i for i in range(b) if s_tuple[i] == t_tuple[i]]
    trivial_set = {s_tuple[i] for i in trivial}
    removed = set(r_tuple) | trivial_set
    kept = [
        i
        for i in range(pat.n)
        if Fraction(pat.n - 1 - pat.degree(i)) <= half
        and not (j_model.fragments[i] & removed)
    ]
    m = len(kept)
    if m < 15 * a:
        raise DensityNotMetError(
            f"only {m} usable branch sets remain, need {15 * a}"
        )

    # one fresh neighbor per root, outside everything already spoken for
    taken = set(r_tuple) | endpoint_set
    r_prime: list[int] = []
    for r in r_tuple:
        pick = next(
            (w for w in sorted(g.neighbors(r)) if w not in taken), None
        )
        if pick is None:
            raise HypothesisViolatedError(
                f"root {r} has no free neighbor left"
            )
        r_prime.append(pick)
        taken.add(pick)

    alive = sorted(set(range(g.n)) - removed)
    g1, old_of_new = induced_subgraph(g, alive)
    new_of_old = {v: i for i, v in enumerate(old_of_new)}
    j1 = MinorModel(
        g1,
        [
            frozenset(new_of_old[v] for v in j_model.fragments[i])
            for i in kept
        ],
    )
    n_av = complement_max_degree(require_valid(j1).pattern)
    active = [i for i in range(b) if s_tuple[i] != t_tuple[i]]
    attach_old = (
        list(r_prime)
        + [s_tuple[i] for i in active]
        + [t_tuple[i] for i in active]
    )
    t_att = len(attach_old)
    if m < n_av + 2 * t_att:
        raise DensityNotMetError(
            "too few branch sets for the attachment order"
        )
    attach = [new_of_old[v] for v in attach_old]
    attached = rooted_from_minor(g1, attach, j1, n_av)

    frags = attached.fragments
    where: dict[int, int] = {}
    for idx in range(t_att):
        (hit,) = frags[idx] & frozenset(attach)
        where[hit] = idx
    f_pat = require_valid(attached).pattern

    # each pair rides its two attachment fragments plus one shared
    # neighbor fragment; distinct pairs get distinct connectors
    chosen: set[int] = set()
    paths_out: list[tuple[int, ...] | None] = [None] * b
    for i in trivial:
        paths_out[i] = (s_tuple[i],)
    for i in active:
        si = new_of_old[s_tuple[i]]
        ti = new_of_old[t_tuple[i]]
        fs, ft = where[si], where[ti]
        j_pick = next(
            (
                c
                for c in range(t_att, len(frags))
                if c not in chosen
                and f_pat.has_edge(c, fs)
                and f_pat.has_edge(c, ft)
            ),
            None,
        )
        if j_pick is None:
            raise DensityNotMetError(
                "no shared branch set left to route a pair"
            )
        chosen.add(j_pick)
        route = frags[fs] | frags[j_pick] | frags[ft]
        found = _bfs_path_within(g1, route, si, ti)
        if found is None:
            raise InternalInfeasibleError(
                "routing inside three joined branch sets failed"
            )
        paths_out[i] = tuple(old_of_new[x] for x in found)

    final_frags = []
    for pos, r in enumerate(r_tuple):
        idx = where[new_of_old[r_prime[pos]]]
        final_frags.append(
            frozenset(old_of_new[x] for x in frags[idx]) | {r}
        )
    model = MinorModel(g, final_frags)
    report = require_valid(model)
    if not is_rooted_at(model, r_tuple):
        raise InternalInfeasibleError("assembled model lost its rooting")
    if not is_eps_t_dense(report.pattern, eps, a):
        raise DensityNotMetError("assembled pattern misses the density mark")
    fam = PathFamily(
        [p for p in paths_out if p is not None],
        "linkage",
        pairs=tuple(zip(s_tuple, t_tuple)),
    )
    require_paths(g, fam)
    if model.used_vertices() & fam.vertices():
        raise InternalInfeasibleError("model and linkage overlap")
    return model, fam

"""Branch-set certificates: every minor this package claims is carried by an
explicit witness that can be revalidated from scratch.

A :class:`MinorModel` lists, in a significant order, disjoint nonempty vertex
sets of a host graph, each inducing a connected subgraph.  Fragment ``i``
represents vertex ``i`` of the realized pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InvalidModelError,
    NotDisjointError,
    NotRootedError,
    OrderTooSmallError,
    UnknownVertexError,
)
from .graph import Graph, contract_edge_mapped, induced_subgraph, mask_of


@dataclass(frozen=True)
class MinorModel:
    host: Graph
    fragments: tuple[frozenset[int], ...]

    def __init__(self, host: Graph, fragments) -> None:
        object.__setattr__(self, "host", host)
        object.__setattr__(
            self, "fragments", tuple(frozenset(f) for f in fragments)
        )

    def __len__(self) -> int:
        return len(self.fragments)

    def used_vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.fragments:
            out |= f
        return frozenset(out)


@dataclass
class ModelReport:
    valid: bool
    violations: list = field(default_factory=list)
    pattern: Graph | None = None


def validate_model(m: MinorModel) -> ModelReport:
    """Check every branch-set property; list one violation per failure.

    Violations are ``(subject, reason)`` pairs where the subject is a
    fragment index or an index pair.
    """
    g = m.host
    violations: list = []
    masks: list[int] = []
    for i, frag in enumerate(m.fragments):
        if not frag:
            violations.append((i, "empty fragment"))
            masks.append(0)
            continue
        bad = [v for v in frag if not (0 <= v < g.n)]
        if bad:
            violations.append((i, f"vertex {min(bad)} outside host"))
            masks.append(mask_of(v for v in frag if 0 <= v < g.n))
            continue
        mask = mask_of(frag)
        masks.append(mask)
        if not _connected_in_host(g, frag):
            violations.append((i, "fragment not connected in host"))
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if masks[i] & masks[j]:
                violations.append(((i, j), "fragments share a vertex"))
    if violations:
        return ModelReport(valid=False, violations=violations)
    return ModelReport(valid=True, pattern=_direct_pattern(g, m.fragments))


def _connected_in_host(g: Graph, frag: frozenset[int]) -> bool:
    start = min(frag)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w in frag and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(frag)


def _direct_pattern(g: Graph, fragments: tuple[frozenset[int], ...]) -> Graph:
    masks = [mask_of(f) for f in fragments]
    k = len(fragments)
    edges = []
    for i in range(k):
        reach = 0
        for v in fragments[i]:
            reach |= g.neighbor_bits(v)
        for j in range(i + 1, k):
            if reach & masks[j]:
                edges.append((i, j))
    return Graph(k, edges)


def require_valid(m: MinorModel) -> ModelReport:
    report = validate_model(m)
    if not report.valid:
        subject, reason = report.violations[0]
        frag = subject if isinstance(subject, int) else None
        raise InvalidModelError(
            f"invalid model: fragment {subject}: {reason}", fragment=frag
        )
    return report


def pattern_graph(m: MinorModel) -> Graph:
    """The realized pattern: vertex per fragment, edge where any host edge
    joins two fragments."""
    return require_valid(m).pattern


def contract_model(m: MinorModel) -> Graph:
    """The same pattern obtained the slow way: restrict the host to the
    fragments and contract each fragment edge by edge.  Serves as an
    independent cross-check of :func:`pattern_graph`."""
    require_valid(m)
    used = sorted(m.used_vertices())
    sub, old_of_new = induced_subgraph(m.host, used)
    frag_index = {}
    for i, frag in enumerate(m.fragments):
        for v in frag:
            frag_index[v] = i
    label = [frag_index[old_of_new[x]] for x in range(sub.n)]
    while True:
        pick = None
        for u, v in sub.edges():
            if label[u] == label[v]:
                pick = (u, v)
                break
        if pick is None:
            break
        u, v = pick
        sub, old_to_new = contract_edge_mapped(sub, u, v)
        new_label = [0] * sub.n
        for old, lab in enumerate(label):
            new_label[old_to_new[old]] = lab
        label = new_label
    assert len(label) == len(m.fragments)
    assert sorted(label) == list(range(len(m.fragments)))
    relabel = {v: label[v] for v in range(sub.n)}
    return Graph(
        len(m.fragments),
        [(relabel[u], relabel[v]) for u, v in sub.edges()],
    )


def is_rooted_at(m: MinorModel, s) -> bool:
    """True when the fragments and ``s`` pair off: as many fragments as
    vertices of ``s``, each fragment meeting ``s`` exactly once."""
    require_valid(m)
    s = frozenset(s)
    if len(m.fragments) != len(s):
        return False
    return all(len(f & s) == 1 for f in m.fragments)


def is_attached_to(m: MinorModel, s) -> bool:
    """True when the first ``|s|`` fragments each meet ``s`` in exactly one
    vertex, together covering ``s`` (later fragments then avoid ``s``)."""
    require_valid(m)
    s = frozenset(s)
    if len(s) > len(m.fragments):
        raise OrderTooSmallError("more attachment vertices than fragments")
    covered: set[int] = set()
    for f in m.fragments[: len(s)]:
        hit = f & s
        if len(hit) != 1:
            return False
        covered |= hit
    return covered == s


def is_core(m: MinorModel, s, h: Graph | None = None) -> bool:
    """True when ``s`` already carries the pattern: for every pattern edge
    (of ``h`` when given, else of the realized pattern) some host edge joins
    the two fragments inside ``s``.  Callers pass ``h`` to test against an
    intended pattern rather than the realized one."""
    report = require_valid(m)
    s = frozenset(s)
    for v in s:
        m.host.check_vertex(v)
    pat = report.pattern if h is None else h
    if pat.n != len(m.fragments):
        raise InvalidModelError(
            "pattern order does not match the fragment count"
        )
    parts = [f & s for f in m.fragments]
    for i, j in pat.edges():
        if not parts[i] or not parts[j]:
            return False
        if anticomplete(m.host, parts[i], parts[j]):
            return False
    return True


def is_tangent(f, m: MinorModel, u) -> bool:
    """For a model rooted at ``u``: does the vertex set ``f`` touch the
    model exactly in its roots?"""
    require_valid(m)
    u = frozenset(u)
    if not is_rooted_at(m, u):
        raise NotRootedError("model is not rooted at the given vertices")
    f = frozenset(f)
    return all(f & frag == u & frag for frag in m.fragments)


def anticomplete(g: Graph, a, b) -> bool:
    """No edge between the disjoint sets ``a`` and ``b``."""
    a = frozenset(a)
    b = frozenset(b)
    if a & b:
        raise NotDisjointError("sets overlap; anticompleteness is undefined")
    for v in a:
        g.check_vertex(v)
    for v in b:
        g.check_vertex(v)
    bits = mask_of(b)
    return all(not (g.neighbor_bits(v) & bits) for v in a)


def compose_models(outer: MinorModel, inner: MinorModel) -> MinorModel:
    """Model-of-a-model: ``inner`` lives in the pattern of ``outer``; each
    inner fragment expands to the union of the outer fragments it names."""
    require_valid(outer)
    require_valid(inner)
    if inner.host.n != len(outer.fragments):
        raise InvalidModelError(
            "inner host order does not match the outer fragment count"
        )
    fragments = []
    for f in inner.fragments:
        merged: set[int] = set()
        for i in f:
            merged |= outer.fragments[i]
        fragments.append(frozenset(merged))
    composed = MinorModel(outer.host, fragments)
    require_valid(composed)
    return composed


def sub_model(m: MinorModel, indices) -> MinorModel:
    """The model restricted to the given fragment indices, in the given
    order."""
    for i in indices:
        if not (0 <= i < len(m.fragments)):
            raise UnknownVertexError(f"no fragment {i}")
    return MinorModel(m.host, [m.fragments[i] for i in indices])

"""Minor containment tests.

Three routes, cross-checked in the test suite:

* `has_k4_minor_fast` -- the classical series-parallel reduction (remove
  degree <= 1 vertices, suppress degree-2 vertices merging parallel edges);
  a K4 minor exists iff the reduction leaves a nonempty graph.  Any n.
* `has_minor_generic` -- exact model search (disjoint connected bags, one
  per pattern vertex, with the required adjacencies), for patterns on
  <= 6 vertices and hosts with n <= 16.
* a disjoint-paths route for K_{2,3}: the pattern has maximum degree 3, so
  it is a minor iff it is a topological minor, i.e. iff some vertex pair is
  joined by three internally disjoint paths of length >= 2.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Sequence

from .graphs import LabelledGraph, MinorPattern, PatternKind

GENERIC_HOST_CAP = 16


def _reduce_sp(adj: list[int], alive: int) -> int:
    """Run the degree-<=2 reduction in place; returns the surviving vertex mask."""
    stack = []
    m = alive
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        if (adj[v] & alive).bit_count() <= 2:
            stack.append(v)
    while stack:
        v = stack.pop()
        if not alive >> v & 1:
            continue
        row = adj[v] & alive
        deg = row.bit_count()
        if deg > 2:
            continue
        alive &= ~(1 << v)
        if deg == 2:
            a = (row & -row).bit_length() - 1
            b = (row & (row - 1)).bit_length() - 1
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        touched = row
        while touched:
            u = (touched & -touched).bit_length() - 1
            touched &= touched - 1
            adj[u] &= ~(1 << v)
            if (adj[u] & alive).bit_count() <= 2:
                stack.append(u)
    return alive


def has_k4_minor_fast(g: LabelledGraph) -> bool:
    """True iff g has a K4 minor (equivalently, treewidth > 2)."""
    if g.n < 4:
        return False
    return _reduce_sp(list(g.adj), (1 << g.n) - 1) != 0


def has_k4_minor_masked(adj: Sequence[int], alive: int) -> bool:
    """K4 test on the subgraph induced by the vertices of `alive`."""
    if alive.bit_count() < 4:
        return False
    return _reduce_sp([row & alive for row in adj], alive) != 0


def _has_subgraph(host: LabelledGraph, pat: LabelledGraph) -> bool:
    """Backtracking subgraph containment (pattern <= 6 vertices)."""
    p, h = pat.n, host.n
    if p > h:
        return False
    order = sorted(range(p), key=lambda v: -pat.degree(v))
    assign = [-1] * p

    def place(i: int, used: int) -> bool:
        if i == p:
            return True
        pv = order[i]
        need = pat.adj[pv]
        for hv in range(h):
            if used >> hv & 1:
                continue
            row = host.adj[hv]
            ok = True
            for j in range(i):
                if need >> order[j] & 1 and not row >> assign[order[j]] & 1:
                    ok = False
                    break
            if ok:
                assign[pv] = hv
                if place(i + 1, used | (1 << hv)):
                    return True
                assign[pv] = -1
        return False

    return place(0, 0)


def _neighbourhood(adj: Sequence[int], mask: int) -> int:
    out = 0
    while mask:
        v = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        out |= adj[v]
    return out


def _connected_sets_from(adj: Sequence[int], seed: int, allowed: int, cap: int):
    """Yield connected vertex sets S with seed in S, S - seed within `allowed`,
    |S| <= cap; every such set exactly once."""
    sets = []

    def rec(s: int, ext: int, forb: int) -> None:
        sets.append(s)
        if s.bit_count() >= cap:
            return
        e = ext
        local_forb = forb
        while e:
            v = e & -e
            e &= e - 1
            u = v.bit_length() - 1
            s2 = s | v
            ext2 = (e | (adj[u] & allowed)) & ~s2 & ~local_forb
            rec(s2, ext2, local_forb)
            local_forb |= v

    u0 = seed.bit_length() - 1
    rec(seed, adj[u0] & allowed & ~seed, 0)
    return sets


def _has_model(host: LabelledGraph, pat: LabelledGraph) -> bool:
    """Exact minor test: search for disjoint connected bags realizing the pattern."""
    p, h = pat.n, host.n
    if p > h or pat.edge_count() > host.edge_count():
        return False
    if _has_subgraph(host, pat):
        return True
    order = sorted(range(p), key=lambda v: -pat.degree(v))
    bags = [0] * p
    adj = host.adj

    def place(i: int, free: int) -> bool:
        if i == p:
            return True
        pv = order[i]
        req_nbrs = [_neighbourhood(adj, bags[order[j]])
                    for j in range(i) if pat.adj[pv] >> order[j] & 1]
        cap = free.bit_count() - (p - i - 1)
        if cap <= 0:
            return False
        seen = 0
        for start in range(h):
            sv = 1 << start
            if not free & sv:
                continue
            for s in _connected_sets_from(adj, sv, free & ~seen & ~sv, cap):
                if all(s & rn for rn in req_nbrs):
                    bags[pv] = s
                    if place(i + 1, free & ~s):
                        return True
            seen |= sv
        return False

    return place(0, (1 << h) - 1)


def _disjoint_paths_at_least(g: LabelledGraph, s: int, t: int, k: int) -> bool:
    """At least k internally vertex-disjoint s-t paths of length >= 2 (edge st ignored)."""
    n = g.n
    poles = (s, t)

    def node_in(v: int) -> int:
        return 2 * v

    def node_out(v: int) -> int:
        return 2 * v if v in poles else 2 * v + 1

    res: dict[int, set[int]] = defaultdict(set)
    for v in range(n):
        if v not in poles:
            res[node_in(v)].add(node_out(v))
    for u, w in g.edges():
        if u in poles and w in poles:
            continue
        res[node_out(u)].add(node_in(w))
        res[node_out(w)].add(node_in(u))
    source, sink = node_in(s), node_in(t)
    flow = 0
    while flow < k:
        prev: dict[int, int | None] = {source: None}
        queue = deque([source])
        while queue:
            a = queue.popleft()
            if a == sink:
                break
            for b in tuple(res[a]):
                if b not in prev:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            return False
        node = sink
        while prev[node] is not None:
            a = prev[node]
            res[a].discard(node)
            res[node].add(a)
            node = a
        flow += 1
    return True


def _has_k23_topological(g: LabelledGraph) -> bool:
    """Three internally disjoint paths of length >= 2 between some vertex pair."""
    n = g.n
    if n < 5 or g.edge_count() < 6:
        return False
    for u in range(n):
        for v in range(u + 1, n):
            if _disjoint_paths_at_least(g, u, v, 3):
                return True
    return False


def has_minor_generic(g: LabelledGraph, p: MinorPattern) -> bool:
    """The model-search path regardless of pattern (used for cross-checks)."""
    if g.n > GENERIC_HOST_CAP:
        raise ValueError(f"generic minor test capped at {GENERIC_HOST_CAP} vertices")
    if p.graph.n > 6:
        raise ValueError("pattern too large (cap: 6 vertices)")
    return _has_model(g, p.graph)


def has_minor(g: LabelledGraph, p: MinorPattern) -> bool:
    """True iff the pattern is a minor of g.

    K4 is answered by the series-parallel reduction at any n.  K_{2,3} uses
    the disjoint-paths characterisation.  Anything else runs the generic
    model search.  Non-K4 patterns are capped at hosts with 16 vertices.
    """
    if p.graph.n > 6:
        raise ValueError("pattern too large (cap: 6 vertices)")
    if p.kind is PatternKind.K4:
        return has_k4_minor_fast(g)
    if g.n > GENERIC_HOST_CAP:
        raise ValueError(f"minor test for non-K4 patterns capped at {GENERIC_HOST_CAP} vertices")
    if p.kind is PatternKind.K23:
        return _has_k23_topological(g)
    return _has_model(g, p.graph)


def has_minor_in(g: LabelledGraph, patterns) -> bool:
    return any(has_minor(g, p) for p in patterns)


def is_series_parallel(g: LabelledGraph) -> bool:
    """No K4 minor."""
    return not has_k4_minor_fast(g)


def is_outerplanar(g: LabelledGraph) -> bool:
    """No K4 minor and no K_{2,3} minor."""
    if has_k4_minor_fast(g):
        return False
    if g.edge_count() > max(2 * g.n - 3, 0):
        return False
    return not _has_k23_topological(g)

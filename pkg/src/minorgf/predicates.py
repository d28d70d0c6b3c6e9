"""Predicates on coloured graphs, blockers and two-pole networks."""

from __future__ import annotations

from enum import Enum
from itertools import combinations
from typing import Optional, Sequence

from .graphs import ColouredGraph, LabelledGraph, TwoPoleNetwork
from .minors import has_k4_minor_fast, has_minor, has_minor_in

PACKING_CAP = 12


def extension(g: ColouredGraph, labels: Sequence[int]) -> LabelledGraph:
    """The uncoloured graph G^L: one new vertex per colour class, adjacent to it.

    `labels` must be exactly n..n+t-1 in increasing order (vertex ids of a
    LabelledGraph are always 0..n-1).
    """
    if len(labels) != g.t:
        raise ValueError(f"need {g.t} fresh labels, got {len(labels)}")
    expected = list(range(g.n, g.n + g.t))
    if list(labels) != expected:
        raise ValueError(f"fresh labels must be {expected} to keep vertex ids contiguous")
    out = g.graph
    for c in range(1, g.t + 1):
        out = out.with_new_vertex(g.colour_class(c))
    # colour-class rows built on the original n vertices stay valid because
    # extension vertices are never coloured.
    return out


def colour_is_good(g: ColouredGraph, c: int, b) -> bool:
    """Adding one vertex adjacent to every c-coloured vertex stays minor-free for b."""
    if has_minor_in(g.graph, b):
        raise ValueError("underlying graph already has an excluded minor")
    extended = g.graph.with_new_vertex(g.colour_class(c))
    return not has_minor_in(extended, b)


def is_crd_member(g: ColouredGraph, l: int, b) -> bool:
    """Underlying graph minor-free, colours within 1..l, and every colour good."""
    if g.t != l:
        raise ValueError(f"graph carries {g.t} colour classes, expected {l}")
    if has_minor_in(g.graph, b):
        return False
    for c in range(1, l + 1):
        extended = g.graph.with_new_vertex(g.colour_class(c))
        if has_minor_in(extended, b):
            return False
    return True


def uses_all_colours(g: ColouredGraph, l: int) -> bool:
    """Every colour 1..l appears on some vertex."""
    return g.colours_used() == (1 << l) - 1


def is_blocker(g: LabelledGraph, q: int, b) -> bool:
    """q (vertex bitmask) is a blocker: g - q has no minor in b."""
    return not has_minor_in(g.delete_vertices(q), b)


def is_redundant_blocker(g: LabelledGraph, q: int, b) -> bool:
    """Every q - {x} is still a blocker (for q = 0 this is is_blocker)."""
    if q == 0:
        return is_blocker(g, 0, b)
    m = q
    while m:
        x = m & -m
        m &= m - 1
        if not is_blocker(g, q & ~x, b):
            return False
    return True


def _critical_sets(g: LabelledGraph, b) -> list[int]:
    """Inclusion-minimal vertex sets whose induced subgraph has a minor in b.

    A set is critical if it induces a minor in b but no proper subset does.
    """
    if g.n > PACKING_CAP:
        raise ValueError(f"packing search capped at {PACKING_CAP} vertices")
    crit: list[int] = []
    smallest = min(p.graph.n for p in b)
    for size in range(smallest, g.n + 1):
        for combo in combinations(range(g.n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if any(c & mask == c for c in crit):
                continue
            if has_minor_in(g.induced(mask), b):
                crit.append(mask)
    return crit


def max_disjoint_minor_packing(g: LabelledGraph, b) -> int:
    """Maximum number of pairwise vertex-disjoint subgraphs each with a minor in b."""
    crit = _critical_sets(g, b)
    crit.sort(key=lambda m: m.bit_count())
    best = 0

    def search(idx: int, used: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        remaining = len(crit) - idx
        if count + remaining <= best:
            return
        for i in range(idx, len(crit)):
            if crit[i] & used == 0:
                search(i + 1, used | crit[i], count + 1)

    search(0, 0, 0)
    return best


def colour_separator(g: ColouredGraph, l: int) -> Optional[int]:
    """A vertex set S (bitmask), |S| <= l, whose removal leaves no bicoloured
    component; absent (None) iff there are l+1 disjoint connected subgraphs
    containing both colours.

    Realised as a vertex-capacitated max-flow between the two extension
    vertices of the 2-coloured graph.  Only the vertex arcs carry capacity 1;
    source, sink and edge arcs are uncuttable.
    """
    if g.t != 2:
        raise ValueError("colour separator is defined for 2-coloured graphs")
    n = g.n
    reds = g.colour_class(1)
    greens = g.colour_class(2)
    big = n + 1

    # node 2v = in, 2v+1 = out; source and sink are fresh ids
    source, sink = 2 * n, 2 * n + 1
    cap: dict[tuple[int, int], int] = {}
    nbrs: dict[int, list[int]] = {i: [] for i in range(2 * n + 2)}

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            nbrs[a].append(b)
            nbrs[b].append(a)
            cap[(a, b)] = 0
            cap.setdefault((b, a), 0)
        cap[(a, b)] += c

    for v in range(n):
        arc(2 * v, 2 * v + 1, 1)
    for u, w in g.graph.edges():
        arc(2 * u + 1, 2 * w, big)
        arc(2 * w + 1, 2 * u, big)
    for v in range(n):
        if reds >> v & 1:
            arc(source, 2 * v, big)
        if greens >> v & 1:
            arc(2 * v + 1, sink, big)

    flow = 0
    while flow <= l:
        prev: dict[int, Optional[int]] = {source: None}
        queue = [source]
        qi = 0
        while qi < len(queue) and sink not in prev:
            a = queue[qi]
            qi += 1
            for bnode in nbrs[a]:
                if bnode not in prev and cap.get((a, bnode), 0) > 0:
                    prev[bnode] = a
                    queue.append(bnode)
        if sink not in prev:
            break
        node = sink
        while prev[node] is not None:
            a = prev[node]
            cap[(a, node)] -= 1
            cap[(node, a)] += 1
            node = a
        flow += 1
    if flow > l:
        return None
    # min cut: vertices whose in->out arc crosses the reachable frontier
    reach = {source}
    queue = [source]
    while queue:
        a = queue.pop()
        for bnode in nbrs[a]:
            if bnode not in reach and cap.get((a, bnode), 0) > 0:
                reach.add(bnode)
                queue.append(bnode)
    cut = 0
    for v in range(n):
        if 2 * v in reach and 2 * v + 1 not in reach:
            cut |= 1 << v
    return cut


class NetworkKind(Enum):
    E2 = "E2"
    SERIES = "Series"
    PARALLEL = "Parallel"
    NOT_SP = "NotSP"


def classify_network(d: TwoPoleNetwork) -> NetworkKind:
    """Trakhtenbrot classification of a two-pole network."""
    if d.degenerate:
        raise ValueError("degenerate networks are outside the E2/S/P classification")
    g = d.full_graph()
    if not g.is_connected():
        raise ValueError("network graph is disconnected")
    n = d.size
    s, t = n, n + 1
    closed = d.full_graph(extra_pole_edge=True)
    if n == 0:
        if d.pole_edge:
            return NetworkKind.E2
        raise ValueError("empty network without pole edge is not connected")
    if not closed.is_biconnected():
        raise ValueError("pole-closed graph must be biconnected")
    if has_k4_minor_fast(closed):
        return NetworkKind.NOT_SP
    # series iff some internal cut vertex separates the poles in the open graph
    if not d.pole_edge:
        full = (1 << g.n) - 1
        for v in range(n):
            comps = g.component_masks(full & ~(1 << v))
            for comp in comps:
                if bool(comp >> s & 1) != bool(comp >> t & 1):
                    return NetworkKind.SERIES
    return NetworkKind.PARALLEL


def _is_path_graph(sub: LabelledGraph) -> bool:
    if sub.n == 1:
        return True
    if not sub.is_connected():
        return False
    degs = sorted(sub.degree(v) for v in range(sub.n))
    return degs == [1, 1] + [2] * (sub.n - 2)


def spike_count(g: ColouredGraph, l: int, r: int) -> int:
    """Number of pendant monochromatic-pattern paths (spikes).

    A spike is an induced path v1..v_{l+1} whose only edge to the rest is
    u-v1 with u smaller than every path vertex, all path vertices coloured
    exactly {1..l, x} for one x in {l+1..r}.
    """
    if g.t != r:
        raise ValueError(f"graph carries {g.t} colour classes, expected {r}")
    base = (1 << l) - 1
    count = 0
    for verts in combinations(range(g.n), l + 1):
        mask = 0
        for v in verts:
            mask |= 1 << v
        cols = {g.colours[v] for v in verts}
        if len(cols) != 1:
            continue
        col = cols.pop()
        extra = col & ~base
        if col & base != base or extra.bit_count() != 1:
            continue
        x = extra.bit_length()
        if not l + 1 <= x <= r:
            continue
        sub = g.graph.induced(mask)
        if not _is_path_graph(sub):
            continue
        attachments = []
        for v in verts:
            row = g.graph.adj[v] & ~mask
            while row:
                u = (row & -row).bit_length() - 1
                row &= row - 1
                attachments.append((u, v))
        if len(attachments) != 1:
            continue
        u, v1 = attachments[0]
        if sub.n >= 2 and sub.degree(sorted(verts).index(v1)) != 1:
            continue
        if any(u >= v for v in verts):
            continue
        count += 1
    return count


def nice_vertices(g: ColouredGraph, l: int) -> int:
    """Vertices x such that g - x has >= 2 components each containing all colours 1..l."""
    if g.t != l:
        raise ValueError(f"graph carries {g.t} colour classes, expected {l}")
    if not g.graph.is_connected():
        raise ValueError("nice vertices are defined for connected graphs")
    classes = [g.colour_class(c) for c in range(1, l + 1)]
    full = (1 << g.n) - 1
    out = 0
    for x in range(g.n):
        comps = g.graph.component_masks(full & ~(1 << x))
        good = sum(1 for comp in comps if all(comp & cc for cc in classes))
        if good >= 2:
            out |= 1 << x
    return out


def colour_good_with_root(g: ColouredGraph, root: int, c: int) -> bool:
    """Adding a vertex adjacent to the root and every c-coloured vertex keeps Ex K4."""
    nbrs = g.colour_class(c) | (1 << root)
    return not has_k4_minor_fast(g.graph.with_new_vertex(nbrs))


def is_c_tree(g: ColouredGraph, root: int, colour_set: int) -> bool:
    """The rooted coloured-tree predicate behind the A_C classes.

    (a) every colour of `colour_set` is good for the root-augmented extension,
    (b) the graph is connected and removing any vertex leaves no component
        that is colourless and avoids the root,
    (c) the root is uncoloured, not a cut vertex and not the only vertex;
    additionally the colours present are exactly `colour_set`.
    """
    graph = g.graph
    n = graph.n
    if not 0 <= root < n:
        raise ValueError("root outside vertex range")
    if g.colours[root] != 0:
        return False
    if n == 1:
        return False
    if not graph.is_connected():
        return False
    if g.colours_used() != colour_set:
        return False
    if root in graph.cut_vertices():
        return False
    coloured = g.coloured_vertices()
    full = (1 << n) - 1
    for x in range(n):
        for comp in graph.component_masks(full & ~(1 << x)):
            if comp & coloured == 0 and not comp >> root & 1:
                return False
    c = colour_set
    while c:
        bit = c & -c
        c &= c - 1
        if not colour_good_with_root(g, root, bit.bit_length()):
            return False
    return True


def is_a_hat_member(g: ColouredGraph, root: int, colour_set: int) -> bool:
    """The root-merged variant: conditions (a) and (b) only; the root may be
    coloured and may be a cut vertex; colour set must be exactly `colour_set`."""
    graph = g.graph
    n = graph.n
    if not 0 <= root < n:
        raise ValueError("root outside vertex range")
    if n == 0:
        return colour_set == 0
    if not graph.is_connected():
        return False
    if g.colours_used() != colour_set:
        return False
    coloured = g.coloured_vertices()
    full = (1 << n) - 1
    for x in range(n):
        for comp in graph.component_masks(full & ~(1 << x)):
            if comp & coloured == 0 and not comp >> root & 1:
                return False
    c = colour_set
    while c:
        bit = c & -c
        c &= c - 1
        if not colour_good_with_root(g, root, bit.bit_length()):
            return False
    return True

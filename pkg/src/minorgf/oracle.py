"""Exhaustive enumeration of the graph classes at small sizes.

Counting is over raw labelled objects: every edge subset of the complete
graph on the vertex set, with colourings layered on top.  No isomorphism
rejection is performed (labelled counting needs none).  The network count
uses one bijective shortcut, cross-checked against the raw route in the
test suite: for n >= 1 internal vertices, networks correspond 2-to-1 to
2-connected series-parallel graphs that contain the pole edge (drop or
keep that edge).
"""

from __future__ import annotations

import json
import multiprocessing
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Optional

from .graphs import ColouredGraph, LabelledGraph, MinorPattern, TwoPoleNetwork, K4_SET, OUTERPLANAR_SET
from .minors import has_k4_minor_fast, has_k4_minor_masked, has_minor_in, is_outerplanar
from .predicates import (NetworkKind, classify_network, is_crd_member,
                         max_disjoint_minor_packing)

UNCOLOURED_CAP = 7
COLOURED_CAP = 5
NETWORK_CAP = 6
FAN_CAP = 6


class ClassTag(Enum):
    EX_DISJOINT = "ex-disjoint"
    RD = "rd"
    CRD = "crd"
    CONNECTED_CRD = "connected-crd"
    C_TREE = "c-tree"
    A_HAT = "a-hat"
    BK = "bk"
    SP_NETWORK_D = "network-d"
    SP_NETWORK_S = "network-s"
    SP_NETWORK_P = "network-p"
    FAN_PRIME = "fan-prime"
    OUTER_NETWORK = "outer-network"
    ROOTED_SP = "rooted-sp"
    ROOTED_CRD = "rooted-crd"


@dataclass(frozen=True)
class ClassSpec:
    tag: ClassTag
    k: int = 0
    l: int = 0
    colours: int = 0     # |C| for the C-tree / root-merged classes
    b: str = "k4"        # "k4" or "outer"

    def patterns(self):
        return K4_SET if self.b == "k4" else OUTERPLANAR_SET


@dataclass(frozen=True)
class CountRecord:
    spec: ClassSpec
    n: int
    count: int
    by_edges: Optional[dict[int, int]] = None

    def to_json(self) -> str:
        payload = {"class": self.spec.tag.value, "n": self.n, "count": str(self.count)}
        for name in ("k", "l", "colours"):
            value = getattr(self.spec, name)
            if value:
                payload[name] = value
        if self.spec.b != "k4":
            payload["b"] = self.spec.b
        if self.by_edges is not None:
            payload["by_edges"] = {str(m): str(c) for m, c in sorted(self.by_edges.items())}
        return json.dumps(payload, sort_keys=True)


def _edge_list(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _rows_from_mask(n: int, edges: list[tuple[int, int]], mask: int) -> list[int]:
    rows = [0] * n
    while mask:
        i = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        u, v = edges[i]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return rows


def _components(rows: list[int], within: int) -> list[int]:
    comps = []
    remaining = within
    while remaining:
        comp = remaining & -remaining
        frontier = comp
        while frontier:
            nxt = 0
            while frontier:
                v = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                nxt |= rows[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def _is_connected_masked(rows: list[int], within: int) -> bool:
    if within == 0:
        return True
    comp = within & -within
    frontier = comp
    while frontier:
        nxt = 0
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            nxt |= rows[v]
        nxt &= within & ~comp
        comp |= nxt
        frontier = nxt
    return comp == within


# ---------------------------------------------------------------------------
# networks (series-parallel): D = E2 + S + P
# ---------------------------------------------------------------------------

def _network_chunk(args) -> tuple[int, int]:
    """Count (T, S) over internal-adjacency masks in [start, stop).

    T = 2-connected SP graphs on internals+poles containing the pole edge;
    S = those whose pole-edge deletion leaves a pole-separating cut vertex.
    """
    n, start, stop = args
    edges = _edge_list(n)
    s_id, t_id = n, n + 1
    s_bit, t_bit = 1 << s_id, 1 << t_id
    full = (1 << (n + 2)) - 1
    budget_total = 2 * n  # pole masks may carry at most 2(n+2)-3-1-|H| edges
    pc = [m.bit_count() for m in range(1 << n)]
    all_masks = list(range(1 << n))
    t_count = 0
    s_count = 0
    for hmask in range(start, stop):
        hrows = _rows_from_mask(n, edges, hmask)
        if has_k4_minor_masked(hrows, (1 << n) - 1):
            continue
        hedges = sum(row.bit_count() for row in hrows) // 2
        budget = budget_total - hedges
        if budget < 0:
            continue
        comps = _components(hrows, (1 << n) - 1)
        valid = [m for m in all_masks if all(m & c for c in comps)]
        need2 = 0
        need1 = 0
        for v in range(n):
            d = hrows[v].bit_count()
            if d == 0:
                need2 |= 1 << v
            elif d == 1:
                need1 |= 1 << v
        for smask in valid:
            pcs = pc[smask]
            if pcs > budget:
                continue
            rem2 = need2 & smask
            for tmask in valid:
                if pcs + pc[tmask] > budget:
                    continue
                if need2 & ~(smask & tmask):
                    continue
                if need1 & ~(smask | tmask):
                    continue
                rows = list(hrows)
                for v in range(n):
                    bit = 1 << v
                    if smask & bit:
                        rows[v] |= s_bit
                    if tmask & bit:
                        rows[v] |= t_bit
                rows.append(smask | t_bit)
                rows.append(tmask | s_bit)
                if has_k4_minor_masked(rows, full):
                    continue
                # 2-connectivity: pole removals are covered by the component
                # conditions; internal removals need a reachability check.
                ok = True
                for v in range(n):
                    if not _is_connected_masked(rows, full & ~(1 << v)):
                        ok = False
                        break
                if not ok:
                    continue
                t_count += 1
                # series classification of the pole-edge-free sibling
                rows[s_id] &= ~t_bit
                rows[t_id] &= ~s_bit
                for v in range(n):
                    within = full & ~(1 << v)
                    comp = s_bit
                    frontier = comp
                    while frontier:
                        nxt = 0
                        while frontier:
                            w = (frontier & -frontier).bit_length() - 1
                            frontier &= frontier - 1
                            nxt |= rows[w]
                        nxt &= within & ~comp
                        comp |= nxt
                        frontier = nxt
                    if not comp & t_bit:
                        s_count += 1
                        break
    return t_count, s_count


def _run_chunks(worker, jobs, threads: int):
    if threads > 1 and len(jobs) > 1:
        with multiprocessing.Pool(threads) as pool:
            return pool.map(worker, jobs)
    return [worker(job) for job in jobs]


@lru_cache(maxsize=64)
def _network_counts(n: int, threads: int = 1) -> tuple[int, int, int]:
    """(|D_n|, |S_n|, |P_n|) for networks with n internal vertices."""
    if n > NETWORK_CAP:
        raise ValueError(f"network enumeration capped at {NETWORK_CAP} internal vertices")
    if n == 0:
        return 1, 0, 0
    total = 1 << (n * (n - 1) // 2)
    chunks = min(64, total) if threads > 1 else 1
    step = (total + chunks - 1) // chunks
    jobs = [(n, lo, min(lo + step, total)) for lo in range(0, total, step)]
    parts = _run_chunks(_network_chunk, jobs, threads)
    t_count = sum(p[0] for p in parts)
    s_count = sum(p[1] for p in parts)
    # each pole-edge graph yields the network itself (parallel) and its
    # pole-edge-free sibling (series or parallel)
    d = 2 * t_count
    s = s_count
    p = d - s
    return d, s, p


def _network_counts_raw(n: int) -> tuple[int, int, int, int]:
    """(D, E2, S, P) by direct enumeration through the public classifier."""
    if n > 4:
        raise ValueError("raw network enumeration capped at 4 internal vertices")
    m = n + 2
    edges = _edge_list(m)
    d = e2 = s = p = 0
    for mask in range(1 << len(edges)):
        g = LabelledGraph.from_edges(m, [e for i, e in enumerate(edges) if mask >> i & 1])
        net = TwoPoleNetwork.from_graph(g, n, n + 1)
        full = g
        if not full.is_connected():
            continue
        closed = net.full_graph(extra_pole_edge=True)
        if not closed.is_biconnected():
            continue
        kind = classify_network(net)
        if kind is NetworkKind.NOT_SP:
            continue
        d += 1
        if kind is NetworkKind.E2:
            e2 += 1
        elif kind is NetworkKind.SERIES:
            s += 1
        else:
            p += 1
    return d, e2, s, p


def verify_network_partition(n: int, threads: int = 1) -> bool:
    """Every SP network falls in exactly one of E2/S/P and the counts add up."""
    if n <= 4:
        d, e2, s, p = _network_counts_raw(n)
        return d == e2 + s + p
    d, s, p = _network_counts(n, threads)
    e2 = 1 if n == 0 else 0
    return d == e2 + s + p


# ---------------------------------------------------------------------------
# outerplanar networks
# ---------------------------------------------------------------------------

def _outer_network_chunk(args) -> int:
    n, start, stop = args
    m = n + 2
    edges = _edge_list(m)
    st_index = edges.index((n, n + 1))
    free = [i for i in range(len(edges)) if i != st_index]
    count = 0
    full = (1 << m) - 1
    for sub in range(start, stop):
        mask = 1 << st_index
        rest = sub
        j = 0
        while rest:
            if rest & 1:
                mask |= 1 << free[j]
            rest >>= 1
            j += 1
        if mask.bit_count() > 2 * m - 3:
            continue
        rows = _rows_from_mask(m, edges, mask)
        if min((row.bit_count() for row in rows), default=0) < (1 if m == 2 else 2):
            continue
        g = LabelledGraph(m, tuple(rows))
        if not g.is_connected() or (m > 2 and g.cut_vertices()):
            continue
        if not is_outerplanar(g):
            continue
        extended = g.with_new_vertex((1 << n) | (1 << (n + 1)))
        if not is_outerplanar(extended):
            continue
        count += 1
    return count


@lru_cache(maxsize=64)
def _outer_network_count(n: int, threads: int = 1) -> int:
    if n > NETWORK_CAP:
        raise ValueError(f"network enumeration capped at {NETWORK_CAP} internal vertices")
    if n == 0:
        return 1
    m = n + 2
    total = 1 << (m * (m - 1) // 2 - 1)
    chunks = min(64, total) if threads > 1 else 1
    step = (total + chunks - 1) // chunks
    jobs = [(n, lo, min(lo + step, total)) for lo in range(0, total, step)]
    return sum(_run_chunks(_outer_network_chunk, jobs, threads))


# ---------------------------------------------------------------------------
# rooted coloured classes: C-trees, the root-merged variant, coloured blocks
# ---------------------------------------------------------------------------

def _rooted_structure(n: int, mask: int, edges: list[tuple[int, int]]):
    """Per-graph data for the rooted classes on vertices 0..n-1 plus root n.

    Returns None if disconnected, else (rows, root_is_cut, bad_comps, good)
    where bad_comps are the root-free components (over labelled vertices)
    left by single-vertex removals, and good[S] says whether attaching a new
    vertex to the root and the labelled set S keeps the graph K4-minor-free.
    """
    m = n + 1
    rows = _rows_from_mask(m, edges, mask)
    full = (1 << m) - 1
    if not _is_connected_masked(rows, full):
        return None
    root_bit = 1 << n
    bad_comps = set()
    root_is_cut = False
    for x in range(m):
        comps = _components(rows, full & ~(1 << x))
        if x == n and len(comps) > 1:
            root_is_cut = True
        for comp in comps:
            if not comp & root_bit:
                bad_comps.add(comp)
    good = []
    for s_mask in range(1 << n):
        rows2 = list(rows)
        new = s_mask | root_bit
        rows2.append(new)
        for v in range(m):
            if new >> v & 1:
                rows2[v] |= 1 << m
        good.append(not has_k4_minor_masked(rows2, (1 << (m + 1)) - 1))
    return rows, root_is_cut, sorted(bad_comps), good


def _count_c_tree_like(n: int, colours: int, merged_root: bool) -> int:
    """|A_{C,n}| (merged_root=False) or the root-merged variant count."""
    if n > COLOURED_CAP:
        raise ValueError(f"coloured enumeration capped at {COLOURED_CAP} vertices")
    if n == 0:
        return 1 if merged_root else 0
    m = n + 1
    edges = _edge_list(m)
    c = colours
    total = 0
    subsets = range(1 << n)
    for mask in range(1 << len(edges)):
        st = _rooted_structure(n, mask, edges)
        if st is None:
            continue
        rows, root_is_cut, bad_comps, good = st
        if not merged_root and root_is_cut:
            continue
        for assign in product(subsets, repeat=c):
            coloured = 0
            ok = True
            for s_mask in assign:
                if not good[s_mask]:
                    ok = False
                    break
                coloured |= s_mask
            if not ok:
                continue
            if any(not d & coloured for d in bad_comps):
                continue
            if merged_root:
                missing = sum(1 for s_mask in assign if s_mask == 0)
                total += 1 << (c - missing)
            else:
                if all(assign):
                    total += 1
    return total


def _count_bk(n: int, k: int) -> int:
    """|B_{k,n}|: biconnected C-trees with k singleton-coloured vertices."""
    if n > COLOURED_CAP:
        raise ValueError(f"coloured enumeration capped at {COLOURED_CAP} vertices")
    if n < k:
        return 0
    m = n + 1
    edges = _edge_list(m)
    total = 0
    for mask in range(1 << len(edges)):
        rows = _rows_from_mask(m, edges, mask)
        g = LabelledGraph(m, tuple(rows))
        if not g.is_biconnected():
            continue
        st = _rooted_structure(n, mask, edges)
        rows_, _, _, good = st
        for verts in product(range(n), repeat=k):
            if len(set(verts)) != k:
                continue
            if all(good[1 << v] for v in verts):
                total += 1
    return total


# ---------------------------------------------------------------------------
# crd classes (rootless coloured graphs)
# ---------------------------------------------------------------------------

def _crd_structure(n: int, mask: int, edges: list[tuple[int, int]], patterns):
    rows = _rows_from_mask(n, edges, mask)
    g = LabelledGraph(n, tuple(rows))
    if has_minor_in(g, patterns):
        return None
    k4_only = patterns is K4_SET
    good = []
    for s_mask in range(1 << n):
        extended_rows = list(rows) + [s_mask]
        for v in range(n):
            if s_mask >> v & 1:
                extended_rows[v] |= 1 << n
        if k4_only:
            bad = has_k4_minor_masked(extended_rows, (1 << (n + 1)) - 1)
        else:
            bad = has_minor_in(LabelledGraph(n + 1, tuple(extended_rows)), patterns)
        good.append(not bad)
    return rows, good


def _count_crd(n: int, l: int, patterns, connected_only: bool) -> int:
    if n > COLOURED_CAP:
        raise ValueError(f"coloured enumeration capped at {COLOURED_CAP} vertices")
    if n == 0:
        return 0 if connected_only else 1
    edges = _edge_list(n)
    total = 0
    subsets = range(1 << n)
    for mask in range(1 << len(edges)):
        st = _crd_structure(n, mask, edges, patterns)
        if st is None:
            continue
        rows, good = st
        if connected_only and not _is_connected_masked(rows, (1 << n) - 1):
            continue
        good_count = sum(1 for s_mask in subsets if good[s_mask])
        total += good_count ** l
    return total


def _count_rooted_crd(n: int, l: int, patterns) -> int:
    """Pairs (G, v) with G connected in crd_l and v a full-recolour root."""
    if n > COLOURED_CAP:
        raise ValueError(f"coloured enumeration capped at {COLOURED_CAP} vertices")
    edges = _edge_list(n)
    full_mask = (1 << l) - 1
    total = 0
    for mask in range(1 << len(edges)):
        st = _crd_structure(n, mask, edges, patterns)
        if st is None:
            continue
        rows, good = st
        if not _is_connected_masked(rows, (1 << n) - 1):
            continue
        for assign in product(range(1 << n), repeat=l):
            if not all(good[s_mask] for s_mask in assign):
                continue
            for v in range(n):
                bit = 1 << v
                if all(good[s_mask | bit] for s_mask in assign):
                    total += 1
    return total


# ---------------------------------------------------------------------------
# redundant blockers and disjoint-minor classes (uncoloured)
# ---------------------------------------------------------------------------

def _count_rd(m: int, r: int, patterns) -> int:
    if m > UNCOLOURED_CAP:
        raise ValueError(f"uncoloured enumeration capped at {UNCOLOURED_CAP} vertices")
    edges = _edge_list(m)
    full = (1 << m) - 1
    k4_only = patterns is K4_SET
    removal_subsets = [sum(1 << v for v in combo) for combo in combinations(range(m), r - 1)] \
        if r >= 1 else [0]
    q_subsets = [sum(1 << v for v in combo) for combo in combinations(range(m), r)]
    total = 0
    for mask in range(1 << len(edges)):
        rows = _rows_from_mask(m, edges, mask)
        ok_removed = {}
        found = False
        for q in q_subsets:
            good_q = True
            qq = q
            while qq:
                x = qq & -qq
                qq &= qq - 1
                rem = q & ~x
                verdict = ok_removed.get(rem)
                if verdict is None:
                    alive = full & ~rem
                    if k4_only:
                        verdict = not has_k4_minor_masked(rows, alive)
                    else:
                        verdict = not has_minor_in(LabelledGraph(m, tuple(rows)).induced(alive), patterns)
                    ok_removed[rem] = verdict
                if not verdict:
                    good_q = False
                    break
            if good_q:
                found = True
                break
        if found:
            total += 1
    return total


def _count_ex_disjoint(m: int, k: int, patterns) -> int:
    if m > UNCOLOURED_CAP:
        raise ValueError(f"uncoloured enumeration capped at {UNCOLOURED_CAP} vertices")
    edges = _edge_list(m)
    total = 0
    for mask in range(1 << len(edges)):
        g = LabelledGraph.from_edges(m, [e for i, e in enumerate(edges) if mask >> i & 1])
        if max_disjoint_minor_packing(g, patterns) <= k:
            total += 1
    return total


def _count_rooted_sp(n: int) -> int:
    """Rooted connected series-parallel graphs: n choices of root per graph."""
    if n > UNCOLOURED_CAP:
        raise ValueError(f"uncoloured enumeration capped at {UNCOLOURED_CAP} vertices")
    if n == 0:
        return 0
    edges = _edge_list(n)
    full = (1 << n) - 1
    count = 0
    for mask in range(1 << len(edges)):
        rows = _rows_from_mask(n, edges, mask)
        if not _is_connected_masked(rows, full):
            continue
        if has_k4_minor_masked(rows, full):
            continue
        count += 1
    return count * n


# ---------------------------------------------------------------------------
# fans: subdivided coloured trees with a root attached
# ---------------------------------------------------------------------------

def _labelled_trees(n: int):
    """All labelled trees on 0..n-1 as adjacency rows (via Pruefer sequences)."""
    import heapq

    if n == 0:
        return
    if n == 1:
        yield [0]
        return
    if n == 2:
        yield [2, 1]
        return
    for seq in product(range(n), repeat=n - 2):
        degs = [1] * n
        for v in seq:
            degs[v] += 1
        rows = [0] * n
        heap = [v for v in range(n) if degs[v] == 1]
        heapq.heapify(heap)
        for v in seq:
            u = heapq.heappop(heap)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            degs[v] -= 1
            if degs[v] == 1:
                heapq.heappush(heap, v)
        u = heapq.heappop(heap)
        v = heapq.heappop(heap)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        yield rows


def _count_fan_prime(n: int, k: int) -> dict[int, int]:
    """Edge-count breakdown of the rooted fan class on n labelled vertices."""
    from math import factorial

    if n > FAN_CAP:
        raise ValueError(f"fan enumeration capped at {FAN_CAP} vertices")
    if k < 1:
        raise ValueError("k must be positive")
    by_edges: dict[int, int] = {}
    if n < k:
        return by_edges
    orders = factorial(k)
    for rows in _labelled_trees(n):
        for coloured in combinations(range(n), k):
            cmask = 0
            for v in coloured:
                cmask |= 1 << v
            ok = True
            optional = 0
            mandatory = 0
            for v in range(n):
                deg = rows[v].bit_count()
                if not cmask >> v & 1:
                    if deg < 2:
                        ok = False
                        break
                    if deg == 2:
                        mandatory += 1
                    else:
                        optional += 1
                else:
                    if deg <= 1:
                        mandatory += 1
                    else:
                        optional += 1
            if not ok:
                continue
            base_edges = (n - 1) + mandatory
            for extra in range(optional + 1):
                ways = comb(optional, extra) * orders
                key = base_edges + extra
                by_edges[key] = by_edges.get(key, 0) + ways
    return by_edges


# ---------------------------------------------------------------------------
# unlabelled coloured tree shapes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeShape:
    """One isomorphism class of the coloured trees behind the fan classes."""

    vertices: int
    edges: int
    leaves: int
    optional_roots: int
    encoding: str = field(compare=False, default="")


def _canon_coloured_tree(rows: list[int], colour_of: dict[int, int]) -> str:
    """Canonical string of a tree whose vertices optionally carry distinct colours."""
    n = len(rows)
    if n == 1:
        return f"({colour_of.get(0, -1)})"

    def encode(root: int, parent: int) -> str:
        subs = sorted(
            encode(u, root)
            for u in range(n)
            if rows[root] >> u & 1 and u != parent
        )
        return f"({colour_of.get(root, -1)}" + "".join(subs) + ")"

    # root at the tree centre; for bicentral trees take the better of the two
    degs = [rows[v].bit_count() for v in range(n)]
    alive = set(range(n))
    layer = [v for v in alive if degs[v] <= 1]
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
            row = rows[v]
            while row:
                u = (row & -row).bit_length() - 1
                row &= row - 1
                if u in alive:
                    degs[u] -= 1
                    if degs[u] == 1:
                        nxt.append(u)
        layer = nxt
    centres = sorted(alive)
    return min(encode(c, -1) for c in centres)


def enumerate_ut_trees(k: int) -> list[TreeShape]:
    """All shapes of k-coloured trees whose uncoloured vertices have degree >= 3."""
    if not 1 <= k <= 6:
        raise ValueError("colour count out of range 1..6")
    import networkx as nx

    max_n = max(2 * k - 2, 1)
    seen: dict[str, TreeShape] = {}
    for n in range(1, max_n + 1):
        if n == 1:
            trees = [None]
        else:
            trees = list(nx.nonisomorphic_trees(n))
        for tree in trees:
            if tree is None:
                rows = [0]
            else:
                rows = [0] * n
                for u, v in tree.edges():
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
            leaves = [v for v in range(n) if rows[v].bit_count() <= 1]
            others = [v for v in range(n) if rows[v].bit_count() > 1]
            if len(leaves) > k:
                continue
            for extra in combinations(others, k - len(leaves)):
                chosen = leaves + list(extra)
                if any(rows[v].bit_count() < 3 for v in range(n)
                       if v not in chosen):
                    continue
                for perm in _permutations(k):
                    colour_of = {v: perm[i] for i, v in enumerate(chosen)}
                    enc = _canon_coloured_tree(rows, colour_of)
                    if enc in seen:
                        continue
                    nleaves = len(leaves)
                    optional = n - nleaves
                    seen[enc] = TreeShape(n, n - 1, nleaves, optional, enc)
    return sorted(seen.values(), key=lambda s: (s.vertices, s.encoding))


def _permutations(k: int):
    from itertools import permutations
    return permutations(range(k))


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def count_class(spec: ClassSpec, n: int, threads: int = 1) -> CountRecord:
    tag = spec.tag
    if tag is ClassTag.SP_NETWORK_D:
        d, s, p = _network_counts(n, threads)
        return CountRecord(spec, n, d)
    if tag is ClassTag.SP_NETWORK_S:
        d, s, p = _network_counts(n, threads)
        return CountRecord(spec, n, s)
    if tag is ClassTag.SP_NETWORK_P:
        d, s, p = _network_counts(n, threads)
        return CountRecord(spec, n, p)
    if tag is ClassTag.OUTER_NETWORK:
        return CountRecord(spec, n, _outer_network_count(n, threads))
    if tag is ClassTag.C_TREE:
        return CountRecord(spec, n, _count_c_tree_like(n, spec.colours, False))
    if tag is ClassTag.A_HAT:
        return CountRecord(spec, n, _count_c_tree_like(n, spec.colours, True))
    if tag is ClassTag.BK:
        return CountRecord(spec, n, _count_bk(n, spec.k))
    if tag is ClassTag.CRD:
        return CountRecord(spec, n, _count_crd(n, spec.l, spec.patterns(), False))
    if tag is ClassTag.CONNECTED_CRD:
        return CountRecord(spec, n, _count_crd(n, spec.l, spec.patterns(), True))
    if tag is ClassTag.ROOTED_CRD:
        return CountRecord(spec, n, _count_rooted_crd(n, spec.l, spec.patterns()))
    if tag is ClassTag.RD:
        return CountRecord(spec, n, _count_rd(n, spec.l, spec.patterns()))
    if tag is ClassTag.EX_DISJOINT:
        return CountRecord(spec, n, _count_ex_disjoint(n, spec.k, spec.patterns()))
    if tag is ClassTag.ROOTED_SP:
        return CountRecord(spec, n, _count_rooted_sp(n))
    if tag is ClassTag.FAN_PRIME:
        by_edges = _count_fan_prime(n, spec.k)
        return CountRecord(spec, n, sum(by_edges.values()), by_edges)
    raise ValueError(f"unknown class spec {spec}")


@dataclass(frozen=True)
class RdBoundReport:
    l: int
    n: int
    rd_count: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.rd_count <= self.bound

    @property
    def slack(self) -> int:
        return self.bound - self.rd_count


def verify_rdcount_bound(l: int, n: int) -> RdBoundReport:
    """Compare |(rd_l K4)_{n+l}| against 2^C(l,2) * C(n+l, l) * |crd_{l,n}|."""
    if l > 3 or n > 4:
        raise ValueError("bound verification capped at l <= 3, n <= 4")
    rd = _count_rd(n + l, l, K4_SET)
    crd = _count_crd(n, l, K4_SET, False)
    bound = (1 << (l * (l - 1) // 2)) * comb(n + l, l) * crd
    return RdBoundReport(l, n, rd, bound)


def records_to_csv(records: list[CountRecord]) -> str:
    lines = ["class,n,count"]
    for rec in records:
        lines.append(f"{rec.spec.tag.value},{rec.n},{rec.count}")
    return "\n".join(lines) + "\n"

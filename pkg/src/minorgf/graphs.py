"""Labelled graphs with bitset adjacency, coloured graphs and two-pole networks.

Vertices are always 0..n-1 and the adjacency row of vertex v is an int
whose bit u is set iff uv is an edge.  All values are immutable after
construction, so they can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence

MAX_VERTICES = 64
MAX_COLOURS = 16


def _check_vertex_count(n: int) -> None:
    if not 0 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count {n} out of range 0..{MAX_VERTICES}")


@dataclass(frozen=True)
class LabelledGraph:
    """Simple graph on vertices 0..n-1 with per-vertex adjacency bitsets."""

    n: int
    adj: tuple[int, ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "LabelledGraph":
        _check_vertex_count(n)
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside 0..{n-1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return LabelledGraph(n, tuple(rows))

    def __post_init__(self) -> None:
        _check_vertex_count(self.n)
        if len(self.adj) != self.n:
            raise ValueError("adjacency table length differs from vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row of {v} mentions unknown vertices")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if (self.adj[u] >> v & 1) != (self.adj[v] >> u & 1):
                    raise ValueError(f"adjacency not symmetric at ({u},{v})")

    # -- basic accessors -------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return (self.adj[v]).bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.adj[u] >> v & 1]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def add_edge(self, u: int, v: int) -> "LabelledGraph":
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return LabelledGraph(self.n, tuple(rows))

    def with_new_vertex(self, neighbours: int) -> "LabelledGraph":
        """Graph on n+1 vertices where vertex n is adjacent to `neighbours` (bitmask)."""
        w = self.n
        rows = [row | ((neighbours >> v & 1) << w) for v, row in enumerate(self.adj)]
        rows.append(neighbours)
        return LabelledGraph(w + 1, tuple(rows))

    def induced(self, mask: int) -> "LabelledGraph":
        """Induced subgraph on the vertices of `mask`, relabelled in increasing order."""
        verts = [v for v in range(self.n) if mask >> v & 1]
        pos = {v: i for i, v in enumerate(verts)}
        rows = [0] * len(verts)
        for v in verts:
            row = self.adj[v] & mask
            while row:
                u = (row & -row).bit_length() - 1
                rows[pos[v]] |= 1 << pos[u]
                row &= row - 1
        return LabelledGraph(len(verts), tuple(rows))

    def delete_vertices(self, mask: int) -> "LabelledGraph":
        return self.induced(((1 << self.n) - 1) & ~mask)

    # -- connectivity ----------------------------------------------------

    def component_masks(self, within: Optional[int] = None) -> list[int]:
        """Connected components (as bitmasks) of the subgraph induced on `within`."""
        remaining = ((1 << self.n) - 1) if within is None else within
        comps = []
        adj = self.adj
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                while frontier:
                    v = (frontier & -frontier).bit_length() - 1
                    frontier &= frontier - 1
                    nxt |= adj[v]
                nxt &= remaining & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            remaining &= ~comp
        return comps

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(self.component_masks()) == 1

    def cut_vertices(self) -> list[int]:
        """Vertices whose removal increases the number of components."""
        if self.n <= 2:
            return []
        base = len(self.component_masks())
        out = []
        full = (1 << self.n) - 1
        for v in range(self.n):
            after = len(self.component_masks(full & ~(1 << v)))
            before = base - (1 if self.adj[v] == 0 else 0)
            if after > before:
                out.append(v)
        return out

    def is_biconnected(self) -> bool:
        """2-connected, or isomorphic to K2."""
        if self.n == 2:
            return self.adj[0] == 2
        if self.n < 2:
            return False
        return self.is_connected() and not self.cut_vertices()

    # -- misc -------------------------------------------------------------

    @staticmethod
    def complete(n: int) -> "LabelledGraph":
        full = (1 << n) - 1
        return LabelledGraph(n, tuple(full & ~(1 << v) for v in range(n)))

    @staticmethod
    def cycle(n: int) -> "LabelledGraph":
        return LabelledGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def path(n: int) -> "LabelledGraph":
        return LabelledGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @staticmethod
    def complete_bipartite(a: int, b: int) -> "LabelledGraph":
        return LabelledGraph.from_edges(
            a + b, [(i, a + j) for i in range(a) for j in range(b)])


class PatternKind(Enum):
    K4 = "K4"
    K23 = "K23"
    CUSTOM = "custom"


@dataclass(frozen=True)
class MinorPattern:
    """An excluded-minor pattern: K4, K_{2,3} or an arbitrary connected graph on <= 6 vertices."""

    kind: PatternKind
    graph: LabelledGraph = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.graph is None:
            g = LabelledGraph.complete(4) if self.kind is PatternKind.K4 \
                else LabelledGraph.complete_bipartite(2, 3)
            object.__setattr__(self, "graph", g)
        if self.graph.n > 6:
            raise ValueError("pattern graphs are capped at 6 vertices")
        if not self.graph.is_connected():
            raise ValueError("pattern graph must be connected")

    @staticmethod
    def k4() -> "MinorPattern":
        return MinorPattern(PatternKind.K4)

    @staticmethod
    def k23() -> "MinorPattern":
        return MinorPattern(PatternKind.K23)

    @staticmethod
    def custom(graph: LabelledGraph) -> "MinorPattern":
        return MinorPattern(PatternKind.CUSTOM, graph)


#: {K4} -- the series-parallel obstruction set
K4_SET = (MinorPattern.k4(),)
#: {K_{2,3}, K4} -- the outerplanar obstruction set
OUTERPLANAR_SET = (MinorPattern.k23(), MinorPattern.k4())


@dataclass(frozen=True)
class ColouredGraph:
    """A labelled graph whose vertices carry colour masks over colours 1..t."""

    graph: LabelledGraph
    t: int
    colours: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.t <= MAX_COLOURS:
            raise ValueError(f"colour count {self.t} out of range 0..{MAX_COLOURS}")
        if len(self.colours) != self.graph.n:
            raise ValueError("one colour mask per vertex required")
        full = (1 << self.t) - 1
        for v, mask in enumerate(self.colours):
            if mask & ~full:
                raise ValueError(f"vertex {v} uses colours outside 1..{self.t}")

    @staticmethod
    def uncoloured(graph: LabelledGraph, t: int = 0) -> "ColouredGraph":
        return ColouredGraph(graph, t, (0,) * graph.n)

    @property
    def n(self) -> int:
        return self.graph.n

    def colour_class(self, c: int) -> int:
        """Bitmask of vertices having colour c (1-based)."""
        if not 1 <= c <= self.t:
            raise ValueError(f"colour {c} out of range 1..{self.t}")
        bit = 1 << (c - 1)
        out = 0
        for v, mask in enumerate(self.colours):
            if mask & bit:
                out |= 1 << v
        return out

    def colours_used(self) -> int:
        """Union of all vertex colour masks."""
        out = 0
        for mask in self.colours:
            out |= mask
        return out

    def coloured_vertices(self) -> int:
        out = 0
        for v, mask in enumerate(self.colours):
            if mask:
                out |= 1 << v
        return out

    def permute_colours(self, perm: Sequence[int]) -> "ColouredGraph":
        """Relabel colour classes; perm[i] is the new (1-based) name of colour i+1."""
        if sorted(perm) != list(range(1, self.t + 1)):
            raise ValueError("perm must be a permutation of 1..t")
        out = []
        for mask in self.colours:
            new = 0
            for c in range(1, self.t + 1):
                if mask >> (c - 1) & 1:
                    new |= 1 << (perm[c - 1] - 1)
            out.append(new)
        return ColouredGraph(self.graph, self.t, tuple(out))


@dataclass(frozen=True)
class TwoPoleNetwork:
    """A graph with two distinguished unlabelled poles; size counts internal vertices.

    The degenerate one-vertex network (both poles collapsed, no internal
    vertices) is represented by `degenerate=True` with everything else empty.
    """

    internal: LabelledGraph
    source_adj: int = 0
    sink_adj: int = 0
    pole_edge: bool = False
    degenerate: bool = False

    def __post_init__(self) -> None:
        full = (1 << self.internal.n) - 1
        if self.source_adj & ~full or self.sink_adj & ~full:
            raise ValueError("pole adjacency mentions unknown internal vertices")
        if self.degenerate and (self.internal.n or self.pole_edge or
                                self.source_adj or self.sink_adj):
            raise ValueError("degenerate networks have no edges and no internal vertices")

    @property
    def size(self) -> int:
        return self.internal.n

    def full_graph(self, extra_pole_edge: bool = False) -> LabelledGraph:
        """The underlying graph on internal vertices 0..n-1 plus source n, sink n+1.

        With `extra_pole_edge`, the pole edge is present regardless of
        `pole_edge` (the multigraph closure collapsed to a simple graph).
        """
        if self.degenerate:
            raise ValueError("degenerate network has no two-pole graph")
        n = self.internal.n
        g = self.internal.with_new_vertex(self.source_adj)
        sink_row = self.sink_adj | ((1 << n) if (self.pole_edge or extra_pole_edge) else 0)
        return g.with_new_vertex(sink_row)

    @staticmethod
    def single_edge() -> "TwoPoleNetwork":
        return TwoPoleNetwork(LabelledGraph(0, ()), pole_edge=True)

    @staticmethod
    def from_graph(g: LabelledGraph, source: int, sink: int) -> "TwoPoleNetwork":
        if source == sink:
            raise ValueError("source and sink must differ")
        keep = [v for v in range(g.n) if v not in (source, sink)]
        pos = {v: i for i, v in enumerate(keep)}
        rows = [0] * len(keep)
        for v in keep:
            row = g.adj[v]
            for u in keep:
                if row >> u & 1:
                    rows[pos[v]] |= 1 << pos[u]
        src = 0
        snk = 0
        for v in keep:
            if g.adj[source] >> v & 1:
                src |= 1 << pos[v]
            if g.adj[sink] >> v & 1:
                snk |= 1 << pos[v]
        return TwoPoleNetwork(LabelledGraph(len(keep), tuple(rows)), src, snk,
                              bool(g.adj[source] >> sink & 1))


# -- text format --------------------------------------------------------------
#
# Plain graphs:      first line "n m", then m lines "u v" with 0 <= u < v < n.
# Coloured graphs:   the plain block, then n lines "vertex colour-mask".
# Networks:          the plain block, then a line "poles s t".


def parse_graph_text(text: str):
    """Parse the text format; returns LabelledGraph, ColouredGraph or TwoPoleNetwork."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) < 1 + m:
        raise ValueError("fewer edge lines than announced")
    edges = []
    for ln in lines[1:1 + m]:
        u, v = map(int, ln.split())
        if not 0 <= u < v < n:
            raise ValueError(f"edge line '{ln}' violates 0 <= u < v < n")
        edges.append((u, v))
    g = LabelledGraph.from_edges(n, edges)
    rest = lines[1 + m:]
    if not rest:
        return g
    if rest[0].startswith("poles"):
        _, s, t = rest[0].split()
        return TwoPoleNetwork.from_graph(g, int(s), int(t))
    if len(rest) != n:
        raise ValueError("coloured graphs need one colour line per vertex")
    colours = [0] * n
    for ln in rest:
        v, mask = map(int, ln.split())
        colours[v] = mask
    t = max((m.bit_length() for m in colours), default=0)
    return ColouredGraph(g, t, tuple(colours))


def graph_to_text(obj) -> str:
    if isinstance(obj, TwoPoleNetwork):
        g = obj.full_graph()
        edges = g.edges()
        lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
        lines.append(f"poles {g.n - 2} {g.n - 1}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, ColouredGraph):
        g = obj.graph
        edges = g.edges()
        lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
        lines += [f"{v} {obj.colours[v]}" for v in range(g.n)]
        return "\n".join(lines) + "\n"
    edges = obj.edges()
    lines = [f"{obj.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"

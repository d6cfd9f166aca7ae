"""Graph type, the graph families used by the solvers, and label maps."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from typing import Any

from .errors import (
    BadParameter,
    EmptyLengths,
    MapVerificationFailed,
    NotSimple,
    TooLarge,
)
from .labels import U, W, Label, parse_label, plain, total_edge, total_vert, v

Edge = tuple[Label, Label]


class Graph:
    """Immutable simple undirected graph over :class:`Label` vertices.

    ``vertices`` is always sorted in canonical label order; solvers read that
    order whenever they need an arbitrary but reproducible choice.
    """

    __slots__ = ("vertices", "adj", "meta", "_edges")

    def __init__(self, vertices: Iterable[Label], edges: Iterable[Edge] = (), meta: Mapping[str, Any] | None = None):
        verts = sorted(set(vertices))
        adj: dict[Label, set[Label]] = {x: set() for x in verts}
        for a, b in edges:
            if a == b:
                raise NotSimple(f"loop at {a}")
            if a not in adj or b not in adj:
                raise BadParameter(f"edge ({a}, {b}) has an endpoint outside the vertex set")
            adj[a].add(b)
            adj[b].add(a)
        self.vertices: tuple[Label, ...] = tuple(verts)
        self.adj: dict[Label, frozenset[Label]] = {x: frozenset(nb) for x, nb in adj.items()}
        self.meta: dict[str, Any] = dict(meta or {})
        self._edges: tuple[Edge, ...] | None = None

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, x: object) -> bool:
        return x in self.adj

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges() == other.edges()

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges()))

    def __repr__(self) -> str:
        family = self.meta.get("family", "graph")
        return f"<Graph {family} |V|={len(self)} |E|={self.num_edges}>"

    def edges(self) -> tuple[Edge, ...]:
        """Edges as canonically ordered pairs, sorted."""
        if self._edges is None:
            self._edges = tuple(sorted((a, b) for a in self.vertices for b in self.adj[a] if a < b))
        return self._edges

    def edge_set(self) -> frozenset[frozenset[Label]]:
        return frozenset(frozenset(e) for e in self.edges())

    @property
    def num_edges(self) -> int:
        return len(self.edges())

    def neighbors(self, x: Label) -> frozenset[Label]:
        return self.adj[x]

    def degree(self, x: Label) -> int:
        return len(self.adj[x])

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adj.values()), default=0)

    def has_edge(self, a: Label, b: Label) -> bool:
        return b in self.adj.get(a, ())

    def induced(self, keep: Iterable[Label]) -> Graph:
        keep = set(keep)
        missing = keep - self.adj.keys()
        if missing:
            raise BadParameter(f"vertices not in graph: {sorted(missing)}")
        edges = [(a, b) for a, b in self.edges() if a in keep and b in keep]
        return Graph(keep, edges)

    def remove(self, drop: Iterable[Label]) -> Graph:
        """``G - S``: the subgraph induced by the vertices outside ``drop``."""
        drop = set(drop)
        return self.induced(x for x in self.vertices if x not in drop)

    def with_edge(self, a: Label, b: Label) -> Graph:
        return Graph(self.vertices, list(self.edges()) + [(a, b)], self.meta)

    def relabel(self, mapping: Mapping[Label, Label]) -> Graph:
        return Graph((mapping[x] for x in self.vertices), ((mapping[a], mapping[b]) for a, b in self.edges()))

    def distances_from(self, source: Label) -> dict[Label, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    # serialization

    def to_json(self) -> dict[str, Any]:
        return {
            "vertices": [str(x) for x in self.vertices],
            "edges": [[str(a), str(b)] for a, b in self.edges()],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Graph:
        verts = [parse_label(s) for s in data["vertices"]]
        edges = [(parse_label(a), parse_label(b)) for a, b in data["edges"]]
        return cls(verts, edges)

    def to_dot(self, name: str = "G", coloring: Mapping[Label, int] | None = None) -> str:
        lines = [f"graph {name} {{"]
        for x in self.vertices:
            attr = f' [label="{x}\\n{coloring[x]}"]' if coloring and x in coloring else ""
            lines.append(f'  "{x}"{attr};')
        for a, b in self.edges():
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


class LabelMap:
    """A bijection between the labels of a source and a target graph."""

    __slots__ = ("forward", "inverse")

    def __init__(self, forward: Mapping[Label, Label]):
        self.forward: dict[Label, Label] = dict(forward)
        self.inverse: dict[Label, Label] = {b: a for a, b in self.forward.items()}
        if len(self.inverse) != len(self.forward):
            raise MapVerificationFailed("label map is not injective")

    def __len__(self) -> int:
        return len(self.forward)

    def __getitem__(self, x: Label) -> Label:
        return self.forward[x]

    def __repr__(self) -> str:
        return f"<LabelMap {len(self)} pairs>"

    def push(self, data: Mapping[Label, Any]) -> dict[Label, Any]:
        """Move per-vertex data from source labels to target labels."""
        return {self.forward[x]: val for x, val in data.items()}

    def pull(self, data: Mapping[Label, Any]) -> dict[Label, Any]:
        """Move per-vertex data from target labels back to source labels."""
        return {self.inverse[y]: val for y, val in data.items()}

    def compose(self, other: LabelMap) -> LabelMap:
        """``other`` after ``self``."""
        return LabelMap({x: other.forward[y] for x, y in self.forward.items()})

    def is_isomorphism(self, source: Graph, target: Graph) -> bool:
        if set(self.forward) != set(source.vertices) or set(self.inverse) != set(target.vertices):
            return False
        mapped = frozenset(frozenset((self.forward[a], self.forward[b])) for a, b in source.edges())
        return mapped == target.edge_set()

    def verify(self, source: Graph, target: Graph) -> LabelMap:
        if not self.is_isomorphism(source, target):
            raise MapVerificationFailed(f"label map is not an isomorphism {source!r} -> {target!r}")
        return self

    def to_json(self) -> dict[str, str]:
        return {str(a): str(b) for a, b in sorted(self.forward.items())}


def sort_lengths(lengths: Iterable[int]) -> tuple[list[int], tuple[int, ...]]:
    """Stable nondecreasing sort.

    Returns the sorted lengths and ``perm`` where ``perm[i-1]`` is the sorted
    (1-based) position of the user's path ``i``.
    """
    lengths = [int(x) for x in lengths]
    if not lengths:
        raise EmptyLengths("at least one path length is required")
    if any(x < 1 for x in lengths):
        raise BadParameter(f"path lengths must be positive, got {lengths}")
    order = sorted(range(len(lengths)), key=lambda i: lengths[i])
    perm = [0] * len(lengths)
    for pos, i in enumerate(order):
        perm[i] = pos + 1
    return [lengths[i] for i in order], tuple(perm)


def build_star_subdivision(lengths: Iterable[int]) -> Graph:
    """``B(l_1, ..., l_m)``: hub ``u`` with legs ``u, v_{i,1}, ..., v_{i,l_i}``."""
    ls, perm = sort_lengths(lengths)
    verts = [U]
    edges = []
    for i, li in enumerate(ls, start=1):
        prev = U
        for j in range(1, li + 1):
            verts.append(v(i, j))
            edges.append((prev, v(i, j)))
            prev = v(i, j)
    return Graph(verts, edges, {"family": "star", "lengths": tuple(ls), "perm": perm})


def build_theta(lengths: Iterable[int]) -> Graph:
    """``Theta(l_1, ..., l_m)``: ``u`` and ``w`` joined by internally disjoint paths.

    Path ``i`` is ``u, v_{i,1}, ..., v_{i,l_i-1}, w``.
    """
    ls, perm = sort_lengths(lengths)
    if len(ls) >= 2 and ls[1] < 2:
        raise NotSimple(f"Theta{tuple(ls)} would have parallel u-w edges")
    verts = [U, W]
    edges = []
    for i, li in enumerate(ls, start=1):
        prev = U
        for j in range(1, li):
            verts.append(v(i, j))
            edges.append((prev, v(i, j)))
            prev = v(i, j)
        edges.append((prev, W))
    return Graph(verts, edges, {"family": "theta", "lengths": tuple(ls), "perm": perm})


def build_basic(kind: str, *params: int) -> Graph:
    """Paths, cycles, stars and complete bipartite graphs over plain labels.

    ``path n`` and ``cycle n`` use ``p_1 .. p_n``; ``star m`` has centre
    ``p_0`` and leaves ``p_1 .. p_m``; ``complete_bipartite a b`` has parts
    ``p_1 .. p_a`` and ``p_{a+1} .. p_{a+b}``; ``complete n`` is ``K_n`` on
    ``p_1 .. p_n``.
    """
    kind = kind.lower()
    try:
        if kind == "path":
            (n,) = params
            if n < 1:
                raise BadParameter("path needs n >= 1")
            verts = [plain(i) for i in range(1, n + 1)]
            edges = list(zip(verts, verts[1:]))
        elif kind == "cycle":
            (n,) = params
            if n < 3:
                raise BadParameter("cycle needs n >= 3")
            verts = [plain(i) for i in range(1, n + 1)]
            edges = list(zip(verts, verts[1:] + verts[:1]))
        elif kind == "star":
            (m,) = params
            if m < 1:
                raise BadParameter("star needs m >= 1")
            verts = [plain(i) for i in range(m + 1)]
            edges = [(verts[0], leaf) for leaf in verts[1:]]
        elif kind == "complete":
            (n,) = params
            if n < 1:
                raise BadParameter("complete graph needs n >= 1")
            verts = [plain(i) for i in range(1, n + 1)]
            edges = [(x, y) for i, x in enumerate(verts) for y in verts[i + 1:]]
        elif kind in ("complete_bipartite", "kab"):
            a, b = params
            if a < 1 or b < 1:
                raise BadParameter("complete bipartite needs a, b >= 1")
            left = [plain(i) for i in range(1, a + 1)]
            right = [plain(i) for i in range(a + 1, a + b + 1)]
            verts = left + right
            edges = [(x, y) for x in left for y in right]
        else:
            raise BadParameter(f"unknown basic graph kind {kind!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BadParameter):
            raise
        raise BadParameter(f"bad parameters {params} for {kind}") from exc
    return Graph(verts, edges, {"family": kind, "params": tuple(params)})


def graph_power(G: Graph, p: int) -> Graph:
    """``G^p``: same vertices, ``x ~ y`` iff ``1 <= dist(x, y) <= p`` (BFS)."""
    if p < 1:
        raise BadParameter("power must be positive")
    edges = []
    for x in G.vertices:
        for y, d in G.distances_from(x).items():
            if x < y and 1 <= d <= p:
                edges.append((x, y))
    return Graph(G.vertices, edges, G.meta)


def subdivide(G: Graph) -> tuple[Graph, LabelMap]:
    """Replace every edge ``{a, b}`` by a path ``a, te(a,b), b``.

    The returned map sends subdivision labels to total-graph labels
    (``x -> tv(x)``, ``te(a,b) -> te(a,b)``), recording where each new vertex
    came from.
    """
    verts = list(G.vertices)
    edges = []
    fwd = {x: total_vert(x) for x in G.vertices}
    for a, b in G.edges():
        mid = total_edge(a, b)
        verts.append(mid)
        edges += [(a, mid), (mid, b)]
        fwd[mid] = mid
    return Graph(verts, edges), LabelMap(fwd)


def total_graph(G: Graph) -> Graph:
    """``T(G)`` over ``tv(x)`` / ``te(a,b)`` labels.

    Elements are adjacent iff adjacent or incident in ``G``.  The result is
    checked against the square of the subdivision.
    """
    verts = [total_vert(x) for x in G.vertices]
    edges = []
    for a, b in G.edges():
        e = total_edge(a, b)
        verts.append(e)
        edges += [(total_vert(a), total_vert(b)), (e, total_vert(a)), (e, total_vert(b))]
    for x in G.vertices:
        incident = sorted(total_edge(x, y) for y in G.adj[x])
        edges += [(e, f) for i, e in enumerate(incident) for f in incident[i + 1:]]
    T = Graph(verts, edges, G.meta)
    sub, smap = subdivide(G)
    smap.verify(graph_power(sub, 2), T)
    return T


def doubled_label_map(family: str, lengths: Iterable[int]) -> LabelMap:
    """Explicit isomorphism ``T(F(l)) -> [F(2l)]^2`` for ``F`` a star or theta family.

    Original ``v_{i,j}`` goes to ``v_{i,2j}``; the edge leaving ``u`` on path
    ``i`` goes to ``v_{i,1}``; the edge between positions ``j`` and ``j+1``
    goes to ``v_{i,2j+1}``; for theta graphs the edge entering ``w`` goes to
    ``v_{i,2l_i-1}``.  The map is verified before it is returned.
    """
    ls, _ = sort_lengths(lengths)
    if family == "star":
        base = build_star_subdivision(ls)
        target = graph_power(build_star_subdivision([2 * x for x in ls]), 2)
    elif family == "theta":
        base = build_theta(ls)
        target = graph_power(build_theta([2 * x for x in ls]), 2)
    else:
        raise BadParameter(f"unknown family {family!r}")

    fwd = {total_vert(U): U}
    if family == "theta":
        fwd[total_vert(W)] = W
    for i, li in enumerate(ls, start=1):
        internal = li if family == "star" else li - 1
        path = [U] + [v(i, j) for j in range(1, internal + 1)]
        if family == "theta":
            path.append(W)
        for j in range(1, internal + 1):
            fwd[total_vert(v(i, j))] = v(i, 2 * j)
        # edge number s (1-based) along the path sits at doubled position 2s-1
        for s, (a, b) in enumerate(zip(path, path[1:]), start=1):
            fwd[total_edge(a, b)] = v(i, 2 * s - 1)
    lmap = LabelMap(fwd)
    return lmap.verify(total_graph(base), target)


def _degree_signature(G: Graph, x: Label) -> tuple[int, tuple[int, ...]]:
    return G.degree(x), tuple(sorted(G.degree(y) for y in G.adj[x]))


def graphs_isomorphic(G: Graph, H: Graph, limit: int = 16) -> LabelMap | None:
    """Backtracking isomorphism search with degree-signature pruning."""
    if len(G) > limit or len(H) > limit:
        raise TooLarge(f"isomorphism search limited to {limit} vertices")
    if len(G) != len(H) or G.num_edges != H.num_edges:
        return None
    sig_g = {x: _degree_signature(G, x) for x in G.vertices}
    sig_h = {y: _degree_signature(H, y) for y in H.vertices}
    if sorted(sig_g.values()) != sorted(sig_h.values()):
        return None

    # visit G in BFS order so each new vertex is constrained by mapped neighbours
    order: list[Label] = []
    seen: set[Label] = set()
    for root in sorted(G.vertices, key=lambda x: (-G.degree(x), x)):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(G.adj[x]):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)

    mapping: dict[Label, Label] = {}
    used: set[Label] = set()

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        x = order[pos]
        for y in H.vertices:
            if y in used or sig_h[y] != sig_g[x]:
                continue
            if all((mapping[z] in H.adj[y]) == (z in G.adj[x]) for z in mapping):
                mapping[x] = y
                used.add(y)
                if extend(pos + 1):
                    return True
                del mapping[x]
                used.discard(y)
        return False

    if not extend(0):
        return None
    return LabelMap(mapping).verify(G, H)


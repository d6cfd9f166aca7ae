"""Exact backtracking search for capped (equitable) list colorings.

This is the certifier used wherever a remainder graph needs an equitable
list coloring, and the ground truth for every counterexample check.  The
search is complete: it returns a coloring or proves none exists, and it
raises rather than give up silently when the node guard trips.
"""

from __future__ import annotations

import os
from collections.abc import Mapping

from .coloring import Coloring, ListAssignment, equitable_cap
from .errors import SearchLimitExceeded
from .graphs import Graph
from .labels import Label

DEFAULT_VERTEX_LIMIT = 40
DEFAULT_NODE_LIMIT = 10**8


def node_limit_from_env() -> int:
    raw = os.environ.get("EQUICHROME_NODE_LIMIT")
    return int(raw) if raw else DEFAULT_NODE_LIMIT


def search_order(G: Graph) -> list[Label]:
    """Descending degree, ties broken by canonical order."""
    return sorted(G.vertices, key=lambda x: (-G.degree(x), x))


def _capped_search(
    G: Graph,
    lists: Mapping[Label, frozenset[int]],
    cap: int,
    floor: int = 0,
    palette: tuple[int, ...] | None = None,
    interchangeable: bool = False,
    vertex_limit: int = DEFAULT_VERTEX_LIMIT,
    node_limit: int | None = None,
    stats: dict | None = None,
) -> Coloring | None:
    n = len(G)
    if n > vertex_limit:
        raise SearchLimitExceeded(f"{n} vertices exceeds the oracle limit {vertex_limit}")
    if node_limit is None:
        node_limit = node_limit_from_env()
    if n == 0:
        return {}

    order = search_order(G)
    pos = {x: i for i, x in enumerate(order)}
    colors = sorted(palette if palette is not None else frozenset().union(*(lists[x] for x in order)))
    cidx = {c: i for i, c in enumerate(colors)}
    ncol = len(colors)
    if floor and ncol * floor > n:
        return None
    nbrs = [[pos[y] for y in G.adj[x]] for x in order]
    # bit b of avail[i] set <=> colors[b] is in the list and unused by colored neighbours
    avail = [sum(1 << cidx[c] for c in lists[x] if c in cidx) for x in order]
    blocked = [[0] * ncol for _ in range(n)]
    count = [0] * ncol
    assigned = [-1] * n
    full = 0
    nodes = 0
    deficit = ncol * floor  # sum over colors of max(0, floor - count)

    def colorable_remaining(start: int) -> bool:
        mask = ~full
        for i in range(start, n):
            if not avail[i] & mask:
                return False
        return True

    def solve(i: int, used_max: int) -> bool:
        nonlocal nodes, full, deficit
        if i == n:
            return deficit == 0
        if deficit > n - i:
            return False
        options = avail[i] & ~full
        if interchangeable:
            options &= (1 << (used_max + 2)) - 1
        while options:
            low = options & -options
            options ^= low
            b = low.bit_length() - 1
            nodes += 1
            if nodes > node_limit:
                raise SearchLimitExceeded(f"oracle exceeded {node_limit} nodes")
            assigned[i] = b
            count[b] += 1
            if count[b] <= floor:
                deficit -= 1
            became_full = count[b] == cap
            if became_full:
                full |= low
            touched = []
            ok = True
            for j in nbrs[i]:
                if j > i:
                    blocked[j][b] += 1
                    if blocked[j][b] == 1 and avail[j] & low:
                        avail[j] ^= low
                        touched.append(j)
                    if not avail[j] & ~full:
                        ok = False
            if ok and became_full:
                ok = colorable_remaining(i + 1)
            if ok and solve(i + 1, max(used_max, b)):
                return True
            for j in nbrs[i]:
                if j > i:
                    blocked[j][b] -= 1
            for j in touched:
                avail[j] |= low
            if became_full:
                full ^= low
            if count[b] <= floor:
                deficit += 1
            count[b] -= 1
            assigned[i] = -1
        return False

    found = solve(0, -1)
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + nodes
    if not found:
        return None
    return {order[i]: colors[assigned[i]] for i in range(n)}


def exact_equitable_list_coloring(
    G: Graph,
    L: ListAssignment | Mapping[Label, frozenset[int]],
    cap: int | None = None,
    *,
    vertex_limit: int = DEFAULT_VERTEX_LIMIT,
    node_limit: int | None = None,
    stats: dict | None = None,
) -> Coloring | None:
    """A proper ``L``-coloring using no color more than ``cap`` times, or ``None``.

    ``cap`` defaults to ``ceil(|V(G)|/k)``.
    """
    lists = L.lists if isinstance(L, ListAssignment) else L
    if cap is None:
        k = L.k if isinstance(L, ListAssignment) else len(next(iter(lists.values())))
        cap = equitable_cap(len(G), k)
    return _capped_search(G, lists, cap, vertex_limit=vertex_limit, node_limit=node_limit, stats=stats)


def exact_equitable_k_colorable(
    G: Graph,
    k: int,
    *,
    vertex_limit: int = DEFAULT_VERTEX_LIMIT,
    node_limit: int | None = None,
    stats: dict | None = None,
) -> Coloring | None:
    """A proper coloring into classes ``1..k`` of sizes ``floor(n/k)`` or ``ceil(n/k)``."""
    n = len(G)
    palette = tuple(range(1, k + 1))
    lists = {x: frozenset(palette) for x in G.vertices}
    return _capped_search(
        G,
        lists,
        cap=equitable_cap(n, k),
        floor=n // k,
        palette=palette,
        interchangeable=True,
        vertex_limit=vertex_limit,
        node_limit=node_limit,
        stats=stats,
    )

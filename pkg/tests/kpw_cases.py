"""Random instances satisfying the reduction preconditions.

Each case is ``(G, L, step, f)``: ``step`` passes :func:`kpw_check` and ``f``
is a proper ``L``-coloring of ``G - S`` using no color more than ``q`` times.
Graphs come from the solver families (star and theta squares, total graphs)
plus small random graphs.
"""

from __future__ import annotations

import random
from itertools import combinations

from equichrome.coloring import ListAssignment, cap_context
from equichrome.errors import SearchLimitExceeded
from equichrome.graphs import Graph, build_star_subdivision, build_theta, graph_power, total_graph
from equichrome.labels import plain
from equichrome.oracle import exact_equitable_list_coloring
from equichrome.reduction import ReductionStep, kpw_check


def _corpus_graph(rng: random.Random) -> Graph:
    pick = rng.random()
    if pick < 0.3:
        ls = [rng.randint(1, 4) for _ in range(rng.randint(2, 4))]
        return graph_power(build_star_subdivision(ls), 2)
    if pick < 0.55:
        m = rng.randint(2, 4)
        ls = sorted(rng.randint(2, 5) for _ in range(m))
        return graph_power(build_theta(ls), 2)
    if pick < 0.7:
        ls = [rng.randint(1, 2) for _ in range(rng.randint(1, 3))]
        return total_graph(build_star_subdivision(ls))
    n = rng.randint(3, 12)
    verts = [plain(i) for i in range(1, n + 1)]
    p = rng.choice([0.2, 0.35, 0.5])
    return Graph(verts, [e for e in combinations(verts, 2) if rng.random() < p])


def _try_case(rng: random.Random):
    G = _corpus_graph(rng)
    n = len(G)
    k = rng.randint(max(2, G.max_degree() // 2), G.max_degree() + 2)
    ctx = cap_context(n, k)
    t = rng.randint(ctx.r, min(k, n))
    S = rng.sample(list(G.vertices), t)
    outside = {x: len(G.adj[x] - set(S)) for x in S}
    # the bound k - i shrinks with i, so larger outside degree goes first
    order = sorted(S, key=lambda x: (-outside[x], x))
    step = ReductionStep(tuple(order))
    if not kpw_check(G, k, step):
        return None
    pool = list(range(1, k + rng.randint(0, k) + 1))
    L = ListAssignment({x: rng.sample(pool, k) for x in G.vertices}, k)
    rest = G.remove(step.removed)
    if ctx.q == 0:
        f = {} if len(rest) == 0 else None
    else:
        try:
            f = exact_equitable_list_coloring(rest, L.restrict(rest.vertices), ctx.q, node_limit=200_000)
        except SearchLimitExceeded:
            return None
    if f is None:
        return None
    return G, L, step, f


def kpw_instances(count: int, seed: int = 0):
    """``count`` valid instances, deterministic in ``seed``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        case = _try_case(rng)
        if case is not None:
            out.append(case)
    return out

"""Equitable list colorings of squares of generalized theta graphs and their total graphs.

``T(Theta(l))`` is a copy of ``[Theta(2l)]^2``, so the total-graph entry point
only ever meets squares with ``l_1 >= 2`` and ``l_2 >= 4``.  At ``k = m + 2``
those come in three shapes: ``Theta(2,4,...,4)``, ``Theta(4,...,4)``, or
``l_m >= 6``; each has its own construction below.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence

from .coloring import Coloring, ListAssignment
from .errors import (
    BadEdgeIndices,
    BadListAssignment,
    EquichromeError,
    InternalLemmaViolation,
    NoSDR,
    UnsupportedK,
    UnsupportedShape,
)
from .graphs import Graph, sort_lengths
from .labels import U, W, Label, v
from .oracle import exact_equitable_list_coloring
from .reduction import SolveTrace, rainbow_color
from .star import _solve as _solve_star
from .steps import (
    checked,
    hub_legs_map,
    oracle_leaf,
    order_with,
    rainbow_leaf,
    reduce_with,
    star_square,
    theta_square,
    total_and_map,
)


class NoEquitableColoring(EquichromeError):
    """Exact search proved the instance has no equitable list coloring."""

    def __init__(self, message: str, lists: ListAssignment | None = None):
        super().__init__(message)
        self.lists = lists


def _prepare(k: int, L: ListAssignment, G: Graph) -> ListAssignment:
    if L.k != k:
        raise BadListAssignment(f"list size {L.k} does not match k={k}")
    L.check_covers(G)
    return L if len(L) == len(G) else L.restrict(G.vertices)


def _oracle_rest(rest, L):
    return oracle_leaf(rest, L)


# -- shapes at k = m + 2 ------------------------------------------------------


def k_eq_m2_shape(ls: Sequence[int]) -> str | None:
    """Which construction covers ``[Theta(ls)]^2`` at ``k = m + 2`` (``m >= 3``)."""
    ls = tuple(ls)
    m = len(ls)
    if m < 3:
        return None
    if ls == (2, 4, 4):
        return "244"
    if ls == (2, 4, 4, 4):
        return "2444"
    if m >= 5 and ls == (2,) + (4,) * (m - 1):
        return "staged-A"
    if ls == (4,) * m:
        return "staged-B"
    if ls[0] >= 2 and ls[1] >= 4 and ls[-1] >= 6:
        return "l_m>=6"
    return None


def solve_theta_square(
    lengths: Iterable[int],
    k: int,
    L: ListAssignment,
    *,
    fallback_oracle: bool = False,
) -> tuple[Coloring, SolveTrace]:
    """Equitable ``L``-coloring of ``[Theta(lengths)]^2`` with a lemma trace.

    Supported: ``m = 1, k >= 3``; ``m = 2, k >= 4``; ``m >= 3`` with
    ``l_1 >= 2, l_2 >= 4`` and ``k >= m + 3``; ``m >= 3, k = m + 2`` for the
    shapes listed in :func:`k_eq_m2_shape`.  Anything else raises
    :class:`UnsupportedShape` / :class:`UnsupportedK` unless
    ``fallback_oracle`` is set, in which case exact search is used.
    """
    ls, _ = sort_lengths(lengths)
    ls = tuple(ls)
    G = theta_square(ls)
    L = _prepare(k, L, G)
    try:
        f, trace = _solve(ls, G, L)
    except (UnsupportedShape, UnsupportedK):
        if not fallback_oracle:
            raise
        f = exact_equitable_list_coloring(G, L)
        if f is None:
            raise NoEquitableColoring(f"[Theta{ls}]^2 has no equitable L-coloring", L) from None
        trace = SolveTrace("theta:fallback", children=[SolveTrace("oracle", info={"n": len(G)})])
    return checked(G, L, f, "theta square"), trace


def _solve(ls, G, L):
    k, m = L.k, len(ls)
    if k >= len(G):
        return rainbow_leaf(G, L)
    if m <= 2:
        need = 3 if m == 1 else 4
        if k < need:
            raise UnsupportedK(f"[Theta{ls}]^2 handled for k >= {need}, got {k}")
        f, leaf = oracle_leaf(G, L)
        name = "theta:path-square" if m == 1 else "theta:cycle-square"
        return f, SolveTrace(name, children=[leaf], info={"lengths": list(ls)})
    if k < m + 2:
        raise UnsupportedK(f"[Theta{ls}]^2 with m={m} needs k >= m+2={m + 2}, got {k}")
    if k == m + 2:
        shape = k_eq_m2_shape(ls)
        if shape is None:
            raise UnsupportedShape(f"no construction for [Theta{ls}]^2 at k={k}")
        if shape == "244":
            return _theta_244(G, L)
        if shape == "2444":
            return _theta_2444(G, L)
        if shape.startswith("staged"):
            return _staged(ls, G, L, shape[-1])
        return _lemma_lm6(ls, G, L)
    if ls[0] < 2 or ls[1] < 4:
        raise UnsupportedShape(f"k >= m+3 constructions need l_1 >= 2 and l_2 >= 4, got {ls}")
    if k >= 2 * m + 2:
        return _lemma_k_ge_2m2(ls, G, L)
    return _lemma_mid(ls, G, L)


def _lemma_k_ge_2m2(ls, G, L):
    k, m = L.k, len(ls)
    S0 = {U, W, v(m, 2), v(m, 3)} | {v(i, 1) for i in range(1, m + 1)}
    S0 |= {v(i, ls[i - 1] - 1) for i in range(3, m + 1)}
    pad = [x for x in G.vertices if x not in S0][: k - len(S0)]
    step = order_with(
        S0 | set(pad),
        {1: W, 2: U, k - 3: v(2, 1), k - 2: v(m, 3), k - 1: v(m, 2), k: v(m, 1)},
    )
    return reduce_with(G, L, step, _oracle_rest, "theta:k>=2m+2")


def _lemma_mid(ls, G, L):
    """``m + 3 <= k <= 2m + 1``: the remainder is a spider square centred at ``w``."""
    k, m = L.k, len(ls)
    S = {U, v(m, 3)} | {v(i, 1) for i in range(1, m + 1)}
    S |= {v(i, 2) for i in range(2 * m + 3 - k, m + 1)}
    step = order_with(S, {1: v(m, 3), 2: v(1, 1), 3: U, k - 1: v(m, 2), k: v(m, 1)})

    def solve_rest(rest, L_rest):
        legs, lmap, _ = hub_legs_map(rest, ls, step.removed, W, lambda i: ls[i - 1] - 1)
        B = star_square(tuple(legs))
        lmap.verify(rest, B)
        if len(legs) >= 3:
            g, sub = _solve_star(tuple(legs), L_rest.push(lmap))
            return lmap.pull(g), sub
        return oracle_leaf(rest, L_rest)

    return reduce_with(G, L, step, solve_rest, "theta:m+3<=k<=2m+1")


def _lemma_lm6(ls, G, L):
    """``k = m + 2``, ``l_m >= 6``: the remainder is a spider square plus one edge."""
    m = len(ls)
    S = {U, v(m, 2), v(m, 3), v(m, 4)} | {v(i, 1) for i in range(3, m + 1)}
    step = order_with(S, {1: U, m - 1: v(m, 4), m: v(m, 1), m + 1: v(m, 3), m + 2: v(m, 2)})

    def solve_rest(rest, L_rest):
        legs, lmap, leg_of = hub_legs_map(rest, ls, step.removed, W, lambda i: ls[i - 1] - 1)
        a, b = sorted((leg_of[1], leg_of[2]))
        H = star_square(tuple(legs)).with_edge(v(a, legs[a - 1]), v(b, legs[b - 1]))
        lmap.verify(rest, H)
        g, sub = _plus_edge(tuple(legs), a, b, H, L_rest.push(lmap))
        return lmap.pull(g), sub

    return reduce_with(G, L, step, solve_rest, "theta:k=m+2,l_m>=6")


# -- the two sporadic squares -------------------------------------------------

# colors 1..5 on [Theta(2,4,4)]^2 when every list is the same
_F_244 = {U: 1, v(1, 1): 2, v(2, 1): 3, v(3, 1): 4, v(2, 2): 2, v(3, 2): 3, v(2, 3): 4, v(3, 3): 1, W: 5}

# colors 1..6 on [Theta(2,4,4,4)]^2 - {u, w}
_F_2444 = {
    v(1, 1): 2, v(2, 1): 3, v(3, 1): 4, v(4, 1): 5,
    v(2, 2): 2, v(3, 2): 6, v(4, 2): 6,
    v(2, 3): 1, v(3, 3): 5, v(4, 3): 4,
}
# full fallback when L(u) - {2..6} = L(w) - {1,2,4,5,6} = {7}
_G_2444 = {
    U: 7, v(1, 1): 2, v(2, 1): 3, v(3, 1): 4, v(4, 1): 5,
    v(2, 2): 2, v(3, 2): 3, v(4, 2): 6,
    v(2, 3): 6, v(3, 3): 5, v(4, 3): 4, W: 1,
}


def _distinct_lists(L: ListAssignment, vertices: Iterable[Label]) -> int:
    return len({L[x] for x in vertices})


def _reduced(G: Graph, L: ListAssignment, f: Coloring, targets: Iterable[Label]) -> dict[Label, frozenset[int]]:
    """``L(x)`` minus the colors ``f`` puts on neighbours of ``x``."""
    return {x: L[x] - {f[y] for y in G.adj[x] if y in f} for x in targets}


def solve_theta_244(L: ListAssignment) -> Coloring:
    """Equitable ``L``-coloring of ``[Theta(2,4,4)]^2`` for a 5-assignment ``L``."""
    G = theta_square((2, 4, 4))
    f, _ = _theta_244(G, _prepare(5, L, G))
    return f


def _theta_244(G, L):
    lists = {L[x] for x in G.vertices}
    if len(lists) == 1:
        palette = sorted(lists.pop())
        f = {x: palette[c - 1] for x, c in _F_244.items()}
        return checked(G, L, f, "Theta(2,4,4) case 1"), SolveTrace("theta:244", children=[SolveTrace("hardcoded")])
    S1 = (v(2, 1), v(2, 2), v(2, 3))
    S2 = (v(3, 1), v(3, 2), v(3, 3))
    for S in (S1, S2):
        outside = [x for x in G.vertices if x not in S]
        if _distinct_lists(L, outside) >= 2:
            break
    else:
        raise InternalLemmaViolation("Theta(2,4,4): both complements carry a single list")
    try:
        f = rainbow_color(outside, L)
        f.update(rainbow_color(S, _reduced(G, L, f, S)))
    except NoSDR as exc:
        raise InternalLemmaViolation(f"Theta(2,4,4) case 2: {exc}") from exc
    trace = SolveTrace("theta:244", children=[SolveTrace("rainbow"), SolveTrace("rainbow")], info={"S": [str(x) for x in S]})
    return checked(G, L, f, "Theta(2,4,4) case 2"), trace


def solve_theta_2444(L: ListAssignment) -> Coloring:
    """Equitable ``L``-coloring of ``[Theta(2,4,4,4)]^2`` for a 6-assignment ``L``."""
    G = theta_square((2, 4, 4, 4))
    f, _ = _theta_2444(G, _prepare(6, L, G))
    return f


# (S, greedy order); the three sets are rotations of paths 2, 3, 4
_S_2444 = [
    (v(4, 1), v(3, 2), v(4, 2)),
    (v(3, 1), v(2, 2), v(3, 2)),
    (v(2, 1), v(4, 2), v(2, 2)),
]


def _theta_2444(G, L):
    inner = [x for x in G.vertices if x not in (U, W)]
    if _distinct_lists(L, inner) == 1:
        palette = sorted(L[inner[0]])
        phi = {c: palette[c - 1] for c in range(1, 7)}
        f = {x: phi[c] for x, c in _F_2444.items()}
        free_u = sorted(L[U] - {phi[c] for c in (2, 3, 4, 5, 6)})
        free_w = sorted(L[W] - {phi[c] for c in (1, 2, 4, 5, 6)})
        pair = next(((cu, cw) for cu in free_u for cw in free_w if cu != cw), None)
        if pair is not None:
            f[U], f[W] = pair
            node = SolveTrace("hardcoded", info={"variant": "f"})
        else:
            if not (len(free_u) == 1 and free_u == free_w):
                raise InternalLemmaViolation(f"Theta(2,4,4,4): unexpected L'(u)={free_u}, L'(w)={free_w}")
            phi[7] = free_u[0]
            f = {x: phi[c] for x, c in _G_2444.items()}
            node = SolveTrace("hardcoded", info={"variant": "g"})
        return checked(G, L, f, "Theta(2,4,4,4) case 1"), SolveTrace("theta:2444", children=[node])

    for tail in _S_2444:
        S = (W, U) + tail
        outside = [x for x in G.vertices if x not in S]
        if _distinct_lists(L, outside) >= 2:
            break
    else:
        raise InternalLemmaViolation("Theta(2,4,4,4): every complement carries one list but the lists differ")
    try:
        f = rainbow_color(outside, L)
    except NoSDR as exc:
        raise InternalLemmaViolation(f"Theta(2,4,4,4) case 2: {exc}") from exc
    reduced = _reduced(G, L, f, S)
    on_s: set[int] = set()
    for x in S:
        options = sorted(reduced[x] - {f[y] for y in G.adj[x] if y in S and y in f})
        if not options:
            raise InternalLemmaViolation(f"Theta(2,4,4,4) greedy stuck at {x}")
        fresh = [c for c in options if c not in on_s]
        f[x] = (fresh or options)[0]
        on_s.add(f[x])
    trace = SolveTrace("theta:2444", children=[SolveTrace("rainbow")], info={"S": [str(x) for x in S]})
    return checked(G, L, f, "Theta(2,4,4,4) case 2"), trace


# -- staged colorings for Theta(2,4,...,4) and Theta(4,...,4) -----------------


def solve_staged(lengths: Iterable[int], variant: str, L: ListAssignment) -> Coloring:
    """Three-stage coloring of ``[Theta(2,4,...,4)]^2`` (A) or ``[Theta(4,...,4)]^2`` (B) at ``k = m + 2``."""
    ls, _ = sort_lengths(lengths)
    ls = tuple(ls)
    m = len(ls)
    variant = variant.upper()
    if variant == "A" and not (m >= 5 and ls == (2,) + (4,) * (m - 1)):
        raise UnsupportedShape(f"variant A needs Theta(2,4,...,4) with m >= 5, got {ls}")
    if variant == "B" and not (m >= 3 and ls == (4,) * m):
        raise UnsupportedShape(f"variant B needs Theta(4,...,4) with m >= 3, got {ls}")
    if variant not in ("A", "B"):
        raise ValueError(f"unknown staged variant {variant!r}")
    G = theta_square(ls)
    f, _ = _staged(ls, G, _prepare(m + 2, L, G), variant)
    return f


def _staged(ls, G, L, variant):
    m = len(ls)
    firsts = [v(i, 1) for i in range(1, m + 1)]
    if variant == "A":
        S1 = [U] + firsts
        S2 = [W] + [v(i, 3) for i in range(2, m + 1)]
    else:
        S1 = [U, v(1, 2)] + firsts
        S2 = [W] + [v(i, 3) for i in range(1, m + 1)]
    S3 = [v(i, 2) for i in range(2, m + 1)]
    try:
        f = rainbow_color(sorted(S1), L)
        f.update(rainbow_color(sorted(S2), _reduced(G, L, f, S2)))
    except NoSDR as exc:
        raise InternalLemmaViolation(f"staged {variant}: stage 1/2 failed: {exc}") from exc
    reduced = _reduced(G, L, f, S3)
    try:
        f.update(rainbow_color(S3, reduced))
        stage3 = "rainbow"
    except NoSDR:
        common = set(reduced.values())
        if len(common) != 1 or len(next(iter(common))) != m - 2:
            raise InternalLemmaViolation(f"staged {variant}: stage-3 lists are not one common (m-2)-set")
        A = sorted(common.pop())
        usage = Counter(f.values())
        light = [c for c in A if usage[c] <= 1]
        if not light:
            raise InternalLemmaViolation(f"staged {variant}: every color of A is already used twice")
        a = light[0]
        f[v(2, 2)] = f[v(3, 2)] = a
        for x, c in zip(S3[2:], [c for c in A if c != a]):
            f[x] = c
        stage3 = "shared-color"
    trace = SolveTrace(f"theta:staged-{variant}", children=[SolveTrace("rainbow")], info={"stage3": stage3})
    return checked(G, L, f, f"staged {variant}"), trace


# -- star square plus one edge --------------------------------------------------


def solve_star_square_plus_edge(lengths: Iterable[int], a: int, b: int, L: ListAssignment) -> Coloring:
    """Equitable ``L``-coloring of ``[B(lengths)]^2`` plus the edge ``v_{a,l_a} v_{b,l_b}``.

    ``a`` and ``b`` index the sorted lengths; ``k = m + 2``.
    """
    ls, _ = sort_lengths(lengths)
    ls = tuple(ls)
    m = len(ls)
    if not 1 <= a < b <= m:
        raise BadEdgeIndices(f"need 1 <= a < b <= m={m}, got a={a}, b={b}")
    if m < 3 or ls[-1] < 3:
        raise UnsupportedShape(f"extra-edge construction needs m >= 3 and l_m >= 3, got {ls}")
    if L.k != m + 2:
        raise UnsupportedK(f"extra-edge construction is for k = m+2 = {m + 2}, got {L.k}")
    H = star_square(ls).with_edge(v(a, ls[a - 1]), v(b, ls[b - 1]))
    f, _ = _plus_edge(ls, a, b, H, _prepare(m + 2, L, H))
    return f


def _plus_edge(ls, a, b, G, L):
    m = len(ls)
    if L.k >= len(G):
        return rainbow_leaf(G, L)
    top = ls[-1]
    if top == 3:
        S = {U, v(m, 2), v(m, 3)} | {v(i, 1) for i in range(2, m + 1)}
        fixed = {1: U, m + 2: v(m, 2), m + 1: v(m, 3)}
        fixed.update({i: v(i, 1) for i in range(2, m + 1)})
        lemma = "plus-edge:l_m=3"
    elif m >= 4:
        t = min(i for i in range(1, m + 1) if i not in (a, b, m))
        S = {U, v(m, 2), v(m, 3), v(m, 4)} | {v(i, 1) for i in range(1, m + 1) if i not in (a, t)}
        fixed = {1: U, m + 2: v(m, 2), m + 1: v(m, 3), m: v(m, 4), m - 1: v(m, 1)}
        lemma = "plus-edge:l_m>=4,m>=4"
    else:
        S = {U, v(3, 1), v(3, 2), v(3, 3), v(3, 4)}
        fixed = {1: U, 2: v(3, 1), 3: v(3, 4), 4: v(3, 3), 5: v(3, 2)}
        lemma = "plus-edge:l_m>=4,m=3"
    f, trace = reduce_with(G, L, order_with(S, fixed), _oracle_rest, lemma)
    trace.info.update({"lengths": list(ls), "edge": [a, b]})
    return f, trace


# -- total graphs -----------------------------------------------------------------


def min_k_theta(m: int) -> int:
    return 3 if m == 1 else m + 2


def solve_theta_total(lengths: Iterable[int], k: int, L: ListAssignment) -> tuple[Coloring, SolveTrace]:
    """Equitable ``L``-coloring of ``T(Theta(lengths))`` over ``tv``/``te`` labels."""
    ls, _ = sort_lengths(lengths)
    m = len(ls)
    T, lmap = total_and_map("theta", tuple(ls))
    L = _prepare(k, L, T)
    if k < min_k_theta(m):
        raise UnsupportedK(f"T(Theta{tuple(ls)}) needs k >= {min_k_theta(m)}, got k={k}")
    g, inner = solve_theta_square([2 * x for x in ls], k, L.push(lmap))
    f = lmap.pull(g)
    return checked(T, L, f, "theta total"), SolveTrace("theta-total", children=[inner], info={"lengths": list(ls)})


"""Equitable list colorings of squares of subdivided stars, and their total graphs.

The square ``[B(l_1..l_m)]^2`` is handled for every ``k >= m + 1`` when
``m >= 3`` (every ``k >= 3`` when ``m <= 2``).  Each case removes an ordered
vertex set ``S`` whose vertices have few neighbours outside ``S``, colors the
remainder (recursively, or by exact search where the argument relies on an
external theorem), and extends with :func:`~equichrome.reduction.kpw_extend`.
"""

from __future__ import annotations

from collections.abc import Iterable

from .coloring import Coloring, ListAssignment
from .errors import BadListAssignment, InternalLemmaViolation, UnsupportedK
from .graphs import Graph, sort_lengths
from .labels import U, rekey_paths, v
from .reduction import SolveTrace
from .steps import (
    checked,
    oracle_leaf,
    order_with,
    rainbow_leaf,
    reduce_with,
    rekey,
    sorted_rekey,
    star_square,
    total_and_map,
)

B133 = (1, 3, 3)


def _prepare(lengths: Iterable[int], k: int, L: ListAssignment, G: Graph) -> ListAssignment:
    if L.k != k:
        raise BadListAssignment(f"list size {L.k} does not match k={k}")
    L.check_covers(G)
    return L if len(L) == len(G) else L.restrict(G.vertices)


def min_k_star(m: int) -> int:
    return 3 if m <= 2 else m + 1


def solve_star_square(lengths: Iterable[int], k: int, L: ListAssignment) -> tuple[Coloring, SolveTrace]:
    """Equitable ``L``-coloring of ``[B(lengths)]^2`` with a trace of the lemmas used.

    Labels follow :func:`build_star_subdivision`, i.e. paths are indexed in
    sorted order.
    """
    ls, _ = sort_lengths(lengths)
    ls = tuple(ls)
    G = star_square(ls)
    L = _prepare(ls, k, L, G)
    if k < min_k_star(len(ls)) and k < len(G):
        raise UnsupportedK(f"[B{ls}]^2 needs k >= {min_k_star(len(ls))}, got k={k}")
    f, trace = _solve(ls, L)
    return checked(G, L, f, "star square"), trace


def _solve(ls: tuple[int, ...], L: ListAssignment) -> tuple[Coloring, SolveTrace]:
    k, m = L.k, len(ls)
    G = star_square(ls)
    if k >= len(G):
        return rainbow_leaf(G, L)
    if m <= 2:
        f, leaf = oracle_leaf(G, L)
        return f, SolveTrace("star:path-square", children=[leaf], info={"lengths": list(ls)})
    if k >= m + 3:
        return _lemma_k_ge_m3(ls, G, L)
    if k == m + 2:
        return _lemma_k_eq_m2(ls, G, L)
    if k == m + 1:
        return _lemma_k_eq_m1(ls, G, L)
    raise UnsupportedK(f"k={k} below m+1={m + 1}")


def _oracle_rest(rest, L):
    return oracle_leaf(rest, L)


def _lemma_k_ge_m3(ls, G, L):
    k, m = L.k, len(ls)
    S0 = {v(i, 1) for i in range(1, m + 1)} | {U, v(m, 2)}
    if ls[-1] >= 3:
        S0.add(v(m, 3))
    pad = [x for x in G.vertices if x not in S0][: k - len(S0)]
    step = order_with(
        S0 | set(pad),
        {1: U, k - 3: v(m - 2, 1), k - 2: v(m - 1, 1), k - 1: v(m, 2), k: v(m, 1)},
    )
    return reduce_with(G, L, step, _oracle_rest, "star:k>=m+3")


def _lemma_k_eq_m2(ls, G, L):
    m, top = len(ls), ls[-1]
    firsts = {i: v(i, 1) for i in range(1, m + 1)}
    if top == 2:
        S = set(firsts.values()) | {U, v(m, 2)}
        fixed = {1: U, m + 2: v(m, 2)}
        fixed.update({j + 1: firsts[j] for j in range(1, m + 1)})
        lemma = "star:k=m+2,l_m=2"
    elif top == 3:
        S = {firsts[i] for i in range(2, m + 1)} | {U, v(m, 2), v(m, 3)}
        fixed = {1: U, m + 2: v(m, 3), m + 1: v(m, 2)}
        fixed.update({i: firsts[i] for i in range(2, m + 1)})
        lemma = "star:k=m+2,l_m=3"
    else:
        S = {firsts[i] for i in range(3, m + 1)} | {U, v(m, 2), v(m, 3), v(m, 4)}
        fixed = {1: U, m + 2: v(m, 2), m + 1: v(m, 3), m: v(m, 4), m - 1: v(m, 1)}
        fixed.update({j: firsts[j + 1] for j in range(2, m - 1)})
        lemma = "star:k=m+2,l_m>=4"
    return reduce_with(G, L, order_with(S, fixed), _oracle_rest, lemma)


def _base_small_legs(ls, G, L):
    """``l_1 <= l_2 <= 2``; the remainder is a disjoint union of path squares."""
    m = len(ls)
    if ls[1] == 1:
        S = {U} | {v(i, 1) for i in range(1, m + 1)}
        fixed = {1: U}
        fixed.update({i + 1: v(m + 1 - i, 1) for i in range(1, m + 1)})
        lemma = "star:base,l_2=1"
    else:
        S = {U, v(2, 2)} | {v(i, 1) for i in range(1, m)}
        fixed = {1: U, m - 1: v(1, 1), m: v(2, 1), m + 1: v(2, 2)}
        fixed.update({i + 1: v(m - i, 1) for i in range(1, m - 2)})
        lemma = "star:base,l_2=2"
    return reduce_with(G, L, order_with(S, fixed), _oracle_rest, lemma)


def solve_B133(L: ListAssignment) -> Coloring:
    """Equitable ``L``-coloring of ``[B(1,3,3)]^2`` for a 4-assignment ``L``."""
    f, _ = _b133(L)
    return f


def _b133(L: ListAssignment) -> tuple[Coloring, SolveTrace]:
    G = star_square(B133)
    L = _prepare(B133, 4, L, G)
    step = order_with(
        {v(2, 3), v(3, 3), v(3, 2), v(3, 1)},
        {1: v(3, 1), 2: v(2, 3), 3: v(3, 2), 4: v(3, 3)},
    )
    f, trace = reduce_with(G, L, step, _oracle_rest, "star:B133")
    return checked(G, L, f, "B133"), trace


def _recurse_trimmed(trimmed: list[int], rest: Graph, L_rest: ListAssignment, total: int):
    """Color ``rest = [B(trimmed)]^2`` (unsorted path indices) by recursion."""
    new_ls, path_map = sorted_rekey(trimmed)
    if sum(new_ls) >= total:
        raise InternalLemmaViolation("induction did not decrease the total path length")
    inverse = {b: a for a, b in path_map.items()}
    if rest.relabel({x: rekey_paths(x, path_map) for x in rest.vertices}) != star_square(new_ls):
        raise InternalLemmaViolation(f"remainder is not [B{new_ls}]^2")
    f, trace = _solve(new_ls, ListAssignment(rekey(L_rest.lists, path_map), L_rest.k))
    return rekey(f, inverse), trace


def _lemma_k_eq_m1(ls, G, L):
    m = len(ls)
    total = sum(ls)
    if ls[1] <= 2:
        return _base_small_legs(ls, G, L)
    if ls == B133:
        return _b133(L)
    top = ls[-1]
    if top >= 4:
        S = [v(j, ls[j - 1]) for j in range(2, m)] + [v(m, top - 2), v(m, top - 1), v(m, top)]
        fixed = {i: v(i + 1, ls[i]) for i in range(1, m - 1)}
        fixed.update({m - 1: v(m, top - 2), m: v(m, top - 1), m + 1: v(m, top)})
        trimmed = [ls[0]] + [x - 1 for x in ls[1:-1]] + [top - 3]
        lemma = "star:k=m+1,l_m>=4"
    elif top == 3:
        d = total - (2 * m + 1)
        if d < 1:
            raise InternalLemmaViolation(f"unexpected d={d} for {ls}")
        S = [v(i + 1, ls[i]) for i in range(1, d + 1)]
        fixed = {i: v(i + 1, ls[i]) for i in range(1, d + 1)}
        trimmed = [x - 1 if 2 <= j <= d + 1 else x for j, x in enumerate(ls, start=1)]
        lemma = "star:k=m+1,l_m=3"
    else:
        raise InternalLemmaViolation(f"no k=m+1 case for {ls}")

    def solve_rest(rest, L_rest):
        return _recurse_trimmed(trimmed, rest, L_rest, total)

    f, trace = reduce_with(G, L, order_with(S, fixed), solve_rest, lemma)
    trace.info["lengths"] = list(ls)
    return f, trace


def solve_star_total(lengths: Iterable[int], k: int, L: ListAssignment) -> tuple[Coloring, SolveTrace]:
    """Equitable ``L``-coloring of ``T(B(lengths))`` over ``tv``/``te`` labels.

    Works on the isomorphic copy ``[B(2 l_1, ..., 2 l_m)]^2`` and maps back.
    """
    ls, _ = sort_lengths(lengths)
    m = len(ls)
    T, lmap = total_and_map("star", tuple(ls))
    L = _prepare(ls, k, L, T)
    if k < min_k_star(m):
        raise UnsupportedK(f"T(B{tuple(ls)}) needs k >= {min_k_star(m)}, got k={k}")
    g, inner = solve_star_square([2 * x for x in ls], k, L.push(lmap))
    f = lmap.pull(g)
    return checked(T, L, f, "star total"), SolveTrace("star-total", children=[inner], info={"lengths": list(ls)})

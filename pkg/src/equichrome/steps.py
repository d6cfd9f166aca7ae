"""Helpers shared by the star and theta solvers."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from functools import lru_cache

from .coloring import Coloring, ListAssignment, equitable_cap, validate_equitable_list_coloring
from .errors import InternalLemmaViolation, NoSDR
from .graphs import (
    Graph,
    LabelMap,
    build_star_subdivision,
    build_theta,
    doubled_label_map,
    graph_power,
    total_graph,
)
from .labels import U, Label, rekey_paths, v
from .oracle import exact_equitable_list_coloring
from .reduction import ReductionStep, SolveTrace, kpw_check, kpw_extend, rainbow_color


@lru_cache(maxsize=512)
def star_square(lengths: tuple[int, ...]) -> Graph:
    return graph_power(build_star_subdivision(lengths), 2)


@lru_cache(maxsize=512)
def theta_square(lengths: tuple[int, ...]) -> Graph:
    return graph_power(build_theta(lengths), 2)


@lru_cache(maxsize=256)
def total_and_map(family: str, lengths: tuple[int, ...]) -> tuple[Graph, LabelMap]:
    """``T(F(lengths))`` and its verified map onto ``[F(2 lengths)]^2``."""
    base = build_star_subdivision(lengths) if family == "star" else build_theta(lengths)
    return total_graph(base), doubled_label_map(family, lengths)


def order_with(S: Iterable[Label], fixed: Mapping[int, Label]) -> ReductionStep:
    """Name the vertices of ``S`` as ``x_1 .. x_t``.

    ``fixed`` pins positions (1-based); the remaining vertices fill the free
    positions in canonical order.
    """
    S = set(S)
    t = len(S)
    pinned = set(fixed.values())
    if len(pinned) != len(fixed) or not pinned <= S or any(not 1 <= p <= t for p in fixed):
        raise InternalLemmaViolation(f"bad pinned positions {fixed} for |S|={t}")
    rest = iter(sorted(S - pinned))
    return ReductionStep(tuple(fixed[p] if p in fixed else next(rest) for p in range(1, t + 1)))


def oracle_leaf(H: Graph, L: ListAssignment) -> tuple[Coloring, SolveTrace]:
    """Equitable ``L``-coloring of ``H`` with ``H``'s own cap, by exact search."""
    if len(H) == 0:
        return {}, SolveTrace("trivial")
    f = exact_equitable_list_coloring(H, L.lists, equitable_cap(len(H), L.k))
    if f is None:
        raise InternalLemmaViolation(f"oracle found no equitable coloring of a remainder with {len(H)} vertices")
    return f, SolveTrace("oracle", info={"n": len(H)})


def rainbow_leaf(G: Graph, L: ListAssignment) -> tuple[Coloring, SolveTrace]:
    try:
        f = rainbow_color(G.vertices, L)
    except NoSDR as exc:
        raise InternalLemmaViolation(f"rainbow coloring failed with k >= |V|: {exc}") from exc
    return f, SolveTrace("rainbow", info={"n": len(G)})


def reduce_with(
    G: Graph,
    L: ListAssignment,
    step: ReductionStep,
    solve_rest,
    lemma: str,
) -> tuple[Coloring, SolveTrace]:
    """Check the reduction condition, color ``G - S`` via ``solve_rest``, extend."""
    report = kpw_check(G, L.k, step)
    if not report:
        raise InternalLemmaViolation(f"{lemma}: {report.reason}")
    rest = G.remove(step.removed)
    f, child = solve_rest(rest, L.restrict(rest.vertices))
    out = kpw_extend(G, L, step, f)
    return out, SolveTrace(lemma, step, [child])


def checked(G: Graph, L: ListAssignment, f: Coloring, lemma: str) -> Coloring:
    report = validate_equitable_list_coloring(G, L, f, L.k)
    if not report.valid:
        raise InternalLemmaViolation(f"{lemma} produced an invalid coloring: {report.violations[:3]}")
    return f


def hub_legs_map(
    rest: Graph,
    lengths: tuple[int, ...],
    removed: frozenset[Label],
    hub: Label,
    internal_count,
) -> tuple[list[int], LabelMap, dict[int, int]]:
    """Relabel a remainder that is a spider around ``hub`` as ``B(a_1..a_r)`` labels.

    ``internal_count(i)`` is the number of internal vertices of path ``i`` and
    legs run from the hub end of each path inward.  Returns the sorted leg
    lengths, the map ``rest -> B labels`` and ``{path index: leg index}``.
    """
    legs: list[tuple[int, list[Label]]] = []
    for i in range(1, len(lengths) + 1):
        top = internal_count(i)
        leg = []
        j = top
        while j >= 1 and v(i, j) not in removed:
            leg.append(v(i, j))
            j -= 1
        if any(v(i, jj) not in removed for jj in range(1, j)):
            raise InternalLemmaViolation(f"path {i} remainder is not a single leg")
        if leg:
            legs.append((i, leg))
    legs.sort(key=lambda item: len(item[1]))
    fwd = {hub: U}
    leg_of = {}
    for new_i, (i, leg) in enumerate(legs, start=1):
        leg_of[i] = new_i
        for s, x in enumerate(leg, start=1):
            fwd[x] = v(new_i, s)
    if set(fwd) != set(rest.vertices):
        raise InternalLemmaViolation("remainder vertices do not match the leg decomposition")
    return [len(leg) for _, leg in legs], LabelMap(fwd), leg_of


def rekey(data: Mapping[Label, object], path_map: Mapping[int, int]) -> dict:
    """Rename path indices in the keys of per-vertex data."""
    return {rekey_paths(x, path_map): val for x, val in data.items()}


def sorted_rekey(lengths: list[int]) -> tuple[tuple[int, ...], dict[int, int]]:
    """Stable sort of path lengths and ``{old path index: sorted index}``."""
    order = sorted(range(len(lengths)), key=lambda i: lengths[i])
    return tuple(lengths[i] for i in order), {i + 1: pos + 1 for pos, i in enumerate(order)}

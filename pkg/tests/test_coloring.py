from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equichrome.coloring import (
    ListAssignment,
    cap_context,
    color_usage_histogram,
    equitable_cap,
    is_equitable_k_coloring,
    validate_equitable_list_coloring,
)
from equichrome.errors import BadListAssignment, ColorOutOfRange, PartialColoring
from equichrome.graphs import build_basic, build_theta, graph_power
from equichrome.labels import U, W, plain, v

P = plain

# the printed coloring of [Theta(2,4,4)]^2 with every list {1..5}
F_244 = {U: 1, v(1, 1): 2, v(2, 1): 3, v(3, 1): 4, v(2, 2): 2, v(3, 2): 3, v(2, 3): 4, v(3, 3): 1, W: 5}


@pytest.mark.parametrize("n,k,q,r,cap", [(9, 5, 1, 4, 2), (6, 3, 1, 3, 2), (3, 5, 0, 3, 1)])
def test_cap_context_examples(n, k, q, r, cap):
    ctx = cap_context(n, k)
    assert (ctx.q, ctx.r, ctx.cap) == (q, r, cap)


def test_cap_context_exhaustive_scan():
    for n in range(1, 1001):
        for k in range(1, 1001):
            ctx = cap_context(n, k)
            assert k * ctx.q + ctx.r == n
            assert 1 <= ctx.r <= k
            assert ctx.cap == ctx.q + 1 == -(-n // k) == equitable_cap(n, k)


def test_cap_context_rejects_nonpositive():
    with pytest.raises(ValueError):
        cap_context(0, 3)


def test_printed_244_coloring_is_valid():
    G = graph_power(build_theta([2, 4, 4]), 2)
    L = ListAssignment.uniform(G.vertices, range(1, 6))
    report = validate_equitable_list_coloring(G, L, F_244, 5)
    assert report.valid and report.cap == 2
    assert color_usage_histogram(F_244) == {1: 2, 2: 2, 3: 2, 4: 2, 5: 1}


def test_monochromatic_edge_is_reported():
    G = build_basic("path", 2)
    L = ListAssignment.uniform(G.vertices, [1, 2])
    report = validate_equitable_list_coloring(G, L, {P(1): 1, P(2): 1}, 2)
    assert not report.proper and not report.valid
    assert report.violations[0] == {"kind": "edge", "edge": ["p_1", "p_2"], "color": 1}


def test_p3_brute_force_agrees_with_validator():
    G = build_basic("path", 3)
    L = ListAssignment.uniform(G.vertices, [1, 2])
    valid = []
    for colors in product([1, 2], repeat=3):
        f = dict(zip(G.vertices, colors))
        proper = f[P(1)] != f[P(2)] and f[P(2)] != f[P(3)]
        capped = max(colors.count(1), colors.count(2)) <= 2
        report = validate_equitable_list_coloring(G, L, f, 2)
        assert report.valid == (proper and capped)
        if report.valid:
            valid.append(colors)
    assert valid == [(1, 2, 1), (2, 1, 2)]


def test_list_and_cap_violations():
    G = build_basic("path", 3)
    L = ListAssignment({P(1): [1, 2], P(2): [1, 2], P(3): [3, 4]})
    report = validate_equitable_list_coloring(G, L, {P(1): 1, P(2): 2, P(3): 1}, 2)
    assert report.proper and not report.respects
    # three isolated vertices, k=2: cap 2, one color used thrice
    E = build_basic("path", 3).induced([P(1), P(3)])
    report = validate_equitable_list_coloring(E, ListAssignment.uniform(E.vertices, [1, 2]), {P(1): 1, P(3): 1}, 2)
    assert report.cap == 1 and not report.equitable


def test_partial_coloring_raises():
    G = build_basic("path", 3)
    L = ListAssignment.uniform(G.vertices, [1, 2])
    with pytest.raises(PartialColoring) as info:
        validate_equitable_list_coloring(G, L, {P(1): 1, P(2): 2}, 2)
    assert info.value.missing == [P(3)]


def test_subgraph_uses_its_own_cap():
    # K_1 + 4 leaves minus the centre: valid in the parent, over cap in the subgraph
    G = build_basic("star", 4)
    L = ListAssignment.uniform(G.vertices, [1, 2, 3])
    f = {P(0): 3, P(1): 1, P(2): 1, P(3): 2, P(4): 2}
    assert validate_equitable_list_coloring(G, L, f, 3).valid
    H = G.induced([P(1), P(2), P(3)])
    g = {x: f[x] for x in H.vertices}
    report = validate_equitable_list_coloring(H, L.restrict(H.vertices), g, 3)
    assert report.cap == 1 and not report.valid


def test_is_equitable_k_coloring_examples():
    C4 = build_basic("cycle", 4)
    assert is_equitable_k_coloring(C4, {P(1): 1, P(2): 2, P(3): 1, P(4): 2}, 2)
    P3 = build_basic("path", 3)
    assert not is_equitable_k_coloring(P3, {P(1): 1, P(2): 2, P(3): 1}, 3)
    K33 = build_basic("kab", 3, 3)
    f = {P(1): 1, P(2): 1, P(3): 2, P(4): 3, P(5): 3, P(6): 2}
    assert not is_equitable_k_coloring(K33, f, 3)  # p_3 and p_6 share color 2
    with pytest.raises(ColorOutOfRange):
        is_equitable_k_coloring(P3, {P(1): 1, P(2): 4, P(3): 1}, 2)
    with pytest.raises(PartialColoring):
        is_equitable_k_coloring(P3, {P(1): 1}, 2)


def test_is_equitable_k_coloring_brute_force_on_k33():
    K33 = build_basic("kab", 3, 3)
    for k, expected in [(2, True), (3, False)]:
        found = any(
            is_equitable_k_coloring(K33, dict(zip(K33.vertices, colors)), k)
            for colors in product(range(1, k + 1), repeat=6)
        )
        assert found is expected


def test_histogram():
    assert color_usage_histogram({"a": 1, "b": 1, "c": 2}) == {1: 2, 2: 1}
    assert color_usage_histogram({}) == {}


def test_list_assignment_checks():
    with pytest.raises(BadListAssignment):
        ListAssignment({P(1): [1, 2], P(2): [1]})
    with pytest.raises(BadListAssignment):
        ListAssignment({P(1): [1, 2]}, k=3)
    with pytest.raises(BadListAssignment):
        ListAssignment({P(1): [-1, 2]})
    G = build_basic("path", 3)
    with pytest.raises(BadListAssignment):
        ListAssignment({P(1): [1]}).check_covers(G)


def test_list_assignment_json_round_trip():
    L = ListAssignment({U: [3, 1], v(2, 1): [5, 4], W: [1, 2]})
    assert ListAssignment.from_json(L.to_json()) == L
    assert L.to_json()["u"] == [1, 3]
    assert L.colors() == {1, 2, 3, 4, 5}


@given(st.lists(st.integers(1, 3), min_size=5, max_size=5))
def test_valid_coloring_stays_proper_on_spanning_subgraphs(colors):
    G = build_basic("cycle", 5)
    f = dict(zip(G.vertices, colors))
    L = ListAssignment.uniform(G.vertices, [1, 2, 3])
    if validate_equitable_list_coloring(G, L, f, 3).valid:
        for drop in G.edges():
            H = type(G)(G.vertices, [e for e in G.edges() if e != drop])
            assert validate_equitable_list_coloring(H, L, f, 3).proper

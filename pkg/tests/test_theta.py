import random

import pytest

from equichrome.coloring import ListAssignment, validate_equitable_list_coloring
from equichrome.errors import BadEdgeIndices, UnsupportedK, UnsupportedShape
from equichrome.graphs import build_star_subdivision, build_theta, doubled_label_map, graph_power, total_graph
from equichrome.labels import U, W, v
from equichrome.theta import (
    NoEquitableColoring,
    k_eq_m2_shape,
    min_k_theta,
    solve_staged,
    solve_star_square_plus_edge,
    solve_theta_244,
    solve_theta_2444,
    solve_theta_square,
    solve_theta_total,
)
from equichrome.verifier import random_assignment

F_244 = {U: 1, v(1, 1): 2, v(2, 1): 3, v(3, 1): 4, v(2, 2): 2, v(3, 2): 3, v(2, 3): 4, v(3, 3): 1, W: 5}
G_2444 = {
    U: 7, v(1, 1): 2, v(2, 1): 3, v(3, 1): 4, v(4, 1): 5, v(2, 2): 2, v(3, 2): 3,
    v(4, 2): 6, v(2, 3): 6, v(3, 3): 5, v(4, 3): 4, W: 1,
}


def square(ls):
    return graph_power(build_theta(ls), 2)


def rand_lists(G, k, seed, pool=None):
    return random_assignment(G.vertices, k, pool or range(1, 2 * k + 1), random.Random(seed))


def near_uniform(G, k, seed, p=0.9, extra=2):
    rng = random.Random(seed)
    base = list(range(1, k + 1))
    return ListAssignment({x: base if rng.random() < p else rng.sample(range(1, k + extra + 1), k) for x in G.vertices}, k)


# -- Theta(2,4,4) -------------------------------------------------------------------


def test_244_identical_lists_give_printed_coloring():
    G = square([2, 4, 4])
    L = ListAssignment.uniform(G.vertices, range(1, 6))
    assert solve_theta_244(L) == F_244
    f, trace = solve_theta_square([2, 4, 4], 5, L)
    assert f == F_244 and trace.children[0].node == "hardcoded"


def test_244_identical_lists_are_renamed():
    G = square([2, 4, 4])
    palette = [3, 9, 10, 20, 41]
    f = solve_theta_244(ListAssignment.uniform(G.vertices, palette))
    assert f == {x: palette[c - 1] for x, c in F_244.items()}


def test_244_one_different_list():
    G = square([2, 4, 4])
    lists = {x: range(1, 6) for x in G.vertices}
    lists[v(3, 1)] = [1, 2, 3, 4, 6]
    L = ListAssignment(lists)
    f, trace = solve_theta_square([2, 4, 4], 5, L)
    assert trace.info["S"] == ["v_2_1", "v_2_2", "v_2_3"]
    assert validate_equitable_list_coloring(G, L, f, 5).valid


def test_244_second_removal_set():
    G = square([2, 4, 4])
    # the only odd list sits on path 2, so the complement of path 2 is uniform
    lists = {x: range(1, 6) for x in G.vertices}
    lists[v(2, 2)] = [2, 3, 4, 5, 6]
    L = ListAssignment(lists)
    f, trace = solve_theta_square([2, 4, 4], 5, L)
    assert trace.info["S"] == ["v_3_1", "v_3_2", "v_3_3"]
    assert validate_equitable_list_coloring(G, L, f, 5).valid


def test_244_random():
    G = square([2, 4, 4])
    for seed in range(300):
        L = rand_lists(G, 5, seed) if seed % 2 else near_uniform(G, 5, seed)
        assert validate_equitable_list_coloring(G, L, solve_theta_244(L), 5).valid


# -- Theta(2,4,4,4) -------------------------------------------------------------------


def test_2444_fallback_is_printed_g():
    G = square([2, 4, 4, 4])
    lists = {x: range(1, 7) for x in G.vertices}
    lists[U] = [2, 3, 4, 5, 6, 7]
    lists[W] = [1, 2, 4, 5, 6, 7]
    L = ListAssignment(lists)
    assert solve_theta_2444(L) == G_2444
    assert validate_equitable_list_coloring(G, L, G_2444, 6).valid


def test_2444_uniform_lists_complete_f_directly():
    G = square([2, 4, 4, 4])
    L = ListAssignment.uniform(G.vertices, range(1, 7))
    f, trace = solve_theta_square([2, 4, 4, 4], 6, L)
    assert trace.children[0].info == {"variant": "f"}
    assert validate_equitable_list_coloring(G, L, f, 6).valid


@pytest.mark.parametrize("seed,first", [(0, "v_4_1"), (22, "v_3_1"), (34, "v_2_1")])
def test_2444_each_removal_set(seed, first):
    G = square([2, 4, 4, 4])
    L = near_uniform(G, 6, seed)
    f, trace = solve_theta_square([2, 4, 4, 4], 6, L)
    assert trace.info["S"][:3] == ["w", "u", first]
    assert validate_equitable_list_coloring(G, L, f, 6).valid


def test_2444_random():
    G = square([2, 4, 4, 4])
    for seed in range(300):
        L = rand_lists(G, 6, seed) if seed % 2 else near_uniform(G, 6, seed)
        assert validate_equitable_list_coloring(G, L, solve_theta_2444(L), 6).valid


# -- staged -------------------------------------------------------------------------------


def test_staged_a_uniform():
    ls = [2, 4, 4, 4, 4]
    G = square(ls)
    L = ListAssignment.uniform(G.vertices, range(1, 8))
    f = solve_staged(ls, "A", L)
    report = validate_equitable_list_coloring(G, L, f, 7)
    assert len(G) == 15 and report.cap == 3 and report.valid


def test_staged_b_uniform():
    G = square([4, 4, 4])
    L = ListAssignment.uniform(G.vertices, range(1, 6))
    f = solve_staged([4, 4, 4], "B", L)
    report = validate_equitable_list_coloring(G, L, f, 5)
    assert len(G) == 11 and report.cap == 3 and report.valid


def test_staged_b_disjoint_lists_rainbow_stage():
    G = square([4, 4, 4])
    L = ListAssignment({x: range(5 * i, 5 * i + 5) for i, x in enumerate(G.vertices)})
    _, trace = solve_theta_square([4, 4, 4], 5, L)
    assert trace.node == "theta:staged-B" and trace.info["stage3"] == "rainbow"


def test_staged_shared_color_fallback():
    G = square([4, 4, 4])
    base = [2, 4, 5, 6, 7]
    lists = {x: base for x in G.vertices}
    lists.update({v(1, 1): [1, 2, 3, 4, 5], v(1, 2): [1, 2, 3, 6, 7], W: [2, 3, 4, 5, 7]})
    L = ListAssignment(lists)
    f, trace = solve_theta_square([4, 4, 4], 5, L)
    assert trace.info["stage3"] == "shared-color"
    assert f[v(2, 2)] == f[v(3, 2)]
    assert validate_equitable_list_coloring(G, L, f, 5).valid


@pytest.mark.parametrize("ls,variant", [([2, 4, 4, 4, 4], "A"), ([2, 4, 4, 4, 4, 4], "A"), ([4, 4, 4], "B"), ([4, 4, 4, 4], "B")])
def test_staged_random(ls, variant):
    G = square(ls)
    k = len(ls) + 2
    for seed in range(60):
        L = rand_lists(G, k, seed) if seed % 2 else near_uniform(G, k, seed, p=0.7)
        f = solve_staged(ls, variant, L)
        assert validate_equitable_list_coloring(G, L, f, k).valid


def test_staged_shape_checks():
    with pytest.raises(UnsupportedShape):
        solve_staged([2, 4, 4, 4], "A", ListAssignment({}, 6))
    with pytest.raises(UnsupportedShape):
        solve_staged([4, 4, 5], "B", ListAssignment({}, 5))


# -- plus-edge ----------------------------------------------------------------------------


def plus_edge_graph(ls, a, b):
    H = graph_power(build_star_subdivision(ls), 2)
    return H.with_edge(v(a, ls[a - 1]), v(b, ls[b - 1]))


@pytest.mark.parametrize("ls,a,b", [([1, 3, 3], 1, 2), ([3, 3, 4], 1, 2), ([2, 3, 5], 2, 3), ([1, 2, 3, 4], 1, 3), ([2, 2, 4, 6], 2, 3)])
def test_plus_edge_random(ls, a, b):
    G = plus_edge_graph(ls, a, b)
    k = len(ls) + 2
    for seed in range(40):
        L = rand_lists(G, k, seed) if seed % 2 else near_uniform(G, k, seed)
        f = solve_star_square_plus_edge(ls, a, b, L)
        assert f[v(a, ls[a - 1])] != f[v(b, ls[b - 1])]
        assert validate_equitable_list_coloring(G, L, f, k).valid


def test_plus_edge_disjoint_lists():
    G = plus_edge_graph([1, 1, 3], 1, 2)
    L = ListAssignment({x: range(5 * i, 5 * i + 5) for i, x in enumerate(G.vertices)})
    assert validate_equitable_list_coloring(G, L, solve_star_square_plus_edge([1, 1, 3], 1, 2, L), 5).valid


def test_plus_edge_errors():
    G = plus_edge_graph([1, 3, 3], 1, 2)
    L = rand_lists(G, 5, 0)
    with pytest.raises(BadEdgeIndices):
        solve_star_square_plus_edge([1, 3, 3], 2, 2, L)
    with pytest.raises(BadEdgeIndices):
        solve_star_square_plus_edge([1, 3, 3], 1, 4, L)
    with pytest.raises(UnsupportedShape):
        solve_star_square_plus_edge([1, 2, 2], 1, 2, L)
    with pytest.raises(UnsupportedK):
        solve_star_square_plus_edge([1, 3, 3], 1, 2, rand_lists(G, 6, 0))


# -- dispatch -------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "ls,k,lemma",
    [
        ((2, 4, 4), 8, "theta:k>=2m+2"),
        ((2, 4, 6, 6), 10, "theta:k>=2m+2"),
        ((2, 4, 4), 6, "theta:m+3<=k<=2m+1"),
        ((2, 4, 6, 6), 7, "theta:m+3<=k<=2m+1"),
        ((2, 6, 6, 6), 8, "theta:m+3<=k<=2m+1"),
        ((2, 4, 6), 5, "theta:k=m+2,l_m>=6"),
        ((4, 4, 6, 6), 6, "theta:k=m+2,l_m>=6"),
        ((2, 4, 4, 4, 4), 7, "theta:staged-A"),
        ((4, 4, 4), 5, "theta:staged-B"),
        ((5,), 3, "theta:path-square"),
        ((3, 4), 4, "theta:cycle-square"),
    ],
)
def test_dispatch_routes(ls, k, lemma):
    G = square(ls)
    for seed in range(8):
        L = rand_lists(G, k, seed)
        f, trace = solve_theta_square(ls, k, L)
        assert trace.node == lemma
        assert validate_equitable_list_coloring(G, L, f, k).valid


def test_shape_table():
    assert k_eq_m2_shape((2, 4, 4)) == "244"
    assert k_eq_m2_shape((2, 4, 4, 4)) == "2444"
    assert k_eq_m2_shape((2, 4, 4, 4, 4)) == "staged-A"
    assert k_eq_m2_shape((4, 4, 4, 4)) == "staged-B"
    assert k_eq_m2_shape((2, 4, 8)) == "l_m>=6"
    assert k_eq_m2_shape((2, 4, 5)) is None
    assert k_eq_m2_shape((2, 4)) is None


def test_shape_dispatch_is_total_on_doubled_lengths():
    from itertools import combinations_with_replacement

    for m in range(3, 7):
        for ls in combinations_with_replacement(range(1, 5), m):
            if ls[1] < 2:
                continue
            assert k_eq_m2_shape(tuple(2 * x for x in ls)) is not None


def test_unsupported():
    G = square([2, 4, 5])
    with pytest.raises(UnsupportedShape):
        solve_theta_square([2, 4, 5], 5, rand_lists(G, 5, 0))
    with pytest.raises(UnsupportedK):
        solve_theta_square([2, 4, 5], 4, rand_lists(G, 4, 0))
    G = square([2, 2, 4])
    with pytest.raises(UnsupportedShape):
        solve_theta_square([2, 2, 4], 6, rand_lists(G, 6, 0))


def test_fallback_oracle():
    G = square([2, 4, 5])
    L = rand_lists(G, 5, 3)
    f, trace = solve_theta_square([2, 4, 5], 5, L, fallback_oracle=True)
    assert trace.node == "theta:fallback"
    assert validate_equitable_list_coloring(G, L, f, 5).valid


def test_fallback_oracle_reports_impossible_instances():
    # Theta(1,2) is a triangle; its square has no 2-coloring at all
    G = square([1, 2])
    with pytest.raises(NoEquitableColoring):
        solve_theta_square([1, 2], 2, ListAssignment.uniform(G.vertices, [1, 2]), fallback_oracle=True)


# -- total graphs ---------------------------------------------------------------------------


def test_total_122_pulls_back_printed_coloring():
    T = total_graph(build_theta([1, 2, 2]))
    L = ListAssignment.uniform(T.vertices, range(1, 6))
    f, trace = solve_theta_total([1, 2, 2], 5, L)
    lmap = doubled_label_map("theta", [1, 2, 2])
    assert {lmap[x]: c for x, c in f.items()} == F_244
    assert trace.children[0].node == "theta:244"


@pytest.mark.parametrize("ls,k,lemma", [([1, 2, 2, 2], 6, "theta:2444"), ([2, 2, 3], 5, "theta:k=m+2,l_m>=6"), ([2, 2, 2], 5, "theta:staged-B")])
def test_total_routes(ls, k, lemma):
    T = total_graph(build_theta(ls))
    for seed in range(15):
        L = rand_lists(T, k, seed)
        f, trace = solve_theta_total(ls, k, L)
        assert trace.children[0].node == lemma
        assert validate_equitable_list_coloring(T, L, f, k).valid


def test_total_bounds():
    assert [min_k_theta(m) for m in range(1, 5)] == [3, 4, 5, 6]
    T = total_graph(build_theta([2, 2, 2]))
    with pytest.raises(UnsupportedK):
        solve_theta_total([2, 2, 2], 4, rand_lists(T, 4, 0))


def test_total_small_m():
    for ls, k in [([1], 3), ([3], 3), ([1, 2], 4), ([2, 3], 4)]:
        T = total_graph(build_theta(ls))
        for seed in range(10):
            L = rand_lists(T, k, seed)
            f, _ = solve_theta_total(ls, k, L)
            assert validate_equitable_list_coloring(T, L, f, k).valid

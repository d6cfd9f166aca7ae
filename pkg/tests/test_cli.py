import json

import pytest

from equichrome.cli import main, parse_k_values, parse_range
from equichrome.errors import BadParameter
from equichrome.instance import GraphSpec, Instance, generate, parse_basic_kind
from equichrome.labels import U, W, v

F_244 = {"u": 1, "v_1_1": 2, "v_2_1": 3, "v_3_1": 4, "v_2_2": 2, "v_3_2": 3, "v_2_3": 4, "v_3_3": 1, "w": 5}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def write_instance(path, graph, k, lists):
    path.write_text(json.dumps({"graph": graph, "k": k, "lists": lists}))
    return path


def test_parse_helpers():
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("3") == [3]
    assert parse_k_values("m+1..m+3", 3) == [4, 5, 6]
    assert parse_k_values("m+2,m+3,2m+2", 4) == [6, 7, 10]
    assert parse_k_values("7", 2) == [7]
    with pytest.raises(BadParameter):
        parse_range("4..1")
    with pytest.raises(BadParameter):
        parse_k_values("n+1", 3)
    assert parse_basic_kind("k1_9") == ("complete_bipartite", [1, 9])
    assert parse_basic_kind("K4") == ("complete", [4])


def test_gen_theta_total(tmp_path, capsys):
    out = tmp_path / "t.json"
    code, payload = run(capsys, "gen", "--family", "theta", "--lengths", "1,2,2", "--total", "--k", 5, "--pool", "1..10", "--seed", 7, "--out", out)
    assert code == 0 and payload["vertices"] == 9 and payload["seed"] == 7
    data = json.loads(out.read_text())
    assert data["generator"] == {"pool": list(range(1, 11)), "seed": 7}
    assert all(len(cs) == 5 for cs in data["lists"].values())
    assert "te(u,w)" in data["lists"] and "tv(u)" in data["lists"]


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run(capsys, "gen", "--family", "star", "--lengths", "1,3,3", "--square", "--k", 4, "--seed", 3, "--out", path)
    assert a.read_text() == b.read_text()


def test_gen_basic_hard_instance(tmp_path, capsys):
    out = tmp_path / "k.json"
    code, _ = run(capsys, "gen", "--family", "basic", "--kind", "k1_9", "--k", 5, "--pool", "1..5", "--out", out)
    data = json.loads(out.read_text())
    assert code == 0 and len(data["lists"]) == 10
    assert {tuple(cs) for cs in data["lists"].values()} == {(1, 2, 3, 4, 5)}
    code, payload = run(capsys, "solve", out)
    assert code == 5 and payload["status"] == "NoEquitableColoring"


def test_solve_theta_total_identical_lists(tmp_path, capsys):
    graph = {"family": "theta", "lengths": [1, 2, 2], "form": "total"}
    spec = GraphSpec.from_json(graph)
    lists = {str(x): [1, 2, 3, 4, 5] for x in spec.build().vertices}
    path = write_instance(tmp_path / "i.json", graph, 5, lists)
    code, payload = run(capsys, "solve", path, "--trace")
    assert code == 0 and payload["status"] == "valid"
    assert payload["trace"]["children"][0]["node"] == "theta:244"
    from equichrome.graphs import doubled_label_map
    from equichrome.labels import parse_label

    lmap = doubled_label_map("theta", [1, 2, 2])
    assert {str(lmap[parse_label(s)]): c for s, c in payload["coloring"].items()} == F_244


def test_solve_star_rainbow(tmp_path, capsys):
    graph = {"family": "star", "lengths": [1, 1, 1], "form": "square"}
    lists = {s: [1, 2, 3, 4] for s in ["u", "v_1_1", "v_2_1", "v_3_1"]}
    path = write_instance(tmp_path / "i.json", graph, 4, lists)
    code, payload = run(capsys, "solve", path, "--trace", "--dot", tmp_path / "g.dot")
    assert code == 0 and payload["trace"]["node"] == "rainbow"
    assert payload["coloring"] == {"u": 1, "v_1_1": 2, "v_2_1": 3, "v_3_1": 4}
    assert (tmp_path / "g.dot").read_text().startswith("graph G {")


def test_solve_unsupported_shape(tmp_path, capsys):
    out = tmp_path / "u.json"
    run(capsys, "gen", "--family", "theta", "--lengths", "2,4,5", "--k", 5, "--out", out)
    code, payload = run(capsys, "solve", out)
    assert code == 2 and payload["error"] == "UnsupportedShape"
    code, payload = run(capsys, "solve", out, "--fallback-oracle")
    assert code == 0 and payload["method"] == "constructive"


def test_solve_plus_edge(tmp_path, capsys):
    out = tmp_path / "p.json"
    run(capsys, "gen", "--family", "star", "--lengths", "1,3,3", "--extra-edge", "1,2", "--k", 5, "--seed", 2, "--out", out)
    code, payload = run(capsys, "solve", out)
    assert code == 0 and payload["method"] == "plus-edge"


def test_verify_round_trip_and_failures(tmp_path, capsys):
    graph = {"family": "theta", "lengths": [2, 4, 4], "form": "square"}
    lists = {s: [1, 2, 3, 4, 5] for s in F_244}
    inst = write_instance(tmp_path / "i.json", graph, 5, lists)
    good = tmp_path / "f.json"
    good.write_text(json.dumps(F_244))
    code, payload = run(capsys, "verify", inst, good)
    assert code == 0 and payload["validation"]["valid"]

    bad = dict(F_244, v_2_2=3)  # v_2_1 already has 3
    (tmp_path / "bad.json").write_text(json.dumps(bad))
    code, payload = run(capsys, "verify", inst, tmp_path / "bad.json")
    assert code == 1
    assert {"kind": "edge", "edge": ["v_2_1", "v_2_2"], "color": 3} in payload["validation"]["violations"]

    partial = {s: c for s, c in F_244.items() if s != "w"}
    (tmp_path / "part.json").write_text(json.dumps(partial))
    code, payload = run(capsys, "verify", inst, tmp_path / "part.json")
    assert code == 4 and payload["status"] == "PartialColoring" and payload["missing"] == ["w"]


def test_gen_solve_verify_agree(tmp_path, capsys):
    for seed in range(5):
        inst = tmp_path / f"i{seed}.json"
        sol = tmp_path / f"s{seed}.json"
        run(capsys, "gen", "--family", "star", "--lengths", "2,3,3", "--total", "--k", 4, "--seed", seed, "--out", inst)
        code, payload = run(capsys, "solve", inst)
        sol.write_text(json.dumps(payload))
        vcode, vpayload = run(capsys, "verify", inst, sol)
        assert code == vcode == 0
        assert vpayload["validation"] == payload["validation"]


def test_malformed_inputs(tmp_path, capsys):
    (tmp_path / "x.json").write_text("{not json")
    code, payload = run(capsys, "solve", tmp_path / "x.json")
    assert code == 4
    code, payload = run(capsys, "solve", tmp_path / "missing.json")
    assert code == 4
    path = write_instance(tmp_path / "short.json", {"family": "star", "lengths": [1], "form": "square"}, 3, {"u": [1, 2, 3]})
    code, payload = run(capsys, "solve", path)
    assert code == 4 and payload["error"] == "BadListAssignment"


def test_audit_star_and_theta(capsys):
    code, payload = run(capsys, "audit", "--family", "star", "--m", "3", "--entries", "1..2", "--k", "m+1..m+3", "--trials", 5, "--seed", 1)
    assert code == 0 and payload["instances"] == 4 * 3 * 5 and payload["seed"] == 1
    code, payload = run(capsys, "audit", "--family", "theta", "--total", "--m", "3", "--entries", "1..2", "--k", "m+2,2m+2", "--trials", 3)
    assert code == 0 and len(payload["skipped"]) == 2 and payload["instances"] == 2 * 2 * 3


def test_audit_is_byte_stable(capsys):
    argv = ["audit", "--family", "star", "--lengths", "2,2,3", "--k", "m+1", "--trials", 10, "--seed", 4]
    main([str(a) for a in argv])
    first = capsys.readouterr().out
    main([str(a) for a in argv])
    assert capsys.readouterr().out == first


def test_audit_exhaustive_counterexample(capsys):
    code, payload = run(capsys, "audit", "--family", "basic", "--kind", "k1_9", "--k", 5, "--pool", "1..5", "--exhaustive")
    assert code == 5 and payload["verdict"]["status"] == "Counterexample"


def test_audit_reports_failures(capsys):
    code, payload = run(capsys, "audit", "--family", "star", "--lengths", "1,2,3", "--k", 3, "--trials", 2)
    assert code == 1 and payload["failures"] == 2


def test_iso(capsys):
    code, payload = run(capsys, "iso", "--path", 5)
    assert code == 0 and payload["isomorphic"]
    code, payload = run(capsys, "iso", "--family", "star", "--lengths", "2,1,3")
    assert code == 0 and payload["claim"] == "T(B(1,2,3)) ~ [B(2,4,6)]^2"
    code, payload = run(capsys, "iso", "--family", "theta", "--lengths", "1,2,2")
    assert code == 0 and payload["map"]["tv(w)"] == "w"


def test_instance_round_trip():
    inst = generate(GraphSpec("star", lengths=[3, 1, 3]), 4, range(1, 9), 5)
    again = Instance.from_json(json.loads(inst.dumps()))
    assert again.lists == inst.lists and again.graph.lengths == [1, 3, 3]
    assert inst.graph.describe() == "[B(1,3,3)]^2"


def test_instance_lists_from_generator_only():
    data = {"graph": {"family": "theta", "lengths": [2, 4, 4]}, "k": 5, "generator": {"pool": [1, 2, 3, 4, 5, 6], "seed": 9}}
    a, b = Instance.from_json(data), Instance.from_json(data)
    assert a.lists == b.lists and len(a.lists) == 9


def test_instance_errors():
    with pytest.raises(BadParameter):
        GraphSpec("hexagon")
    with pytest.raises(BadParameter):
        GraphSpec("theta", lengths=[2, 4, 4], extra_edge=(1, 2))
    with pytest.raises(BadParameter):
        Instance.from_json({"graph": {"family": "star", "lengths": [1]}, "k": 3})
    with pytest.raises(BadParameter):
        Instance.from_json({"k": 3})


def test_explicit_graph_instance(tmp_path, capsys):
    graph = {"family": "explicit", "vertices": ["p_1", "p_2", "p_3"], "edges": [["p_1", "p_2"], ["p_2", "p_3"]]}
    path = write_instance(tmp_path / "e.json", graph, 2, {"p_1": [1, 2], "p_2": [1, 2], "p_3": [1, 2]})
    code, payload = run(capsys, "solve", path)
    assert code == 0 and payload["method"] == "oracle" and payload["coloring"]["p_2"] != payload["coloring"]["p_1"]


def test_labels_used_in_specs():
    spec = GraphSpec("theta", lengths=[2, 4, 4], form="square")
    G = spec.build()
    assert U in G and W in G and v(3, 3) in G

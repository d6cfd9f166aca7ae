"""Command-line front end: ``gen``, ``solve``, ``verify``, ``audit`` and ``iso``.

Every command prints one JSON document with sorted keys.  Exit codes:

    0  valid coloring / check passed
    1  invalid coloring / check failed
    2  unsupported shape, k, or size
    3  internal construction failure
    4  malformed input or partial coloring
    5  counterexample (no equitable coloring exists)
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Any

from .coloring import ValidationReport, validate_equitable_list_coloring
from .errors import (
    BadParameter,
    EquichromeError,
    InternalLemmaViolation,
    PartialColoring,
    SearchLimitExceeded,
    UnsupportedInstance,
    UnsupportedK,
    UnsupportedShape,
)
from .graphs import build_basic, build_star_subdivision, build_theta, doubled_label_map, graph_power, graphs_isomorphic, total_graph
from .instance import GraphSpec, Instance, generate, parse_basic_kind
from .labels import parse_label
from .oracle import exact_equitable_list_coloring
from .star import solve_star_square, solve_star_total
from .theta import NoEquitableColoring, solve_star_square_plus_edge, solve_theta_square, solve_theta_total
from .verifier import audit_constructive, exhaustive_choosability_over_pool, family_graph

EXIT_VALID = 0
EXIT_INVALID = 1
EXIT_UNSUPPORTED = 2
EXIT_INTERNAL = 3
EXIT_MALFORMED = 4
EXIT_COUNTEREXAMPLE = 5


def emit(payload: dict[str, Any]) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (UnsupportedShape, UnsupportedK, UnsupportedInstance, SearchLimitExceeded)):
        return EXIT_UNSUPPORTED
    if isinstance(exc, InternalLemmaViolation):
        return EXIT_INTERNAL
    if isinstance(exc, NoEquitableColoring):
        return EXIT_COUNTEREXAMPLE
    if isinstance(exc, (ValueError, KeyError, OSError, json.JSONDecodeError)):
        return EXIT_MALFORMED
    return EXIT_INTERNAL


# -- argument parsing helpers -------------------------------------------------------


def parse_lengths(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise BadParameter(f"bad lengths {text!r}") from exc


def parse_range(text: str) -> list[int]:
    """``a..b`` (inclusive), a single integer, or a comma list."""
    match = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if match:
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo > hi:
            raise BadParameter(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise BadParameter(f"bad range {text!r}") from exc


_TERM = re.compile(r"\s*(?:(\d*)m)?\s*([+-]\s*\d+)?\s*")


def _eval_term(term: str, m: int) -> int:
    term = term.strip()
    if re.fullmatch(r"-?\d+", term):
        return int(term)
    match = _TERM.fullmatch(term)
    if not match or "m" not in term:
        raise BadParameter(f"bad k expression {term!r}")
    coef = int(match.group(1)) if match.group(1) else 1
    off = int(match.group(2).replace(" ", "")) if match.group(2) else 0
    return coef * m + off


def parse_k_values(text: str, m: int) -> list[int]:
    """Evaluate ``k`` expressions such as ``m+1..m+3,2m+2`` for a given ``m``."""
    out: list[int] = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(_eval_term(lo, m), _eval_term(hi, m) + 1))
        else:
            out.append(_eval_term(part, m))
    return sorted(set(out))


def graph_spec_from_args(args: argparse.Namespace) -> GraphSpec:
    if args.family == "basic":
        if not args.kind:
            raise BadParameter("--family basic needs --kind")
        kind, params = parse_basic_kind(args.kind, parse_lengths(args.params) if args.params else ())
        return GraphSpec("basic", kind=kind, params=params)
    if not args.lengths:
        raise BadParameter(f"--family {args.family} needs --lengths")
    form = "total" if args.total else "plain" if args.plain else "square"
    edge = tuple(parse_lengths(args.extra_edge)) if getattr(args, "extra_edge", None) else None
    return GraphSpec(args.family, lengths=parse_lengths(args.lengths), form=form, extra_edge=edge)


# -- solving ---------------------------------------------------------------------------


def solve_instance(inst: Instance, fallback_oracle: bool = False):
    """Route an instance to its solver; returns ``(coloring, trace_or_None, method)``."""
    spec, k, L = inst.graph, inst.k, inst.lists
    if spec.family == "star" and spec.form == "square" and spec.extra_edge is not None:
        a, b = spec.extra_edge
        return solve_star_square_plus_edge(spec.lengths, a, b, L), None, "plus-edge"
    if spec.family == "star" and spec.form == "square":
        f, trace = solve_star_square(spec.lengths, k, L)
        return f, trace, "constructive"
    if spec.family == "star" and spec.form == "total":
        f, trace = solve_star_total(spec.lengths, k, L)
        return f, trace, "constructive"
    if spec.family == "theta" and spec.form == "square":
        f, trace = solve_theta_square(spec.lengths, k, L, fallback_oracle=fallback_oracle)
        return f, trace, "constructive"
    if spec.family == "theta" and spec.form == "total":
        f, trace = solve_theta_total(spec.lengths, k, L)
        return f, trace, "constructive"
    G = spec.build()
    f = exact_equitable_list_coloring(G, L)
    if f is None:
        raise NoEquitableColoring(f"{spec.describe()} has no equitable L-coloring", L)
    return f, None, "oracle"


def _coloring_json(f) -> dict[str, int]:
    return {str(x): c for x, c in sorted(f.items())}


def cmd_gen(args: argparse.Namespace) -> int:
    spec = graph_spec_from_args(args)
    pool = parse_range(args.pool) if args.pool else list(range(1, 2 * args.k + 1))
    inst = generate(spec, args.k, pool, args.seed)
    text = inst.dumps()
    if args.out:
        Path(args.out).write_text(text)
        emit({"graph": spec.describe(), "k": args.k, "out": args.out, "seed": args.seed, "vertices": len(inst.lists)})
    else:
        sys.stdout.write(text)
    return EXIT_VALID


def cmd_solve(args: argparse.Namespace) -> int:
    inst = Instance.load(args.instance)
    G = inst.graph.build()
    try:
        f, trace, method = solve_instance(inst, args.fallback_oracle)
    except NoEquitableColoring as exc:
        emit({"graph": inst.graph.describe(), "k": inst.k, "seed": inst.seed, "status": "NoEquitableColoring", "message": str(exc)})
        return EXIT_COUNTEREXAMPLE
    report = validate_equitable_list_coloring(G, inst.lists, f, inst.k)
    out: dict[str, Any] = {
        "graph": inst.graph.describe(),
        "k": inst.k,
        "seed": inst.seed,
        "method": method,
        "coloring": _coloring_json(f),
        "validation": report.to_json(),
        "status": "valid" if report.valid else "invalid",
    }
    if args.trace and trace is not None:
        out["trace"] = trace.to_json()
    if args.dot:
        Path(args.dot).write_text(G.to_dot("G", f))
        out["dot"] = args.dot
    emit(out)
    if not report.valid:
        # a solver returning an invalid coloring is a construction failure
        return EXIT_INTERNAL
    return EXIT_VALID


def load_coloring(path: str) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict) and isinstance(data.get("coloring"), dict):
        data = data["coloring"]
    if not isinstance(data, dict):
        raise BadParameter("coloring file must be a JSON object of label -> color")
    return {parse_label(s): int(c) for s, c in data.items()}


def cmd_verify(args: argparse.Namespace) -> int:
    inst = Instance.load(args.instance)
    G = inst.graph.build()
    f = load_coloring(args.coloring)
    try:
        report: ValidationReport = validate_equitable_list_coloring(G, inst.lists, f, inst.k)
    except PartialColoring as exc:
        emit({"status": "PartialColoring", "missing": [str(x) for x in exc.missing], "seed": inst.seed})
        return EXIT_MALFORMED
    emit({"graph": inst.graph.describe(), "k": inst.k, "seed": inst.seed, "status": "valid" if report.valid else "invalid", "validation": report.to_json()})
    return EXIT_VALID if report.valid else EXIT_INVALID


# -- audit -----------------------------------------------------------------------------


def length_vectors(m_values: list[int], entries: list[int]) -> list[list[int]]:
    """Nondecreasing lengths vectors (one per multiset) with entries from ``entries``."""
    out = []
    for m in m_values:
        out.extend(list(c) for c in combinations_with_replacement(sorted(set(entries)), m))
    return out


def _audit_family(args: argparse.Namespace) -> str:
    if args.family == "star":
        return "star-total" if args.total else "star"
    if args.family == "theta":
        return "theta-square" if args.square else "theta-total"
    return args.family


def cmd_audit(args: argparse.Namespace) -> int:
    if args.family == "basic":
        return _audit_basic(args)
    family = _audit_family(args)
    if args.lengths:
        vectors = [sorted(parse_lengths(args.lengths))]
    else:
        if not args.m:
            raise BadParameter("audit needs --lengths or --m")
        vectors = length_vectors(parse_range(args.m), parse_range(args.entries))
    k_expr = args.k_values or "m+1..m+3"
    start = time.perf_counter()
    runs, skipped = [], []
    failures = 0
    edge = tuple(parse_lengths(args.extra_edge)) if args.extra_edge else None
    for ls in vectors:
        m = len(ls)
        if family.startswith("theta") and m >= 2 and ls[1] < 2:
            skipped.append({"lengths": ls, "reason": "two paths of length 1 are parallel edges"})
            continue
        for k in parse_k_values(k_expr, m):
            pool = parse_range(args.pool) if args.pool else list(range(1, 2 * k + 1))
            try:
                rep = audit_constructive(
                    family,
                    ls,
                    k,
                    args.trials,
                    pool,
                    args.seed,
                    edge=edge,
                    shared_bias=args.shared_bias,
                    oracle_max_vertices=args.oracle_max,
                    workers=args.workers,
                )
            except EquichromeError as exc:
                skipped.append({"lengths": ls, "k": k, "reason": f"{type(exc).__name__}: {exc}"})
                continue
            failures += len(rep.failures) + rep.oracle_disagreements
            runs.append(rep.to_json(timing=False))
    payload = {
        "family": family,
        "seed": args.seed,
        "trials": args.trials,
        "runs": runs,
        "skipped": skipped,
        "instances": sum(r["trials"] for r in runs),
        "failures": failures,
        "ok": failures == 0,
    }
    if args.timing:
        payload["elapsed"] = round(time.perf_counter() - start, 3)
    emit(payload)
    return EXIT_VALID if failures == 0 else EXIT_INVALID


def _audit_basic(args: argparse.Namespace) -> int:
    spec = graph_spec_from_args(args)
    G = spec.build()
    pool = parse_range(args.pool) if args.pool else list(range(1, args.k + 1))
    if not args.exhaustive:
        raise BadParameter("audit of a basic graph needs --exhaustive")
    verdict = exhaustive_choosability_over_pool(G, args.k, pool)
    emit({"graph": spec.describe(), "seed": args.seed, "verdict": verdict.to_json()})
    return EXIT_COUNTEREXAMPLE if verdict.status == "Counterexample" else EXIT_VALID


# -- iso -------------------------------------------------------------------------------


def cmd_iso(args: argparse.Namespace) -> int:
    if args.path:
        m = args.path
        left = total_graph(build_basic("path", m))
        right = graph_power(build_basic("path", 2 * m - 1), 2)
        iso = graphs_isomorphic(left, right)
        emit({"claim": f"T(P_{m}) ~ (P_{2 * m - 1})^2", "isomorphic": iso is not None, "map": iso.to_json() if iso else None})
        return EXIT_VALID if iso else EXIT_INVALID
    if args.family not in ("star", "theta") or not args.lengths:
        raise BadParameter("iso needs --path M or --family star|theta with --lengths")
    ls = parse_lengths(args.lengths)
    lmap = doubled_label_map(args.family, ls)
    base = build_star_subdivision(ls) if args.family == "star" else build_theta(ls)
    ok = lmap.is_isomorphism(total_graph(base), family_graph(f"{args.family}-square" if args.family == "theta" else "star", [2 * x for x in ls]))
    name = "B" if args.family == "star" else "Theta"
    doubled = ",".join(str(2 * x) for x in sorted(ls))
    emit({
        "claim": f"T({name}({','.join(map(str, sorted(ls)))})) ~ [{name}({doubled})]^2",
        "isomorphic": ok,
        "map": lmap.to_json(),
    })
    return EXIT_VALID if ok else EXIT_INVALID


# -- entry point -----------------------------------------------------------------------


def _add_graph_args(p: argparse.ArgumentParser, families: tuple[str, ...]) -> None:
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--lengths", help="comma-separated path lengths, e.g. 1,3,3")
    form = p.add_mutually_exclusive_group()
    form.add_argument("--square", action="store_true", help="square of the graph (default)")
    form.add_argument("--total", action="store_true", help="total graph")
    form.add_argument("--plain", action="store_true", help="the graph itself")
    p.add_argument("--extra-edge", help="a,b: join the ends of paths a and b (squared stars)")
    p.add_argument("--kind", help="basic graph kind: k1_9, k3_3, k4, p5, c6, star, path, ...")
    p.add_argument("--params", help="comma-separated parameters for --kind")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equichrome", description="Equitable list colorings of squares and total graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write an instance with a random k-assignment")
    _add_graph_args(p, ("star", "theta", "basic"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pool", help="color pool a..b (default 1..2k)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="color an instance")
    p.add_argument("instance")
    p.add_argument("--trace", action="store_true", help="include the reduction trace")
    p.add_argument("--dot", help="write a colored DOT file")
    p.add_argument("--fallback-oracle", action="store_true", help="use exact search for unsupported theta shapes")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a coloring against an instance")
    p.add_argument("instance")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="seeded random audit of the constructions")
    _add_graph_args(p, ("star", "theta", "star-plus-edge", "basic"))
    p.add_argument("--m", help="path counts, e.g. 3..5")
    p.add_argument("--entries", default="1..4", help="allowed path lengths, e.g. 1..4")
    p.add_argument("--k", dest="k_values", help="k expressions in m, e.g. m+1..m+3,2m+2 (basic: integer)")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--pool", help="color pool a..b (default 1..2k)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shared-bias", type=float, default=0.0)
    p.add_argument("--oracle-max", type=int, default=14, help="cross-check with exact search up to this many vertices")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true", help="basic graphs: enumerate all assignments over the pool")
    p.add_argument("--timing", action="store_true", help="include elapsed time (breaks byte-identical output)")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("iso", help="check total-graph isomorphisms")
    p.add_argument("--family", choices=("star", "theta"))
    p.add_argument("--lengths")
    p.add_argument("--path", type=int, help="check T(P_m) against the square of P_{2m-1}")
    p.set_defaults(func=cmd_iso)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "audit" and args.family == "basic":
        try:
            args.k = int(args.k_values)
        except (TypeError, ValueError):
            parser.error("audit --family basic needs an integer --k")
    try:
        return args.func(args)
    except (EquichromeError, ValueError, KeyError, OSError) as exc:
        emit({"error": type(exc).__name__, "message": str(exc)})
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())

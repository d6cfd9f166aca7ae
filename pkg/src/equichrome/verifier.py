"""Randomized audits of the constructive solvers and exhaustive choosability checks.

All exhaustive verdicts are relative to a finite color pool; true
choosability quantifies over every list assignment, which no finite search
covers.  Verdicts say which pool they were taken over.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Any

from .coloring import ListAssignment, validate_equitable_list_coloring
from .errors import BudgetExceeded, EquichromeError, TooManyAssignments, UnsupportedInstance
from .graphs import Graph, sort_lengths
from .labels import v
from .oracle import exact_equitable_k_colorable, exact_equitable_list_coloring
from .star import solve_star_square, solve_star_total
from .steps import star_square, theta_square, total_and_map
from .theta import solve_star_square_plus_edge, solve_theta_square, solve_theta_total

FAMILIES = ("star", "star-total", "theta-square", "theta-total", "star-plus-edge")
_ALIASES = {"theta": "theta-total", "star-square": "star"}


def canonical_family(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in FAMILIES:
        raise UnsupportedInstance(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return name


def family_graph(family: str, lengths: Sequence[int], edge: tuple[int, int] | None = None) -> Graph:
    family = canonical_family(family)
    ls = tuple(sort_lengths(lengths)[0])
    if family == "star":
        return star_square(ls)
    if family == "theta-square":
        return theta_square(ls)
    if family == "star-total":
        return total_and_map("star", ls)[0]
    if family == "theta-total":
        return total_and_map("theta", ls)[0]
    if edge is None:
        raise UnsupportedInstance("star-plus-edge needs the edge path indices (a, b)")
    a, b = edge
    return star_square(ls).with_edge(v(a, ls[a - 1]), v(b, ls[b - 1]))


def solve_family(family: str, lengths: Sequence[int], k: int, L: ListAssignment, edge=None, fallback_oracle=False):
    """Dispatch to the matching solver; returns ``(coloring, trace_or_None)``."""
    family = canonical_family(family)
    if family == "star":
        return solve_star_square(lengths, k, L)
    if family == "star-total":
        return solve_star_total(lengths, k, L)
    if family == "theta-square":
        return solve_theta_square(lengths, k, L, fallback_oracle=fallback_oracle)
    if family == "theta-total":
        return solve_theta_total(lengths, k, L)
    a, b = edge
    return solve_star_square_plus_edge(lengths, a, b, L), None


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent per-trial stream derived from ``(seed, trial)``."""
    return random.Random(f"equichrome:{seed}:{trial}")


def random_assignment(
    vertices: Iterable,
    k: int,
    pool: Sequence[int],
    rng: random.Random,
    shared_bias: float = 0.0,
) -> ListAssignment:
    """Each list a uniform ``k``-subset of ``pool``.

    With ``shared_bias > 0`` each vertex instead takes one common list with
    that probability (identical lists are the hard regime).
    """
    pool = sorted(pool)
    if k > len(pool):
        raise UnsupportedInstance(f"pool of {len(pool)} colors cannot give lists of size {k}")
    shared = sorted(rng.sample(pool, k)) if shared_bias > 0 else None
    lists = {}
    for x in vertices:
        if shared is not None and rng.random() < shared_bias:
            lists[x] = shared
        else:
            lists[x] = sorted(rng.sample(pool, k))
    return ListAssignment(lists, k)


@dataclass
class AuditReport:
    family: str
    lengths: list[int]
    k: int
    pool: list[int]
    seed: int
    trials: int
    failures: list[dict[str, Any]] = field(default_factory=list)
    lemma_counts: dict[str, int] = field(default_factory=dict)
    oracle_checked: int = 0
    oracle_disagreements: int = 0
    digest: str = ""
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and not self.oracle_disagreements

    def reproduce_command(self) -> str:
        lo, hi = self.pool[0], self.pool[-1]
        return (
            f"equichrome audit --family {self.family} --lengths {','.join(map(str, self.lengths))} "
            f"--k {self.k} --pool {lo}..{hi} --seed {self.seed} --trials {self.trials}"
        )

    def to_json(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "family": self.family,
            "lengths": self.lengths,
            "k": self.k,
            "pool": self.pool,
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failures,
            "lemma_counts": dict(sorted(self.lemma_counts.items())),
            "oracle_checked": self.oracle_checked,
            "oracle_disagreements": self.oracle_disagreements,
            "digest": self.digest,
            "ok": self.ok,
            "reproduce": self.reproduce_command(),
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 4)
        return out


def _run_trial(args) -> dict[str, Any]:
    family, lengths, k, pool, seed, trial, edge, shared_bias, oracle_max = args
    G = family_graph(family, lengths, edge)
    L = random_assignment(G.vertices, k, pool, trial_rng(seed, trial), shared_bias)
    result: dict[str, Any] = {"trial": trial}
    try:
        f, trace = solve_family(family, lengths, k, L, edge)
    except EquichromeError as exc:
        result["failure"] = {"stage": "solve", "error": f"{type(exc).__name__}: {exc}", "lists": L.to_json()}
        return result
    report = validate_equitable_list_coloring(G, L, f, k)
    if not report.valid:
        result["failure"] = {"stage": "validate", "report": report.to_json(), "lists": L.to_json()}
    result["coloring"] = json.dumps({str(x): f[x] for x in G.vertices}, sort_keys=True)
    result["lemma"] = _lemma_key(trace)
    if oracle_max and len(G) <= oracle_max:
        result["oracle"] = exact_equitable_list_coloring(G, L) is not None
    return result


def _lemma_key(trace) -> str:
    if trace is None:
        return "plus-edge"
    names = [n for n in trace.nodes() if n not in ("star-total", "theta-total")]
    return names[0] if names else trace.node


def audit_constructive(
    family: str,
    lengths: Sequence[int],
    k: int,
    trials: int,
    pool: Iterable[int],
    seed: int,
    *,
    edge: tuple[int, int] | None = None,
    shared_bias: float = 0.0,
    oracle_max_vertices: int = 0,
    workers: int = 1,
) -> AuditReport:
    """Solve and validate ``trials`` seeded random ``k``-assignments.

    When ``oracle_max_vertices`` is positive, instances up to that size are
    also handed to the exact oracle, which must agree they are colorable.
    """
    family = canonical_family(family)
    ls = sort_lengths(lengths)[0]
    pool = sorted(set(pool))
    if len(pool) < k:
        raise UnsupportedInstance(f"pool {pool} smaller than k={k}")
    start = time.perf_counter()
    jobs = [(family, tuple(ls), k, tuple(pool), seed, t, edge, shared_bias, oracle_max_vertices) for t in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_trial, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [_run_trial(job) for job in jobs]
    results.sort(key=lambda r: r["trial"])

    report = AuditReport(family, ls, k, pool, seed, trials)
    digest = hashlib.sha256()
    for r in results:
        if "failure" in r:
            report.failures.append({"seed": seed, "trial": r["trial"], **r["failure"]})
        if "coloring" in r:
            digest.update(r["coloring"].encode())
            report.lemma_counts[r["lemma"]] = report.lemma_counts.get(r["lemma"], 0) + 1
        if "oracle" in r:
            report.oracle_checked += 1
            if not r["oracle"]:
                report.oracle_disagreements += 1
    report.digest = digest.hexdigest()
    report.elapsed = time.perf_counter() - start
    return report


# -- exhaustive search over list assignments --------------------------------------


@dataclass
class Verdict:
    status: str  # AllColorable | Counterexample | Colorable | NotColorable
    k: int
    pool: list[int] | None = None
    checked: int = 0
    witness: dict[str, Any] | None = None
    certificate: str = ""

    @property
    def scope(self) -> str:
        if self.pool is None:
            return f"classic equitable {self.k}-coloring"
        return f"all {self.k}-assignments over pool {{{','.join(map(str, self.pool))}}} up to color renaming"

    def to_json(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "k": self.k,
            "pool": self.pool,
            "scope": self.scope,
            "checked": self.checked,
            "witness": self.witness,
            "certificate": self.certificate,
        }


def canonical_assignments(n: int, k: int, pool: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """``k``-subsets of ``pool`` for ``n`` ordered vertices, one or more per renaming class.

    Colors not yet used by earlier vertices are interchangeable, so a new
    list only ever introduces the lowest unused colors.  Every orbit under
    color renaming is represented at least once.
    """
    pool = sorted(pool)

    def rec(i: int, named: int, acc: list[tuple[int, ...]]):
        if i == n:
            yield tuple(acc)
            return
        for j in range(min(k, named), -1, -1):
            fresh = k - j
            if named + fresh > len(pool):
                continue
            new = tuple(pool[named:named + fresh])
            for old in combinations(pool[:named], j):
                acc.append(old + new)
                yield from rec(i + 1, named + fresh, acc)
                acc.pop()

    yield from rec(0, 0, [])


def all_assignments(n: int, k: int, pool: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every ``k``-assignment over ``pool``, unreduced."""
    return product(combinations(sorted(pool), k), repeat=n)


def exhaustive_choosability_over_pool(
    G: Graph,
    k: int,
    pool: Iterable[int],
    cap_mode: str = "list",
    *,
    limit: int = 10**7,
    reduce: bool = True,
) -> Verdict:
    """Run the exact oracle on every ``k``-assignment from ``pool`` (up to renaming).

    ``cap_mode="classic"`` instead decides equitable ``k``-colorability, where
    lists play no role.
    """
    pool = sorted(set(pool))
    if cap_mode == "classic":
        return classic_equitable_facts(G, k)
    if cap_mode != "list":
        raise ValueError(f"unknown cap mode {cap_mode!r}")
    if len(pool) < k:
        raise UnsupportedInstance(f"pool {pool} smaller than k={k}")
    verts = list(G.vertices)
    if not reduce and comb(len(pool), k) ** len(verts) > limit:
        raise TooManyAssignments(f"{comb(len(pool), k)}^{len(verts)} assignments exceeds {limit}")
    source = canonical_assignments(len(verts), k, pool) if reduce else all_assignments(len(verts), k, pool)
    checked = 0
    for lists in source:
        checked += 1
        if checked > limit:
            raise TooManyAssignments(f"more than {limit} assignments after reduction")
        L = ListAssignment(dict(zip(verts, lists)), k)
        if exact_equitable_list_coloring(G, L) is None:
            return Verdict("Counterexample", k, pool, checked, {"lists": L.to_json()}, "oracle found no equitable L-coloring")
    return Verdict("AllColorable", k, pool, checked, certificate=f"oracle colored all {checked} assignments")


def find_bad_assignment(
    G: Graph,
    k: int,
    pool: Iterable[int],
    strategy: str = "random",
    *,
    trials: int = 1000,
    seed: int = 0,
    shared_bias: float = 0.0,
    budget: int = 10**6,
) -> ListAssignment | None:
    """Search for a ``k``-assignment with no equitable ``L``-coloring.

    ``strategy="exhaustive"`` raises :class:`BudgetExceeded` when the
    enumeration is cut short, so ``None`` always means "searched everything".
    """
    pool = sorted(set(pool))
    if strategy == "random":
        for t in range(trials):
            L = random_assignment(G.vertices, k, pool, trial_rng(seed, t), shared_bias)
            if exact_equitable_list_coloring(G, L) is None:
                return L
        return None
    if strategy != "exhaustive":
        raise ValueError(f"unknown strategy {strategy!r}")
    try:
        verdict = exhaustive_choosability_over_pool(G, k, pool, limit=budget)
    except TooManyAssignments as exc:
        raise BudgetExceeded(str(exc)) from exc
    if verdict.status == "Counterexample":
        return ListAssignment.from_json(verdict.witness["lists"])
    return None


def classic_equitable_facts(G: Graph, k: int) -> Verdict:
    """Decide equitable ``k``-colorability, with a coloring or a search certificate."""
    stats: dict[str, int] = {}
    f = exact_equitable_k_colorable(G, k, stats=stats)
    if f is None:
        return Verdict("NotColorable", k, certificate=f"exhaustive search, {stats['nodes']} nodes")
    witness = {"coloring": {str(x): f[x] for x in G.vertices}}
    return Verdict("Colorable", k, checked=1, witness=witness, certificate="explicit coloring")

"""Shared machinery of the constructive proofs.

* :func:`kpw_extend` extends an equitable list coloring of ``G - S`` across an
  ordered set ``S = (x_1, ..., x_t)`` with ``|N(x_i) - S| <= k - i``.
* :func:`rainbow_color` gives a vertex set pairwise distinct list colors via
  maximum bipartite matching (a system of distinct representatives).
* :class:`SolveTrace` records which lemma produced each part of a coloring.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from .coloring import Coloring, ListAssignment, cap_context, validate_equitable_list_coloring
from .errors import InternalLemmaViolation, NoColorAvailable, NoSDR, PreconditionFailed
from .graphs import Graph
from .labels import Label

TRACE_LEAVES = frozenset({"oracle", "rainbow", "hardcoded", "trivial"})


@dataclass(frozen=True)
class ReductionStep:
    """The ordered removal set ``x_1, ..., x_t``."""

    order: tuple[Label, ...]

    def __post_init__(self):
        if not self.order:
            raise ValueError("a reduction step needs at least one vertex")
        if len(set(self.order)) != len(self.order):
            raise ValueError(f"repeated vertex in reduction order {self.order}")

    @classmethod
    def of(cls, labels: Iterable[Label]) -> ReductionStep:
        return cls(tuple(labels))

    @property
    def t(self) -> int:
        return len(self.order)

    @property
    def removed(self) -> frozenset[Label]:
        return frozenset(self.order)

    def to_json(self) -> list[str]:
        return [str(x) for x in self.order]


@dataclass
class SolveTrace:
    node: str
    step: ReductionStep | None = None
    children: list[SolveTrace] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"node": self.node}
        if self.info:
            out["info"] = self.info
        if self.step is not None:
            out["step"] = self.step.to_json()
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def nodes(self) -> list[str]:
        return [t.node for t in self.walk()]


@dataclass
class CheckReport:
    ok: bool
    n: int
    k: int
    t: int
    r: int
    outside_counts: list[int]
    failed_index: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def kpw_check(G: Graph, k: int, step: ReductionStep) -> CheckReport:
    """Check ``r <= t <= k`` and ``|N_G(x_i) - S| <= k - i`` for every ``i``."""
    S = step.removed
    missing = [x for x in step.order if x not in G]
    ctx = cap_context(len(G), k)
    counts = [len(G.adj[x] - S) if x in G else -1 for x in step.order]
    report = CheckReport(True, len(G), k, step.t, ctx.r, counts)
    if missing:
        report.ok, report.reason = False, f"vertices not in graph: {missing}"
    elif not ctx.r <= step.t <= k:
        report.ok, report.reason = False, f"need r <= t <= k, got r={ctx.r}, t={step.t}, k={k}"
    else:
        for i, c in enumerate(counts, start=1):
            if c > k - i:
                report.ok = False
                report.failed_index = i
                report.reason = f"|N(x_{i}) - S| = {c} > k - i = {k - i} at {step.order[i - 1]}"
                break
    return report


def kpw_extend(G: Graph, L: ListAssignment, step: ReductionStep, f: Mapping[Label, int]) -> Coloring:
    """Color ``x_1, ..., x_t`` greedily (smallest legal color) on top of ``f``.

    ``f`` must be an equitable ``L``-coloring of ``G - S``: proper, from the
    lists, no color more than ``q`` times where ``|V(G)| = kq + r``.  The
    colors placed on ``S`` are pairwise distinct, so every class grows by at
    most one.
    """
    k = L.k
    report = kpw_check(G, k, step)
    if not report:
        raise PreconditionFailed(f"reduction condition fails: {report.reason}")
    S = step.removed
    expected = set(G.vertices) - S
    if set(f) != expected:
        extra = sorted(set(f) - expected)
        missing = sorted(expected - set(f))
        raise PreconditionFailed(f"base coloring domain mismatch (missing {missing[:5]}, extra {extra[:5]})")
    q = cap_context(len(G), k).q
    for x, c in f.items():
        if c not in L[x]:
            raise PreconditionFailed(f"base coloring puts {c} on {x}, not in its list")
        for y in G.adj[x]:
            if y in f and f[y] == c:
                raise PreconditionFailed(f"base coloring is improper at {x}-{y}")
    over = {c: n for c, n in Counter(f.values()).items() if n > q}
    if over:
        raise PreconditionFailed(f"base coloring exceeds q={q}: {over}")

    out = dict(f)
    placed: set[int] = set()
    for i, x in enumerate(step.order, start=1):
        taken = {f[y] for y in G.adj[x] if y not in S} | placed
        options = sorted(L[x] - taken)
        if not options:
            raise NoColorAvailable(i, x)
        out[x] = options[0]
        placed.add(options[0])
    check = validate_equitable_list_coloring(G, L, out, k)
    if not check.valid:
        raise InternalLemmaViolation(f"extension is not equitable: {check.violations[:3]}")
    return out


def rainbow_color(
    vertices: Sequence[Label],
    lists: Mapping[Label, Iterable[int]] | ListAssignment,
    forbidden: Iterable[int] = (),
) -> Coloring:
    """Pairwise distinct colors, one from each list (minus ``forbidden``).

    Augmenting-path matching; vertices are processed in the given order,
    free colors are taken before rerouting, and colors are tried ascending, so the result is deterministic.  Raises
    :class:`NoSDR` exactly when Hall's condition fails.
    """
    if isinstance(lists, ListAssignment):
        lists = lists.lists
    forbidden = set(forbidden)
    options = {x: sorted(set(lists[x]) - forbidden) for x in vertices}
    if len(set(vertices)) != len(vertices):
        raise ValueError("rainbow_color needs distinct vertices")
    owner: dict[int, Label] = {}

    def augment(x: Label, seen: set[int]) -> bool:
        # a free color first, so uncontested vertices keep their smallest option
        for c in options[x]:
            if c not in owner:
                owner[c] = x
                return True
        for c in options[x]:
            if c in seen:
                continue
            seen.add(c)
            if augment(owner[c], seen):
                owner[c] = x
                return True
        return False

    for x in vertices:
        if not augment(x, set()):
            raise NoSDR(f"no system of distinct representatives (stuck at {x})")
    chosen = {x: c for c, x in owner.items()}
    return {x: chosen[x] for x in vertices}

"""List assignments, colorings, and the validity predicates."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

from .errors import BadListAssignment, ColorOutOfRange, PartialColoring
from .graphs import Graph, LabelMap
from .labels import Label, parse_label

Coloring = dict[Label, int]


class ListAssignment:
    """A ``k``-assignment: every vertex gets a set of exactly ``k`` colors."""

    __slots__ = ("lists", "k")

    def __init__(self, lists: Mapping[Label, Iterable[int]], k: int | None = None):
        self.lists: dict[Label, frozenset[int]] = {x: frozenset(int(c) for c in cs) for x, cs in lists.items()}
        sizes = {len(cs) for cs in self.lists.values()}
        if k is None:
            if len(sizes) > 1:
                raise BadListAssignment(f"lists have mixed sizes {sorted(sizes)}")
            k = sizes.pop() if sizes else 0
        if sizes - {k}:
            raise BadListAssignment(f"every list must have {k} colors, found sizes {sorted(sizes)}")
        if any(c < 0 for cs in self.lists.values() for c in cs):
            raise BadListAssignment("colors must be nonnegative integers")
        self.k = k

    @classmethod
    def uniform(cls, vertices: Iterable[Label], colors: Iterable[int]) -> ListAssignment:
        colors = frozenset(colors)
        return cls({x: colors for x in vertices})

    def __getitem__(self, x: Label) -> frozenset[int]:
        return self.lists[x]

    def __contains__(self, x: object) -> bool:
        return x in self.lists

    def __len__(self) -> int:
        return len(self.lists)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ListAssignment):
            return NotImplemented
        return self.k == other.k and self.lists == other.lists

    def __repr__(self) -> str:
        return f"<ListAssignment k={self.k} on {len(self)} vertices>"

    def covers(self, G: Graph) -> bool:
        return all(x in self.lists for x in G.vertices)

    def check_covers(self, G: Graph) -> None:
        missing = [x for x in G.vertices if x not in self.lists]
        if missing:
            raise BadListAssignment(f"no list for {missing[:5]}")

    def restrict(self, vertices: Iterable[Label]) -> ListAssignment:
        return ListAssignment({x: self.lists[x] for x in vertices}, self.k)

    def push(self, lmap: LabelMap) -> ListAssignment:
        return ListAssignment(lmap.push(self.lists), self.k)

    def pull(self, lmap: LabelMap) -> ListAssignment:
        return ListAssignment(lmap.pull(self.lists), self.k)

    def colors(self) -> frozenset[int]:
        return frozenset().union(*self.lists.values())

    def to_json(self) -> dict[str, list[int]]:
        return {str(x): sorted(cs) for x, cs in sorted(self.lists.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, Iterable[int]]) -> ListAssignment:
        return cls({parse_label(s): cs for s, cs in data.items()})


@dataclass(frozen=True)
class CapContext:
    """``n = k*q + r`` with ``1 <= r <= k``; ``cap = ceil(n/k) = q + 1``."""

    n: int
    k: int
    q: int
    r: int
    cap: int


def cap_context(n: int, k: int) -> CapContext:
    if n < 1 or k < 1:
        raise ValueError("cap_context needs n, k >= 1")
    q, r = divmod(n, k)
    if r == 0:
        q, r = q - 1, k
    return CapContext(n, k, q, r, q + 1)


def equitable_cap(n: int, k: int) -> int:
    """Largest allowed color-class size, ``ceil(n/k)`` (0 for the empty graph)."""
    return -(-n // k) if n else 0


def color_usage_histogram(f: Mapping[Label, int]) -> dict[int, int]:
    return dict(sorted(Counter(f.values()).items()))


@dataclass
class ValidationReport:
    proper: bool
    respects: bool
    equitable: bool
    cap: int
    violations: list[dict[str, Any]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.proper and self.respects and self.equitable

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict[str, Any]:
        return {
            "proper": self.proper,
            "respects": self.respects,
            "equitable": self.equitable,
            "valid": self.valid,
            "cap": self.cap,
            "violations": self.violations,
        }


def _require_total(G: Graph, f: Mapping[Label, int]) -> None:
    missing = [x for x in G.vertices if x not in f]
    if missing:
        raise PartialColoring(missing)


def validate_equitable_list_coloring(G: Graph, L: ListAssignment, f: Mapping[Label, int], k: int | None = None) -> ValidationReport:
    """Check properness, list membership, and the cap ``ceil(|V(G)|/k)``.

    The cap is always computed from ``G`` itself, so validating on a subgraph
    uses the subgraph's (possibly tighter) cap.
    """
    _require_total(G, f)
    k = L.k if k is None else k
    cap = equitable_cap(len(G), k)
    violations: list[dict[str, Any]] = []
    for a, b in G.edges():
        if f[a] == f[b]:
            violations.append({"kind": "edge", "edge": [str(a), str(b)], "color": f[a]})
    proper = not violations
    n_before = len(violations)
    for x in G.vertices:
        if x not in L or f[x] not in L[x]:
            violations.append({"kind": "list", "vertex": str(x), "color": f[x]})
    respects = len(violations) == n_before
    n_before = len(violations)
    for c, count in Counter(f[x] for x in G.vertices).items():
        if count > cap:
            violations.append({"kind": "cap", "color": c, "count": count, "cap": cap})
    equitable = len(violations) == n_before
    return ValidationReport(proper, respects, equitable, cap, violations)


def is_proper(G: Graph, f: Mapping[Label, int]) -> bool:
    return all(f[a] != f[b] for a, b in G.edges() if a in f and b in f)


def is_equitable_k_coloring(G: Graph, f: Mapping[Label, int], k: int) -> bool:
    """Classic equitable ``k``-coloring with color set ``{1..k}``.

    All ``k`` classes count, so a class may only be empty when ``n < k``.
    """
    _require_total(G, f)
    bad = sorted({c for c in f.values() if not 1 <= c <= k})
    if bad:
        raise ColorOutOfRange(f"colors {bad} outside 1..{k}")
    if not is_proper(G, f):
        return False
    n = len(G)
    lo, hi = n // k, -(-n // k)
    counts = Counter(f[x] for x in G.vertices)
    return all(lo <= counts.get(c, 0) <= hi for c in range(1, k + 1))

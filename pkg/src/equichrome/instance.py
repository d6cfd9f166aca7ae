"""JSON problem instances: a graph spec, ``k``, and a list assignment.

A graph spec names a family (``star``, ``theta``, ``basic`` or
``explicit``).  Families ``star`` and ``theta`` take ``lengths`` and a
``form`` of ``plain``, ``square`` or ``total``; a squared star may carry an
``extra_edge`` ``[a, b]`` joining the ends of paths ``a`` and ``b``.
``basic`` takes ``kind`` and ``params`` (see :func:`build_basic`), and
``explicit`` carries ``vertices`` and ``edges``.
"""

from __future__ import annotations

import json
import random
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .coloring import ListAssignment
from .errors import BadParameter
from .graphs import Graph, build_basic, build_star_subdivision, build_theta, sort_lengths
from .steps import star_square
from .verifier import family_graph, random_assignment

FORMS = ("plain", "square", "total")

_BASIC_SHORTHAND = [
    (re.compile(r"k(\d+)_(\d+)"), "complete_bipartite"),
    (re.compile(r"k(\d+)"), "complete"),
    (re.compile(r"p(\d+)"), "path"),
    (re.compile(r"c(\d+)"), "cycle"),
]


def parse_basic_kind(kind: str, params: Sequence[int] = ()) -> tuple[str, list[int]]:
    """Expand shorthands such as ``k1_9``, ``k4``, ``p5`` and ``c6``."""
    kind = kind.lower()
    for pattern, name in _BASIC_SHORTHAND:
        match = pattern.fullmatch(kind)
        if match:
            return name, [int(g) for g in match.groups()]
    return kind, list(params)


@dataclass
class GraphSpec:
    family: str
    lengths: list[int] = field(default_factory=list)
    form: str = "square"
    extra_edge: tuple[int, int] | None = None
    kind: str = ""
    params: list[int] = field(default_factory=list)
    explicit: Graph | None = None

    def __post_init__(self):
        if self.family not in ("star", "theta", "basic", "explicit"):
            raise BadParameter(f"unknown graph family {self.family!r}")
        if self.family in ("star", "theta"):
            if self.form not in FORMS:
                raise BadParameter(f"form must be one of {FORMS}, got {self.form!r}")
            self.lengths = sort_lengths(self.lengths)[0]
        if self.extra_edge is not None and (self.family, self.form) != ("star", "square"):
            raise BadParameter("extra_edge is only defined for squared stars")
        if self.family == "basic":
            self.kind, self.params = parse_basic_kind(self.kind, self.params)
        if self.family == "explicit" and self.explicit is None:
            raise BadParameter("explicit graph spec needs vertices and edges")

    def build(self) -> Graph:
        if self.family == "basic":
            return build_basic(self.kind, *self.params)
        if self.family == "explicit":
            return self.explicit
        ls = tuple(self.lengths)
        if self.form == "plain":
            return build_star_subdivision(ls) if self.family == "star" else build_theta(ls)
        if self.family == "star" and self.extra_edge is not None:
            return family_graph("star-plus-edge", ls, self.extra_edge)
        if self.family == "star":
            return star_square(ls) if self.form == "square" else family_graph("star-total", ls)
        return family_graph(f"theta-{self.form}", ls)

    def describe(self) -> str:
        if self.family == "basic":
            return f"{self.kind}{tuple(self.params)}"
        if self.family == "explicit":
            return f"explicit graph on {len(self.explicit)} vertices"
        name = ("B" if self.family == "star" else "Theta") + "(" + ",".join(map(str, self.lengths)) + ")"
        if self.form == "square":
            name = f"[{name}]^2"
        elif self.form == "total":
            name = f"T({name})"
        if self.extra_edge:
            name += f" + edge{tuple(self.extra_edge)}"
        return name

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family}
        if self.family in ("star", "theta"):
            out.update(lengths=self.lengths, form=self.form)
            if self.extra_edge is not None:
                out["extra_edge"] = list(self.extra_edge)
        elif self.family == "basic":
            out.update(kind=self.kind, params=self.params)
        else:
            out.update(self.explicit.to_json())
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> GraphSpec:
        family = data.get("family")
        if family == "explicit":
            return cls("explicit", explicit=Graph.from_json(data))
        if family == "basic":
            return cls("basic", kind=str(data["kind"]), params=[int(p) for p in data.get("params", [])])
        edge = data.get("extra_edge")
        return cls(
            str(family),
            lengths=[int(x) for x in data["lengths"]],
            form=str(data.get("form", "square")),
            extra_edge=tuple(edge) if edge is not None else None,
        )


@dataclass
class Instance:
    graph: GraphSpec
    k: int
    lists: ListAssignment
    pool: list[int] | None = None
    seed: int | None = None
    expected: str | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"graph": self.graph.to_json(), "k": self.k, "lists": self.lists.to_json()}
        if self.pool is not None or self.seed is not None:
            out["generator"] = {"pool": self.pool, "seed": self.seed}
        if self.expected is not None:
            out["expected"] = self.expected
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Instance:
        """Parse an instance; lists may be explicit or regenerated from ``generator``."""
        try:
            spec = GraphSpec.from_json(data["graph"])
            k = int(data["k"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParameter(f"malformed instance: {exc}") from exc
        gen = data.get("generator") or {}
        pool, seed = gen.get("pool"), gen.get("seed")
        if data.get("lists") is not None:
            L = ListAssignment.from_json(data["lists"])
            if L.k != k:
                raise BadParameter(f"lists have {L.k} colors but k={k}")
        elif pool is not None:
            L = random_assignment(spec.build().vertices, k, pool, random.Random(seed))
        else:
            raise BadParameter("instance needs explicit lists or a generator pool")
        L.check_covers(spec.build())
        return cls(spec, k, L, pool, seed, data.get("expected"))

    @classmethod
    def load(cls, path: str | Path) -> Instance:
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise BadParameter(f"{path}: not valid JSON ({exc})") from exc
        return cls.from_json(data)


def generate(spec: GraphSpec, k: int, pool: Sequence[int], seed: int) -> Instance:
    """Instance with a concrete random ``k``-assignment drawn from ``pool``."""
    G = spec.build()
    L = random_assignment(G.vertices, k, sorted(pool), random.Random(seed))
    return Instance(spec, k, L, sorted(pool), seed)

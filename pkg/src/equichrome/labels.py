"""Vertex labels.

A label is a small tagged tuple.  Tuple ordering is the canonical vertex
order used throughout the package: hub, internal vertices by ``(i, j)``,
co-hub, plain vertices, then total-graph vertex and edge elements.
"""

from __future__ import annotations

import re
from typing import NamedTuple, Union

HUB_KIND = 0
INTERNAL_KIND = 1
COHUB_KIND = 2
PLAIN_KIND = 3
TOTAL_VERT_KIND = 4
TOTAL_EDGE_KIND = 5


class Label(NamedTuple):
    kind: int
    a: Union[int, "Label"] = 0
    b: Union[int, "Label"] = 0

    def __str__(self) -> str:
        if self.kind == HUB_KIND:
            return "u"
        if self.kind == COHUB_KIND:
            return "w"
        if self.kind == INTERNAL_KIND:
            return f"v_{self.a}_{self.b}"
        if self.kind == PLAIN_KIND:
            return f"p_{self.a}"
        if self.kind == TOTAL_VERT_KIND:
            return f"tv({self.a})"
        return f"te({self.a},{self.b})"

    def __repr__(self) -> str:
        return str(self)

    @property
    def is_internal(self) -> bool:
        return self.kind == INTERNAL_KIND


U = Label(HUB_KIND)
W = Label(COHUB_KIND)


def v(i: int, j: int) -> Label:
    """Internal vertex ``v_{i,j}``: position ``j`` on path ``i``."""
    return Label(INTERNAL_KIND, i, j)


def plain(n: int) -> Label:
    return Label(PLAIN_KIND, n)


def total_vert(inner: Label) -> Label:
    return Label(TOTAL_VERT_KIND, inner)


def total_edge(x: Label, y: Label) -> Label:
    if x == y:
        raise ValueError(f"total-graph edge needs distinct endpoints, got {x}")
    a, b = (x, y) if x < y else (y, x)
    return Label(TOTAL_EDGE_KIND, a, b)


_INTERNAL_RE = re.compile(r"v_(\d+)_(\d+)")
_PLAIN_RE = re.compile(r"p_(\d+)")


def _split_pair(body: str) -> tuple[str, str]:
    depth = 0
    for pos, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:pos], body[pos + 1:]
    raise ValueError(f"malformed edge label body {body!r}")


def parse_label(text: str) -> Label:
    """Inverse of ``str(label)``."""
    text = text.strip()
    if text == "u":
        return U
    if text == "w":
        return W
    m = _INTERNAL_RE.fullmatch(text)
    if m:
        return v(int(m.group(1)), int(m.group(2)))
    m = _PLAIN_RE.fullmatch(text)
    if m:
        return plain(int(m.group(1)))
    if text.startswith("tv(") and text.endswith(")"):
        return total_vert(parse_label(text[3:-1]))
    if text.startswith("te(") and text.endswith(")"):
        left, right = _split_pair(text[3:-1])
        return total_edge(parse_label(left), parse_label(right))
    raise ValueError(f"unrecognised vertex label {text!r}")


def rekey_paths(label: Label, path_map: dict[int, int]) -> Label:
    """Rename path indices inside ``label`` (recursing into total-graph labels)."""
    if label.kind == INTERNAL_KIND:
        return v(path_map[label.a], label.b)
    if label.kind == TOTAL_VERT_KIND:
        return total_vert(rekey_paths(label.a, path_map))
    if label.kind == TOTAL_EDGE_KIND:
        return total_edge(rekey_paths(label.a, path_map), rekey_paths(label.b, path_map))
    return label

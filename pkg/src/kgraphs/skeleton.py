"""The k-coloured 1-skeleton of a k-graph: vertices, coloured edges, degrees."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .errors import BadColor, DanglingEndpoint, DuplicateId, UnknownVertex

RANGE = "range"
SOURCE = "source"

Degree = tuple  # tuple[int, ...] of length k

_chunk = re.compile(r"(\d+)")


def natural_key(token: str):
    """Sort key that orders embedded integers numerically ("v2" < "v10")."""
    return tuple((0, int(c), "") if c.isdigit() else (1, 0, c) for c in _chunk.split(token) if c)


def sort_ids(ids: Iterable[str]) -> list:
    return sorted(ids, key=natural_key)


# degree arithmetic on N^k, represented as plain tuples

def zero(k: int) -> Degree:
    return (0,) * k


def unit(k: int, i: int) -> Degree:
    """The generator e_i (colours are 1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(k))


def deg_le(m: Degree, n: Degree) -> bool:
    return all(a <= b for a, b in zip(m, n))


def deg_join(m: Degree, n: Degree) -> Degree:
    return tuple(max(a, b) for a, b in zip(m, n))


def deg_meet(m: Degree, n: Degree) -> Degree:
    return tuple(min(a, b) for a, b in zip(m, n))


def deg_add(m: Degree, n: Degree) -> Degree:
    return tuple(a + b for a, b in zip(m, n))


def deg_sub(m: Degree, n: Degree) -> Degree:
    out = tuple(a - b for a, b in zip(m, n))
    if any(c < 0 for c in out):
        raise ValueError(f"{n} is not below {m}")
    return out


def degrees_below(d: Degree):
    """All n with 0 <= n <= d, in lexicographic order."""
    if not d:
        yield ()
        return
    for head in range(d[0] + 1):
        for tail in degrees_below(d[1:]):
            yield (head,) + tail


@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    range: str
    source: str


@dataclass
class Problem:
    """One finding of a validation pass; ``kind`` names the failure."""

    kind: str
    detail: tuple

    def __str__(self):
        return f"{self.kind}{self.detail}"


@dataclass
class ValidationReport:
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, kind: str, *detail):
        self.problems.append(Problem(kind, tuple(detail)))

    def extend(self, other: "ValidationReport"):
        self.problems.extend(other.problems)

    def kinds(self) -> set:
        return {p.kind for p in self.problems}


class Skeleton:
    """A finite k-coloured directed multigraph.

    Edge identity is nominal, so parallel edges are allowed. Vertices and
    edges keep insertion order; every listing method sorts by id.
    """

    def __init__(self, k: int, vertices: Iterable[str], edges: Iterable[Edge]):
        if k < 1:
            raise ValueError("rank k must be at least 1")
        self.k = k
        self.vertices: tuple = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise DuplicateId("duplicate vertex id")
        self._vertex_set = frozenset(self.vertices)
        self.edges: dict = {}
        for e in edges:
            if e.id in self.edges:
                raise DuplicateId(e.id)
            self.edges[e.id] = e
        self._in = {}
        self._out = {}
        for e in self.edges.values():
            self._in.setdefault((e.range, e.color), []).append(e)
            self._out.setdefault((e.source, e.color), []).append(e)
        for bucket in (self._in, self._out):
            for lst in bucket.values():
                lst.sort(key=lambda e: natural_key(e.id))

    def __repr__(self):
        return f"Skeleton(k={self.k}, |V|={len(self.vertices)}, |E|={len(self.edges)})"

    def has_vertex(self, v) -> bool:
        return v in self._vertex_set

    def edge(self, eid: str) -> Edge:
        return self.edges[eid]

    def color(self, eid: str) -> int:
        return self.edges[eid].color

    def sorted_vertices(self) -> list:
        return sort_ids(self.vertices)

    def edges_of_color(self, i: int) -> list:
        return sorted((e for e in self.edges.values() if e.color == i), key=lambda e: natural_key(e.id))

    def in_edges(self, v, i) -> list:
        """vΛ^{e_i}: colour-i edges whose range is v."""
        return self._in.get((v, i), [])

    def out_edges(self, v, i) -> list:
        """Λ^{e_i}v: colour-i edges whose source is v."""
        return self._out.get((v, i), [])

    def in_degree(self, v, i) -> int:
        return len(self._in.get((v, i), ()))


def edges_at(sk: Skeleton, v, color: int, end: str = RANGE) -> list:
    if not sk.has_vertex(v):
        raise UnknownVertex(v)
    if end == RANGE:
        return list(sk.in_edges(v, color))
    if end == SOURCE:
        return list(sk.out_edges(v, color))
    raise ValueError(f"end must be {RANGE!r} or {SOURCE!r}")


def validate_skeleton(sk: Skeleton) -> ValidationReport:
    """Check endpoints and colours, and report every (vertex, colour) source.

    Raises DanglingEndpoint / BadColor for structurally broken edges; an
    empty report means the skeleton has no sources.
    """
    for e in sk.edges.values():
        if not (isinstance(e.color, int) and 1 <= e.color <= sk.k):
            raise BadColor(e.id, e.color)
        for end in (e.range, e.source):
            if not sk.has_vertex(end):
                raise DanglingEndpoint(e.id, end)
    report = ValidationReport()
    for v in sk.sorted_vertices():
        for i in range(1, sk.k + 1):
            if not sk.in_edges(v, i):
                report.add("NoSourceAt", v, i)
    return report

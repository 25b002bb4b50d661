"""Cartesian products and skew products by finite abelian groups."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .errors import DuplicateId, InconsistentSquare, KGraphError
from .factorization import KGraph
from .ideals import sat_her_lattice, set_key
from .skeleton import Edge, Skeleton, ValidationReport


def pair_id(x, y) -> str:
    return f"({x},{y})"


@dataclass(frozen=True)
class GroupSpec:
    """Z_{n_1} × ... × Z_{n_r}; elements are r-tuples added componentwise."""

    moduli: tuple

    def __post_init__(self):
        if any(n < 1 for n in self.moduli):
            raise ValueError("every modulus must be at least 1")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        text = text.strip()
        if text in ("", "1", "trivial"):
            return cls(())
        parts = text.split("x")
        if not all(re.fullmatch(r"Z\d+", p) for p in parts):
            raise ValueError(f"bad group {text!r}; expected e.g. Z3xZ3")
        return cls(tuple(int(p[1:]) for p in parts))

    def __str__(self):
        return "x".join(f"Z{n}" for n in self.moduli) or "trivial"

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.moduli)

    def elements(self) -> list:
        return list(product(*(range(n) for n in self.moduli)))

    def add(self, g, h) -> tuple:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.moduli))

    def element(self, g) -> tuple:
        g = tuple(int(x) for x in g)
        if len(g) != len(self.moduli):
            raise ValueError(f"{g} has the wrong length for {self}")
        return tuple(x % n for x, n in zip(g, self.moduli))

    def format(self, g) -> str:
        return "(" + ",".join(str(x) for x in g) + ")"


def _label(c: dict, group: GroupSpec, eid):
    return group.element(c.get(eid, group.zero))


def cartesian_product(kg1: KGraph, kg2: KGraph) -> KGraph:
    """The (k1+k2)-graph on V1 × V2; colours 1..k1 come from the first factor.

    Mixed squares: (e, r(f))·(s(e), f) = (r(e), f)·(e, s(f)).
    """
    k1, k2 = kg1.k, kg2.k
    sk1, sk2 = kg1.skeleton, kg2.skeleton
    vertices = [pair_id(v, w) for v in sk1.vertices for w in sk2.vertices]
    edges = []
    for e in sk1.edges.values():
        for w in sk2.vertices:
            edges.append(Edge(pair_id(e.id, w), e.color, pair_id(e.range, w), pair_id(e.source, w)))
    for v in sk1.vertices:
        for f in sk2.edges.values():
            edges.append(Edge(pair_id(v, f.id), k1 + f.color, pair_id(v, f.range), pair_id(v, f.source)))
    if len({e.id for e in edges}) != len(edges):
        raise DuplicateId("edge ids of the factors collide in the product")
    squares = []
    for sq in kg1.rules:
        for w in sk2.vertices:
            squares.append((tuple(pair_id(x, w) for x in sq.lhs), tuple(pair_id(x, w) for x in sq.rhs)))
    for sq in kg2.rules:
        for v in sk1.vertices:
            squares.append((tuple(pair_id(v, x) for x in sq.lhs), tuple(pair_id(v, x) for x in sq.rhs)))
    for e in sk1.edges.values():
        for f in sk2.edges.values():
            squares.append(((pair_id(e.id, f.range), pair_id(e.source, f.id)),
                            (pair_id(e.range, f.id), pair_id(e.id, f.source))))
    return KGraph(Skeleton(k1 + k2, vertices, edges), squares, validate=True)


def validate_functor(kg: KGraph, c: dict, group: GroupSpec) -> ValidationReport:
    """c extends to a functor iff c(a)+c(b) = c(b')+c(a') on every square."""
    report = ValidationReport()
    for eid in c:
        if eid not in kg.skeleton.edges:
            report.add("UnknownEdge", eid)
    for sq in kg.rules:
        a, b = sq.lhs
        b2, a2 = sq.rhs
        left = group.add(_label(c, group, a), _label(c, group, b))
        right = group.add(_label(c, group, b2), _label(c, group, a2))
        if left != right:
            report.add("InconsistentSquare", str(sq))
    return report


def skew_product(kg: KGraph, c: dict, group: GroupSpec) -> KGraph:
    """Λ ×_c G: vertices (v, g); edge (e, g) runs from (s(e), g + c(e)) to (r(e), g)."""
    report = validate_functor(kg, c, group)
    if not report.ok:
        raise InconsistentSquare("; ".join(str(p) for p in report.problems))
    sk = kg.skeleton
    fmt = group.format
    elements = group.elements()
    vertices = [pair_id(v, fmt(g)) for v in sk.vertices for g in elements]
    edges = []
    for e in sk.edges.values():
        ce = _label(c, group, e.id)
        for g in elements:
            edges.append(Edge(pair_id(e.id, fmt(g)), e.color, pair_id(e.range, fmt(g)),
                              pair_id(e.source, fmt(group.add(g, ce)))))
    squares = []
    for sq in kg.rules:
        a, b = sq.lhs
        b2, a2 = sq.rhs
        for g in elements:
            ga = group.add(g, _label(c, group, a))
            gb2 = group.add(g, _label(c, group, b2))
            squares.append(((pair_id(a, fmt(g)), pair_id(b, fmt(ga))),
                            (pair_id(b2, fmt(g)), pair_id(a2, fmt(gb2)))))
    return KGraph(Skeleton(kg.k, vertices, edges), squares, validate=True)


def skew_labels(kg: KGraph, c: dict, group: GroupSpec) -> dict:
    """Push the grading forward to the skew product: (e, g) ↦ c(e)."""
    fmt = group.format
    return {pair_id(eid, fmt(g)): _label(c, group, eid)
            for eid in kg.skeleton.edges for g in group.elements()}


@dataclass
class ProductFormReport:
    """Which saturated hereditary sets of a product are rectangles H1 × H2."""

    total: int
    product_form: int
    counterexamples: list

    @property
    def all_product_form(self) -> bool:
        return not self.counterexamples


def product_form_probe(kg1: KGraph, kg2: KGraph, prod: KGraph | None = None) -> ProductFormReport:
    """Enumerate the product's lattice by brute force and test each member for
    the form H1 × H2 with H_i saturated hereditary in the factors."""
    prod = prod or cartesian_product(kg1, kg2)
    rectangles = set()
    for h1 in sat_her_lattice(kg1):
        for h2 in sat_her_lattice(kg2):
            rectangles.add(frozenset(pair_id(v, w) for v in h1 for w in h2))
    lattice = sat_her_lattice(prod, method="both")
    bad = [h for h in lattice if h not in rectangles]
    return ProductFormReport(len(lattice), len(lattice) - len(bad), sorted(bad, key=set_key))


def check_group_labels(c: dict, group: GroupSpec) -> dict:
    try:
        return {e: group.element(g) for e, g in c.items()}
    except ValueError as exc:
        raise KGraphError(str(exc)) from None

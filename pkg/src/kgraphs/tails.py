"""Maximal tails and the topology on the set of maximal tails.

Finite topological spaces are handled through their specialization preorder
(x ⊑ y iff x lies in the closure of y); for finite spaces this determines the
topology, so homeomorphism reduces to order isomorphism.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import networkx as nx

from .errors import NoWitness, TooLarge, UnknownVertex
from .factorization import KGraph, Morphism, iter_morphisms
from .ideals import index, sat_her_lattice, set_key

DIRECT_CAP = 12
EXHAUSTIVE_POINTS = 16


@dataclass
class TailDiagnostics:
    """Outcome of the three maximal-tail conditions with failing witnesses."""

    nonempty: bool
    directed: bool
    extendable: bool
    ancestor_closed: bool
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.nonempty and self.directed and self.extendable and self.ancestor_closed

    def __bool__(self):
        return self.ok


def _diagnose(idx, kg: KGraph, g: int) -> TailDiagnostics:
    failures = {}
    members = [t for t in range(idx.n) if g >> t & 1]
    directed = True
    for x, t in enumerate(members):
        for u in members[x + 1:]:
            if not (idx.reach[t] & idx.reach[u] & g):
                directed = False
                failures.setdefault("a", (idx.order[t], idx.order[u]))
                break
        if not directed:
            break
    extendable = True
    for t in members:
        for i, src in enumerate(idx.sources[t], start=1):
            if not src & g:
                extendable = False
                failures.setdefault("b", (idx.order[t], i))
                break
        if not extendable:
            break
    # (c): w in γ and v <= w force v in γ
    ancestor_closed = True
    for t in range(idx.n):
        if not g >> t & 1 and idx.reach[t] & g:
            ancestor_closed = False
            w = idx.reach[t] & g
            failures.setdefault("c", (idx.order[t], idx.order[(w & -w).bit_length() - 1]))
            break
    return TailDiagnostics(bool(members), directed, extendable, ancestor_closed, failures)


def is_maximal_tail(kg: KGraph, gamma: Iterable) -> TailDiagnostics:
    idx = index(kg)
    return _diagnose(idx, kg, idx.mask(gamma))


def _directed(idx, g: int) -> bool:
    members = [t for t in range(idx.n) if g >> t & 1]
    return all(idx.reach[t] & idx.reach[u] & g for x, t in enumerate(members) for u in members[x + 1:])


def maximal_tails(kg: KGraph, method: str = "mt", cap: int = DIRECT_CAP) -> list:
    """All maximal tails, sorted by (size, members).

    ``"direct"`` filters every nonempty subset (|Λ^0| <= cap); ``"mt"`` takes
    complements of proper saturated hereditary sets and keeps the directed
    ones, since the other two conditions hold for such complements;
    ``"both"`` runs the two and raises AssertionError on disagreement.
    """
    idx = index(kg)
    if method not in ("direct", "mt", "both"):
        raise ValueError(f"unknown method {method!r}")
    result = None
    if method in ("direct", "both"):
        if idx.n > cap:
            raise TooLarge(cap)
        result = [idx.members(g) for g in range(1, 1 << idx.n) if _diagnose(idx, kg, g).ok]
    if method in ("mt", "both"):
        other = []
        for h in sat_her_lattice(kg):
            g = idx.full & ~idx.mask(h)
            if g and _directed(idx, g):
                other.append(idx.members(g))
        if result is not None and set(result) != set(other):
            raise AssertionError("direct and MT-route tail enumeration disagree")
        result = other
    return sorted(result, key=set_key)


class FiniteSpace:
    """A finite topological space given by its closure of single points.

    ``below[y]`` is the set of point indices in the closure of point y.
    Subclasses may override :meth:`closure_mask`; the default is the
    Alexandrov closure (union of point closures).
    """

    def __init__(self, points: Sequence, below: Sequence[int]):
        self.points = list(points)
        self.below = list(below)

    def __len__(self):
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def closure_mask(self, s: int) -> int:
        out = 0
        for t in range(len(self.points)):
            if s >> t & 1:
                out |= self.below[t]
        return out

    def closure(self, subset: Iterable) -> list:
        pos = {p: t for t, p in enumerate(self.points)}
        m = 0
        for p in subset:
            m |= 1 << pos[p]
        c = self.closure_mask(m)
        return [p for t, p in enumerate(self.points) if c >> t & 1]

    def specialization(self) -> set:
        """Pairs (x, y) of indices, x ≠ y, with x in the closure of {y}."""
        pairs = set()
        for y in range(len(self.points)):
            c = self.closure_mask(1 << y)
            for x in range(len(self.points)):
                if x != y and c >> x & 1:
                    pairs.add((x, y))
        return pairs

    def hasse(self) -> list:
        rel = self.specialization()
        return sorted((x, y) for x, y in rel
                      if not any((x, z) in rel and (z, y) in rel for z in range(len(self.points))))

    def order_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.points)))
        g.add_edges_from(self.specialization())
        return g


def chain_space(n: int) -> FiniteSpace:
    """{0 < 1 < ... < n-1} with the right-order topology (opens are up-sets)."""
    return FiniteSpace(list(range(n)), [(1 << (i + 1)) - 1 for i in range(n)])


def product_space(x: FiniteSpace, y: FiniteSpace) -> FiniteSpace:
    """Product topology; the closure of a point is the product of closures."""
    points = list(product(x.points, y.points))
    ny = len(y.points)
    below = []
    for i in range(len(x.points)):
        for j in range(ny):
            m = 0
            for a in range(len(x.points)):
                if x.below[i] >> a & 1:
                    for b in range(ny):
                        if y.below[j] >> b & 1:
                            m |= 1 << (a * ny + b)
            below.append(m)
    return FiniteSpace(points, below)


class TailSpace(FiniteSpace):
    """The maximal tails of a k-graph with closure cl(S) = {δ : δ ⊆ ∪S}."""

    def __init__(self, kg: KGraph, tails: list | None = None, method: str = "mt"):
        self.kg = kg
        self._idx = index(kg)
        tails = maximal_tails(kg, method) if tails is None else sorted(tails, key=set_key)
        self.tail_masks = [self._idx.mask(t) for t in tails]
        super().__init__(tails, [self._closure_of_union(m) for m in self.tail_masks])

    def _closure_of_union(self, union: int) -> int:
        out = 0
        for t, tm in enumerate(self.tail_masks):
            if not tm & ~union:
                out |= 1 << t
        return out

    def closure_mask(self, s: int) -> int:
        union = 0
        for t, tm in enumerate(self.tail_masks):
            if s >> t & 1:
                union |= tm
        return self._closure_of_union(union)

    def basis_mask(self, v) -> int:
        if v not in self._idx.pos:
            raise UnknownVertex(v)
        bit = 1 << self._idx.pos[v]
        return sum(1 << t for t, tm in enumerate(self.tail_masks) if tm & bit)

    def basis_open(self, v) -> list:
        m = self.basis_mask(v)
        return [p for t, p in enumerate(self.points) if m >> t & 1]


def tail_closure(kg: KGraph, s: Iterable) -> list:
    """{δ maximal tail : δ ⊆ ∪_{γ∈S} γ}."""
    space = TailSpace(kg)
    return space.closure([frozenset(g) for g in s])


def basis_open(kg: KGraph, v) -> list:
    """S(v): the maximal tails containing v."""
    return TailSpace(kg).basis_open(v)


@dataclass
class SpectralReport:
    points: int
    t0: bool
    kuratowski: dict
    sober: bool
    basis_generates: bool
    compact_open_base: bool
    exhaustive: bool
    specialization: list

    @property
    def ok(self) -> bool:
        return (self.t0 and all(self.kuratowski.values()) and self.sober
                and self.basis_generates and self.compact_open_base)


def _subsets(space: FiniteSpace, rng: random.Random):
    n = len(space.points)
    if n <= EXHAUSTIVE_POINTS:
        return range(1 << n), True
    return [rng.getrandbits(n) for _ in range(4096)] + [0, space.full], False


def topology_report(space: FiniteSpace | KGraph, seed: int = 0) -> SpectralReport:
    """Check T0, the Kuratowski axioms, sobriety and the S(v) base.

    Every subset is examined for spaces of at most 16 points; larger spaces
    are checked on a seeded random sample of subsets.
    """
    if isinstance(space, KGraph):
        space = TailSpace(space)
    n = len(space.points)
    full = space.full
    cl = space.closure_mask
    point_cl = [cl(1 << t) for t in range(n)]
    t0 = len(set(point_cl)) == n

    subsets, exhaustive = _subsets(space, random.Random(seed))
    table = [cl(s) for s in range(1 << n)] if exhaustive else None
    lookup = table.__getitem__ if table else cl
    ax = {"empty": cl(0) == 0, "extensive": True, "idempotent": True,
          "monotone": True, "additive": True}
    closed = set()
    for s in subsets:
        c = lookup(s)
        closed.add(c)
        if s & ~c:
            ax["extensive"] = False
        if lookup(c) != c:
            ax["idempotent"] = False
        # finite additivity is equivalent to cl(S) = union of cl{x}, x in S
        u = 0
        for t in range(n):
            if s >> t & 1:
                u |= point_cl[t]
                if lookup(s & ~(1 << t)) & ~c:
                    ax["monotone"] = False
        if u != c:
            ax["additive"] = False
    if not exhaustive:
        closed |= set(point_cl)

    sober = True
    closed_list = sorted(closed)
    for c in closed_list:
        if not c:
            continue
        if exhaustive:
            proper = [d for d in closed_list if d != c and not d & ~c]
            reducible = any(a | b == c for a in proper for b in proper)
        else:
            # a closed set covered by smaller point closures is a finite union
            # of proper closed subsets
            cover = 0
            for pc in point_cl:
                if pc != c and not pc & ~c:
                    cover |= pc
            reducible = cover == c
        generic = [t for t in range(n) if point_cl[t] == c]
        if reducible == bool(generic) or len(generic) > 1:
            sober = False

    basis_generates = True
    if isinstance(space, TailSpace):
        base = {space.basis_mask(v) for v in space.kg.sorted_vertices}
        opens = {full & ~c for c in closed}
        covers = 0
        for b in base:
            covers |= b
        if exhaustive:
            intersections_ok = all(
                (a & b) == _union_of_members(base, a & b) for a in base for b in base)
            basis_generates = covers == full and intersections_ok and _union_closure(base) == opens
        else:
            base_open = all(lookup(full & ~b) == full & ~b for b in base)
            opens_covered = all(_union_of_members(base, o) == o for o in opens)
            basis_generates = covers == full and base_open and opens_covered
    # every subset of a finite space is compact, so the open base consists of
    # compact open sets
    compact_open_base = True
    spec = [(space.points[x], space.points[y]) for x, y in space.hasse()]
    return SpectralReport(n, t0, ax, sober, basis_generates, compact_open_base, exhaustive, spec)


def _union_of_members(base: set, target: int) -> int:
    out = 0
    for b in base:
        if not b & ~target:
            out |= b
    return out


def _union_closure(base: set) -> set:
    opens = {0} | set(base)
    frontier = set(opens)
    while frontier:
        new = set()
        for a in frontier:
            for b in base:
                c = a | b
                if c not in opens:
                    new.add(c)
        opens |= new
        frontier = new
    return opens


def homeomorphic(x: FiniteSpace, y: FiniteSpace) -> bool:
    """Finite spaces are homeomorphic iff their specialization preorders are
    isomorphic."""
    if len(x.points) != len(y.points):
        return False
    return nx.is_isomorphic(x.order_graph(), y.order_graph())


def positive_degree_step(kg: KGraph, chi: Iterable, v) -> Morphism:
    """A path μ ∈ vΛ^{(1,...,1)} with s(μ) ∈ χ."""
    chi = frozenset(chi)
    if v not in chi:
        raise ValueError(f"{v} is not in the tail")
    ones = (1,) * kg.k
    for mu in iter_morphisms(kg, v, ones):
        if kg.source(mu) in chi:
            return mu
    raise NoWitness(f"no positive-degree path from {v} back into the tail")

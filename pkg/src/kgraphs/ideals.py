"""Hereditary and saturated vertex sets, their lattice, and quotient graphs.

Vertex sets are plain frozensets of vertex ids. Internally the vertices of a
graph are indexed in sorted order and sets are handled as integer bitmasks.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable

from .errors import NoWitness, NotSaturatedHereditary, QuotientEmpty, TooLarge, UnknownVertex
from .factorization import KGraph
from .skeleton import Skeleton, natural_key

BRUTE_FORCE_CAP = 16

_index_cache: "weakref.WeakKeyDictionary[KGraph, _Index]" = weakref.WeakKeyDictionary()


class _Index:
    """Bitmask view of Λ^0: reachability and per-colour source sets."""

    def __init__(self, kg: KGraph):
        sk = kg.skeleton
        self.order = kg.sorted_vertices
        self.pos = {v: t for t, v in enumerate(self.order)}
        self.n = len(self.order)
        self.full = (1 << self.n) - 1
        # sources[t][i]: bitmask of {s(e) : e in v_t Λ^{e_i}}
        self.sources = []
        parents = []
        for v in self.order:
            per_color = []
            mask_all = 0
            for i in range(1, kg.k + 1):
                m = 0
                for e in sk.in_edges(v, i):
                    m |= 1 << self.pos[e.source]
                per_color.append(m)
                mask_all |= m
            self.sources.append(per_color)
            parents.append(mask_all)
        # reach[t]: {w : v_t <= w}, i.e. everything with a path into v_t
        self.reach = []
        for t in range(self.n):
            seen = 1 << t
            frontier = seen
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= parents[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & ~seen
                seen |= nxt
            self.reach.append(seen)

    def mask(self, vertices: Iterable) -> int:
        m = 0
        for v in vertices:
            try:
                m |= 1 << self.pos[v]
            except KeyError:
                raise UnknownVertex(v) from None
        return m

    def members(self, mask: int) -> frozenset:
        return frozenset(self.order[t] for t in range(self.n) if mask >> t & 1)

    def hclose(self, mask: int) -> int:
        out = mask
        while mask:
            low = mask & -mask
            out |= self.reach[low.bit_length() - 1]
            mask ^= low
        return out

    def saturate(self, mask: int) -> int:
        changed = True
        while changed:
            changed = False
            for t in range(self.n):
                if mask >> t & 1:
                    continue
                if any(src and not (src & ~mask) for src in self.sources[t]):
                    mask |= 1 << t
                    changed = True
        return mask

    def close(self, mask: int) -> int:
        return self.saturate(self.hclose(mask))

    def is_hereditary(self, mask: int) -> bool:
        return self.hclose(mask) == mask


def index(kg: KGraph) -> _Index:
    idx = _index_cache.get(kg)
    if idx is None:
        idx = _index_cache[kg] = _Index(kg)
    return idx


def set_key(s: Iterable) -> tuple:
    """Sort key for vertex sets: by size, then lexicographically."""
    members = sorted(s, key=natural_key)
    return len(members), [natural_key(v) for v in members]


def le(kg: KGraph, v, w) -> bool:
    """v <= w iff vΛw is nonempty."""
    idx = index(kg)
    if v not in idx.pos:
        raise UnknownVertex(v)
    if w not in idx.pos:
        raise UnknownVertex(w)
    return bool(idx.reach[idx.pos[v]] >> idx.pos[w] & 1)


def hereditary_closure(kg: KGraph, s: Iterable) -> frozenset:
    idx = index(kg)
    return idx.members(idx.hclose(idx.mask(s)))


def is_hereditary(kg: KGraph, h: Iterable) -> bool:
    idx = index(kg)
    return idx.is_hereditary(idx.mask(h))


def is_saturated(kg: KGraph, h: Iterable) -> bool:
    idx = index(kg)
    m = idx.mask(h)
    return idx.saturate(m) == m


def saturate(kg: KGraph, h: Iterable) -> frozenset:
    """Least saturated superset: repeatedly add v once some colour has all of
    vΛ^{e_i}'s sources inside the current set."""
    idx = index(kg)
    return idx.members(idx.saturate(idx.mask(h)))


def sat_her_closure(kg: KGraph, s: Iterable) -> frozenset:
    idx = index(kg)
    return idx.members(idx.close(idx.mask(s)))


@dataclass
class SatHerLattice:
    closed_sets: list

    def __len__(self):
        return len(self.closed_sets)

    def __iter__(self):
        return iter(self.closed_sets)

    def __contains__(self, s):
        return frozenset(s) in set(self.closed_sets)

    def hasse_edges(self) -> list:
        """Covering pairs (i, j) of indices with closed_sets[i] ⊂ closed_sets[j]."""
        sets = self.closed_sets
        edges = []
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                if a < b and not any(a < c < b for c in sets):
                    edges.append((i, j))
        return edges


def _brute_masks(idx: _Index) -> list:
    return [m for m in range(1 << idx.n) if idx.close(m) == m]


def _next_closure_masks(idx: _Index) -> list:
    """Ganter's next-closure over the vertex order; lectic enumeration."""
    out = []
    a = idx.close(0)
    while True:
        out.append(a)
        for i in range(idx.n - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                continue
            lower = bit - 1
            b = idx.close((a & lower) | bit)
            if b & lower == a & lower:
                a = b
                break
        else:
            return out


def sat_her_lattice(kg: KGraph, method: str = "closure", cap: int = BRUTE_FORCE_CAP) -> SatHerLattice:
    """All saturated hereditary subsets of Λ^0.

    ``method`` is ``"brute"`` (filter every subset, needs |Λ^0| <= cap),
    ``"closure"`` (next-closure enumeration) or ``"both"``, which runs the two
    and raises AssertionError if they disagree.
    """
    idx = index(kg)
    if method not in ("brute", "closure", "both"):
        raise ValueError(f"unknown method {method!r}")
    masks = None
    if method in ("brute", "both"):
        if idx.n > cap:
            raise TooLarge(cap)
        masks = _brute_masks(idx)
    if method in ("closure", "both"):
        other = _next_closure_masks(idx)
        if masks is not None and sorted(masks) != sorted(other):
            raise AssertionError("brute-force and closure enumeration disagree")
        masks = other
    sets = sorted((idx.members(m) for m in masks), key=set_key)
    return SatHerLattice(sets)


def quotient(kg: KGraph, h: Iterable) -> KGraph:
    """Γ(Λ∖H): drop H and every edge whose source lies in H."""
    h = frozenset(h)
    idx = index(kg)
    m = idx.mask(h)
    if idx.close(m) != m:
        raise NotSaturatedHereditary(sorted(h, key=natural_key))
    if m == idx.full:
        raise QuotientEmpty("H is all of Λ^0")
    sk = kg.skeleton
    edges = [e for e in sk.edges.values() if e.source not in h]
    kept = {e.id for e in edges}
    squares = [sq for sq in kg.rules if all(x in kept for x in sq.lhs + sq.rhs)]
    new = Skeleton(kg.k, [v for v in sk.vertices if v not in h], edges)
    return KGraph(new, squares, validate=True)


def common_upper_bound(kg: KGraph, v, y) -> str:
    """Least z (in vertex order) with v <= z and y <= z."""
    idx = index(kg)
    both = idx.reach[idx.pos[v]] & idx.reach[idx.pos[y]] if v in idx.pos and y in idx.pos else None
    if both is None:
        raise UnknownVertex(v if v not in idx.pos else y)
    if not both:
        raise NoWitness(f"no common upper bound for {v}, {y}")
    low = both & -both
    return idx.order[low.bit_length() - 1]

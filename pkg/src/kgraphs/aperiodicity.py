"""Aperiodicity: conditions (L) and (K), aperiodic quartets, bounded local
periodicity search, and the strong-aperiodicity sweep over quotients.

Negative verdicts are only issued from exact arguments: condition (L) or (K)
for 1-graphs, or a rigid-colour certificate (see
:func:`rigid_periodicity_certificate`). Bounded search alone can prove
witnesses exist but never that they do not.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import chain, product
from math import lcm
from typing import Iterable

from .errors import BadPair, CapExceeded, NotRankOne, NotRankTwo, UnknownVertex
from .factorization import (
    Grid,
    KGraph,
    Morphism,
    _reorder,
    compose,
    iter_morphisms,
    morphisms_equal,
    normal_form,
    random_word,
)
from .ideals import index, quotient, sat_her_lattice, set_key
from .skeleton import Degree, deg_join, deg_le, deg_sub, degrees_below, natural_key, unit, zero

APERIODIC = "Aperiodic"
PERIODIC = "Periodic"
UNKNOWN = "Unknown"

SIMPLE_LOOP_CAP = 10_000


@dataclass(frozen=True)
class Bounds:
    """Search limits.

    ``degree``: each coordinate of the path degree used by the local
    periodicity search; ``pairs``: test every pair m ≠ n with all coordinates
    at most this value; ``amax``/``bmax``: quartet search range.
    """

    degree: int = 4
    pairs: int = 2
    amax: int = 2
    bmax: int = 2

    def degree_for(self, k: int) -> Degree:
        return (self.degree,) * k


@dataclass
class AperiodicityVerdict:
    status: str
    method: str
    certificate: dict = field(default_factory=dict)
    breakdown: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"status": self.status, "method": self.method, "certificate": self.certificate}
        if self.breakdown:
            out["breakdown"] = self.breakdown
        return out


@dataclass(frozen=True)
class Quartet:
    u: str
    a: int
    b: int
    alpha1: Morphism
    alpha2: Morphism
    beta1: Morphism
    beta2: Morphism

    @property
    def extended(self) -> bool:
        """Certificates other than (1,1) rest on the footnoted general case."""
        return (self.a, self.b) != (1, 1)

    def edges(self) -> tuple:
        return tuple(list(m.word) for m in (self.alpha1, self.alpha2, self.beta1, self.beta2))

    def to_dict(self) -> dict:
        a1, a2, b1, b2 = self.edges()
        return {"vertex": self.u, "a": self.a, "b": self.b, "alpha1": a1, "alpha2": a2,
                "beta1": b1, "beta2": b2, "extended_evidence": self.extended}


def _require_rank(kg: KGraph, k: int):
    if kg.k != k:
        raise (NotRankOne if k == 1 else NotRankTwo)(f"expected a {k}-graph, got k={kg.k}")


# -- 1-graphs ---------------------------------------------------------------

def simple_loops_at(kg: KGraph, v, cap: int = SIMPLE_LOOP_CAP) -> list:
    """Loops based at v whose vertices μ(i,i), 0 <= i < |μ|, are distinct."""
    _require_rank(kg, 1)
    if not kg.skeleton.has_vertex(v):
        raise UnknownVertex(v)
    sk = kg.skeleton
    found = []

    def walk(cur, visited, word):
        for e in sk.in_edges(cur, 1):
            if e.source == v:
                found.append(kg.morphism(word + [e.id]))
                if len(found) > cap:
                    raise CapExceeded(cap)
            elif e.source not in visited:
                visited.add(e.source)
                walk(e.source, visited, word + [e.id])
                visited.discard(e.source)

    walk(v, {v}, [])
    return sorted(found, key=lambda m: [natural_key(x) for x in m.word])


@dataclass
class ConditionResult:
    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


def _entrance_free_loop(kg: KGraph):
    """A loop all of whose vertices receive exactly one edge, if any."""
    sk = kg.skeleton
    for v in kg.sorted_vertices:
        word = []
        cur = v
        seen = set()
        while sk.in_degree(cur, 1) == 1 and cur not in seen:
            seen.add(cur)
            e = sk.in_edges(cur, 1)[0]
            word.append(e.id)
            cur = e.source
            if cur == v:
                return kg.morphism(word)
    return None


def condition_L(kg: KGraph) -> ConditionResult:
    """Every loop has an entrance; the witness of failure is the bare loop."""
    _require_rank(kg, 1)
    loop = _entrance_free_loop(kg)
    return ConditionResult(loop is None, loop)


def condition_K(kg: KGraph) -> ConditionResult:
    """Every vertex bases no simple loop or at least two; the witness of
    failure is a vertex with exactly one."""
    _require_rank(kg, 1)
    for v in kg.sorted_vertices:
        try:
            loops = simple_loops_at(kg, v, cap=1)
        except CapExceeded:
            continue
        if len(loops) == 1:
            return ConditionResult(False, v)
    return ConditionResult(True, None)


# -- quartets ----------------------------------------------------------------

def _loops(kg: KGraph, u, d) -> list:
    return [m for m in iter_morphisms(kg, u, d) if kg.source(m) == u]


def find_quartet(kg: KGraph, u, a_max: int = 2, b_max: int = 2) -> Quartet | None:
    """The first (a,b)-aperiodic quartet at u, scanning a, b, α1, α2, β1, β2 in order."""
    _require_rank(kg, 2)
    if not kg.skeleton.has_vertex(u):
        raise UnknownVertex(u)
    for a in range(1, a_max + 1):
        alphas = _loops(kg, u, (a, 0))
        if len(alphas) < 2:
            continue
        for b in range(1, b_max + 1):
            betas = _loops(kg, u, (0, b))
            if len(betas) < 2:
                continue
            # βα rewritten to the ascending form; α·β is already ascending
            nf = {(y, x): tuple(_reorder(kg, y.word + x.word, lambda c: c))
                  for y in betas for x in alphas}
            for a1 in alphas:
                for a2 in alphas:
                    if a2 == a1:
                        continue
                    for b1 in betas:
                        if nf[(b1, a1)] != a2.word + b1.word or nf[(b1, a2)] != a1.word + b1.word:
                            continue
                        for b2 in betas:
                            if b2 == b1:
                                continue
                            if nf[(b2, a1)] == a1.word + b2.word and nf[(b2, a2)] == a2.word + b2.word:
                                return Quartet(u, a, b, a1, a2, b1, b2)
    return None


def quartet_relations_hold(kg: KGraph, q: Quartet) -> bool:
    """The four defining relations and the two distinctness conditions."""
    eq = lambda x, y: morphisms_equal(kg, x, y)
    c = lambda x, y: compose(kg, x, y)
    return (not eq(q.alpha1, q.alpha2) and not eq(q.beta1, q.beta2)
            and eq(c(q.beta2, q.alpha1), c(q.alpha1, q.beta2))
            and eq(c(q.beta2, q.alpha2), c(q.alpha2, q.beta2))
            and eq(c(q.beta1, q.alpha1), c(q.alpha2, q.beta1))
            and eq(c(q.beta1, q.alpha2), c(q.alpha1, q.beta1)))


# -- local periodicity --------------------------------------------------------

class _PathScan:
    """Lazily enumerated paths at v with cached grids, shared across pair queries.

    If λ witnesses a pair then so does every extension of λ. Without sources
    every path extends to degree D, so scanning vΛ^D alone loses nothing;
    otherwise every degree up to D is scanned. A few seeded random paths are
    tried before the exhaustive walk, whose lexicographic order starts with
    long runs of one repeated edge and so tends to find witnesses late.
    """

    SAMPLES = 16

    def __init__(self, kg: KGraph, v, degree: Degree, samples: int = SAMPLES, seed: int = 0):
        self.kg = kg
        self.degree = tuple(degree)
        if _has_sources(kg) or not samples:
            degrees = sorted(degrees_below(self.degree), key=sum, reverse=True)
            sampled = []
        else:
            degrees = [self.degree]
            rng = random.Random(seed)
            sampled = [normal_form(kg, kg.morphism(random_word(kg, v, self.degree, rng), v))
                       for _ in range(samples)]
        exhaustive = chain.from_iterable(iter_morphisms(kg, v, d) for d in degrees)
        self._source = _unique(chain(sampled, exhaustive))
        self._paths = []
        self._grids = []
        self._exhausted = False

    def _grids_iter(self):
        t = 0
        while True:
            if t < len(self._grids):
                yield self._paths[t], self._grids[t]
                t += 1
                continue
            if self._exhausted:
                return
            lam = next(self._source, None)
            if lam is None:
                self._exhausted = True
                return
            self._paths.append(lam)
            self._grids.append(Grid(self.kg, lam))

    def witness(self, m: Degree, n: Degree) -> Morphism | None:
        top = deg_join(m, n)
        if not deg_le(top, self.degree):
            return None
        for lam, grid in self._grids_iter():
            if not deg_le(top, lam.degree):
                continue
            t = deg_sub(lam.degree, top)
            if grid.segment_key(m, t) != grid.segment_key(n, t):
                return lam
        return None


def _unique(paths):
    seen = set()
    for lam in paths:
        if lam.word not in seen:
            seen.add(lam.word)
            yield lam


def _has_sources(kg: KGraph) -> bool:
    sk = kg.skeleton
    return any(sk.in_degree(v, i) == 0 for v in sk.vertices for i in range(1, kg.k + 1))


def lp_witness(kg: KGraph, v, m: Degree, n: Degree, bound: Degree) -> Morphism | None:
    """The first path λ ∈ vΛ^bound, in canonical order, with
    λ(m, m+d(λ)-m∨n) ≠ λ(n, n+d(λ)-m∨n).

    None means no witness of degree at most ``bound``; it is not a proof of
    periodicity.
    """
    m, n, bound = (tuple(x) if not isinstance(x, int) else (x,) for x in (m, n, bound))
    if m == n:
        raise BadPair(m)
    if not kg.skeleton.has_vertex(v):
        raise UnknownVertex(v)
    return _PathScan(kg, v, bound, samples=0).witness(m, n)


def degree_pairs(k: int, top: int):
    """Unordered pairs m ≠ n in {0..top}^k (the condition is symmetric)."""
    degs = list(product(range(top + 1), repeat=k))
    for x, m in enumerate(degs):
        for n in degs[x + 1:]:
            yield m, n


def lp_sweep(kg: KGraph, vertices: Iterable, pairs: int, degree: Degree) -> tuple:
    """Search a witness for every vertex and pair; return (found, missing)."""
    found, missing = 0, []
    for v in vertices:
        scan = _PathScan(kg, v, degree)
        for m, n in degree_pairs(kg.k, pairs):
            if scan.witness(m, n) is None:
                missing.append((v, list(m), list(n)))
            else:
                found += 1
    return found, missing


def rigid_periodicity_certificate(kg: KGraph) -> dict | None:
    """An exact proof that some vertex has local periodicity, if one is found.

    Let R be the vertices w with v <= w. Suppose that for some colour i every
    w in R receives exactly one colour-i edge, that the resulting map
    φ(w) = s(edge into w) permutes R with period p, and that for each other
    colour j and each f ∈ wΛ^{e_j} (w in R), moving f across the colour-i
    path of length p through the squares returns f. Then every infinite path
    x at v satisfies σ^{p e_i} x = x, so the pair (p e_i, 0) admits no
    witness at v.
    """
    idx = index(kg)
    sk = kg.skeleton
    for v in kg.sorted_vertices:
        region = idx.members(idx.reach[idx.pos[v]])
        for i in range(1, kg.k + 1):
            if any(sk.in_degree(w, i) != 1 for w in region):
                continue
            into = {w: sk.in_edges(w, i)[0] for w in region}
            phi = {w: into[w].source for w in region}
            if set(phi.values()) != region:
                continue
            period = 1
            for w in region:
                length, cur = 1, phi[w]
                while cur != w:
                    cur, length = phi[cur], length + 1
                period = lcm(period, length)

            def color_path(w):
                word = []
                for _ in range(period):
                    word.append(into[w].id)
                    w = phi[w]
                return word

            key = lambda c, i=i: (c != i, c)
            rigid = True
            for w in region:
                for j in range(1, kg.k + 1):
                    if j == i:
                        continue
                    for f in sk.in_edges(w, j):
                        moved = _reorder(kg, [f.id] + color_path(f.source), key)
                        if moved[-1] != f.id:
                            rigid = False
                            break
                    if not rigid:
                        break
                if not rigid:
                    break
            if rigid:
                m = tuple(period * c for c in unit(kg.k, i))
                return {"vertex": v, "color": i, "period": period,
                        "m": list(m), "n": list(zero(kg.k)),
                        "region": sorted(region, key=natural_key)}
    return None


def _quartet_cover(kg: KGraph, bounds: Bounds) -> tuple:
    """Quartets per vertex, and for each vertex a ≤-reachable quartet vertex."""
    quartets = {}
    for u in kg.sorted_vertices:
        q = find_quartet(kg, u, bounds.amax, bounds.bmax)
        if q is not None:
            quartets[u] = q
    idx = index(kg)
    cover = {}
    for v in kg.sorted_vertices:
        reach = idx.reach[idx.pos[v]]
        for u in quartets:
            if reach >> idx.pos[u] & 1:
                cover[v] = u
                break
    return quartets, cover


def aperiodic_status(kg: KGraph, bounds: Bounds = Bounds()) -> AperiodicityVerdict:
    """Decide or bound the aperiodicity of kg.

    k = 1 is exact via condition (L). Otherwise: quartets reachable from
    every vertex give Aperiodic (2-graphs); a rigid-colour certificate gives
    Periodic; failing both, every remaining vertex and pair is searched up to
    ``bounds`` and the result is Aperiodic (bounded) or Unknown.
    """
    if kg.k == 1:
        res = condition_L(kg)
        if res.holds:
            return AperiodicityVerdict(APERIODIC, "condition L")
        loop = res.witness
        return AperiodicityVerdict(PERIODIC, "condition L", {
            "entrance_free_loop": list(loop.word), "vertex": loop.range,
            "m": [0], "n": [len(loop.word)]})

    pending = list(kg.sorted_vertices)
    cert = {}
    if kg.k == 2:
        quartets, cover = _quartet_cover(kg, bounds)
        if len(cover) == len(pending):
            used = sorted(set(cover.values()), key=natural_key)
            return AperiodicityVerdict(APERIODIC, "quartet", {
                "cover": cover, "quartets": [quartets[u].to_dict() for u in used],
                "extended_evidence": any(quartets[u].extended for u in used)})
        pending = [v for v in pending if v not in cover]
        if cover:
            cert["quartet_cover"] = cover

    rigid = rigid_periodicity_certificate(kg)
    if rigid is not None:
        return AperiodicityVerdict(PERIODIC, "rigid colour", rigid)

    degree = bounds.degree_for(kg.k)
    found, missing = lp_sweep(kg, pending, bounds.pairs, degree)
    cert.update({"degree": list(degree), "pair_bound": bounds.pairs, "witnessed_pairs": found})
    if not missing:
        return AperiodicityVerdict(APERIODIC, "bounded local periodicity search", cert)
    cert["unwitnessed"] = missing
    return AperiodicityVerdict(UNKNOWN, "bounded local periodicity search", cert)


def strong_aperiodic_status(kg: KGraph, bounds: Bounds = Bounds()) -> AperiodicityVerdict:
    """Aperiodicity of every quotient Γ(Λ∖H), H ⊊ Λ^0 saturated hereditary.

    Exact for 1-graphs via condition (K); a quartet at every vertex settles
    2-graphs, since such quartets survive in each quotient.
    """
    if kg.k == 1:
        res = condition_K(kg)
        if res.holds:
            return AperiodicityVerdict(APERIODIC, "condition K")
        return AperiodicityVerdict(PERIODIC, "condition K", {"vertex_with_one_simple_loop": res.witness})
    if kg.k == 2:
        quartets = {}
        for u in kg.sorted_vertices:
            q = find_quartet(kg, u, bounds.amax, bounds.bmax)
            if q is None:
                break
            quartets[u] = q
        else:
            return AperiodicityVerdict(APERIODIC, "quartet at every vertex", {
                "quartets": [q.to_dict() for q in quartets.values()],
                "extended_evidence": any(q.extended for q in quartets.values())})

    full = frozenset(kg.vertices)
    breakdown = []
    statuses = set()
    for h in sat_her_lattice(kg):
        if h == full:
            continue
        q = kg if not h else quotient(kg, h)
        verdict = aperiodic_status(q, bounds)
        statuses.add(verdict.status)
        breakdown.append({"H": sorted(h, key=natural_key), **verdict.to_dict()})
    if PERIODIC in statuses:
        status = PERIODIC
    elif UNKNOWN in statuses:
        status = UNKNOWN
    else:
        status = APERIODIC
    return AperiodicityVerdict(status, "quotient sweep", {}, breakdown)

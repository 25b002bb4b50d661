"""Factorization squares, k-graph presentations and morphism arithmetic.

A morphism is stored as an edge word in categorical order: ``word[0]`` is the
range-side edge and ``source(word[t]) == range(word[t + 1])``. The canonical
representative of a morphism lists its edges with non-decreasing colours; it
is reached by adjacent transpositions through the factorization squares.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import DegreeOutOfRange, KGraphError, NotComposable, UnknownVertex, ValidationError
from .skeleton import (
    Degree,
    Skeleton,
    ValidationReport,
    deg_add,
    deg_le,
    deg_sub,
    degrees_below,
    natural_key,
    validate_skeleton,
    zero,
)


@dataclass(frozen=True)
class SquareRule:
    """The identification ``a b = b2 a2`` with colour(a) < colour(b)."""

    lhs: tuple
    rhs: tuple

    def __str__(self):
        return f"{self.lhs[0]} {self.lhs[1]} = {self.rhs[0]} {self.rhs[1]}"


class RuleSet:
    """Per colour pair, the bijection between ij-words and ji-words (i < j)."""

    def __init__(self, squares: Iterable[SquareRule] = ()):
        self.squares: list = list(squares)
        self.forward: dict = {}
        self.backward: dict = {}
        for sq in self.squares:
            self.forward.setdefault(sq.lhs, sq.rhs)
            self.backward.setdefault(sq.rhs, sq.lhs)

    def __len__(self):
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)


@dataclass(frozen=True)
class Morphism:
    """A path of the k-graph. Dataclass equality compares raw words; use
    :func:`morphisms_equal` for equality in the category."""

    range: str
    word: tuple
    degree: Degree

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return "[" + ",".join(self.word) + "]" if self.word else f"id({self.range})"


class KGraph:
    """A finitely presented k-graph: a 1-skeleton plus factorization squares.

    ``squares`` may be given as :class:`SquareRule` objects or as pairs
    ``((e1, e2), (e3, e4))`` meaning ``e1 e2 = e3 e4`` in either colour
    orientation.
    """

    def __init__(self, skeleton: Skeleton, squares: Iterable = (), validate: bool = False):
        self.skeleton = skeleton
        self.rules = RuleSet(self._orient(sq) for sq in squares)
        self.validated = False
        if validate:
            self.validate()

    def _orient(self, sq) -> SquareRule:
        if isinstance(sq, SquareRule):
            return sq
        left, right = (tuple(side) for side in sq)
        if len(left) != 2 or len(right) != 2:
            raise KGraphError(f"square sides must be edge pairs: {sq!r}")
        col = self._color_or_none
        if col(left[0]) is not None and col(left[1]) is not None and col(left[0]) > col(left[1]):
            left, right = right, left
        return SquareRule(left, right)

    def _color_or_none(self, eid):
        e = self.skeleton.edges.get(eid)
        return e.color if e else None

    def __repr__(self):
        return (f"KGraph(k={self.k}, |V|={len(self.vertices)}, |E|={len(self.skeleton.edges)}, "
                f"squares={len(self.rules)})")

    @property
    def k(self) -> int:
        return self.skeleton.k

    @property
    def vertices(self) -> tuple:
        return self.skeleton.vertices

    @cached_property
    def sorted_vertices(self) -> list:
        return self.skeleton.sorted_vertices()

    def validate(self) -> ValidationReport:
        report = validate_skeleton(self.skeleton)
        report.extend(validate_rules(self.skeleton, self.rules))
        if report.ok and self.k >= 3:
            report.extend(validate_cubes(self))
        if not report.ok:
            raise ValidationError(report)
        self.validated = True
        return report

    @cached_property
    def _swap(self) -> dict:
        """Adjacent transposition table: (x, y) -> (y', x') for both orientations."""
        table = dict(self.rules.forward)
        table.update(self.rules.backward)
        return table

    @cached_property
    def _colors(self) -> dict:
        return {eid: e.color for eid, e in self.skeleton.edges.items()}

    def color(self, eid) -> int:
        return self._colors[eid]

    def morphism(self, word: Sequence[str] = (), range: str | None = None) -> Morphism:
        """Build a morphism from an edge word, checking composability."""
        word = tuple(word)
        edges = self.skeleton.edges
        for eid in word:
            if eid not in edges:
                raise NotComposable(f"unknown edge {eid}")
        if not word:
            if range is None or not self.skeleton.has_vertex(range):
                raise UnknownVertex(range)
            return self.identity(range)
        for x, y in zip(word, word[1:]):
            if edges[x].source != edges[y].range:
                raise NotComposable(f"s({x}) != r({y})")
        r = edges[word[0]].range
        if range is not None and range != r:
            raise NotComposable(f"word starts at {r}, not {range}")
        return Morphism(r, word, self._degree_of(word))

    def identity(self, v) -> Morphism:
        if not self.skeleton.has_vertex(v):
            raise UnknownVertex(v)
        return Morphism(v, (), zero(self.k))

    def _degree_of(self, word) -> Degree:
        d = [0] * self.k
        for eid in word:
            d[self._colors[eid] - 1] += 1
        return tuple(d)

    def source(self, m: Morphism):
        return self.skeleton.edges[m.word[-1]].source if m.word else m.range


def validate_rules(sk: Skeleton, rules: RuleSet) -> ValidationReport:
    """Check every square's shape and that each colour pair gets a bijection."""
    report = ValidationReport()
    edges = sk.edges

    def shape_ok(sq):
        ids = sq.lhs + sq.rhs
        if any(e not in edges for e in ids):
            return False
        a, b = (edges[e] for e in sq.lhs)
        b2, a2 = (edges[e] for e in sq.rhs)
        return (a.color < b.color and b2.color == b.color and a2.color == a.color
                and a.source == b.range and b2.source == a2.range
                and a.range == b2.range and b.source == a2.source)

    seen_l, seen_r = {}, {}
    for sq in rules:
        if not shape_ok(sq):
            report.add("EndpointMismatch", str(sq))
            continue
        seen_l[sq.lhs] = seen_l.get(sq.lhs, 0) + 1
        seen_r[sq.rhs] = seen_r.get(sq.rhs, 0) + 1
    for word, count in sorted(seen_l.items()) + sorted(seen_r.items()):
        if count > 1:
            report.add("DuplicateSquare", word)

    for a in sorted(edges.values(), key=lambda e: natural_key(e.id)):
        for j in range(a.color + 1, sk.k + 1):
            for b in sk.in_edges(a.source, j):
                if (a.id, b.id) not in seen_l:
                    report.add("MissingSquare", (a.id, b.id))
        for i in range(1, a.color):
            # a plays the colour-j edge at the range end of a ji-word
            for b in sk.in_edges(a.source, i):
                if (a.id, b.id) not in seen_r:
                    report.add("MissingSquare", (a.id, b.id))
    return report


def _transpose(kg: KGraph, x, y):
    try:
        return kg._swap[(x, y)]
    except KeyError:
        raise KGraphError(f"no factorization square for {x} {y}") from None


def _reorder(kg: KGraph, word: Sequence[str], key) -> list:
    """Bubble the word into non-decreasing ``key(colour)`` order via squares."""
    w = list(word)
    col = kg._colors
    n = len(w)
    for end in range(n - 1, 0, -1):
        swapped = False
        for t in range(end):
            if key(col[w[t]]) > key(col[w[t + 1]]):
                w[t], w[t + 1] = _transpose(kg, w[t], w[t + 1])
                swapped = True
        if not swapped:
            break
    return w


def _ascending(c):
    return c


def _check(kg: KGraph, m: Morphism):
    if m.word:
        kg.morphism(m.word, m.range)
    elif not kg.skeleton.has_vertex(m.range):
        raise UnknownVertex(m.range)


def normal_form(kg: KGraph, m: Morphism) -> Morphism:
    """The representative whose colours are non-decreasing (idempotent)."""
    _check(kg, m)
    return Morphism(m.range, tuple(_reorder(kg, m.word, _ascending)), m.degree)


def morphisms_equal(kg: KGraph, p: Morphism, q: Morphism) -> bool:
    if p.range != q.range or p.degree != q.degree:
        return False
    return normal_form(kg, p).word == normal_form(kg, q).word


def compose(kg: KGraph, p: Morphism, q: Morphism) -> Morphism:
    """The path p·q (p on the range side); requires s(p) = r(q)."""
    if kg.source(p) != q.range:
        raise NotComposable(f"s({p}) = {kg.source(p)} but r({q}) = {q.range}")
    return Morphism(p.range, p.word + q.word, deg_add(p.degree, q.degree))


def _split(kg: KGraph, word: Sequence[str], m: Degree) -> tuple:
    """Factor a word as prefix·rest with d(prefix) = m."""
    prefix: list = []
    rest = list(word)
    for i, count in enumerate(m, start=1):
        if count == 0:
            continue
        rest = _reorder(kg, rest, lambda c, i=i: (c != i, c))
        prefix.extend(rest[:count])
        rest = rest[count:]
    return prefix, rest


def segment(kg: KGraph, lam: Morphism, m: Degree, n: Degree) -> Morphism:
    """λ(m, n): the unique piece of degree n - m in λ = λ(0,m)λ(m,n)λ(n,d(λ))."""
    m, n = tuple(m), tuple(n)
    if not (len(m) == len(n) == kg.k and deg_le(zero(kg.k), m) and deg_le(m, n)
            and deg_le(n, lam.degree)):
        raise DegreeOutOfRange(f"need 0 <= {m} <= {n} <= {lam.degree}")
    _check(kg, lam)
    head, rest = _split(kg, lam.word, m)
    start = kg.skeleton.edges[head[-1]].source if head else lam.range
    mid, _ = _split(kg, rest, deg_sub(n, m))
    return Morphism(start, tuple(_reorder(kg, mid, _ascending)), deg_sub(n, m))


def vertex_at(kg: KGraph, lam: Morphism, m: Degree) -> str:
    """The vertex λ(m, m)."""
    return segment(kg, lam, m, lam.degree).range


def iter_morphisms(kg: KGraph, v, d: Degree) -> Iterator[Morphism]:
    """vΛ^d in canonical order, one normal-form word per morphism.

    By unique factorization every composable word whose colours ascend is a
    distinct morphism, and every morphism has exactly one such word.
    """
    if not kg.skeleton.has_vertex(v):
        raise UnknownVertex(v)
    d = tuple(d)
    colors = [c for c, count in enumerate(d, start=1) for _ in range(count)]
    sk = kg.skeleton

    def walk(cur, t, acc):
        if t == len(colors):
            yield Morphism(v, tuple(acc), d)
            return
        for e in sk.in_edges(cur, colors[t]):
            acc.append(e.id)
            yield from walk(e.source, t + 1, acc)
            acc.pop()

    yield from walk(v, 0, [])


def enumerate_morphisms(kg: KGraph, v, d: Degree) -> list:
    return list(iter_morphisms(kg, v, d))


class Grid:
    """Every unit segment λ(n, n + e_i) of one morphism, indexed by position.

    Reading a segment off the grid avoids repeated rewriting when many
    segments of the same path are compared.
    """

    def __init__(self, kg: KGraph, lam: Morphism):
        self.kg = kg
        self.degree = lam.degree
        k = kg.k
        edges = kg.skeleton.edges
        tails = {zero(k): list(lam.word)}
        self.vertices = {}
        self.edges = {}
        for pos in degrees_below(lam.degree):
            w = tails.pop(pos)
            self.vertices[pos] = edges[w[0]].range if w else None
            for i in range(1, k + 1):
                if pos[i - 1] == lam.degree[i - 1]:
                    continue
                w2 = _reorder(kg, w, lambda c, i=i: (c != i, c))
                self.edges[(pos, i)] = w2[0]
                nxt = pos[:i - 1] + (pos[i - 1] + 1,) + pos[i:]
                tails.setdefault(nxt, w2[1:])
        self.vertices[lam.degree] = kg.source(lam)

    def segment_key(self, m: Degree, t: Degree) -> tuple:
        """Canonical key of λ(m, m + t): start vertex plus normal-form word."""
        pos = list(m)
        word = []
        for i, count in enumerate(t, start=1):
            for _ in range(count):
                word.append(self.edges[(tuple(pos), i)])
                pos[i - 1] += 1
        return self.vertices[tuple(m)], tuple(word)


def validate_cubes(kg: KGraph) -> ValidationReport:
    """Associativity of the squares on every tri-chromatic composable triple.

    Starting from an ascending word a·b·c, the two ways of reversing it with
    adjacent transpositions (swap 12,23,12 versus 23,12,23) must agree.
    """
    report = ValidationReport()
    if kg.k < 3:
        return report
    sk = kg.skeleton
    swap = kg._swap

    def step(w, t):
        pair = swap.get((w[t], w[t + 1]))
        if pair is None:
            return None
        return w[:t] + list(pair) + w[t + 2:]

    for i, j, l in ((i, j, l) for i in range(1, kg.k + 1)
                    for j in range(i + 1, kg.k + 1) for l in range(j + 1, kg.k + 1)):
        for a in sk.edges_of_color(i):
            for b in sk.in_edges(a.source, j):
                for c in sk.in_edges(b.source, l):
                    routes = []
                    for order in ((0, 1, 0), (1, 0, 1)):
                        w = [a.id, b.id, c.id]
                        for t in order:
                            w = step(w, t) if w is not None else None
                        routes.append(w)
                    if routes[0] is None or routes[0] != routes[1]:
                        report.add("CubeIncoherent", (a.id, b.id, c.id))
    return report


def random_word(kg: KGraph, v, d: Degree, rng) -> list:
    """A random composable word of degree d at v, in a random colour order."""
    colors = [c for c, count in enumerate(d, start=1) for _ in range(count)]
    rng.shuffle(colors)
    word = []
    cur = v
    for c in colors:
        e = rng.choice(kg.skeleton.in_edges(cur, c))
        word.append(e.id)
        cur = e.source
    return word

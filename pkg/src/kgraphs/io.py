"""The ``.kg`` text format, label files, and DOT/JSON exporters.

Grammar (one statement per line, ``#`` starts a comment)::

    kgraph k=<int>
    vertex <id>
    edge <id> color=<int> range=<vid> source=<vid>
    square <e1> <e2> = <e3> <e4>

Label files for skew products::

    group Z3xZ3
    label <edge> (<g1>,<g2>)
"""

from __future__ import annotations

import json
import re
from functools import singledispatch

from .constructions import GroupSpec
from .errors import KGraphError, KgSyntaxError
from .factorization import KGraph
from .ideals import SatHerLattice
from .skeleton import Edge, Skeleton, natural_key, sort_ids
from .tails import FiniteSpace, TailSpace

_ID = re.compile(r"[^\s#=]+")
DOT_STYLES = {1: "solid", 2: "dashed", 3: "dotted"}


def _statements(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _keyvals(lineno: int, tokens: list, keys: tuple) -> dict:
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or key not in keys or not value:
            raise KgSyntaxError(lineno, f"expected {'/'.join(k + '=' for k in keys)}, got {tok!r}")
        if key in out:
            raise KgSyntaxError(lineno, f"{key}= given twice")
        out[key] = value
    missing = [k for k in keys if k not in out]
    if missing:
        raise KgSyntaxError(lineno, f"missing {', '.join(k + '=' for k in missing)}")
    return out


def _int(lineno: int, value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise KgSyntaxError(lineno, f"{what} must be an integer, got {value!r}") from None


def parse_kg(text: str) -> KGraph:
    """Parse a ``.kg`` document. The result is not validated."""
    k = None
    vertices, edges, squares = [], [], []
    for lineno, tokens in _statements(text):
        head, rest = tokens[0], tokens[1:]
        if k is None and head != "kgraph":
            raise KgSyntaxError(lineno, "document must start with 'kgraph k=<int>'")
        if head == "kgraph":
            if k is not None:
                raise KgSyntaxError(lineno, "repeated kgraph header")
            k = _int(lineno, _keyvals(lineno, rest, ("k",))["k"], "k")
            if k < 1:
                raise KgSyntaxError(lineno, "k must be at least 1")
        elif head == "vertex":
            if len(rest) != 1 or not _ID.fullmatch(rest[0]):
                raise KgSyntaxError(lineno, "expected 'vertex <id>'")
            vertices.append(rest[0])
        elif head == "edge":
            if not rest or "=" in rest[0]:
                raise KgSyntaxError(lineno, "expected 'edge <id> color=.. range=.. source=..'")
            kv = _keyvals(lineno, rest[1:], ("color", "range", "source"))
            edges.append(Edge(rest[0], _int(lineno, kv["color"], "color"), kv["range"], kv["source"]))
        elif head == "square":
            if len(rest) != 5 or rest[2] != "=":
                raise KgSyntaxError(lineno, "expected 'square <e1> <e2> = <e3> <e4>'")
            squares.append(((rest[0], rest[1]), (rest[3], rest[4])))
        else:
            raise KgSyntaxError(lineno, f"unknown statement {head!r}")
    if k is None:
        raise KgSyntaxError(0, "missing 'kgraph k=<int>' header")
    return KGraph(Skeleton(k, vertices, edges), squares)


def _check_id(x: str):
    if not _ID.fullmatch(x):
        raise KGraphError(f"id {x!r} cannot be written to a .kg document")
    return x


def emit_kg(kg: KGraph) -> str:
    """The normalized document: vertices and edges in insertion order, squares
    written with the lower colour first on the left."""
    sk = kg.skeleton
    lines = [f"kgraph k={kg.k}"]
    lines += [f"vertex {_check_id(v)}" for v in sk.vertices]
    lines += [f"edge {_check_id(e.id)} color={e.color} range={e.range} source={e.source}"
              for e in sk.edges.values()]
    lines += [f"square {sq}" for sq in kg.rules]
    return "\n".join(lines) + "\n"


def load_kg(path) -> KGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_kg(fh.read())


_LABEL = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\)")


def parse_labels(text: str) -> tuple:
    """Return ``(group, labels)``; edges not listed are labelled zero."""
    group = None
    labels = {}
    for lineno, tokens in _statements(text):
        head = tokens[0]
        if head == "group":
            if group is not None or len(tokens) != 2:
                raise KgSyntaxError(lineno, "expected a single 'group Z<n>x...' line")
            try:
                group = GroupSpec.parse(tokens[1])
            except ValueError as exc:
                raise KgSyntaxError(lineno, str(exc)) from None
        elif head == "label":
            if group is None:
                raise KgSyntaxError(lineno, "'group' must precede labels")
            if len(tokens) < 3:
                raise KgSyntaxError(lineno, "expected 'label <edge> (<g1>,...)'")
            m = _LABEL.fullmatch("".join(tokens[2:]))
            if not m:
                raise KgSyntaxError(lineno, f"bad group element {' '.join(tokens[2:])!r}")
            values = tuple(int(x) for x in m.group(1).split(",")) if m.group(1) else ()
            try:
                labels[tokens[1]] = group.element(values)
            except ValueError as exc:
                raise KgSyntaxError(lineno, str(exc)) from None
        else:
            raise KgSyntaxError(lineno, f"unknown statement {head!r}")
    if group is None:
        raise KgSyntaxError(0, "missing 'group' line")
    return group, labels


def emit_labels(group: GroupSpec, labels: dict) -> str:
    lines = [f"group {group}"]
    lines += [f"label {e} {group.format(labels[e])}" for e in sort_ids(labels)]
    return "\n".join(lines) + "\n"


# -- exporters -----------------------------------------------------------------

def _q(x) -> str:
    return json.dumps(str(x))


def _set_label(s) -> str:
    return "{" + ",".join(sorted(s, key=natural_key)) + "}"


@singledispatch
def export_dot(obj) -> str:
    raise TypeError(f"cannot export {type(obj).__name__} to DOT")


@export_dot.register
def _(kg: KGraph) -> str:
    sk = kg.skeleton
    lines = ["digraph kgraph {"]
    lines += [f"  {_q(v)};" for v in sk.sorted_vertices()]
    for e in sorted(sk.edges.values(), key=lambda e: natural_key(e.id)):
        style = DOT_STYLES.get(e.color, "bold")
        lines.append(f"  {_q(e.source)} -> {_q(e.range)} [label={_q(e.id)}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


@export_dot.register
def _(space: FiniteSpace) -> str:
    # arrows point up the specialization order: x -> y when x lies in cl{y}
    label = _set_label if isinstance(space, TailSpace) else str
    lines = ["digraph space {"]
    lines += [f"  {_q(label(p))};" for p in space.points]
    for x, y in space.hasse():
        lines.append(f"  {_q(label(space.points[x]))} -> {_q(label(space.points[y]))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@export_dot.register
def _(lattice: SatHerLattice) -> str:
    sets = lattice.closed_sets
    lines = ["digraph lattice {"]
    lines += [f"  {_q(_set_label(s))};" for s in sets]
    for i, j in lattice.hasse_edges():
        lines.append(f"  {_q(_set_label(sets[i]))} -> {_q(_set_label(sets[j]))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _sorted_set(s) -> list:
    return sorted(s, key=natural_key)


@singledispatch
def to_data(obj):
    """A JSON-ready structure; see README for the schemas."""
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot export {type(obj).__name__} to JSON")


@to_data.register
def _(kg: KGraph) -> dict:
    sk = kg.skeleton
    return {
        "k": kg.k,
        "vertices": list(sk.vertices),
        "edges": [{"id": e.id, "color": e.color, "range": e.range, "source": e.source}
                  for e in sk.edges.values()],
        "squares": [[list(sq.lhs), list(sq.rhs)] for sq in kg.rules],
    }


@to_data.register
def _(space: FiniteSpace) -> dict:
    points = [_sorted_set(p) if isinstance(space, TailSpace) else p for p in space.points]
    out = {"points": points,
           "closures": [[t for t in range(len(points)) if space.below[y] >> t & 1]
                        for y in range(len(points))],
           "hasse": [list(e) for e in space.hasse()]}
    if isinstance(space, TailSpace):
        out["basis"] = {v: [t for t in range(len(points)) if space.basis_mask(v) >> t & 1]
                        for v in space.kg.sorted_vertices}
    return out


@to_data.register
def _(lattice: SatHerLattice) -> dict:
    return {"sets": [_sorted_set(s) for s in lattice.closed_sets],
            "hasse": [list(e) for e in lattice.hasse_edges()]}


def export_json(obj) -> str:
    """Deterministic JSON: fixed orderings and sorted keys."""
    return json.dumps(to_data(obj), sort_keys=True, indent=2, default=_fallback) + "\n"


def _fallback(x):
    if isinstance(x, (set, frozenset)):
        return _sorted_set(x)
    if hasattr(x, "to_dict"):
        return x.to_dict()
    raise TypeError(f"{type(x).__name__} is not JSON serializable")

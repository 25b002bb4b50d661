"""Command-line interface.

Exit status: 0 when the requested result was computed, 1 when the input does
not parse or fails validation, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import aperiodicity as ap
from . import catalog
from .constructions import cartesian_product, product_form_probe, skew_product
from .errors import KGraphError, ValidationError
from .factorization import normal_form
from .ideals import hereditary_closure, quotient, sat_her_lattice, saturate
from .io import emit_kg, export_dot, export_json, load_kg, parse_labels
from .skeleton import natural_key
from .tails import TailSpace, maximal_tails, topology_report

CATALOG = {
    "gamma-ex1": lambda n: catalog.gamma_ex1(),
    "omega": catalog.omega,
    "bouquet": catalog.bouquet,
}


def split_ids(text: str) -> list:
    """Split on commas outside parentheses, so product ids like (0,1) survive."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        cur.append(ch)
    out.append("".join(cur).strip())
    return [x for x in out if x]


def _fmt_set(s) -> str:
    return "{" + ", ".join(sorted(s, key=natural_key)) + "}"


def _load(path, validate=True):
    kg = load_kg(path)
    if validate:
        kg.validate()
    return kg


def _bounds(args) -> ap.Bounds:
    return ap.Bounds(degree=args.bounds, pairs=args.pairs, amax=args.amax, bmax=args.bmax)


def cmd_validate(args):
    kg = _load(args.file, validate=False)
    kg.validate()
    print("ok")


def cmd_info(args):
    kg = _load(args.file)
    sk = kg.skeleton
    print(f"k = {kg.k}")
    print(f"vertices = {len(sk.vertices)}")
    for i in range(1, kg.k + 1):
        print(f"colour {i} edges = {len(sk.edges_of_color(i))}")
    print(f"squares = {len(kg.rules)}")


def cmd_normal_form(args):
    kg = _load(args.file)
    print(" ".join(normal_form(kg, kg.morphism(split_ids(args.path))).word))


def cmd_saturate(args):
    kg = _load(args.file)
    print(_fmt_set(saturate(kg, split_ids(args.set))))


def cmd_hclose(args):
    kg = _load(args.file)
    print(_fmt_set(hereditary_closure(kg, split_ids(args.set))))


def cmd_lattice(args):
    kg = _load(args.file)
    lattice = sat_her_lattice(kg, method=args.method)
    if args.dot:
        sys.stdout.write(export_dot(lattice))
    elif args.json:
        sys.stdout.write(export_json(lattice))
    else:
        for s in lattice:
            print(_fmt_set(s))


def cmd_quotient(args):
    kg = _load(args.file)
    sys.stdout.write(emit_kg(quotient(kg, split_ids(args.set))))


def cmd_tails(args):
    kg = _load(args.file)
    for t in maximal_tails(kg, method=args.method):
        print(_fmt_set(t))


def cmd_topology(args):
    kg = _load(args.file)
    space = TailSpace(kg)
    if args.dot:
        sys.stdout.write(export_dot(space))
        return
    report = topology_report(space)
    if args.json:
        data = json.loads(export_json(space))
        data["report"] = {"ok": report.ok, "t0": report.t0, "kuratowski": report.kuratowski,
                          "sober": report.sober, "basis_generates": report.basis_generates,
                          "exhaustive": report.exhaustive}
        print(json.dumps(data, sort_keys=True, indent=2))
        return
    print(f"points = {report.points}")
    for name in ("t0", "sober", "basis_generates", "compact_open_base", "exhaustive"):
        print(f"{name} = {getattr(report, name)}")
    for name, ok in report.kuratowski.items():
        print(f"kuratowski.{name} = {ok}")
    for x, y in report.specialization:
        print(f"{_fmt_set(x)} < {_fmt_set(y)}")


def _print_verdict(verdict, as_json):
    if as_json:
        print(json.dumps(verdict.to_dict(), sort_keys=True, indent=2, default=sorted))
    else:
        print(f"{verdict.status} ({verdict.method})")


def cmd_aperiodic(args):
    _print_verdict(ap.aperiodic_status(_load(args.file), _bounds(args)), args.json)


def cmd_strong_aperiodic(args):
    verdict = ap.strong_aperiodic_status(_load(args.file), _bounds(args))
    _print_verdict(verdict, args.json)
    if not args.json:
        for row in verdict.breakdown:
            print(f"  H = {_fmt_set(row['H'])}: {row['status']} ({row['method']})")


def cmd_quartet(args):
    kg = _load(args.file)
    q = ap.find_quartet(kg, args.vertex, args.amax, args.bmax)
    if q is None:
        print("none")
        return
    if args.json:
        print(json.dumps(q.to_dict(), sort_keys=True, indent=2))
    else:
        print("(" + ",".join(".".join(w) for w in q.edges()) + ")")


def cmd_product(args):
    sys.stdout.write(emit_kg(cartesian_product(_load(args.a), _load(args.b))))


def cmd_skew(args):
    kg = _load(args.file)
    with open(args.labels, encoding="utf-8") as fh:
        group, labels = parse_labels(fh.read())
    sys.stdout.write(emit_kg(skew_product(kg, labels, group)))


def cmd_product_probe(args):
    report = product_form_probe(_load(args.a), _load(args.b))
    print(f"saturated hereditary sets = {report.total}")
    print(f"of the form H1 x H2 = {report.product_form}")
    for h in report.counterexamples:
        print(f"not a product: {_fmt_set(h)}")


def cmd_catalog(args):
    build = CATALOG[args.name]
    sys.stdout.write(emit_kg(build(args.n)))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kgraphs", description="Finitely presented k-graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file=True):
        sp = sub.add_parser(name, help=help_text)
        if file:
            sp.add_argument("file", help=".kg document")
        sp.set_defaults(func=func)
        return sp

    def bounds(sp):
        d = ap.Bounds()
        sp.add_argument("--bounds", type=int, default=d.degree, help="path degree bound per colour")
        sp.add_argument("--pairs", type=int, default=d.pairs, help="test pairs m≠n with entries up to this")
        sp.add_argument("--amax", type=int, default=d.amax)
        sp.add_argument("--bmax", type=int, default=d.bmax)
        sp.add_argument("--json", action="store_true")

    add("validate", cmd_validate, "check skeleton, squares and cubes")
    add("info", cmd_info, "summary counts")
    add("normal-form", cmd_normal_form, "ascending-colour form of a path").add_argument(
        "--path", required=True, help="comma-separated edge ids, range side first")
    add("saturate", cmd_saturate, "least saturated superset").add_argument("--set", required=True)
    add("hclose", cmd_hclose, "hereditary closure").add_argument("--set", required=True)
    sp = add("lattice", cmd_lattice, "saturated hereditary subsets")
    sp.add_argument("--method", choices=("closure", "brute", "both"), default="closure")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    add("quotient", cmd_quotient, "remove a saturated hereditary set").add_argument("--set", required=True)
    add("tails", cmd_tails, "maximal tails").add_argument(
        "--method", choices=("direct", "mt", "both"), default="mt")
    sp = add("topology", cmd_topology, "topology on the maximal tails")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    bounds(add("aperiodic", cmd_aperiodic, "aperiodicity verdict"))
    bounds(add("strong-aperiodic", cmd_strong_aperiodic, "aperiodicity of every quotient"))
    sp = add("quartet", cmd_quartet, "first aperiodic quartet at a vertex")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--amax", type=int, default=1)
    sp.add_argument("--bmax", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    for name, func, text in (("product", cmd_product, "cartesian product"),
                             ("product-probe", cmd_product_probe,
                              "test which saturated hereditary sets of a product are rectangles")):
        sp = add(name, func, text, file=False)
        sp.add_argument("a")
        sp.add_argument("b")
    add("skew", cmd_skew, "skew product by a finite abelian group").add_argument("--labels", required=True)
    sp = add("catalog", cmd_catalog, "print a built-in example", file=False)
    sp.add_argument("name", choices=sorted(CATALOG))
    sp.add_argument("n", type=int, nargs="?", default=2)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ValidationError as exc:
        for problem in exc.report.problems:
            print(problem, file=sys.stderr)
        return 1
    except (KGraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

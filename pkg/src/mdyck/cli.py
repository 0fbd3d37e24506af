"""Command-line surface: dimension tables, products, verification, DOT export.

Exit codes: 0 success / verified, 1 verification failure, 2 usage error.
All output is canonical (sorted) and byte-stable across runs.
"""

from __future__ import annotations

import argparse
import sys

from . import posets, series, simplicial, tamari, trees
from .exactlin import LinComb
from .paths import PathOracle, enumerate_paths, parse_path, path_product
from .reporting import CheckReport
from .trees import App, Gen, TreeOracle, evaluate_expression, parse_tree, tree_product


def _dims(args) -> int:
    if args.m < 1:
        raise ValueError("m must be >= 1")
    print(f"{'n':>3} {'fuss-catalan':>14} {'trees':>14} {'paths':>14}  status")
    ok = True
    for n in range(1, args.max_n + 1):
        d = series.fuss_catalan(args.m, n)
        b = len(trees.enumerate_Bm(args.m, n))
        p = len(enumerate_paths(args.m, n))
        match = d == b == p
        ok = ok and match
        print(f"{n:>3} {d:>14} {b:>14} {p:>14}  {'MATCH' if match else 'MISMATCH'}")
    return 0 if ok else 1


def _parse_simplex(family, text: str) -> tuple:
    elems = tuple(posets.pt_parse(tok) for tok in text.split(";"))
    for a, b in zip(elems, elems[1:]):
        if not family.leq(a, b):
            raise ValueError(f"simplex coordinates not increasing: {text!r}")
    return elems


def _mul(args) -> int:
    m, i = args.m, args.i
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 <= i <= m:
        raise ValueError(f"product index {i} out of range [0, {m}]")
    if args.model == "trees":
        lhs, rhs = parse_tree(args.lhs), parse_tree(args.rhs)
        result = tree_product(lhs, rhs, i, m)
        print(result.render(lambda t: t.encode()))
    elif args.model == "paths":
        lhs, rhs = parse_path(m, args.lhs), parse_path(m, args.rhs)
        result = path_product(lhs, rhs, i)
        print(result.render(lambda p: p.encode()))
    else:
        family = posets.TamariBinaryFamily()
        xbar = _parse_simplex(family, args.lhs)
        ybar = _parse_simplex(family, args.rhs)
        if len(xbar) != m or len(ybar) != m:
            raise ValueError(f"simplices must have {m} coordinates")
        result = posets.ordm_product(family, xbar, ybar, i)
        print(result.render(lambda c: ";".join(posets.pt_encode(t) for t in c)))
    return 0


def _hasse(args) -> int:
    if args.format != "dot":
        raise ValueError("only DOT output is supported")
    lattice = tamari.build_lattice(args.m, args.n, cap=args.cap)
    sys.stdout.write(tamari.hasse_dot(lattice))
    return 0


def _negative_report(m: int) -> CheckReport:
    """Relations that must FAIL in the free algebras (found differences pass)."""
    report = CheckReport(name=f"negative controls m={m}")
    x, y, z = Gen("x"), Gen("y"), Gen("z")
    if m == 1:
        report.checks += 1
        lhs = evaluate_expression(App(1, App(1, x, y), z), 1)
        rhs = evaluate_expression(App(1, x, App(1, y, z)), 1)
        if lhs == rhs:
            report.fail("(x *_1 y) *_1 z equals x *_1 (y *_1 z) in the free algebra")
    elif m == 2:
        oracle = TreeOracle(2)
        leaf = trees.LEAF
        t2 = oracle.product  # basis-key product
        # (i): (u *_2 v) *_1 w  vs  u *_1 (v *_1 w + v *_0 w)
        report.checks += 1
        lhs = _extend_right(oracle, t2(leaf, leaf, 2), leaf, 1)
        rhs = _extend_left(oracle, leaf, t2(leaf, leaf, 1) + t2(leaf, leaf, 0), 1)
        if lhs == rhs:
            report.fail("alternative relation (i) unexpectedly holds")
        # (ii): (u *_1 v + u *_0 v) *_1 w  vs  u *_0 (v *_1 w)
        report.checks += 1
        lhs = _extend_right(oracle, t2(leaf, leaf, 1) + t2(leaf, leaf, 0), leaf, 1)
        rhs = _extend_left(oracle, leaf, t2(leaf, leaf, 1), 0)
        if lhs == rhs:
            report.fail("alternative relation (ii) unexpectedly holds")
    else:
        raise ValueError("negative suite is defined for m = 1 and m = 2")
    return report


def _extend_left(oracle, x, lc: LinComb, i: int) -> LinComb:
    out = LinComb.zero()
    for u, c in lc.items():
        out = out + oracle.product(x, u, i).scale(c)
    return out


def _extend_right(oracle, lc: LinComb, z, i: int) -> LinComb:
    out = LinComb.zero()
    for u, c in lc.items():
        out = out + oracle.product(u, z, i).scale(c)
    return out


def _suite_reports(args) -> list[CheckReport]:
    suite = args.suite
    reports: list[CheckReport] = []
    if suite in ("axioms", "all"):
        max_degree = args.max_degree or 5
        for m in range(1, (args.m or 3) + 1):
            tree_oracle = TreeOracle(m)
            r = trees.verify_dyck_axioms(
                m, max_degree, tree_oracle.product, tree_oracle.basis
            )
            r.name = f"axioms on trees m={m} degree<={max_degree}"
            reports.append(r)
            path_oracle = PathOracle(m)
            r = trees.verify_dyck_axioms(
                m, max_degree, path_oracle.product, path_oracle.basis
            )
            r.name = f"axioms on paths m={m} degree<={max_degree}"
            reports.append(r)
            r = trees.verify_circ_relations(
                m, min(max_degree, 5), tree_oracle.product, tree_oracle.basis
            )
            reports.append(r)
    if suite in ("ordm", "all"):
        max_degree = args.max_degree or 5
        family = posets.TamariBinaryFamily()
        for m in range(1, (args.m or 2) + 1):
            oracle = posets.OrdmOracle(family, m)
            r = trees.verify_dyck_axioms(m, max_degree, oracle.product, oracle.basis)
            r.name = f"axioms on Tamari {m}-simplices degree<={max_degree}"
            reports.append(r)
    if suite in ("simplicial", "all"):
        reports.append(simplicial.verify_simplicial_identities(args.max_m or 5))
    if suite in ("freeness", "all"):
        max_degree = args.max_degree or 4
        for m in range(1, (args.m or 2) + 1):
            for k in range(m):
                reports.append(simplicial.verify_Sk_freeness(m, k, max_degree))
    if suite in ("poset", "all"):
        if getattr(args, "file", None):
            with open(args.file, "r", encoding="utf-8") as handle:
                family = posets.parse_poset_file(handle.read())
            declared = family.declared_degrees()
            bound = args.max_degree or (max(declared) if declared else 1)
            reports.append(posets.verify_dendriform_poset(family, bound))
        else:
            instances = (
                (posets.PermutationFamily(), 4),
                (posets.SurjectionFamily(), 3),
                (posets.TamariBinaryFamily(), 5),
                (posets.PlanarTreeFamily(), 4),
            )
            for family, bound in instances:
                bound = args.max_degree or bound
                reports.append(posets.verify_dendriform_poset(family, bound))
    if suite in ("tamari-interval", "all"):
        max_size = args.max_size or 6
        for m in range(1, (args.m or 2) + 1):
            reports.append(tamari.verify_interval_product(m, max_size))
        if suite == "all":
            reports.append(tamari.verify_interval_product(3, 4))
    if suite in ("series", "all"):
        reports.append(series.check_series_identities(args.max_m or 4, args.order or 10))
    if suite in ("negative", "all"):
        for m in (args.m,) if args.m else (1, 2):
            reports.append(_negative_report(m))
    if not reports:
        raise ValueError(f"unknown suite {suite!r}")
    return reports


def _verify(args) -> int:
    reports = _suite_reports(args)
    ok = True
    for report in reports:
        print(report.summary())
        ok = ok and report.ok
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdyck",
        description="Exact computations in the algebras carried by m-Dyck paths, "
        "colored binary trees and dendriform-poset simplices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension table: counts of trees and paths")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=_dims)

    p = sub.add_parser("mul", help="compute a product in one of the models")
    p.add_argument("--model", choices=("trees", "paths", "ordm"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=_mul)

    p = sub.add_parser("verify", help="run an exhaustive verification suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=(
            "axioms",
            "simplicial",
            "freeness",
            "poset",
            "ordm",
            "tamari-interval",
            "series",
            "negative",
            "all",
        ),
    )
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--file", default=None, help="poset-family file for --suite poset")
    p.set_defaults(func=_verify)

    p = sub.add_parser("hasse", help="DOT rendering of an m-Tamari lattice")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", default="dot", choices=("dot",))
    p.add_argument("--cap", type=int, default=tamari.DEFAULT_CAP)
    p.set_defaults(func=_hasse)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

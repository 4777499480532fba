"""Command-line front end.

Exit codes: 0 success or embedding, 1 input error, 2 obstruction found,
3 a verification bound was exceeded.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path

from .clusters import LambdaParams
from .distortion import multiplicative_report
from .generators import FAMILIES, GenSpec, generate
from .graph import Graph, GraphError, WeightedGraph, all_pairs_distances, weighted_all_pairs
from .io import EdgeListError, format_edge_list, host_names, load_graph, load_host, read_text, to_dot
from .layering import build_layering_partition, cluster_diameters, format_layering
from .outerplanar import (Embedding, Obstruction, check_outerplanar_structure, find_min_feasible_lambda,
                          approximate_outerplanar_embedding, host_cycles, require_valid_obstruction,
                          verify_outerplanar_bounds)
from .tree_embed import approximate_tree_embedding, certify_tree_embedding

EXIT_OK, EXIT_INPUT, EXIT_OBSTRUCTION, EXIT_BOUND = 0, 1, 2, 3

_RATIONAL = re.compile(r"^\d+(/\d+)?$")


class InputError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    """Exact ``p/q`` or integer; decimals are refused to avoid rounding at strict thresholds."""
    if not _RATIONAL.match(text.strip()):
        raise InputError(f"expected an exact rational 'p/q' or integer, got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise InputError(f"zero denominator in {text!r}") from None


def _dec(x: Fraction) -> str:
    return f"{x} ({float(x):.6g})"


def _verdict(ok: bool) -> str:
    return "pass" if ok else "FAIL"


def _load(path: str) -> tuple[Graph, list[str]]:
    try:
        text = read_text(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return load_graph(text)
    except EdgeListError as exc:
        raise InputError(f"{path}: {exc}") from None


def _root(names: list[str], root: str | None) -> int:
    if root is None:
        return 0
    try:
        return names.index(root)
    except ValueError:
        raise InputError(f"unknown vertex {root!r}") from None


def _write(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def cmd_layering(args) -> int:
    g, names = _load(args.input)
    s = _root(names, args.root)
    lp = build_layering_partition(g, s)
    diams = cluster_diameters(lp, all_pairs_distances(g))
    print(f"root: {names[s]}")
    print(f"clusters: {len(lp.clusters)}")
    print(format_layering(lp, names, diams))
    print(f"D: {max(diams)}")
    return EXIT_OK


def _host_text(names, wg: WeightedGraph, header: str) -> str:
    hn = host_names(names, wg)
    return format_edge_list(hn, wg.edges, header)


def cmd_tree_embed(args) -> int:
    g, names = _load(args.input)
    s = _root(names, args.root)
    dm = all_pairs_distances(g)
    te = approximate_tree_embedding(g, s, dm)
    cert = certify_tree_embedding(g, te, dm)
    if args.out:
        _write(f"{args.out}.H", _host_text(names, te.H, "H: support-vertex tree"))
        _write(f"{args.out}.Hprime", _host_text(names, te.Hprime, "H': Steiner tree with 0/1 labels"))
        _write(f"{args.out}.Hell", _host_text(names, te.H_ell, f"H_ell: uniform length {te.ellH}"))
        _write(f"{args.out}.Hpell", _host_text(names, te.Hprime_ell, f"H'_ell: uniform length {te.ellHprime}"))
    rH, rHp = cert.report_H, cert.report_Hprime
    lines = [
        f"n: {g.n}",
        f"root: {names[s]}",
        f"D: {te.D}",
        f"m: {te.m}",
        f"ell_H: {te.ellH}",
        f"ell_Hprime: {te.ellHprime}",
        f"LB: {_dec(te.LB)}",
        f"distortion_H_ell: {_dec(rH.max_ratio)}",
        f"distortion_Hprime_ell: {_dec(rHp.max_ratio)}",
    ]
    for d in (2, 3):
        r = rHp.max_ratio_from(d)
        if r is not None:
            lines.append(f"distortion_Hprime_ell_at_distance_{d}_plus: {_dec(r)}")
    lines += [
        f"certificate non_contracting_H_ell: {_verdict(rH.non_contracting)}",
        f"certificate non_contracting_Hprime_ell: {_verdict(rHp.non_contracting)}",
        f"certificate additive_H: {_verdict(cert.additive_H_ok)}",
        f"certificate additive_Hprime: {_verdict(cert.additive_Hprime_ok)}",
        f"certificate stretch_H_ell: {_verdict(cert.bound_H_ok)}",
        f"certificate stretch_Hprime_ell: {_verdict(cert.bound_Hprime_ok)}",
        f"certificate factor_H_ell_le_9LB: {_verdict(cert.factor_H_ok)}",
        f"certificate factor_Hprime_ell_le_6LB_plus_2: {_verdict(cert.factor_Hprime_ok)}",
        f"certificate edge_shortcut: {_verdict(cert.shortcut_agrees)}",
    ]
    print("\n".join(lines))
    return EXIT_OK if cert.ok else EXIT_BOUND


def _print_obstruction(ob: Obstruction, names: list[str], lp, dm) -> None:
    print("result: obstruction")
    print(f"lambda: {ob.lam}")
    print(f"kind: {ob.kind.value}")
    print(f"clusters: {' '.join(str(c) for c in ob.clusters)}")
    if ob.vertices:
        a, b, c = ob.vertices
        print(f"vertices: {names[a]} {names[b]} {names[c]}")
        print(f"distances: {dm[a, b]} {dm[a, c]} {dm[b, c]} (threshold {4 * ob.lam + 2})")


def _explain(emb: Embedding, names: list[str]) -> None:
    for a in emb.analyses:
        focal = "-" if a.focal is None else f"{names[a.focal[0]]},{names[a.focal[1]]}"
        sizes = ",".join(str(len(c)) for c in a.cells)
        print(f"cluster {a.cid} class={a.cls.value} diam={a.diameter} almost_big={str(a.almost_big).lower()} "
              f"focal={focal} cells={sizes} spread={str(a.spread).lower()}")
    for d in emb.decisions:
        print(f"attach {d.child} -> {d.father} case={d.case} edges={len(d.edges)}")


def _print_embedding(g: Graph, emb: Embedding, names, dm) -> bool:
    report = verify_outerplanar_bounds(g, emb, dm)
    structure = check_outerplanar_structure(g.n, emb.edges)
    cycles = host_cycles(g.n, emb.edges)
    print("result: embedding")
    print(f"lambda: {emb.lam}")
    print(f"w: {emb.weight}")
    print(f"edges: {len(emb.edges)}")
    print(f"cycles: {' '.join(str(len(c)) for c in cycles) or '-'}")
    print(f"bound: {5 * emb.weight}")
    print(f"distortion: {_dec(report.max_ratio)}")
    print(f"non_contracting: {str(report.non_contracting).lower()}")
    print(f"certificate structure: {_verdict(structure)}")
    print(f"certificate bounds: {_verdict(report.within(5 * emb.weight))}")
    return structure and report.within(5 * emb.weight)


def _embedding_text(names, emb: Embedding) -> str:
    return format_edge_list(names, [(u, v, emb.weight) for u, v in emb.edges],
                            f"outerplanar host, lambda={emb.lam}, w={emb.weight}")


def cmd_outerplanar_embed(args) -> int:
    g, names = _load(args.input)
    s = _root(names, args.root)
    lam = parse_rational(args.lam)
    try:
        LambdaParams(lam)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    dm = all_pairs_distances(g)
    lp = build_layering_partition(g, s)
    out = approximate_outerplanar_embedding(g, s, lam, dm, lp)
    if isinstance(out, Obstruction):
        require_valid_obstruction(g, lp, dm, out)
        _print_obstruction(out, names, lp, dm)
        return EXIT_OBSTRUCTION
    ok = _print_embedding(g, out, names, dm)
    if args.explain:
        _explain(out, names)
    if args.out:
        _write(args.out, _embedding_text(names, out))
    return EXIT_OK if ok else EXIT_BOUND


def cmd_search_lambda(args) -> int:
    g, names = _load(args.input)
    s = _root(names, args.root)
    dm = all_pairs_distances(g)
    res = find_min_feasible_lambda(g, s, dm)
    print(f"candidates: {len(res.candidates)}")
    print(f"tested: {len(res.tried)}")
    for lam, outcome in res.tried:
        print(f"  lambda={lam}: {outcome}")
    print(f"min_feasible_lambda: {_dec(res.lam)}")
    ok = _print_embedding(g, res.outcome, names, dm)
    if args.out:
        _write(args.out, _embedding_text(names, res.outcome))
    return EXIT_OK if ok else EXIT_BOUND


def cmd_verify(args) -> int:
    g, names = _load(args.graph)
    bound = parse_rational(args.bound)
    try:
        hnames, hedges = load_host(read_text(args.host))
    except OSError as exc:
        raise InputError(f"cannot read {args.host}: {exc.strerror}") from None
    except EdgeListError as exc:
        raise InputError(f"{args.host}: {exc}") from None
    missing = [x for x in names if x not in hnames]
    if missing:
        raise InputError(f"mismatched vertex sets: host lacks {', '.join(missing[:5])}")
    # real vertices first, in graph order, so host rows line up with d_G
    order = names + [x for x in hnames if x not in set(names)]
    pos = {x: i for i, x in enumerate(order)}
    edges = tuple((pos[hnames[u]], pos[hnames[v]], w) for u, v, w in hedges)
    try:
        d_host = weighted_all_pairs(WeightedGraph(len(order), edges, g.n))
    except GraphError as exc:
        raise InputError(str(exc)) from None
    report = multiplicative_report(all_pairs_distances(g), d_host)

    for line in report.lines():
        key, _, val = line.partition(": ")
        if key.startswith("worst_") and val != "-":
            a, b = val.split()
            val = f"{names[int(a)]} {names[int(b)]}"
        print(f"{key}: {val}")
    print(f"bound: {bound}")
    ok = report.within(bound)
    print(f"verdict: {_verdict(ok)}")
    return EXIT_OK if ok else EXIT_BOUND


def cmd_export_dot(args) -> int:
    try:
        hnames, hedges = load_host(read_text(args.host))
    except OSError as exc:
        raise InputError(f"cannot read {args.host}: {exc.strerror}") from None
    except EdgeListError as exc:
        raise InputError(f"{args.host}: {exc}") from None
    sys.stdout.write(to_dot(hnames, hedges))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        p = parse_rational(args.p) if args.p is not None else Fraction(1, 2)
        spec = GenSpec(args.family, n=args.n, r=args.r, t=args.t, p=p, chords=args.chords, seed=args.seed)
        g = generate(spec)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    names = [f"v{i}" for i in range(g.n)]
    text = format_edge_list(names, g.edges, f"{args.family} n={g.n} m={g.m} seed={args.seed}")
    if g.n == 1:
        text += "v0\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lpembed", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layering", help="print the layering partition")
    p.add_argument("input")
    p.add_argument("--root")
    p.set_defaults(func=cmd_layering)

    p = sub.add_parser("tree-embed", help="tree approximants and their certificates")
    p.add_argument("input")
    p.add_argument("--root")
    p.add_argument("--out", metavar="PREFIX")
    p.set_defaults(func=cmd_tree_embed)

    p = sub.add_parser("outerplanar-embed", help="outerplanar host for a given lambda, or a witness")
    p.add_argument("input")
    p.add_argument("--root")
    p.add_argument("--lambda", dest="lam", required=True, metavar="P/Q")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--explain", action="store_true")
    p.set_defaults(func=cmd_outerplanar_embed)

    p = sub.add_parser("search-lambda", help="smallest candidate lambda with an outerplanar host")
    p.add_argument("input")
    p.add_argument("--root")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_search_lambda)

    p = sub.add_parser("verify", help="distortion of a host graph against an input graph")
    p.add_argument("graph")
    p.add_argument("host")
    p.add_argument("--bound", required=True, metavar="P/Q")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="render a weighted edge list as DOT")
    p.add_argument("host")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--p", metavar="P/Q")
    p.add_argument("--chords", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

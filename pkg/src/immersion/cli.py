"""Command-line entry point.

Exit status: 0 on success, 1 when a certificate is rejected (``INVALID:``) or a
construction's hypothesis fails (``HYPOTHESIS:``), 2 on usage or input errors.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from collections import Counter
from pathlib import Path

from . import catalog, colorings
from . import constructions as cons
from .certificates import (
    CertificateFormatError,
    ImmersionCertificate,
    read_certificate,
    verify,
    write_certificate,
)
from .dot import export_dot
from .graph import Graph, GraphFormatError, generate, read_graph, write_graph
from .products import ProductKind, power, product
from .scan import conjecture_scan, factor_pairs, parse_families
from .search import DEFAULT_NODES, DEFAULT_SECONDS, exact_immersion_number

log = logging.getLogger("immersion")

BOUNDS_NODES = 10**4
BOUNDS_SECONDS = 5.0


class UsageError(Exception):
    pass


class Rejected(Exception):
    """Exit-1 outcome; the message carries its INVALID:/HYPOTHESIS: prefix."""


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return p.read_text()


def _load_graph(path: str) -> Graph:
    try:
        return read_graph(_read_text(path))
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_cert(path: str) -> ImmersionCertificate:
    try:
        return read_certificate(_read_text(path))
    except CertificateFormatError as exc:
        raise Rejected(f"INVALID: {path}: {exc}") from None


def _write(path: str, text: str) -> None:
    Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _node_budget(flag: int | None, default: int) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("IMMERSION_BUDGET_NODES")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"IMMERSION_BUDGET_NODES must be an integer, got {env!r}") from None
    return default


def _witness(graph_path: str, cert_path: str | None, nodes: int) -> cons.FactorWitness:
    g = _load_graph(graph_path)
    if cert_path:
        cert = _load_cert(cert_path)
    else:
        cert = exact_immersion_number(g, nodes=nodes, seconds=DEFAULT_SECONDS).certificate
    try:
        return cons.FactorWitness(g, cert.for_host(g) if cert.host_order is None else cert)
    except ValueError as exc:
        raise Rejected(f"INVALID: {cert_path}: {exc}") from None


def _emit_cert(args, host: Graph, cert: ImmersionCertificate) -> None:
    verdict = verify(host, cert)
    if not verdict:
        raise Rejected(f"INVALID: constructed certificate: {verdict}")
    if args.output:
        _write(args.output, write_certificate(cert))
    if getattr(args, "graph_out", None):
        _write(args.graph_out, write_graph(host))
    print(f"CERT order={cert.order} host_order={host.order} host_edges={len(host.edges)}")


# --- subcommands --------------------------------------------------------------------

def cmd_gen(args) -> None:
    try:
        g = generate(args.family, *args.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.output, write_graph(g, args.labels))
    print(f"GRAPH order={g.order} edges={len(g.edges)}")


def cmd_product(args) -> None:
    g = product(_kind(args.kind), _load_graph(args.a), _load_graph(args.b))
    _write(args.output, write_graph(g, args.labels))
    print(f"GRAPH order={g.order} edges={len(g.edges)}")


def cmd_power(args) -> None:
    if args.d < 1:
        raise UsageError("power exponent must be >= 1")
    g = power(_kind(args.kind), _load_graph(args.a), args.d)
    _write(args.output, write_graph(g, args.labels))
    print(f"GRAPH order={g.order} edges={len(g.edges)}")


def _kind(name: str) -> ProductKind:
    try:
        return ProductKind.parse(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_construct(args) -> None:
    nodes = _node_budget(args.nodes, DEFAULT_NODES)
    method = args.method

    def need(*names):
        missing = [n for n in names if getattr(args, n) is None]
        if missing:
            raise UsageError(f"--method {method} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))

    try:
        if method == "direct-clique":
            need("t", "r")
            cert = cons.direct_complete_construct(args.t, args.r)
            host = product(ProductKind.DIRECT, generate("complete", args.t), generate("complete", args.r))
        elif method == "direct-gkr":
            need("g", "r")
            gw = _witness(args.g, args.g_cert, nodes)
            cert = cons.direct_gkr_construct(gw, args.r)
            host = product(ProductKind.DIRECT, gw.graph, generate("complete", args.r))
        elif method == "cartesian-path":
            need("g", "n")
            gw = _witness(args.g, args.g_cert, nodes)
            cert = cons.cartesian_path_construct(gw, args.n)
            host = product(ProductKind.CARTESIAN, gw.graph, generate("path", args.n))
        else:
            need("g", "h")
            gw = _witness(args.g, args.g_cert, nodes)
            hw = _witness(args.h, args.h_cert, nodes)
            build, kind = {
                "lex": (cons.lex_construct, ProductKind.LEXICOGRAPHIC),
                "cartesian": (cons.cartesian_construct, ProductKind.CARTESIAN),
                "direct-parity": (cons.direct_parity_construct, ProductKind.DIRECT),
                "direct-semiparity": (cons.direct_semiparity_construct, ProductKind.DIRECT),
            }[method]
            cert = build(gw, hw)
            host = product(kind, gw.graph, hw.graph)
    except cons.HypothesisUnmet as exc:
        raise Rejected(f"HYPOTHESIS: {exc}") from None
    _emit_cert(args, host, cert)


def cmd_verify(args) -> None:
    g = _load_graph(args.graph)
    cert = _load_cert(args.cert)
    verdict = verify(g, cert)
    for w in verdict.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if not verdict:
        raise Rejected(str(verdict))
    print(f"VALID order={cert.order}")


def cmd_search(args) -> None:
    g = _load_graph(args.graph)
    if args.bounds:
        nodes = _node_budget(args.nodes, BOUNDS_NODES)
        seconds = args.seconds if args.seconds is not None else BOUNDS_SECONDS
    else:
        nodes = _node_budget(args.nodes, DEFAULT_NODES)
        seconds = args.seconds if args.seconds is not None else DEFAULT_SECONDS
    report = exact_immersion_number(g, nodes=nodes, seconds=seconds)
    if args.cert_out and report.certificate is not None:
        _write(args.cert_out, write_certificate(report.certificate))
    for line in report.summary_lines():
        print(line)


def cmd_scan(args) -> None:
    try:
        groups = parse_families(args.families)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    nodes = _node_budget(args.nodes, 10**5)
    rows = conjecture_scan(factor_pairs(groups), _kind(args.kind), nodes=nodes,
                           seconds=args.seconds, ledger=Path(args.ledger) if args.ledger else None)
    counts = Counter(r.status for r in rows)
    print(f"ROWS {len(rows)} " + " ".join(
        f"{s}={counts.get(s, 0)}" for s in ("construction-met", "search-met", "open-within-budget", "VIOLATION")))


def _matrix(rows) -> None:
    for row in rows:
        print(" ".join(str(x) for x in row))


def cmd_coloring(args) -> None:
    n = args.n
    try:
        if args.which in ("odd", "even"):
            a = (colorings.odd_clique_assignment(n) if args.which == "odd"
                 else colorings.even_clique_assignment(n))
            m = a.clique_order
            _matrix([[0 if u == v else a.color(u, v) for v in range(m)] for u in range(m)])
            print("labels " + " ".join(str(x) for x in a.vertex_label))
        elif args.which == "latin":
            _matrix(colorings.idempotent_latin_square(n).rows())
        else:
            col = colorings.bipartite_r_coloring(n)
            _matrix([[col[(p, q)] for q in range(n)] for p in range(n)])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_catalog(args) -> None:
    if args.action == "list":
        for e in catalog.ENTRIES.values():
            print(f"{e.name}\t{e.params or '-'}\t{e.summary}")
        return
    if not args.name:
        raise UsageError("catalog build needs an entry name")
    try:
        host, cert = catalog.catalog_certificate(args.name, *args.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        _write(args.output, write_graph(host))
    if args.cert:
        _write(args.cert, write_certificate(cert))
    print(f"CERT order={cert.order} host_order={host.order} host_edges={len(host.edges)}")


def cmd_dot(args) -> None:
    g = _load_graph(args.graph)
    cert = _load_cert(args.cert) if args.cert else None
    try:
        text = export_dot(g, cert, name=Path(args.graph).stem)
    except ValueError as exc:
        raise Rejected(f"INVALID: {exc}") from None
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="immersion", description="Clique immersions in graph products.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate a named graph")
    s.add_argument("family")
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--labels", action="store_true", help="write vertex labels as comments")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("product", help="product of two graph files")
    s.add_argument("--kind", required=True)
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--labels", action="store_true")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("power", help="iterated product of a graph with itself")
    s.add_argument("--kind", required=True)
    s.add_argument("a")
    s.add_argument("d", type=int)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--labels", action="store_true")
    s.set_defaults(func=cmd_power)

    s = sub.add_parser("construct", help="build a certificate on a product")
    s.add_argument("--method", required=True, choices=[
        "lex", "cartesian", "cartesian-path", "direct-clique", "direct-gkr",
        "direct-parity", "direct-semiparity"])
    s.add_argument("--g", help="first factor graph")
    s.add_argument("--g-cert", help="certificate on the first factor (default: exact search)")
    s.add_argument("--h", help="second factor graph")
    s.add_argument("--h-cert")
    s.add_argument("--t", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--n", type=int, help="path length for cartesian-path")
    s.add_argument("--nodes", type=int)
    s.add_argument("-o", "--output", help="certificate output path")
    s.add_argument("--graph-out", help="write the product graph here")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="check a certificate against a graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--cert", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="exact immersion number or bounds")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="default")
    mode.add_argument("--bounds", action="store_true", help="small budget, report bounds")
    s.add_argument("--graph", required=True)
    s.add_argument("--nodes", type=int)
    s.add_argument("--seconds", type=float)
    s.add_argument("--cert-out")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("scan", help="check conjectured product bounds over factor families")
    s.add_argument("--kind", default="direct", choices=["direct", "strong"])
    s.add_argument("--families", required=True, help='e.g. "cycles:3..8,completes:2..4"')
    s.add_argument("--ledger")
    s.add_argument("--nodes", type=int)
    s.add_argument("--seconds", type=float, default=10.0)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("coloring", help="print a coloring table")
    s.add_argument("which", choices=["odd", "even", "latin", "bipartite"])
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_coloring)

    s = sub.add_parser("catalog", help="list or build hand-made certificates")
    s.add_argument("action", choices=["list", "build"])
    s.add_argument("name", nargs="?")
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("-o", "--output", help="graph output path")
    s.add_argument("-c", "--cert", help="certificate output path")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("dot", help="Graphviz export")
    s.add_argument("--graph", required=True)
    s.add_argument("--cert")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Rejected as exc:
        print(str(exc))
        return 1
    except OverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

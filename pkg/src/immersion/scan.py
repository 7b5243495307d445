"""Scan factor pairs for clique immersions in direct and strong products.

For each pair the scanner takes a clique witness of each factor, computes the
target order (``(t-1)(r-1)+1`` for direct, ``t*r`` for strong), tries the
constructions that apply, and falls back to a budgeted search at the target
order. A VIOLATION row is written only when that search finishes without a
budget cut and finds nothing; the graphs and report are dumped alongside.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
import re
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import graph as gr
from .certificates import ImmersionCertificate, make_certificate, map_certificate, parity_profile, verify
from .constructions import (
    FactorWitness,
    HypothesisUnmet,
    cycle_witness,
    direct_complete_construct,
    direct_parity_construct,
    direct_semiparity_construct,
    path_witness,
    trivial_witness,
)
from .graph import Graph, write_graph
from .products import ProductIndex, ProductKind, product, swap_permutation
from .search import Budget, exact_immersion_number, find_immersion

log = logging.getLogger(__name__)

LEDGER_COLUMNS = ("g", "h", "t", "r", "target", "status", "value", "time_ms")
STATUSES = ("construction-met", "search-met", "open-within-budget", "VIOLATION")


@dataclass(frozen=True)
class Factor:
    name: str
    graph: Graph
    witnesses: tuple[FactorWitness, ...]  # all of the same (best known) order

    @property
    def im(self) -> int:
        return self.witnesses[0].order


def cycle_factor(n: int) -> Factor:
    ws = [cycle_witness(n, (0, 1, 2))]
    if n % 2 == 0 and n >= 6:
        ws.append(cycle_witness(n, (0, 2, 4)))
    return Factor(f"C{n}", gr.cycle(n), tuple(ws))


def complete_factor(r: int) -> Factor:
    return Factor(f"K{r}", gr.complete(r), (trivial_witness(r),))


def path_factor(n: int) -> Factor:
    return Factor(f"P{n}", gr.path(n), (path_witness(n),))


def searched_factor(name: str, g: Graph, nodes: int, seconds: float) -> Factor:
    report = exact_immersion_number(g, nodes, seconds)
    return Factor(name, g, (FactorWitness(g, report.certificate),))


FAMILY_BUILDERS = {"cycles": cycle_factor, "completes": complete_factor, "paths": path_factor}
_MIN_PARAM = {"cycles": 3, "completes": 1, "paths": 1}


def parse_families(text: str) -> list[list[Factor]]:
    """``"cycles:3..8,completes:2..4"`` -> one list of factors per group."""
    groups = []
    for chunk in text.split(","):
        m = re.fullmatch(r"\s*(\w+):(\d+)(?:\.\.(\d+))?\s*", chunk)
        if not m:
            raise ValueError(f"bad family spec {chunk!r}; expected name:lo..hi")
        name, lo = m.group(1), int(m.group(2))
        hi = int(m.group(3) or lo)
        if name not in FAMILY_BUILDERS:
            raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILY_BUILDERS)}")
        if lo < _MIN_PARAM[name] or hi < lo:
            raise ValueError(f"bad range {lo}..{hi} for {name}")
        groups.append([FAMILY_BUILDERS[name](k) for k in range(lo, hi + 1)])
    return groups


def factor_pairs(groups: Sequence[Sequence[Factor]]) -> list[tuple[Factor, Factor]]:
    """Two groups pair across; otherwise unordered pairs (with repeats) of the union."""
    if len(groups) == 2:
        return list(itertools.product(groups[0], groups[1]))
    pool = [f for grp in groups for f in grp]
    return list(itertools.combinations_with_replacement(pool, 2))


# --- constructions ----------------------------------------------------------------

def _is_clique_witness(w: FactorWitness) -> bool:
    return all(len(p) == 2 for p in w.cert.trails.values())


def _embed_complete(host: Graph, h_order: int, gw: FactorWitness, hw: FactorWitness,
                    cert: ImmersionCertificate) -> ImmersionCertificate:
    """Move a certificate on K_t x K_r onto G x H through the witnesses' terminals."""
    small = ProductIndex(gw.order, hw.order)
    big = ProductIndex(host.order // h_order, h_order)
    vmap = [big.flat(gw.terminals[i], hw.terminals[j]) for i, j in map(small.pair, range(small.order))]
    return map_certificate(cert, vmap, host)


def _swapped(host: Graph, g: Graph, h: Graph, cert_hg: ImmersionCertificate) -> ImmersionCertificate:
    return map_certificate(cert_hg, swap_permutation(h.order, g.order), host)


def direct_constructions(host: Graph, g: Factor, h: Factor):
    """Yield (name, certificate) for every construction whose hypothesis holds."""
    for gw, hw in itertools.product(g.witnesses, h.witnesses):
        if _is_clique_witness(gw) and _is_clique_witness(hw):
            cert = direct_complete_construct(gw.order, hw.order)
            yield "clique-subgraph", _embed_complete(host, h.graph.order, gw, hw, cert)
        attempts = [
            ("parity", lambda: direct_parity_construct(gw, hw)),
            ("semiparity", lambda: direct_semiparity_construct(gw, hw)),
            ("semiparity", lambda: _swapped(host, g.graph, h.graph, direct_semiparity_construct(hw, gw))),
        ]
        for name, build in attempts:
            try:
                yield name, build()
            except HypothesisUnmet:
                continue


def strong_constructions(host: Graph, g: Factor, h: Factor):
    for gw, hw in itertools.product(g.witnesses, h.witnesses):
        if _is_clique_witness(gw) and _is_clique_witness(hw):
            # K_t strong K_r is K_{tr}
            small = product(ProductKind.STRONG, gr.complete(gw.order), gr.complete(hw.order))
            routes = {(a, b): (a, b) for a, b in small.edges}
            cert = make_certificate(small, range(small.order), routes)
            yield "clique-subgraph", _embed_complete(host, h.graph.order, gw, hw, cert)


# --- scanning -----------------------------------------------------------------------

@dataclass
class ScanRow:
    g: str
    h: str
    t: int
    r: int
    target: int
    status: str
    value: int
    time_ms: int
    method: str = ""

    def cells(self) -> list[str]:
        return [self.g, self.h, str(self.t), str(self.r), str(self.target), self.status,
                str(self.value), str(self.time_ms)]


def target_order(kind: ProductKind, t: int, r: int) -> int:
    if kind is ProductKind.DIRECT:
        return (t - 1) * (r - 1) + 1
    if kind is ProductKind.STRONG:
        return t * r
    raise ValueError(f"no conjectured target for {kind.value} products")


def scan_pair(kind: ProductKind, g: Factor, h: Factor, nodes: int, seconds: float,
              dump_dir: Path | None = None) -> ScanRow:
    start = time.monotonic()
    t, r = g.im, h.im
    target = target_order(kind, t, r)
    host = product(kind, g.graph, h.graph)
    builders = direct_constructions if kind is ProductKind.DIRECT else strong_constructions

    def row(status, value, method=""):
        ms = int((time.monotonic() - start) * 1000)
        return ScanRow(g.name, h.name, t, r, target, status, value, ms, method)

    for name, cert in builders(host, g, h):
        verdict = verify(host, cert)
        if not verdict:
            raise AssertionError(f"{name} produced an invalid certificate for {g.name}, {h.name}: {verdict}")
        if cert.order >= target:
            return row("construction-met", cert.order, name)

    decision = find_immersion(host, target, Budget(nodes, seconds))
    if decision.status == "found":
        assert verify(host, decision.certificate)
        return row("search-met", target, "search")
    if decision.status == "budget":
        return row("open-within-budget", 0, decision.reason)
    out = row("VIOLATION", 0, decision.reason)
    if dump_dir is not None:
        _dump_violation(dump_dir, kind, g, h, host, out)
    return out


def _dump_violation(root: Path, kind: ProductKind, g: Factor, h: Factor, host: Graph, row: ScanRow) -> None:
    where = root / f"{g.name}_{h.name}_{kind.value}"
    where.mkdir(parents=True, exist_ok=True)
    (where / "g.g").write_text(write_graph(g.graph))
    (where / "h.g").write_text(write_graph(h.graph))
    (where / "product.g").write_text(write_graph(host))
    doc = {"row": dict(zip(LEDGER_COLUMNS, row.cells())),
           "g_witness_parity": [parity_profile(w.cert).summary for w in g.witnesses],
           "h_witness_parity": [parity_profile(w.cert).summary for w in h.witnesses]}
    (where / "report.json").write_text(json.dumps(doc, indent=2) + "\n")
    log.error("VIOLATION for %s x %s; artifacts in %s", g.name, h.name, where)


def conjecture_scan(pairs: Iterable[tuple[Factor, Factor]], kind: ProductKind | str = ProductKind.DIRECT,
                    nodes: int = 10**5, seconds: float = 10.0, ledger: Path | None = None) -> list[ScanRow]:
    """Scan every pair; rows are appended to ``ledger`` (TSV) as they complete."""
    kind = ProductKind.parse(kind) if isinstance(kind, str) else kind
    dump_dir = Path(str(ledger) + ".violations") if ledger is not None else None
    rows = []
    handle = open(ledger, "w", newline="") if ledger is not None else None
    try:
        writer = csv.writer(handle, delimiter="\t", lineterminator="\n") if handle else None
        if writer:
            writer.writerow(LEDGER_COLUMNS)
        for g, h in pairs:
            out = scan_pair(kind, g, h, nodes, seconds, dump_dir)
            log.info("%s x %s: %s (%s)", g.name, h.name, out.status, out.method)
            rows.append(out)
            if writer:
                writer.writerow(out.cells())
                handle.flush()
    finally:
        if handle:
            handle.close()
    return rows

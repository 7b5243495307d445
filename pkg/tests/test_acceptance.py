"""Acceptance criteria, one check per criterion.

Run ``pytest tests/test_acceptance.py -s`` (or ``python3 tests/test_acceptance.py``)
to see one PASS/FAIL line per criterion. All values are exact; there are no
tolerances to loosen.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from immersion import graph as gr  # noqa: E402
from immersion.catalog import catalog_certificate  # noqa: E402
from immersion.certificates import verify  # noqa: E402
from immersion.colorings import (  # noqa: E402
    bipartite_r_coloring,
    check_assignment,
    even_clique_assignment,
    idempotent_latin_square,
    is_idempotent_latin,
    odd_clique_assignment,
)
from immersion.constructions import (  # noqa: E402
    HypothesisUnmet,
    cartesian_construct,
    cartesian_power_witness,
    cycle_witness,
    direct_complete_construct,
    direct_gkr_construct,
    lex_construct,
    trivial_witness,
)
from immersion.graph import degree, max_degree  # noqa: E402
from immersion.products import ProductIndex, ProductKind, product  # noqa: E402
from immersion.scan import conjecture_scan, factor_pairs, parse_families  # noqa: E402
from immersion.search import degree_upper_bound, exact_immersion_number, splitoff_oracle  # noqa: E402

from conftest import connected_atlas, random_graph, to_graph  # noqa: E402
from test_constructions import _run  # noqa: E402
from test_products import _expected_degree, _expected_edges  # noqa: E402


def _pinned(host, cert, value):
    """Certificate of order ``value`` verifies and the max-degree bound is also ``value``."""
    v = verify(host, cert)
    assert v, str(v)
    assert cert.order == value, f"certificate order {cert.order} != {value}"
    assert degree_upper_bound(host) == value, f"max-degree bound {degree_upper_bound(host)} != {value}"


def lex_cliques():
    for t, r in [(3, 4), (4, 3)]:
        host = product(ProductKind.LEXICOGRAPHIC, gr.complete(t), gr.complete(r))
        _pinned(host, lex_construct(trivial_witness(t), trivial_witness(r)), 12)
    return "im(K3 o K4) = im(K4 o K3) = 12"


def lex_cycles():
    for n in (3, 4, 5):
        gw = cycle_witness(n)
        host = product(ProductKind.LEXICOGRAPHIC, gw.graph, gr.complete(3))
        _pinned(host, lex_construct(gw, trivial_witness(3)), 9)
    return "im(Cn o K3) = 9 for n = 3, 4, 5"


def lex_k3_c5():
    g, c = catalog_certificate("k3_lex_c5")
    _pinned(g, c, 13)
    return "im(K3 o C5) = 13"


def cartesian_cliques():
    for t in range(2, 6):
        for r in range(2, 6):
            host = product(ProductKind.CARTESIAN, gr.complete(t), gr.complete(r))
            _pinned(host, cartesian_construct(trivial_witness(t), trivial_witness(r)), t + r - 1)
    return "im(Kt box Kr) = t+r-1 for 2 <= t, r <= 5"


def hypercubes():
    for d in range(1, 5):
        w = cartesian_power_witness(trivial_witness(2), d)
        assert w.graph == gr.generate("hypercube", d)
        _pinned(w.graph, w.cert, d + 1)
        if d <= 3:
            rep = exact_immersion_number(w.graph)
            assert rep.exact and rep.lower == d + 1, rep.summary_lines()
    return "im(Qd) = d+1 for d = 1..4; exact search agrees for d <= 3"


def hamming():
    for n, d in [(3, 2), (4, 2), (3, 3)]:
        w = cartesian_power_witness(trivial_witness(n), d)
        assert w.graph == gr.generate("hamming", n, d)
        _pinned(w.graph, w.cert, d * (n - 1) + 1)
    return "im(Kn^d) = d(n-1)+1 for (3,2), (4,2), (3,3)"


def p6_squared():
    g, c = catalog_certificate("p6_squared")
    _pinned(g, c, 5)
    return "im(P6^2) = 5"


def k3_box_paths():
    for n in range(2, 6):
        g = product(ProductKind.CARTESIAN, gr.complete(3), gr.path(n))
        rep = exact_immersion_number(g)
        assert rep.exact and rep.lower == 4, (n, rep.summary_lines())
        assert verify(g, rep.certificate)
    return "im(K3 box Pn) = 4 for n = 2..5 by exact search"


def direct_cliques():
    for t in range(2, 7):
        for r in range(2, 7):
            host = product(ProductKind.DIRECT, gr.complete(t), gr.complete(r))
            _pinned(host, direct_complete_construct(t, r), (t - 1) * (r - 1) + 1)
    return "im(Kt x Kr) = (t-1)(r-1)+1 for 2 <= t, r <= 6 (all parity cases)"


def cycle_times_clique():
    for m in (3, 5, 6):
        for r in (3, 4):
            gw = cycle_witness(m)
            host = product(ProductKind.DIRECT, gw.graph, gr.complete(r))
            _pinned(host, direct_gkr_construct(gw, r), 2 * r - 1)
    return "im(Cm x Kr) = 2r-1 for m in {3,5,6}, r in {3,4}"


def cycle_times_cycle():
    for m, n in [(5, 5), (5, 7), (6, 6), (6, 8), (4, 4), (6, 4)]:
        g, c = catalog_certificate("cm_cn", m, n)
        _pinned(g, c, 5)
    return "im(Cm x Cn) = 5 for (5,5), (5,7), (6,6), (6,8), (4,4), (6,4)"


def cycle_times_p4():
    for m in (5, 6, 8):
        g, c = catalog_certificate("cm_p4", m)
        _pinned(g, c, 5)
    return "im(Cm x P4) = 5 for m in {5,6,8}"


def master_property():
    rng = random.Random(1729)
    produced = 0
    while produced < 200:
        try:
            host, cert, order = _run(rng)
        except HypothesisUnmet:
            continue
        assert verify(host, cert), "construction output rejected"
        assert cert.order == order
        produced += 1
    return "200 randomized construction runs, 0 rejected"


def coloring_axioms():
    for t in range(2, 23, 2):
        assert check_assignment(odd_clique_assignment(t)) == []
    for r in range(3, 23, 2):
        assert check_assignment(even_clique_assignment(r)) == []
    for r in range(3, 13):
        assert is_idempotent_latin(idempotent_latin_square(r))
    for r in range(1, 11):
        col = bipartite_r_coloring(r)
        for p in range(r):
            assert sorted(col[(p, q)] for q in range(r)) == list(range(r))
            assert sorted(col[(q, p)] for q in range(r)) == list(range(r))
    return "clique assignments to order 21, Latin squares 3..12, K_{r,r} colorings r <= 10"


def oracle_equivalence():
    graphs = connected_atlas(7)
    small = [G for G in graphs if G.number_of_nodes() <= 6]
    seven = random.Random(5).sample(
        [G for G in graphs if G.number_of_nodes() == 7 and G.number_of_edges() <= 15], 200)
    checks = 0
    for G in small + seven:
        g = to_graph(G)
        im = exact_immersion_number(g).lower
        for t in range(1, max_degree(g) + 3):
            assert splitoff_oracle(g, t) == (im >= t), (sorted(G.edges()), t)
            checks += 1
    return f"{len(small)} graphs on <= 6 vertices + {len(seven)} on 7 vertices, {checks} (g, t) checks agree"


def quadratic():
    for t in range(2, 51):
        for a in range(1, t + 2):
            assert a * a - a * (t + 2) + t <= 0, (t, a)
    return "a^2 - a(t+2) + t <= 0 for 1 <= a <= t+1, t = 2..50"


def product_identities():
    rng = random.Random(99)
    for kind in ProductKind:
        for _ in range(100):
            g, h = random_graph(rng), random_graph(rng)
            p = product(kind, g, h)
            assert len(p.edges) == _expected_edges(kind, g, h)
            idx = ProductIndex(g.order, h.order)
            for x in range(p.order):
                a, b = idx.pair(x)
                assert degree(p, x) == _expected_degree(kind, degree(g, a), degree(h, b), h.order)
    return "degree and edge-count identities on 100 random pairs for each of 4 kinds"


def scan_smoke():
    rows = conjecture_scan(factor_pairs(parse_families("cycles:3..8,completes:2..4")), "direct")
    statuses = [r.status for r in rows]
    assert "VIOLATION" not in statuses
    assert {"construction-met", "search-met"} <= set(statuses), statuses
    return (f"{len(rows)} rows: {statuses.count('construction-met')} construction-met, "
            f"{statuses.count('search-met')} search-met, 0 VIOLATION")


CRITERIA = [
    ("1.lex-cliques", lex_cliques),
    ("1.lex-cycles", lex_cycles),
    ("1.lex-k3-c5", lex_k3_c5),
    ("1.cartesian-cliques", cartesian_cliques),
    ("1.hypercubes", hypercubes),
    ("1.hamming", hamming),
    ("1.p6-squared", p6_squared),
    ("1.k3-box-paths", k3_box_paths),
    ("1.direct-cliques", direct_cliques),
    ("1.cycle-x-clique", cycle_times_clique),
    ("1.cycle-x-cycle", cycle_times_cycle),
    ("1.cycle-x-p4", cycle_times_p4),
    ("2.master-property", master_property),
    ("2.coloring-axioms", coloring_axioms),
    ("2.oracle-equivalence", oracle_equivalence),
    ("2.cut-quadratic", quadratic),
    ("2.product-identities", product_identities),
    ("3.scan-smoke", scan_smoke),
]


RESULTS: list[str] = []  # shown in pytest's terminal summary by conftest


def _report(name, check):
    start = time.monotonic()
    try:
        detail = check()
    except Exception as exc:
        line = f"FAIL {name}: {type(exc).__name__}: {exc}"
        RESULTS.append(line)
        print(line)
        raise
    line = f"PASS {name}: {detail} ({time.monotonic() - start:.2f}s)"
    RESULTS.append(line)
    print(line)


@pytest.mark.parametrize("name, check", CRITERIA, ids=[n for n, _ in CRITERIA])
def test_criterion(name, check):
    _report(name, check)


if __name__ == "__main__":
    failed = 0
    for name, check in CRITERIA:
        try:
            _report(name, check)
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)

"""Hand-built certificates and exact-value families.

The explicit trail lists are written with 1-based coordinates ``(a, b)``
exactly as they are usually printed, and converted to flat 0-based product
indices by :func:`_flat1`. Lists whose length depends on a parameter are
generated by small loops over the first coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import graph as gr
from .certificates import ImmersionCertificate, make_certificate, map_certificate, verify
from .constructions import (
    FactorWitness,
    cartesian_path_construct,
    cycle_witness,
    direct_gkr_construct,
    direct_parity_construct,
    direct_semiparity_construct,
    trivial_witness,
)
from .graph import Graph
from .products import ProductKind, product, swap_permutation

Coord1 = tuple[int, int]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: str
    summary: str
    builder: Callable[..., tuple[Graph, ImmersionCertificate]]
    claimed: Callable[..., int]
    exact: bool


def _flat1(h_order: int, c: Coord1) -> int:
    return (c[0] - 1) * h_order + (c[1] - 1)


def _from_lists(host: Graph, h_order: int, terminals: list[Coord1],
                walks: list[list[Coord1]]) -> ImmersionCertificate:
    """Certificate from 1-based walks; pairs of adjacent terminals not listed get their edge."""
    f = lambda c: _flat1(h_order, c)  # noqa: E731
    routes = {}
    for w in walks:
        routes[(f(w[0]), f(w[-1]))] = [f(c) for c in w]
    term = [f(c) for c in terminals]
    covered = {frozenset(k) for k in routes}
    for i, a in enumerate(term):
        for b in term[i + 1:]:
            if frozenset((a, b)) not in covered and host.has_edge(a, b):
                routes[(a, b)] = [a, b]
    return make_certificate(host, term, routes)


def _alternate(firsts, odd_value: int, even_value: int) -> list[Coord1]:
    return [(x, odd_value if x % 2 else even_value) for x in firsts]


# --- entries ----------------------------------------------------------------

def k3_lex_c5() -> tuple[Graph, ImmersionCertificate]:
    host = product(ProductKind.LEXICOGRAPHIC, gr.complete(3), gr.cycle(5))
    terminals = [(v, u) for v in (1, 2, 3) for u in (1, 2, 3, 4, 5) if (v, u) not in ((2, 1), (3, 1))]
    walks = [
        [(1, 1), (2, 1), (1, 4)],
        [(1, 2), (2, 1), (1, 5)],
        [(1, 2), (3, 1), (1, 4)],
        [(1, 3), (3, 1), (1, 5)],
        [(1, 1), (3, 1), (2, 1), (1, 3)],
        [(2, 2), (3, 1), (2, 4)],
        [(2, 3), (3, 1), (2, 5)],
        [(3, 2), (2, 1), (3, 4)],
        [(3, 3), (2, 1), (3, 5)],
        # u_2 and u_5 in the copies over v_2 and v_3 go around through u_1
        [(2, 2), (2, 1), (2, 5)],
        [(3, 2), (3, 1), (3, 5)],
    ]
    return host, _from_lists(host, 5, terminals, walks)


def p6_squared() -> tuple[Graph, ImmersionCertificate]:
    host = gr.generate("grid_power", 6, 2)
    terminals = [(3, 3), (2, 3), (3, 2), (3, 4), (4, 3)]
    walks = [
        [(2, 3), (2, 2), (3, 2)],
        [(3, 2), (4, 2), (4, 3)],
        [(4, 3), (4, 4), (3, 4)],
        [(3, 4), (2, 4), (2, 3)],
        [(2, 3), (1, 3), (1, 4), (1, 5), (2, 5), (3, 5), (4, 5), (5, 5),
         (5, 4), (5, 3), (4, 3)],
        [(3, 2), (3, 1), (4, 1), (5, 1), (6, 1), (6, 2), (6, 3), (6, 4),
         (6, 5), (6, 6), (5, 6), (4, 6), (3, 6), (3, 5), (3, 4)],
    ]
    return host, _from_lists(host, 6, terminals, walks)


def _cm_c4_even(m: int, second: Graph) -> tuple[Graph, ImmersionCertificate]:
    """Five terminals in one component of C_m x C_4 or C_m x P_4, m >= 6 even."""
    host = product(ProductKind.DIRECT, gr.cycle(m), second)
    terminals = [(2, 2), (4, 2), (6, 2), (1, 3), (3, 3)]
    walks = [
        [(2, 2), (3, 1), (4, 2)],
        [(2, 2), (1, 1)] + _alternate(range(m, 5, -1), 3, 2),
        [(4, 2), (5, 1), (6, 2)],
        [(4, 2)] + _alternate(range(5, m + 1), 3, 4) + [(1, 3)],
        [(6, 2), (5, 3), (4, 4), (3, 3)],
        _alternate(range(6, m + 1), 1, 2) + [(1, 3)],
        [(1, 3), (2, 4), (3, 3)],
    ]
    return host, _from_lists(host, 4, terminals, walks)


def cm_cn(m: int, n: int) -> tuple[Graph, ImmersionCertificate]:
    if m < 3 or n < 3:
        raise ValueError("cm_cn needs m, n >= 3")
    if n % 2 == 0 and m % 2:
        host, cert = cm_cn(n, m)
        perm = swap_permutation(n, m)
        target = product(ProductKind.DIRECT, gr.cycle(m), gr.cycle(n))
        return target, map_certificate(cert, perm, target)
    if n % 2:
        gw = cycle_witness(m)
        cert = direct_semiparity_construct(gw, cycle_witness(n, (0, 1, 2)))
        return product(ProductKind.DIRECT, gr.cycle(m), gr.cycle(n)), cert
    if m >= 6 and n >= 6:
        cert = direct_parity_construct(cycle_witness(m, (0, 2, 4)), cycle_witness(n, (0, 2, 4)))
        return product(ProductKind.DIRECT, gr.cycle(m), gr.cycle(n)), cert
    if m == n == 4:
        host = product(ProductKind.DIRECT, gr.cycle(4), gr.cycle(4))
        terminals = [(2, 2), (4, 2), (1, 3), (3, 3), (1, 1)]
        walks = [
            [(2, 2), (3, 1), (4, 2)],
            [(1, 3), (2, 4), (3, 3)],
            [(1, 3), (4, 4), (3, 1), (2, 4), (1, 1)],
            [(3, 3), (4, 4), (1, 1)],
        ]
        return host, _from_lists(host, 4, terminals, walks)
    if n == 4:
        return _cm_c4_even(m, gr.cycle(4))
    # m == 4, n >= 6 even
    host, cert = cm_cn(n, m)
    target = product(ProductKind.DIRECT, gr.cycle(m), gr.cycle(n))
    return target, map_certificate(cert, swap_permutation(n, m), target)


def cm_p4(m: int) -> tuple[Graph, ImmersionCertificate]:
    if m < 5:
        raise ValueError("cm_p4 needs m >= 5")
    if m % 2 == 0:
        return _cm_c4_even(m, gr.path(4))
    host = product(ProductKind.DIRECT, gr.cycle(m), gr.path(4))
    terminals = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)]
    down = range(m, 1, -1)
    walks = [
        [(1, 2)] + _alternate(down, 3, 4) + [(1, 3)],
        [(1, 2)] + _alternate(range(m, 2, -1), 1, 2) + [(2, 2)],
        [(1, 2), (2, 1), (3, 2)],
        [(1, 3)] + _alternate(range(m, 2, -1), 4, 3) + [(2, 3)],
        [(1, 3)] + _alternate(range(m, 2, -1), 2, 3),
        [(2, 2)] + _alternate(range(3, m + 1), 3, 2) + [(1, 4), (2, 3)],
        [(2, 2), (1, 1)] + _alternate(range(m, 2, -1), 2, 1),
    ]
    return host, _from_lists(host, 4, terminals, walks)


def cm_kr(m: int, r: int) -> tuple[Graph, ImmersionCertificate]:
    if m < 3 or r < 2:
        raise ValueError("cm_kr needs m >= 3, r >= 2")
    host = product(ProductKind.DIRECT, gr.cycle(m), gr.complete(r))
    if r >= 3:
        return host, direct_gkr_construct(cycle_witness(m), r)
    # C_m x K_2 is a union of cycles; take three consecutive vertices of one
    length = m if m % 2 == 0 else 2 * m
    ring = [(k % m) * 2 + k % 2 for k in range(length)]
    a, b, c = ring[0], ring[1], ring[2]
    routes = {(a, b): [a, b], (b, c): [b, c], (a, c): [a] + ring[:2:-1] + [c]}
    return host, make_certificate(host, [a, b, c], routes)


def cycle_k3(n: int) -> tuple[Graph, ImmersionCertificate]:
    w = cycle_witness(n)
    return w.graph, w.cert


def complete_trivial(t: int) -> tuple[Graph, ImmersionCertificate]:
    w = trivial_witness(t)
    return w.graph, w.cert


def pn_power(n: int, d: int) -> tuple[Graph, ImmersionCertificate]:
    """Order 2d+1 certificate on P_n^d (n >= 6, d >= 2), grown from P_6^2."""
    if n < 6 or d < 2:
        raise ValueError("pn_power needs n >= 6, d >= 2")
    small, cert = p6_squared()
    host = gr.generate("grid_power", n, 2)
    embed = [(x // 6) * n + x % 6 for x in range(36)]
    witness = FactorWitness(host, map_certificate(cert, embed, host))
    for _ in range(d - 2):
        c = cartesian_path_construct(witness, n)
        g = product(ProductKind.CARTESIAN, witness.graph, gr.path(n))
        witness = FactorWitness(g, c)
    return witness.graph, witness.cert


ENTRIES: dict[str, CatalogEntry] = {e.name: e for e in [
    CatalogEntry("k3_lex_c5", "", "K_3 o C_5 has a K_13 immersion (max degree 12)",
                 k3_lex_c5, lambda: 13, True),
    CatalogEntry("p6_squared", "", "P_6 box P_6 has a K_5 immersion (max degree 4)",
                 p6_squared, lambda: 5, True),
    CatalogEntry("cm_cn", "m n", "C_m x C_n has a K_5 immersion, m, n >= 3",
                 cm_cn, lambda m, n: 5, True),
    CatalogEntry("cm_p4", "m", "C_m x P_4 has a K_5 immersion, m >= 5",
                 cm_p4, lambda m: 5, True),
    CatalogEntry("cm_kr", "m r", "C_m x K_r has a K_{2r-1} immersion (K_3 for r = 2)",
                 cm_kr, lambda m, r: 2 * r - 1 if r >= 3 else 3, True),
    CatalogEntry("cycle_k3", "n", "C_n has a K_3 immersion on the arcs between 1, 2, 3",
                 cycle_k3, lambda n: 3, True),
    CatalogEntry("complete_trivial", "t", "K_t immersed in itself",
                 complete_trivial, lambda t: t, True),
    CatalogEntry("pn_power", "n d", "P_n^d has a K_{2d+1} immersion, n >= 6, d >= 2",
                 pn_power, lambda n, d: 2 * d + 1, True),
]}


def catalog_certificate(name: str, *params: int) -> tuple[Graph, ImmersionCertificate]:
    """Build and verify a catalog entry."""
    try:
        entry = ENTRIES[name]
    except KeyError:
        raise ValueError(f"unknown catalog entry {name!r}; known: {', '.join(ENTRIES)}") from None
    expected = len(entry.params.split())
    if len(params) != expected:
        raise ValueError(f"{name} takes {expected} parameter(s) ({entry.params or 'none'}), got {len(params)}")
    g, cert = entry.builder(*params)
    verdict = verify(g, cert)
    if not verdict:
        raise AssertionError(f"catalog entry {name}{list(params)} does not verify: {verdict}")
    if cert.order != entry.claimed(*params):
        raise AssertionError(f"catalog entry {name} built order {cert.order}, claimed {entry.claimed(*params)}")
    return g, cert

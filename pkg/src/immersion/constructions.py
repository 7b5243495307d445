"""Certificate-producing constructions for clique immersions in graph products.

Every function here takes verified factor witnesses and returns a certificate
on the corresponding product graph (built with :func:`immersion.products.product`,
first factor major). Products are verified by the caller or the tests; nothing
here trusts its own output.

Coordinates inside route plans are ``(x, y)`` pairs of factor vertices; they
are flattened only when the certificate is assembled.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import graph as gr
from .certificates import (
    ImmersionCertificate,
    make_certificate,
    parity_profile,
    trivial_certificate,
    verify,
)
from .colorings import (
    bipartite_r_coloring,
    even_clique_assignment,
    idempotent_latin_square,
    odd_clique_assignment,
    own_color_missing_coloring,
)
from .graph import Graph
from .products import ProductIndex, ProductKind, product

Coord = tuple[int, int]


class HypothesisUnmet(ValueError):
    """The inputs do not satisfy the hypothesis of the construction."""


@dataclass(frozen=True)
class FactorWitness:
    graph: Graph
    cert: ImmersionCertificate

    def __post_init__(self):
        verdict = verify(self.graph, self.cert)
        if not verdict:
            raise ValueError(f"witness fails verification: {verdict}")

    @property
    def order(self) -> int:
        return self.cert.order

    @property
    def terminals(self) -> tuple[int, ...]:
        return self.cert.terminals

    def trail(self, i: int, j: int) -> tuple[int, ...]:
        return self.cert.trail(i, j)


def trivial_witness(t: int) -> FactorWitness:
    g = gr.complete(t)
    return FactorWitness(g, trivial_certificate(g))


def cycle_witness(n: int, terminals: Sequence[int] = (0, 1, 2)) -> FactorWitness:
    """K_s witness (s <= 3) on C_n whose trails are the arcs between terminals."""
    g = gr.cycle(n)
    terms = list(terminals)
    if not 1 <= len(terms) <= 3 or len(set(terms)) != len(terms):
        raise ValueError("cycle witness takes 1 to 3 distinct terminals")
    s = sorted(terms)
    routes = {}
    for a, b in zip(s, s[1:]):
        routes[(a, b)] = list(range(a, b + 1))
    if len(s) == 3:
        a, c = s[0], s[2]
        routes[(a, c)] = [(a - k) % n for k in range((a - c) % n + 1)]
    return FactorWitness(g, make_certificate(g, terms, routes))


def path_witness(n: int, a: int = 0, b: int | None = None) -> FactorWitness:
    """K_2 witness on P_n (or K_1 when ``b`` is omitted and n == 1)."""
    g = gr.path(n)
    if b is None:
        if n == 1:
            return FactorWitness(g, make_certificate(g, [a], {}))
        b = n - 1
    lo, hi = sorted((a, b))
    return FactorWitness(g, make_certificate(g, [a, b], {(lo, hi): list(range(lo, hi + 1))}))


def _assemble(host: Graph, idx: ProductIndex, terminals: Iterable[Coord],
              routes: dict[tuple[Coord, Coord], list[Coord]]) -> ImmersionCertificate:
    flat = lambda c: idx.flat(*c)  # noqa: E731
    return make_certificate(host, [flat(c) for c in terminals],
                            {(flat(a), flat(b)): [flat(c) for c in w] for (a, b), w in routes.items()})


def _single_terminal(kind: ProductKind, gw: FactorWitness, hw: FactorWitness | Graph):
    hgraph = hw.graph if isinstance(hw, FactorWitness) else hw
    hterm = hw.terminals[0] if isinstance(hw, FactorWitness) else 0
    host = product(kind, gw.graph, hgraph)
    idx = ProductIndex(gw.graph.order, hgraph.order)
    return _assemble(host, idx, [(gw.terminals[0], hterm)], {})


# --- lexicographic ------------------------------------------------------------------

def lex_construct(gw: FactorWitness, hw: FactorWitness) -> ImmersionCertificate:
    """Order t*r certificate on G o H."""
    G, H = gw.graph, hw.graph
    t, r = gw.order, hw.order
    host = product(ProductKind.LEXICOGRAPHIC, G, H)
    idx = ProductIndex(G.order, H.order)
    zs = hw.terminals
    terminals = [(g, z) for g in gw.terminals for z in zs]
    routes: dict[tuple[Coord, Coord], list[Coord]] = {}

    for g in gw.terminals:
        for (i, j), walk in hw.cert.trails.items():
            routes[((g, zs[i]), (g, zs[j]))] = [(g, h) for h in walk]

    for a, b in itertools.combinations(range(t), 2):
        P = gw.trail(a, b)
        u, w, inner = P[0], P[-1], P[1:-1]
        if not inner:
            for p, q in itertools.product(range(r), repeat=2):
                routes[((u, zs[p]), (w, zs[q]))] = [(u, zs[p]), (w, zs[q])]
            continue
        # color i class of the (p + q) mod r coloring is a perfect matching
        # between consecutive copies; every edge leaving z_i has color i
        colour = bipartite_r_coloring(r)
        for i in range(r):
            for first in range(r):
                positions = [first]
                for _ in inner[1:]:
                    positions.append(next(q for q in range(r) if colour[(positions[-1], q)] == i))
                last = next(q for q in range(r) if colour[(positions[-1], q)] == i)
                walk = [(u, zs[i])] + [(x, zs[p]) for x, p in zip(inner, positions)] + [(w, zs[last])]
                routes[((u, zs[i]), (w, zs[last]))] = walk
    return _assemble(host, idx, terminals, routes)


# --- Cartesian --------------------------------------------------------------------

def cartesian_construct(gw: FactorWitness, hw: FactorWitness) -> ImmersionCertificate:
    """Order t+r-1 certificate on G box H, anchored at the first terminal of each factor."""
    G, H = gw.graph, hw.graph
    t, r = gw.order, hw.order
    host = product(ProductKind.CARTESIAN, G, H)
    idx = ProductIndex(G.order, H.order)
    us, vs = gw.terminals, hw.terminals
    vk, ul = vs[0], us[0]
    layer = [(u, vk) for u in us]
    column = [(ul, v) for v in vs[1:]]
    routes: dict[tuple[Coord, Coord], list[Coord]] = {}
    for i, j in itertools.combinations(range(t), 2):
        routes[(layer[i], layer[j])] = [(x, vk) for x in gw.trail(i, j)]
    for i, j in itertools.combinations(range(1, r), 2):
        routes[((ul, vs[i]), (ul, vs[j]))] = [(ul, y) for y in hw.trail(i, j)]
    for i in range(t):
        for j in range(1, r):
            down = [(us[i], y) for y in hw.trail(0, j)]
            across = [(x, vs[j]) for x in gw.trail(i, 0)] if i else [down[-1]]
            routes[(layer[i], (ul, vs[j]))] = down + across[1:]
    return _assemble(host, idx, layer + column, routes)


def cartesian_power_witness(base: FactorWitness, d: int) -> FactorWitness:
    """Witness of order d(t-1)+1 on the d-th Cartesian power of ``base.graph``."""
    if d < 1:
        raise ValueError(f"needs d >= 1, got {d}")
    w = base
    for _ in range(d - 1):
        w = FactorWitness(product(ProductKind.CARTESIAN, w.graph, base.graph), cartesian_construct(w, base))
    return w


def _bfs_path(g: Graph, src: int, dst: int) -> list[int]:
    parent = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y in g.adjacency[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if dst not in parent:
        raise HypothesisUnmet(f"no path from {src} to {dst}; G must be connected")
    out = [dst]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out[::-1]


def cartesian_path_construct(gw: FactorWitness, n: int) -> ImmersionCertificate:
    """Order t+2 certificate on G box P_n for connected G with a non-terminal vertex."""
    G, t = gw.graph, gw.order
    if n < 5:
        raise HypothesisUnmet(f"needs n >= 5, got {n}")
    if not gr.is_connected(G):
        raise HypothesisUnmet("G must be connected")
    spare = [x for x in range(G.order) if x not in set(gw.terminals)]
    if not spare:
        raise HypothesisUnmet("every vertex of G is a terminal; no vertex left for the long trail")
    x = spare[0]
    P = gr.path(n)
    host = product(ProductKind.CARTESIAN, G, P)
    idx = ProductIndex(G.order, n)
    vs = gw.terminals
    v1 = vs[0]
    u1, u2, u3, u4, u5 = range(5)
    middle = [(v, u3) for v in vs]
    routes: dict[tuple[Coord, Coord], list[Coord]] = {}
    for i, j in itertools.combinations(range(t), 2):
        routes[(middle[i], middle[j])] = [(y, u3) for y in gw.trail(i, j)]
    for side in (u2, u4):
        for i in range(t):
            walk = [(y, side) for y in gw.trail(0, i)] if i else [(v1, side)]
            routes[((v1, side), middle[i])] = walk + [(vs[i], u3)]
    top = [(y, u1) for y in _bfs_path(G, v1, x)]
    bottom = [(y, u5) for y in _bfs_path(G, x, v1)]
    routes[((v1, u2), (v1, u4))] = ([(v1, u2)] + top + [(x, u2), (x, u3), (x, u4)]
                                    + bottom + [(v1, u4)])
    return _assemble(host, idx, middle + [(v1, u2), (v1, u4)], routes)


# --- direct product of cliques ----------------------------------------------------------

@dataclass(frozen=True)
class RouteTable:
    """Route plan in K_t x K_r with 1-based coordinates.

    ``routes`` maps each terminal pair to a walk in K_t x K_r. The grid pairs
    that share a coordinate are the edges of the auxiliary graph S, which is
    a copy of K_{t-1} box K_{r-1}.
    """

    t: int
    r: int
    terminals: tuple[Coord, ...]
    routes: dict[tuple[Coord, Coord], list[Coord]]

    def s_edges(self) -> list[tuple[Coord, Coord]]:
        grid = self.terminals[1:] if self.t > 1 and self.r > 1 else ()
        return [(a, b) for a, b in itertools.combinations(grid, 2)
                if a[0] == b[0] or a[1] == b[1]]


def _star_and_cross(t: int, r: int):
    grid = [(i, j) for i in range(2, t + 1) for j in range(2, r + 1)]
    routes = {((1, 1), g): [(1, 1), g] for g in grid}
    for a, b in itertools.combinations(grid, 2):
        if a[0] != b[0] and a[1] != b[1]:
            routes[(a, b)] = [a, b]
    return grid, routes


def _plan_first_even(t: int, r: int):
    """Plan for t even (r of either parity)."""
    grid, routes = _star_and_cross(t, r)
    columns = odd_clique_assignment(t)
    for j in range(2, r + 1):
        for i, k in itertools.combinations(range(2, t + 1), 2):
            a = columns.color_between_labels(i, k)
            routes[((i, j), (k, j))] = [(i, j), (a, 1), (k, j)]
    rows = odd_clique_assignment(r) if r % 2 == 0 else even_clique_assignment(r)
    for i in range(2, t + 1):
        for j, k in itertools.combinations(range(2, r + 1), 2):
            b = rows.color_between_labels(j, k)
            if b != 1:
                routes[((i, j), (i, k))] = [(i, j), (1, b), (i, k)]
            else:
                c, d = rows.second_missing(j), rows.second_missing(k)
                routes[((i, j), (i, k))] = [(i, j), (1, c), (i, 1), (1, d), (i, k)]
    return [(1, 1)] + grid, routes


def _plan_both_odd(t: int, r: int):
    """Plan for t, r both odd: solve (t-1, r), reroute its long paths through row t, add row t."""
    _, routes = _plan_first_even(t - 1, r)
    for key, walk in routes.items():
        if len(walk) == 5:
            routes[key] = [walk[0], (t, 1), walk[-1]]
    rows = even_clique_assignment(r)
    for j in range(2, r + 1):
        routes[((1, 1), (t, j))] = [(1, 1), (t, j)]
        for i in range(2, t):
            for k in range(2, r + 1):
                if k != j:
                    routes[((i, k), (t, j))] = [(i, k), (t, j)]
            c = rows.second_missing(j)
            routes[((i, j), (t, j))] = [(i, j), (1, c), (i, 1), (t, j)]
    for j, k in itertools.combinations(range(2, r + 1), 2):
        b = rows.color_between_labels(j, k)
        if b != 1:
            routes[((t, j), (t, k))] = [(t, j), (1, b), (t, k)]
        else:
            c, d = rows.second_missing(j), rows.second_missing(k)
            routes[((t, j), (t, k))] = [(t, j), (1, c), (t, 1), (1, d), (t, k)]
    terminals = [(1, 1)] + [(i, j) for i in range(2, t + 1) for j in range(2, r + 1)]
    return terminals, routes


def _check_plan(routes: dict) -> None:
    used = {}
    for key, walk in routes.items():
        for a, b in zip(walk, walk[1:]):
            assert a[0] != b[0] and a[1] != b[1], f"{a}-{b} is not an edge of K_t x K_r"
            e = (a, b) if a < b else (b, a)
            assert e not in used, f"plan reuses {e} in {used.get(e)} and {key}"
            used[e] = key


def direct_clique_plan(t: int, r: int) -> RouteTable:
    if t < 2 or r < 2:
        raise ValueError(f"needs t, r >= 2, got {t}, {r}")
    if t == r == 2:
        terminals = [(1, 1), (2, 2)]
        routes = {((1, 1), (2, 2)): [(1, 1), (2, 2)]}
    elif t % 2 == 0:
        terminals, routes = _plan_first_even(t, r)
    elif r % 2 == 0:
        swapped = direct_clique_plan(r, t)
        sw = lambda c: (c[1], c[0])  # noqa: E731
        terminals = sorted(sw(c) for c in swapped.terminals)
        routes = {(sw(a), sw(b)): [sw(c) for c in w] for (a, b), w in swapped.routes.items()}
    else:
        terminals, routes = _plan_both_odd(t, r)
    _check_plan(routes)
    return RouteTable(t, r, tuple(terminals), routes)


def direct_complete_construct(t: int, r: int) -> ImmersionCertificate:
    """Order (t-1)(r-1)+1 certificate on K_t x K_r (order 2 for t = r = 2)."""
    plan = direct_clique_plan(t, r)
    host = product(ProductKind.DIRECT, gr.complete(t), gr.complete(r))
    idx = ProductIndex(t, r)
    zero = lambda c: (c[0] - 1, c[1] - 1)  # noqa: E731
    return _assemble(host, idx, [zero(c) for c in plan.terminals],
                     {(zero(a), zero(b)): [zero(c) for c in w] for (a, b), w in plan.routes.items()})


def _expand(walk: Sequence[Coord], step: Callable[[Coord, Coord], list[Coord]],
            lift: Callable[[Coord], Coord]) -> list[Coord]:
    """Replace each edge of a plan walk by the host walk ``step`` gives for it."""
    out = [lift(walk[0])]
    for a, b in zip(walk, walk[1:]):
        seg = step(a, b)
        assert seg[0] == out[-1] and seg[-1] == lift(b)
        out.extend(seg[1:])
    return out


# --- G x K_r -------------------------------------------------------------------------

def _gkr_routes(gw: FactorWitness, r: int):
    """Plan of the clique construction lifted to G x K_r; coords are (G vertex, K_r vertex)."""
    t = gw.order
    plan = direct_clique_plan(t, r)
    if r % 2:
        table = own_color_missing_coloring(r)
        colour = lambda m, n: table[(min(m, n), max(m, n))]  # noqa: E731
    else:
        square = idempotent_latin_square(r)
        colour = lambda m, n: square[m, n]  # noqa: E731

    def step(a: Coord, b: Coord) -> list[Coord]:
        i, m = a[0] - 1, a[1] - 1
        j, n = b[0] - 1, b[1] - 1
        if i > j:
            return [(x, y) for x, y in reversed(step(b, a))]
        P = gw.trail(i, j)
        pegs = len(P) - 2
        if pegs % 2 == 0:
            hs = [m if s % 2 == 0 else n for s in range(pegs + 1)] + [n]
        else:
            ell = colour(m, n)
            hs = [m] + [ell if s % 2 else m for s in range(1, pegs + 1)] + [n]
        return list(zip(P, hs))

    lift = lambda c: (gw.terminals[c[0] - 1], c[1] - 1)  # noqa: E731
    terminals = [lift(c) for c in plan.terminals]
    routes = {(lift(a), lift(b)): _expand(w, step, lift) for (a, b), w in plan.routes.items()}
    return terminals, routes


def direct_gkr_construct(gw: FactorWitness, r: int) -> ImmersionCertificate:
    """Order (t-1)(r-1)+1 certificate on G x K_r, r >= 3."""
    if r < 3:
        raise HypothesisUnmet(f"needs r >= 3, got {r}")
    K = gr.complete(r)
    if gw.order == 1:
        return _single_terminal(ProductKind.DIRECT, gw, K)
    host = product(ProductKind.DIRECT, gw.graph, K)
    terminals, routes = _gkr_routes(gw, r)
    return _assemble(host, ProductIndex(gw.graph.order, r), terminals, routes)


# --- parity constructions ---------------------------------------------------------

def _diagonal(P: Sequence[int], Q: Sequence[int]) -> list[Coord]:
    """Walk both trails in step; the one with fewer pegs zigzags on its last edge."""
    k, l = len(P) - 2, len(Q) - 2
    if (k - l) % 2:
        raise HypothesisUnmet("trail peg counts differ in parity")
    if k > l:
        return [(x, y) for y, x in _diagonal(Q, P)]
    # P[k - 1] is c itself when k == 0, so the zigzag runs between a and c
    out = [(P[s], Q[s]) for s in range(k + 1)]
    out += [(P[k - 1] if (s - k) % 2 else P[k], Q[s]) for s in range(k + 1, l + 1)]
    out.append((P[-1], Q[-1]))
    return out


def _require_profiles(*pairs):
    for name, w, want in pairs:
        got = parity_profile(w.cert).summary
        if got not in want:
            raise HypothesisUnmet(f"{name} witness parity is {got}, need {' or '.join(sorted(want))}")


def direct_parity_construct(gw: FactorWitness, hw: FactorWitness) -> ImmersionCertificate:
    """Order (t-1)(r-1)+1 certificate on G x H when all trails share one peg parity."""
    t, r = gw.order, hw.order
    if t == 1 or r == 1:
        return _single_terminal(ProductKind.DIRECT, gw, hw)
    pg, ph = parity_profile(gw.cert).summary, parity_profile(hw.cert).summary
    if pg != ph or pg == "mixed":
        raise HypothesisUnmet(f"peg parities are {pg} and {ph}; need both all_even or both all_odd")
    host = product(ProductKind.DIRECT, gw.graph, hw.graph)
    idx = ProductIndex(gw.graph.order, hw.graph.order)
    G = lambda i: gw.terminals[i]  # noqa: E731
    H = lambda j: hw.terminals[j]  # noqa: E731

    if pg == "all_even":
        plan = direct_clique_plan(t, r)

        def step(a: Coord, b: Coord) -> list[Coord]:
            if a[0] > b[0]:
                return list(reversed(step(b, a)))
            return _diagonal(gw.trail(a[0] - 1, b[0] - 1), hw.trail(a[1] - 1, b[1] - 1))

        lift = lambda c: (G(c[0] - 1), H(c[1] - 1))  # noqa: E731
        terminals = [lift(c) for c in plan.terminals]
        routes = {(lift(a), lift(b)): _expand(w, step, lift) for (a, b), w in plan.routes.items()}
        return _assemble(host, idx, terminals, routes)

    grid = [(a, b) for a in range(1, t) for b in range(1, r)]
    routes = {}
    for a, b in grid:
        routes[((G(0), H(0)), (G(a), H(b)))] = _diagonal(gw.trail(0, a), hw.trail(0, b))
    for (a, b), (c, d) in itertools.combinations(grid, 2):
        key = ((G(a), H(b)), (G(c), H(d)))
        if a != c and b != d:
            routes[key] = _diagonal(gw.trail(a, c), hw.trail(b, d))
        elif a == c:
            Q = hw.trail(b, d)
            w_last = gw.trail(0, a)[-2]
            routes[key] = [(w_last if s % 2 else G(a), y) for s, y in enumerate(Q)]
        else:
            P = gw.trail(a, c)
            z_last = hw.trail(0, b)[-2]
            routes[key] = [(x, z_last if s % 2 else H(b)) for s, x in enumerate(P)]
    terminals = [(G(0), H(0))] + [(G(a), H(b)) for a, b in grid]
    return _assemble(host, idx, terminals, routes)


def direct_semiparity_construct(gw: FactorWitness, hw: FactorWitness) -> ImmersionCertificate:
    """Order (t-1)(r-1)+1 certificate on G x H when every trail of H's witness has even pegs."""
    r = hw.order
    if r < 3:
        raise HypothesisUnmet(f"needs r >= 3, got {r}")
    _require_profiles(("H", hw, {"all_even"}))
    if gw.order == 1:
        return _single_terminal(ProductKind.DIRECT, gw, hw)
    host = product(ProductKind.DIRECT, gw.graph, hw.graph)
    idx = ProductIndex(gw.graph.order, hw.graph.order)
    terminals, routes = _gkr_routes(gw, r)

    def step(a: Coord, b: Coord) -> list[Coord]:
        Q = hw.trail(a[1], b[1])
        return [(a[0] if s % 2 == 0 else b[0], y) for s, y in enumerate(Q)]

    lift = lambda c: (c[0], hw.terminals[c[1]])  # noqa: E731
    out = {(lift(a), lift(b)): _expand(w, step, lift) for (a, b), w in routes.items()}
    return _assemble(host, idx, [lift(c) for c in terminals], out)

import random
from collections import Counter

import pytest

from immersion import graph as gr
from immersion.certificates import trivial_certificate, verify
from immersion.constructions import (
    FactorWitness,
    HypothesisUnmet,
    cartesian_construct,
    cartesian_path_construct,
    cartesian_power_witness,
    cycle_witness,
    direct_clique_plan,
    direct_complete_construct,
    direct_gkr_construct,
    direct_parity_construct,
    direct_semiparity_construct,
    lex_construct,
    path_witness,
    trivial_witness,
)
from immersion.graph import max_degree
from immersion.products import ProductKind, product


def _check(kind, gw, hw_graph, cert, order):
    host = product(kind, gw.graph, hw_graph)
    v = verify(host, cert)
    assert v, v
    assert cert.order == order
    return host


def test_lex_cliques():
    _check(ProductKind.LEXICOGRAPHIC, trivial_witness(3), gr.complete(4),
           lex_construct(trivial_witness(3), trivial_witness(4)), 12)


def test_lex_cycle_k2():
    gw = cycle_witness(5)
    _check(ProductKind.LEXICOGRAPHIC, gw, gr.complete(2), lex_construct(gw, trivial_witness(2)), 6)


def test_lex_single_vertices():
    c = lex_construct(trivial_witness(1), trivial_witness(1))
    assert c.order == 1 and not c.trails


def test_cartesian_cliques():
    _check(ProductKind.CARTESIAN, trivial_witness(3), gr.complete(4),
           cartesian_construct(trivial_witness(3), trivial_witness(4)), 6)


def test_cartesian_hypercube():
    w = cartesian_power_witness(trivial_witness(2), 3)
    assert w.graph == gr.generate("hypercube", 3) and w.order == 4


def test_cartesian_with_k1_is_relabel():
    gw = cycle_witness(6, (0, 2, 4))
    c = cartesian_construct(gw, trivial_witness(1))
    assert c.terminals == gw.terminals and c.trails == gw.cert.trails


def test_cartesian_path_examples():
    gw = cycle_witness(5)
    host = _check(ProductKind.CARTESIAN, gw, gr.path(5), cartesian_path_construct(gw, 5), 5)
    assert max_degree(host) + 1 == 5
    pw = path_witness(4)
    _check(ProductKind.CARTESIAN, pw, gr.path(5), cartesian_path_construct(pw, 5), 4)
    pw = path_witness(4, 1, 2)
    _check(ProductKind.CARTESIAN, pw, gr.path(6), cartesian_path_construct(pw, 6), 4)


def test_cartesian_path_hypotheses():
    with pytest.raises(HypothesisUnmet, match="every vertex"):
        cartesian_path_construct(trivial_witness(3), 5)
    with pytest.raises(HypothesisUnmet, match="n >= 5"):
        cartesian_path_construct(cycle_witness(5), 4)
    g = gr.Graph.from_edges(4, [(0, 1), (2, 3)])
    disconnected = FactorWitness(g, trivial_certificate(g, [0, 1]))
    with pytest.raises(HypothesisUnmet, match="connected"):
        cartesian_path_construct(disconnected, 5)


@pytest.mark.parametrize("t", range(2, 7))
@pytest.mark.parametrize("r", range(2, 7))
def test_direct_cliques(t, r):
    c = direct_complete_construct(t, r)
    host = product(ProductKind.DIRECT, gr.complete(t), gr.complete(r))
    assert verify(host, c)
    assert c.order == (t - 1) * (r - 1) + 1
    assert max_degree(host) + 1 == (t - 1) * (r - 1) + 1


@pytest.mark.parametrize("t, r", [(3, 3), (4, 4), (4, 5), (5, 4), (3, 6), (5, 5)])
def test_direct_plan_reroutes_exactly_s(t, r):
    plan = direct_clique_plan(t, r)
    used = Counter()
    for walk in plan.routes.values():
        for a, b in zip(walk, walk[1:]):
            used[frozenset((a, b))] += 1
    assert max(used.values()) == 1
    star = {((1, 1), g) for g in plan.terminals[1:]}
    long_routes = {k for k, w in plan.routes.items() if len(w) > 2}
    assert long_routes == {tuple(sorted(e)) for e in plan.s_edges()}
    assert all(len(plan.routes[k]) == 2 for k in star)
    # every route avoids terminals in its interior
    terms = set(plan.terminals)
    assert all(not terms & set(w[1:-1]) for w in plan.routes.values())


def test_direct_small_cases():
    assert direct_complete_construct(2, 2).order == 2
    assert direct_complete_construct(4, 5).order == 13
    with pytest.raises(ValueError):
        direct_complete_construct(1, 3)


@pytest.mark.parametrize("gw, r", [
    (cycle_witness(7), 3),
    (cycle_witness(6, (0, 2, 4)), 3),
    (cycle_witness(5), 4),
    (cycle_witness(6, (0, 2, 4)), 4),
    (cycle_witness(8, (0, 3, 5)), 5),
])
def test_gkr(gw, r):
    _check(ProductKind.DIRECT, gw, gr.complete(r), direct_gkr_construct(gw, r), 2 * r - 1)


@pytest.mark.parametrize("t, r", [(3, 3), (4, 4), (3, 5), (5, 3), (4, 3)])
def test_gkr_on_clique_matches_clique_construction(t, r):
    a = direct_gkr_construct(trivial_witness(t), r)
    b = direct_complete_construct(t, r)
    assert a.order == b.order
    assert Counter(map(frozenset, a.trails.values())) == Counter(map(frozenset, b.trails.values()))


def test_gkr_needs_three():
    with pytest.raises(HypothesisUnmet):
        direct_gkr_construct(cycle_witness(5), 2)


def test_parity_examples():
    c9 = cycle_witness(9, (0, 3, 6))
    _check(ProductKind.DIRECT, c9, c9.graph, direct_parity_construct(c9, c9), 5)
    c6, c8 = cycle_witness(6, (0, 2, 4)), cycle_witness(8, (0, 2, 4))
    _check(ProductKind.DIRECT, c6, c8.graph, direct_parity_construct(c6, c8), 5)
    with pytest.raises(HypothesisUnmet):
        direct_parity_construct(c9, c6)
    with pytest.raises(HypothesisUnmet):
        direct_parity_construct(cycle_witness(7, (0, 2, 4)), cycle_witness(7, (0, 2, 4)))


def test_semiparity_examples():
    c9 = cycle_witness(9, (0, 3, 6))
    k3 = trivial_witness(3)
    _check(ProductKind.DIRECT, k3, c9.graph, direct_semiparity_construct(k3, c9), 5)
    c5 = cycle_witness(5)
    _check(ProductKind.DIRECT, c5, c9.graph, direct_semiparity_construct(c5, c9), 5)
    with pytest.raises(HypothesisUnmet):
        direct_semiparity_construct(c5, cycle_witness(7, (0, 2, 4)))
    with pytest.raises(HypothesisUnmet):
        direct_semiparity_construct(c5, trivial_witness(2))


# --- randomized master property -------------------------------------------------

def _random_witness(rng: random.Random) -> FactorWitness:
    kind = rng.choice(["cycle", "path", "clique", "hypercube"])
    if kind == "cycle":
        n = rng.randint(3, 9)
        k = rng.randint(1, 3)
        return cycle_witness(n, rng.sample(range(n), k))
    if kind == "path":
        n = rng.randint(2, 6)
        a, b = sorted(rng.sample(range(n), 2))
        return path_witness(n, a, b)
    if kind == "clique":
        return trivial_witness(rng.randint(1, 5))
    return cartesian_power_witness(trivial_witness(2), rng.randint(1, 3))


def _run(rng: random.Random):
    method = rng.choice(["lex", "cartesian", "cartesian-path", "direct-clique", "direct-gkr",
                         "direct-parity", "direct-semiparity"])
    gw, hw = _random_witness(rng), _random_witness(rng)
    t, r = gw.order, hw.order
    if method == "lex":
        return product(ProductKind.LEXICOGRAPHIC, gw.graph, hw.graph), lex_construct(gw, hw), t * r
    if method == "cartesian":
        return product(ProductKind.CARTESIAN, gw.graph, hw.graph), cartesian_construct(gw, hw), t + r - 1
    if method == "cartesian-path":
        n = rng.randint(5, 7)
        return product(ProductKind.CARTESIAN, gw.graph, gr.path(n)), cartesian_path_construct(gw, n), t + 2
    if method == "direct-clique":
        t, r = rng.randint(2, 7), rng.randint(2, 7)
        host = product(ProductKind.DIRECT, gr.complete(t), gr.complete(r))
        return host, direct_complete_construct(t, r), (t - 1) * (r - 1) + 1
    target = (t - 1) * (r - 1) + 1
    if method == "direct-gkr":
        r = rng.randint(3, 6)
        return (product(ProductKind.DIRECT, gw.graph, gr.complete(r)), direct_gkr_construct(gw, r),
                (t - 1) * (r - 1) + 1)
    if method == "direct-parity":
        return product(ProductKind.DIRECT, gw.graph, hw.graph), direct_parity_construct(gw, hw), target
    return product(ProductKind.DIRECT, gw.graph, hw.graph), direct_semiparity_construct(gw, hw), target


def test_master_property_200_runs():
    rng = random.Random(1729)
    produced, unmet, methods = 0, 0, Counter()
    while produced < 200:
        state = rng.getstate()
        try:
            host, cert, order = _run(rng)
        except HypothesisUnmet:
            unmet += 1
            continue
        v = verify(host, cert)
        assert v, (state, str(v))
        assert cert.order == order or (order == 1 and cert.order == 1)
        produced += 1
    assert produced == 200

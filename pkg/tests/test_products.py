import random

import pytest

from immersion import graph as gr
from immersion.graph import degree, degrees
from immersion.products import ProductIndex, ProductKind, power, product, swap_permutation
from conftest import random_graph


def _expected_edges(kind, g, h):
    vg, vh, eg, eh = g.order, h.order, len(g.edges), len(h.edges)
    cart = vg * eh + vh * eg
    direct = 2 * eg * eh
    return {
        ProductKind.CARTESIAN: cart,
        ProductKind.DIRECT: direct,
        ProductKind.STRONG: cart + direct,
        ProductKind.LEXICOGRAPHIC: eg * vh * vh + vg * eh,
    }[kind]


def _expected_degree(kind, dg, dh, vh):
    return {
        ProductKind.CARTESIAN: dg + dh,
        ProductKind.DIRECT: dg * dh,
        ProductKind.STRONG: dg + dh + dg * dh,
        ProductKind.LEXICOGRAPHIC: dg * vh + dh,
    }[kind]


@pytest.mark.parametrize("kind", list(ProductKind))
def test_degree_and_edge_identities(kind):
    rng = random.Random(hash(kind.value) % 1000)
    for _ in range(100):
        g, h = random_graph(rng), random_graph(rng)
        p = product(kind, g, h)
        idx = ProductIndex(g.order, h.order)
        assert p.order == g.order * h.order
        assert len(p.edges) == _expected_edges(kind, g, h)
        for x in range(p.order):
            a, b = idx.pair(x)
            assert degree(p, x) == _expected_degree(kind, degree(g, a), degree(h, b), h.order)


@pytest.mark.parametrize("kind", [ProductKind.CARTESIAN, ProductKind.DIRECT, ProductKind.STRONG])
def test_commutative_kinds_swap_isomorphism(kind):
    rng = random.Random(3)
    for _ in range(20):
        g, h = random_graph(rng), random_graph(rng)
        gh, hg = product(kind, g, h), product(kind, h, g)
        perm = swap_permutation(g.order, h.order)
        assert {tuple(sorted((perm[u], perm[v]))) for u, v in gh.edges} == set(hg.edges)


def test_lexicographic_not_commutative():
    p2, p3 = gr.path(2), gr.path(3)
    assert len(product("lexicographic", p2, p3).edges) == 13
    assert len(product("lexicographic", p3, p2).edges) == 11


def test_direct_of_bipartite_factors_is_disconnected():
    g = product(ProductKind.DIRECT, gr.cycle(4), gr.complete(2))
    assert len(gr.components(g)) == 2
    assert len(gr.components(product(ProductKind.DIRECT, gr.cycle(6), gr.cycle(8)))) == 2
    assert gr.is_connected(product(ProductKind.DIRECT, gr.cycle(5), gr.complete(2)))


def test_identities():
    k1 = gr.complete(1)
    g = gr.petersen()
    assert product(ProductKind.CARTESIAN, g, k1) == g
    assert product(ProductKind.STRONG, g, k1) == g
    assert product(ProductKind.LEXICOGRAPHIC, k1, g) == g
    assert product(ProductKind.LEXICOGRAPHIC, g, k1) == g
    assert product(ProductKind.STRONG, gr.complete(3), gr.complete(4)) == gr.complete(12)
    assert product(ProductKind.LEXICOGRAPHIC, gr.complete(3), gr.complete(4)) == gr.complete(12)


def test_flat_index_and_labels():
    idx = ProductIndex(3, 4)
    assert idx.flat(2, 1) == 9 and idx.pair(9) == (2, 1)
    p = product(ProductKind.CARTESIAN, gr.path(2), gr.path(3))
    assert p.label(4) == "(2,2)"
    nested = product(ProductKind.CARTESIAN, p, gr.path(2))
    assert nested.label(0) == "(1,1,1)"


def test_power_left_associated():
    q3 = power(ProductKind.CARTESIAN, gr.complete(2), 3)
    assert q3 == product(ProductKind.CARTESIAN, product(ProductKind.CARTESIAN, gr.complete(2), gr.complete(2)),
                         gr.complete(2))
    assert set(degrees(q3)) == {3}


def test_kind_parsing():
    assert ProductKind.parse("box") is ProductKind.CARTESIAN
    assert ProductKind.parse("tensor") is ProductKind.DIRECT
    with pytest.raises(ValueError):
        ProductKind.parse("zig")

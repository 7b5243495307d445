"""The four standard graph products and iterated powers.

Product vertex ``(g, h)`` is stored at flat index ``g * |V(H)| + h``, so the
copy of H sitting over vertex ``g`` of G occupies a contiguous block.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graph import Graph

MAX_ORDER = 10**7


class ProductKind(str, enum.Enum):
    LEXICOGRAPHIC = "lexicographic"
    CARTESIAN = "cartesian"
    DIRECT = "direct"
    STRONG = "strong"

    @classmethod
    def parse(cls, name: str) -> "ProductKind":
        aliases = {"lex": cls.LEXICOGRAPHIC, "box": cls.CARTESIAN, "tensor": cls.DIRECT,
                   "cross": cls.DIRECT}
        if name in aliases:
            return aliases[name]
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown product kind {name!r}") from None


@dataclass(frozen=True)
class ProductIndex:
    g_order: int
    h_order: int

    @property
    def order(self) -> int:
        return self.g_order * self.h_order

    def flat(self, g: int, h: int) -> int:
        if not (0 <= g < self.g_order and 0 <= h < self.h_order):
            raise IndexError(f"coordinate ({g}, {h}) out of range")
        return g * self.h_order + h

    def pair(self, x: int) -> tuple[int, int]:
        if not (0 <= x < self.order):
            raise IndexError(f"flat index {x} out of range")
        return divmod(x, self.h_order)


def _strip(label: str) -> str:
    return label[1:-1] if label.startswith("(") and label.endswith(")") else label


def _product_labels(g: Graph, h: Graph) -> tuple[str, ...]:
    return tuple(f"({_strip(g.label(a))},{_strip(h.label(b))})"
                 for a in range(g.order) for b in range(h.order))


def _cartesian_edges(g: Graph, h: Graph, idx: ProductIndex):
    for a in range(g.order):
        for b, c in h.edges:
            yield idx.flat(a, b), idx.flat(a, c)
    for a, c in g.edges:
        for b in range(h.order):
            yield idx.flat(a, b), idx.flat(c, b)


def _direct_edges(g: Graph, h: Graph, idx: ProductIndex):
    for a, c in g.edges:
        for b, d in h.edges:
            yield idx.flat(a, b), idx.flat(c, d)
            yield idx.flat(a, d), idx.flat(c, b)


def _lex_edges(g: Graph, h: Graph, idx: ProductIndex):
    for a in range(g.order):
        for b, c in h.edges:
            yield idx.flat(a, b), idx.flat(a, c)
    for a, c in g.edges:
        for b in range(h.order):
            for d in range(h.order):
                yield idx.flat(a, b), idx.flat(c, d)


def product(kind: ProductKind | str, g: Graph, h: Graph) -> Graph:
    kind = ProductKind.parse(kind) if isinstance(kind, str) else kind
    if g.order * h.order > MAX_ORDER:
        raise OverflowError(f"product order {g.order}*{h.order} exceeds {MAX_ORDER}")
    idx = ProductIndex(g.order, h.order)
    if kind is ProductKind.CARTESIAN:
        edges = list(_cartesian_edges(g, h, idx))
    elif kind is ProductKind.DIRECT:
        edges = list(_direct_edges(g, h, idx))
    elif kind is ProductKind.STRONG:
        edges = list(_cartesian_edges(g, h, idx)) + list(_direct_edges(g, h, idx))
    else:
        edges = list(_lex_edges(g, h, idx))
    return Graph.from_edges(idx.order, edges, _product_labels(g, h))


def power(kind: ProductKind | str, g: Graph, d: int) -> Graph:
    """Left-associated ``g * g * ... * g`` with ``d`` factors."""
    if d < 1:
        raise ValueError(f"power needs d >= 1, got {d}")
    out = g
    for _ in range(d - 1):
        out = product(kind, out, g)
    return out


def swap_permutation(g_order: int, h_order: int) -> list[int]:
    """``perm[flat_GH(a, b)] = flat_HG(b, a)``: the coordinate swap."""
    return [b * g_order + a for a in range(g_order) for b in range(h_order)]

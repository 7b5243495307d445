"""Immutable simple graphs, named families and the plain-text graph format.

Vertices are the integers ``0..n-1``. Edges are stored once, as ``(u, v)``
with ``u < v``, sorted lexicographically, so that two graphs with the same
edge set compare equal and serialize to the same bytes.

File format::

    # optional comment lines
    n
    u v
    u v
    ...
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Malformed graph text; ``line`` is 1-based (0 when not line specific)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    order: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"negative order {self.order}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ValueError(f"edge ({u}, {v}) out of range for order {self.order}")
            if u > v:
                raise ValueError(f"edge ({u}, {v}) not in canonical (min, max) form")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges not in canonical order")
        if self.labels is not None and len(self.labels) != self.order:
            raise ValueError("labels must have one entry per vertex")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        """Build a graph from edges in any orientation; duplicates are rejected."""
        canon = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            canon.append(canonical_edge(u, v))
        if len(set(canon)) != len(canon):
            dup = next(e for e in canon if canon.count(e) > 1)
            raise ValueError(f"duplicate edge {dup}")
        return cls(order, tuple(sorted(canon)), tuple(labels) if labels is not None else None)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.order)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edge_set

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self.adjacency[v]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v + 1)

    def with_labels(self, labels: Sequence[str] | None) -> "Graph":
        return Graph(self.order, self.edges, tuple(labels) if labels is not None else None)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.order):
            raise IndexError(f"vertex {v} out of range for order {self.order}")

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={len(self.edges)})"


def degree(g: Graph, v: int) -> int:
    g._check_vertex(v)
    return len(g.adjacency[v])


def max_degree(g: Graph) -> int:
    return max((len(a) for a in g.adjacency), default=0)


def degrees(g: Graph) -> list[int]:
    return [len(a) for a in g.adjacency]


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.order
    out = []
    for s in range(g.order):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.order <= 1 or len(components(g)) == 1


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    if sorted(perm) != list(range(g.order)):
        raise ValueError("perm must be a permutation of range(order)")
    labels = None
    if g.labels is not None:
        lab = [""] * g.order
        for v, p in enumerate(perm):
            lab[p] = g.labels[v]
        labels = lab
    return Graph.from_edges(g.order, ((perm[u], perm[v]) for u, v in g.edges), labels)


def subgraph_edges(g: Graph, keep: Iterable[Edge]) -> Graph:
    """Spanning subgraph of ``g`` on the given edges."""
    keep = set(canonical_edge(*e) for e in keep)
    if not keep <= g.edge_set:
        raise ValueError("edges not in graph")
    return Graph(g.order, tuple(sorted(keep)), g.labels)


# --- families ---------------------------------------------------------------

def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(n))


def complete(t: int) -> Graph:
    return Graph.from_edges(t, itertools.combinations(range(t), 2), _default_labels(t))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)), _default_labels(n))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), _default_labels(n))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)),
                            _default_labels(a + b))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, _default_labels(10))


def empty(n: int) -> Graph:
    return Graph(n, (), _default_labels(n))


def _iterated(base: Graph, d: int) -> Graph:
    from .products import ProductKind, power
    return power(ProductKind.CARTESIAN, base, d)


FAMILIES = {
    "complete": (1, lambda t: complete(t)),
    "path": (1, lambda n: path(n)),
    "cycle": (1, lambda n: cycle(n)),
    "complete_bipartite": (2, lambda a, b: complete_bipartite(a, b)),
    "hypercube": (1, lambda d: _iterated(complete(2), d)),
    "hamming": (2, lambda n, d: _iterated(complete(n), d)),
    "grid_power": (2, lambda n, d: _iterated(path(n), d)),
    "petersen": (0, lambda: petersen()),
    "empty": (1, lambda n: empty(n)),
}


def generate(family: str, *params: int) -> Graph:
    """Named family member, e.g. ``generate("hamming", 3, 2)`` for K_3 box K_3."""
    try:
        arity, build = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}") from None
    if len(params) != arity:
        raise ValueError(f"family {family!r} takes {arity} parameter(s), got {len(params)}")
    if family != "empty" and any(p < 1 for p in params):
        raise ValueError(f"family {family!r} parameters must be >= 1, got {list(params)}")
    return build(*params)


# --- text format ------------------------------------------------------------

def write_graph(g: Graph, with_labels: bool = False) -> str:
    lines = []
    if with_labels and g.labels is not None:
        lines.extend(f"# {v} {g.labels[v]}" for v in range(g.order))
    lines.append(str(g.order))
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines)


def read_graph(text: str) -> Graph:
    order = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if order is None:
            if len(parts) != 1 or not parts[0].isdigit():
                raise GraphFormatError(f"expected vertex count, got {line!r}", lineno)
            order = int(parts[0])
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer endpoint in {line!r}", lineno) from None
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if not (0 <= u < order and 0 <= v < order):
            raise GraphFormatError(f"endpoint out of range [0, {order}) in {line!r}", lineno)
        e = canonical_edge(u, v)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {u} {v} (first on line {seen[e]})", lineno)
        seen[e] = lineno
        edges.append(e)
    if order is None:
        raise GraphFormatError("missing header line with vertex count")
    return Graph(order, tuple(sorted(edges)), _default_labels(order))

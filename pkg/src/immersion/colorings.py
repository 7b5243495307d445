"""Edge colorings of cliques and of K_{r,r}, and idempotent Latin squares.

These are the routing tables used by the direct-product constructions.

Odd clique assignment (K_m, m odd, colors ``2..m+1``): vertex ``v`` of
``0..m-1`` colors edge ``{i, j}`` with base ``(i + j) mod m``; base ``c`` is
missing only at the vertex ``v`` with ``2v = c (mod m)``. Base ``c`` is shown as
color ``c + 2``.

Even clique assignment (K_{r-1}, r odd, colors ``1..r``): round-robin color
K_r on ``0..r-1``, drop vertex 0 (the one missing base 0), show base 0 as
color 1 and base ``c > 0`` as ``c + 1``. Survivor ``w`` of K_{r-1} is original
vertex ``w + 1``; its label is ``w + 2``, the color of its deleted edge.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Mapping


@dataclass(frozen=True)
class CliqueAssignment:
    clique_order: int
    colors: frozenset[int]
    edge_color: Mapping[tuple[int, int], int]
    vertex_label: tuple[int, ...]
    missing: tuple[frozenset[int], ...]
    mode: str  # "odd" or "even"

    def color(self, u: int, v: int) -> int:
        return self.edge_color[(u, v) if u < v else (v, u)]

    def vertex_of_label(self, label: int) -> int:
        return self.vertex_label.index(label)

    def color_between_labels(self, a: int, b: int) -> int:
        return self.color(self.vertex_of_label(a), self.vertex_of_label(b))

    def second_missing(self, label: int) -> int:
        """For even assignments: the missing color at ``label`` other than the label."""
        (other,) = self.missing[self.vertex_of_label(label)] - {label}
        return other


def _missing_sets(m: int, edge_color, colors) -> tuple[frozenset[int], ...]:
    seen = [set() for _ in range(m)]
    for (u, v), c in edge_color.items():
        seen[u].add(c)
        seen[v].add(c)
    return tuple(frozenset(colors - s) for s in seen)


def odd_clique_assignment(t: int) -> CliqueAssignment:
    """Proper coloring of the odd clique K_{t-1} (t even) with colors 2..t."""
    if t < 2 or t % 2:
        raise ValueError(f"odd clique assignment needs even t >= 2, got {t}")
    m = t - 1
    colors = frozenset(range(2, t + 1))
    edge_color = {(i, j): (i + j) % m + 2 for i in range(m) for j in range(i + 1, m)}
    labels = tuple((2 * v) % m + 2 for v in range(m))
    return CliqueAssignment(m, colors, edge_color, labels, _missing_sets(m, edge_color, colors), "odd")


def even_clique_assignment(r: int) -> CliqueAssignment:
    """Proper coloring of the even clique K_{r-1} (r odd) with colors 1..r."""
    if r < 3 or r % 2 == 0:
        raise ValueError(f"even clique assignment needs odd r >= 3, got {r}")
    m = r - 1
    colors = frozenset(range(1, r + 1))

    def shown(base: int) -> int:
        return 1 if base == 0 else base + 1

    edge_color = {(i, j): shown((i + 1 + j + 1) % r) for i in range(m) for j in range(i + 1, m)}
    labels = tuple(w + 2 for w in range(m))
    return CliqueAssignment(m, colors, edge_color, labels, _missing_sets(m, edge_color, colors), "even")


def check_assignment(a: CliqueAssignment) -> list[str]:
    """Invariant violations of ``a`` (empty when it is a valid assignment)."""
    problems = []
    m = a.clique_order
    for v in range(m):
        seen = [a.color(v, u) for u in range(m) if u != v]
        if len(seen) != len(set(seen)):
            problems.append(f"vertex {v}: repeated color")
        if not set(seen) <= a.colors:
            problems.append(f"vertex {v}: color outside palette")
        if a.missing[v] != a.colors - set(seen):
            problems.append(f"vertex {v}: missing set wrong")
        if a.vertex_label[v] not in a.missing[v]:
            problems.append(f"vertex {v}: label {a.vertex_label[v]} not missing")
    if sorted(a.vertex_label) != sorted(a.colors - ({1} if a.mode == "even" else set())):
        problems.append("labels are not a bijection onto the label colors")
    for c in a.colors:
        absent = [v for v in range(m) if c in a.missing[v]]
        if a.mode == "odd" and len(absent) != 1:
            problems.append(f"color {c} missing at {len(absent)} vertices")
        if a.mode == "even" and c == 1 and absent:
            problems.append("color 1 missing somewhere")
        if a.mode == "even" and c != 1 and len(absent) != 2:
            problems.append(f"color {c} missing at {len(absent)} vertices")
    if a.mode == "even" and any(len(s) != 2 for s in a.missing):
        problems.append("some vertex does not miss exactly two colors")
    return problems


@dataclass(frozen=True)
class LatinSquare:
    order: int
    cells: tuple[tuple[int, ...], ...]

    def __getitem__(self, hk: tuple[int, int]) -> int:
        h, k = hk
        return self.cells[h][k]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.cells]


def is_idempotent_latin(sq: LatinSquare) -> bool:
    r = sq.order
    full = list(range(r))
    if len(sq.cells) != r or any(sorted(row) != full for row in sq.cells):
        return False
    if any(sorted(sq.cells[i][j] for i in range(r)) != full for j in range(r)):
        return False
    return all(sq.cells[h][h] == h for h in range(r))


_latin_cache: dict[int, LatinSquare] = {}
_latin_lock = threading.Lock()


def _backtrack_idempotent(r: int) -> LatinSquare:
    grid = [[-1] * r for _ in range(r)]
    row_used = [set() for _ in range(r)]
    col_used = [set() for _ in range(r)]
    for h in range(r):
        grid[h][h] = h
        row_used[h].add(h)
        col_used[h].add(h)
    cells = [(i, j) for i in range(r) for j in range(r) if i != j]

    def fill(k: int) -> bool:
        if k == len(cells):
            return True
        i, j = cells[k]
        for s in range(r):
            if s in row_used[i] or s in col_used[j]:
                continue
            grid[i][j] = s
            row_used[i].add(s)
            col_used[j].add(s)
            if fill(k + 1):
                return True
            row_used[i].discard(s)
            col_used[j].discard(s)
        grid[i][j] = -1
        return False

    if not fill(0):
        raise ValueError(f"no idempotent Latin square of order {r}")
    return LatinSquare(r, tuple(tuple(row) for row in grid))


def idempotent_latin_square(r: int) -> LatinSquare:
    """An r x r Latin square with ``cell(h, h) = h``; none exists for r = 2."""
    if r <= 2:
        raise ValueError(f"idempotent Latin square needs r >= 3, got {r}")
    if r % 2:
        half = (r + 1) // 2
        return LatinSquare(r, tuple(tuple(((i + j) * half) % r for j in range(r)) for i in range(r)))
    with _latin_lock:
        if r not in _latin_cache:
            _latin_cache[r] = _backtrack_idempotent(r)
        return _latin_cache[r]


def own_color_missing_coloring(r: int) -> dict[tuple[int, int], int]:
    """Proper r-coloring of K_r (r odd) on ``0..r-1`` where color k is absent at k."""
    if r % 2 == 0:
        raise ValueError(f"needs odd r, got {r}")
    half = (r + 1) // 2
    return {(i, j): ((i + j) * half) % r for i in range(r) for j in range(i + 1, r)}


def bipartite_r_coloring(r: int) -> dict[tuple[int, int], int]:
    """Color of the edge from left ``p`` to right ``q`` in K_{r,r}: ``(p + q) mod r``."""
    if r < 1:
        raise ValueError(f"needs r >= 1, got {r}")
    return {(p, q): (p + q) % r for p in range(r) for q in range(r)}

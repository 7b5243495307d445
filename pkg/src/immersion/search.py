"""Exact immersion numbers of small graphs, bounds, and the split-off oracle.

The exact decider looks for K_t by choosing ``t`` terminals among vertices of
degree at least ``t - 1`` and packing edge-disjoint paths for all pairs by
backtracking. Two facts keep the search exact while shrinking it:

* Trails can be shortened to simple paths inside themselves, so only simple
  paths are enumerated.
* If two terminals are adjacent, some packing (if any exists) routes them by
  their edge: whichever trail used that edge can detour along the pair's old
  trail instead.

Terminal sets are filtered by the cut bound (``k`` and ``j`` terminals on
the two sides of an edge cut ``C`` need ``|C| >= k*j``) applied to every cut
of a Gomory-Hu tree of the host graph.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from math import comb

import networkx as nx

from .certificates import ImmersionCertificate, edges_hash, make_certificate, verify
from .graph import Graph, components, degrees, max_degree

log = logging.getLogger(__name__)

DEFAULT_NODES = 10**6
DEFAULT_SECONDS = 60.0


class BudgetExhausted(Exception):
    pass


@dataclass
class Budget:
    """Node and wall-clock limits for one (graph, t) decision."""

    nodes: int = DEFAULT_NODES
    seconds: float = DEFAULT_SECONDS
    spent: int = 0
    started: float = field(default_factory=time.monotonic)

    def tick(self) -> None:
        self.spent += 1
        if self.spent > self.nodes:
            raise BudgetExhausted("node budget")
        if self.spent % 512 == 0 and time.monotonic() - self.started > self.seconds:
            raise BudgetExhausted("time budget")


@dataclass(frozen=True)
class CutBoundQuery:
    cut_size: int
    k: int
    j: int


def cut_bound_feasible(q: CutBoundQuery) -> bool:
    """Can ``k`` terminals on one side of a cut of ``cut_size`` edges reach ``j`` on the other?"""
    if q.k < 0 or q.j < 0:
        raise ValueError("terminal counts must be non-negative")
    return q.cut_size >= q.k * q.j


def degree_upper_bound(g: Graph) -> int:
    return 0 if g.order == 0 else max_degree(g) + 1


# --- cut filter -------------------------------------------------------------------

class CutFilter:
    """Component masks plus the Gomory-Hu cuts of each component, as bitmasks."""

    def __init__(self, g: Graph):
        self.component_masks = []
        self.cuts: list[tuple[int, int, int]] = []  # (value, side mask, component mask)
        for comp in components(g):
            cmask = sum(1 << v for v in comp)
            self.component_masks.append(cmask)
            if len(comp) < 2:
                continue
            nxg = nx.Graph()
            nxg.add_nodes_from(comp)
            for u, v in g.edges:
                if cmask >> u & 1:
                    nxg.add_edge(u, v, capacity=1)
            tree = nx.gomory_hu_tree(nxg)
            for u, v, data in sorted(tree.edges(data=True)):
                t2 = tree.copy()
                t2.remove_edge(u, v)
                side = sum(1 << x for x in nx.node_connected_component(t2, u))
                self.cuts.append((int(data["weight"]), side, cmask))

    def feasible(self, mask: int) -> bool:
        if mask.bit_count() >= 2 and not any(mask & ~c == 0 for c in self.component_masks):
            return False
        for value, side, cmask in self.cuts:
            k = (mask & side).bit_count()
            j = (mask & cmask & ~side).bit_count()
            if not cut_bound_feasible(CutBoundQuery(value, k, j)):
                return False
        return True


# --- path packing ---------------------------------------------------------------

class _Packer:
    def __init__(self, g: Graph, budget: Budget):
        self.g = g
        self.budget = budget
        self.adj = g.adjacency
        self.eid = {}
        for i, (u, v) in enumerate(g.edges):
            self.eid[(u, v)] = i
            self.eid[(v, u)] = i
        self.used = [False] * len(g.edges)
        self.rdeg = degrees(g)

    def _use(self, path, flag: bool) -> None:
        step = -1 if flag else 1
        for x, y in zip(path, path[1:]):
            self.used[self.eid[(x, y)]] = flag
            self.rdeg[x] += step
            self.rdeg[y] += step

    def _bfs(self, src: int) -> list[int]:
        dist = [-1] * self.g.order
        dist[src] = 0
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if dist[y] < 0 and not self.used[self.eid[(x, y)]]:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def _paths(self, a: int, b: int):
        """Simple a-b paths over unused edges, shortest first, neighbors in index order."""
        dist = self._bfs(b)
        if dist[a] < 0:
            return
        n = self.g.order
        on_path = [False] * n
        path = [a]
        on_path[a] = True

        def extend(x: int, left: int):
            if x == b:
                if left == 0:
                    yield list(path)
                return
            for y in self.adj[x]:
                if on_path[y] or self.used[self.eid[(x, y)]]:
                    continue
                if dist[y] < 0 or dist[y] > left - 1:
                    continue
                on_path[y] = True
                path.append(y)
                yield from extend(y, left - 1)
                path.pop()
                on_path[y] = False

        for length in range(dist[a], n):
            yield from extend(a, length)

    def _connected(self, pairs) -> bool:
        label = [-1] * self.g.order
        for s in {v for p in pairs for v in p}:
            if label[s] >= 0:
                continue
            label[s] = s
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if label[y] < 0 and not self.used[self.eid[(x, y)]]:
                        label[y] = s
                        stack.append(y)
        return all(label[a] == label[b] for a, b in pairs)

    def pack(self, terminals: tuple[int, ...]) -> dict[tuple[int, int], list[int]] | None:
        routes: dict[tuple[int, int], list[int]] = {}
        pending = []
        for a, b in itertools.combinations(terminals, 2):
            if self.g.has_edge(a, b):
                routes[(a, b)] = [a, b]
            else:
                pending.append((a, b))
        for walk in routes.values():
            self._use(walk, True)
        try:
            dist = {a: self._bfs(a) for a in terminals}
            pending.sort(key=lambda p: -dist[p[0]][p[1]])
            need = {v: 0 for v in terminals}
            for a, b in pending:
                need[a] += 1
                need[b] += 1
            if self._solve(pending, 0, need, routes):
                return routes
            return None
        finally:
            self.used = [False] * len(self.g.edges)
            self.rdeg = degrees(self.g)

    def _solve(self, pending, k: int, need: dict[int, int], routes) -> bool:
        if k == len(pending):
            return True
        self.budget.tick()
        if any(self.rdeg[v] < c for v, c in need.items()):
            return False
        if not self._connected(pending[k:]):
            return False
        a, b = pending[k]
        need[a] -= 1
        need[b] -= 1
        for p in self._paths(a, b):
            self._use(p, True)
            routes[(a, b)] = p
            if self._solve(pending, k + 1, need, routes):
                return True
            del routes[(a, b)]
            self._use(p, False)
        need[a] += 1
        need[b] += 1
        return False


@dataclass
class Decision:
    """Outcome of searching for one clique order: found, refuted, or undecided."""

    t: int
    status: str  # found | none | budget
    certificate: ImmersionCertificate | None = None
    nodes: int = 0
    packed_sets: int = 0
    reason: str = ""


def find_immersion(g: Graph, t: int, budget: Budget | None = None) -> Decision:
    """Search for a K_t immersion in ``g``."""
    budget = budget or Budget()
    if t <= 0:
        return Decision(t, "found", make_certificate(g, [], {}))
    if t == 1:
        if g.order == 0:
            return Decision(t, "none", reason="empty graph")
        return Decision(t, "found", make_certificate(g, [0], {}))
    deg = degrees(g)
    candidates = [v for v in range(g.order) if deg[v] >= t - 1]
    if len(candidates) < t:
        return Decision(t, "none", reason="degree")
    cuts = CutFilter(g)
    packer = _Packer(g, budget)
    packed = 0
    try:
        for terms in itertools.combinations(candidates, t):
            if not cuts.feasible(sum(1 << v for v in terms)):
                continue
            packed += 1
            routes = packer.pack(terms)
            if routes is not None:
                cert = make_certificate(g, terms, routes)
                return Decision(t, "found", cert, budget.spent, packed)
    except BudgetExhausted as exc:
        return Decision(t, "budget", nodes=budget.spent, packed_sets=packed, reason=str(exc))
    return Decision(t, "none", nodes=budget.spent, packed_sets=packed,
                    reason="cut bound" if packed == 0 else "exhausted search")


@dataclass
class SearchReport:
    graph_id: str
    lower: int
    lower_by: str
    upper: int
    upper_by: str
    certificate: ImmersionCertificate | None
    elapsed: float
    nodes: int
    levels: list[Decision] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def summary_lines(self) -> list[str]:
        head = f"EXACT {self.lower}" if self.exact else f"BOUNDS {self.lower} {self.upper}"
        return [head,
                f"lower={self.lower} lower_by={self.lower_by} upper={self.upper} "
                f"upper_by={self.upper_by.replace(' ', '_')} nodes={self.nodes} "
                f"elapsed_ms={int(self.elapsed * 1000)}"]


def exact_immersion_number(g: Graph, nodes: int = DEFAULT_NODES,
                           seconds: float = DEFAULT_SECONDS) -> SearchReport:
    """im(g) by downward search from the max-degree bound; budgets apply per clique order."""
    start = time.monotonic()
    upper = degree_upper_bound(g)
    upper_by = "degree"
    levels = []
    total = 0
    if g.order == 0:
        return SearchReport(edges_hash(g)[:12], 0, "convention", 0, "convention", None, 0.0, 0)
    for t in range(upper, 0, -1):
        decision = find_immersion(g, t, Budget(nodes, seconds))
        levels.append(decision)
        total += decision.nodes
        log.debug("t=%d %s (%s) nodes=%d", t, decision.status, decision.reason, decision.nodes)
        if decision.status == "found":
            assert verify(g, decision.certificate)
            return SearchReport(edges_hash(g)[:12], t, "search", upper, upper_by,
                                decision.certificate, time.monotonic() - start, total, levels)
        if decision.status == "none" and upper == t:
            upper, upper_by = t - 1, decision.reason
    raise AssertionError("unreachable: K_1 exists in any non-empty graph")


# --- split-off oracle -------------------------------------------------------------

def splitoff_oracle(g: Graph, t: int, max_vertices: int = 10, max_edges: int = 15) -> bool:
    """Does some sequence of simple-graph split-offs on a subgraph of ``g`` reach a K_t?

    Deleting an edge ``uw`` and then splitting ``u-v-w`` gives the same graph
    as splitting with ``uw`` kept, so the search applies only that merged move.
    """
    if g.order > max_vertices or len(g.edges) > max_edges:
        raise ValueError(f"split-off oracle limited to {max_vertices} vertices and {max_edges} edges")
    if t <= 0:
        return True
    if t == 1:
        return g.order >= 1
    n = g.order
    pairs = list(itertools.combinations(range(n), 2))
    bit = {p: 1 << i for i, p in enumerate(pairs)}
    for (u, v), b in list(bit.items()):
        bit[(v, u)] = b
    need_edges = comb(t, 2)
    failed: set[int] = set()

    def neighbours(mask: int) -> list[list[int]]:
        nb = [[] for _ in range(n)]
        for (u, v), b in zip(pairs, (1 << i for i in range(len(pairs)))):
            if mask & b:
                nb[u].append(v)
                nb[v].append(u)
        return nb

    def has_clique(nb) -> bool:
        cand = [v for v in range(n) if len(nb[v]) >= t - 1]
        if len(cand) < t:
            return False
        sets = [set(x) for x in nb]
        return any(all(y in sets[x] for x, y in itertools.combinations(c, 2))
                   for c in itertools.combinations(cand, t))

    def dfs(mask: int) -> bool:
        if mask in failed:
            return False
        nb = neighbours(mask)
        if has_clique(nb):
            return True
        if mask.bit_count() - 1 < need_edges or sum(len(x) >= t - 1 for x in nb) < t:
            failed.add(mask)
            return False
        for v in range(n):
            for u, w in itertools.combinations(nb[v], 2):
                nxt = (mask & ~bit[(u, v)] & ~bit[(v, w)]) | bit[(u, w)]
                if dfs(nxt):
                    return True
        failed.add(mask)
        return False

    start = sum(bit[e] for e in g.edges)
    return dfs(start)

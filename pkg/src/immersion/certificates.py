"""K_t-immersion certificates and their verifier.

A certificate names ``t`` distinct terminals and, for every pair of terminal
positions ``i < j``, a trail (walk without repeated edges) from
``terminals[i]`` to ``terminals[j]``. Trails must be pairwise edge-disjoint.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import Graph, canonical_edge, degrees, max_degree, write_graph

Pair = tuple[int, int]


class CertificateFormatError(ValueError):
    """Schema violation while parsing; ``path`` points into the JSON document."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def edges_hash(g: Graph) -> str:
    return hashlib.sha256(write_graph(g).encode()).hexdigest()


@dataclass(frozen=True)
class ImmersionCertificate:
    order: int
    terminals: tuple[int, ...]
    trails: Mapping[Pair, tuple[int, ...]]
    host_order: int | None = None
    host_edges_hash: str | None = None

    def trail(self, i: int, j: int) -> tuple[int, ...]:
        """Trail from ``terminals[i]`` to ``terminals[j]`` (either order of i, j)."""
        if i < j:
            return self.trails[(i, j)]
        return tuple(reversed(self.trails[(j, i)]))

    def pegs(self, i: int, j: int) -> int:
        return len(self.trails[(min(i, j), max(i, j))]) - 2

    def position(self, v: int) -> int:
        return self.terminals.index(v)

    def for_host(self, g: Graph) -> "ImmersionCertificate":
        return ImmersionCertificate(self.order, self.terminals, self.trails, g.order, edges_hash(g))


def make_certificate(g: Graph | None, terminals: Sequence[int],
                     routes: Mapping[Pair, Sequence[int]]) -> ImmersionCertificate:
    """Certificate from routes keyed by terminal *vertex* pairs in either order.

    Each route is oriented so it runs from the lower terminal position to the
    higher one.
    """
    terminals = tuple(terminals)
    pos = {v: i for i, v in enumerate(terminals)}
    trails = {}
    for (a, b), walk in routes.items():
        i, j = pos[a], pos[b]
        walk = tuple(walk)
        if i > j:
            i, j, walk = j, i, walk[::-1]
        if (i, j) in trails:
            raise ValueError(f"two routes for terminal pair {(a, b)}")
        trails[(i, j)] = walk
    ordered = dict(sorted(trails.items()))
    if g is None:
        return ImmersionCertificate(len(terminals), terminals, ordered)
    return ImmersionCertificate(len(terminals), terminals, ordered, g.order, edges_hash(g))


def map_certificate(c: ImmersionCertificate, vertex_map, g: Graph | None = None) -> ImmersionCertificate:
    """Push a certificate through an injective vertex map (callable or sequence)."""
    f = vertex_map if callable(vertex_map) else vertex_map.__getitem__
    trails = {p: tuple(f(v) for v in w) for p, w in c.trails.items()}
    terminals = tuple(f(v) for v in c.terminals)
    if g is None:
        return ImmersionCertificate(c.order, terminals, trails)
    return ImmersionCertificate(c.order, terminals, trails, g.order, edges_hash(g))


def restrict(c: ImmersionCertificate, positions: Sequence[int]) -> ImmersionCertificate:
    """Sub-certificate on a subset of terminal positions (a K_s inside the K_t)."""
    positions = list(positions)
    terminals = tuple(c.terminals[p] for p in positions)
    trails = {}
    for a, b in itertools.combinations(range(len(positions)), 2):
        trails[(a, b)] = c.trail(positions[a], positions[b])
    return ImmersionCertificate(len(positions), terminals, trails, c.host_order, c.host_edges_hash)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    where: object = None
    warnings: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "VALID"
        return f"INVALID: {self.reason}" + (f" at {self.where}" if self.where is not None else "")


def verify(g: Graph, c: ImmersionCertificate) -> Verdict:
    """Check every certificate invariant against ``g`` from the raw data."""
    t = c.order
    if c.host_order is not None and c.host_order != g.order:
        return Verdict(False, "host order mismatch", (c.host_order, g.order))
    if c.host_edges_hash is not None and c.host_edges_hash != edges_hash(g):
        return Verdict(False, "host edge hash mismatch")
    if len(c.terminals) != t:
        return Verdict(False, "terminal count differs from order", (len(c.terminals), t))
    for v in c.terminals:
        if not (0 <= v < g.order):
            return Verdict(False, "terminal out of range", v)
    if len(set(c.terminals)) != t:
        dup = next(v for v in c.terminals if c.terminals.count(v) > 1)
        return Verdict(False, "terminals not distinct", dup)
    expected = set(itertools.combinations(range(t), 2))
    extra = set(c.trails) - expected
    if extra:
        return Verdict(False, "trail for unknown pair", min(extra))
    absent = expected - set(c.trails)
    if absent:
        return Verdict(False, "missing trail", min(absent))

    used: dict[tuple[int, int], Pair] = {}
    warnings = []
    for pair in sorted(c.trails):
        walk = c.trails[pair]
        a, b = c.terminals[pair[0]], c.terminals[pair[1]]
        if len(walk) < 2 or {walk[0], walk[-1]} != {a, b}:
            return Verdict(False, "trail endpoints are not the pair's terminals", pair)
        own = set()
        for x, y in zip(walk, walk[1:]):
            if not (0 <= x < g.order and 0 <= y < g.order) or not g.has_edge(x, y):
                return Verdict(False, "step is not a host edge", (pair, (x, y)))
            e = canonical_edge(x, y)
            if e in own:
                return Verdict(False, "trail repeats an edge", (pair, e))
            own.add(e)
            if e in used:
                return Verdict(False, "edge reused across trails", (used[e], pair, e))
            used[e] = pair
        if len(set(walk)) != len(walk):
            warnings.append(f"trail {pair} repeats a vertex")

    # cross-check: t terminals each need degree >= t - 1
    assert t <= max_degree(g) + 1 or g.order == 0, "accepted certificate exceeds max-degree bound"
    assert t <= 1 or sorted(degrees(g))[-t] >= t - 1
    return Verdict(True, warnings=tuple(warnings))


@dataclass(frozen=True)
class ParityProfile:
    pegs: Mapping[Pair, int]
    summary: str  # all_even | all_odd | mixed


def parity_profile(c: ImmersionCertificate) -> ParityProfile:
    pegs = {p: len(w) - 2 for p, w in sorted(c.trails.items())}
    parities = {n % 2 for n in pegs.values()}
    if parities <= {0}:
        summary = "all_even"
    elif parities == {1}:
        summary = "all_odd"
    else:
        summary = "mixed"
    return ParityProfile(pegs, summary)


def split_off(g: Graph, u: int, v: int, w: int) -> Graph:
    """Replace edges uv, vw by uw, staying within simple graphs."""
    for x in (u, v, w):
        g._check_vertex(x)
    if u == w:
        raise ValueError("split-off needs u != w")
    if not g.has_edge(u, v) or not g.has_edge(v, w):
        raise ValueError(f"missing edge for split-off of {u}-{v}-{w}")
    if g.has_edge(u, w):
        raise ValueError(f"edge {u}-{w} already present; split-off would create a multi-edge")
    edges = (g.edge_set - {canonical_edge(u, v), canonical_edge(v, w)}) | {canonical_edge(u, w)}
    return Graph(g.order, tuple(sorted(edges)), g.labels)


# --- JSON format ----------------------------------------------------------------

def write_certificate(c: ImmersionCertificate) -> str:
    doc = {
        "order": c.order,
        "terminals": list(c.terminals),
        "trails": [{"pair": list(p), "walk": list(c.trails[p])} for p in sorted(c.trails)],
        "host_order": c.host_order,
        "host_edges_hash": c.host_edges_hash,
    }
    return json.dumps(doc, indent=2) + "\n"


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CertificateFormatError(path, f"expected integer, got {value!r}")
    return value


def _list(value, path: str) -> list:
    if not isinstance(value, list):
        raise CertificateFormatError(path, f"expected list, got {type(value).__name__}")
    return value


def read_certificate(text: str) -> ImmersionCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError("$", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CertificateFormatError("$", "expected object")
    for key in ("order", "terminals", "trails"):
        if key not in doc:
            raise CertificateFormatError(f"$.{key}", "required field missing")
    order = _int(doc["order"], "$.order")
    host_order = doc.get("host_order")
    if host_order is not None:
        host_order = _int(host_order, "$.host_order")
    host_hash = doc.get("host_edges_hash")
    if host_hash is not None and not isinstance(host_hash, str):
        raise CertificateFormatError("$.host_edges_hash", "expected hex string")

    def vertex(value, path):
        v = _int(value, path)
        if v < 0 or (host_order is not None and v >= host_order):
            raise CertificateFormatError(path, f"vertex {v} out of range for host order {host_order}")
        return v

    terminals = tuple(vertex(v, f"$.terminals[{i}]")
                      for i, v in enumerate(_list(doc["terminals"], "$.terminals")))
    trails: dict[Pair, tuple[int, ...]] = {}
    for k, item in enumerate(_list(doc["trails"], "$.trails")):
        base = f"$.trails[{k}]"
        if not isinstance(item, dict) or "pair" not in item or "walk" not in item:
            raise CertificateFormatError(base, "expected object with 'pair' and 'walk'")
        pair = _list(item["pair"], base + ".pair")
        if len(pair) != 2:
            raise CertificateFormatError(base + ".pair", "expected two positions")
        i, j = (_int(x, f"{base}.pair[{n}]") for n, x in enumerate(pair))
        if not (0 <= i < j < order):
            raise CertificateFormatError(base + ".pair", f"need 0 <= i < j < {order}, got {[i, j]}")
        if (i, j) in trails:
            raise CertificateFormatError(base + ".pair", f"duplicate pair {[i, j]}")
        walk = tuple(vertex(v, f"{base}.walk[{n}]")
                     for n, v in enumerate(_list(item["walk"], base + ".walk")))
        trails[(i, j)] = walk
    return ImmersionCertificate(order, terminals, dict(sorted(trails.items())), host_order, host_hash)


def trivial_certificate(g: Graph, terminals: Iterable[int] | None = None) -> ImmersionCertificate:
    """Certificate whose trails are single edges between pairwise adjacent terminals."""
    terminals = tuple(range(g.order) if terminals is None else terminals)
    routes = {(a, b): (a, b) for a, b in itertools.combinations(terminals, 2)}
    return make_certificate(g, terminals, routes)

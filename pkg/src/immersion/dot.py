"""Graphviz export with terminals and trails highlighted."""

from __future__ import annotations

from .certificates import ImmersionCertificate, verify
from .graph import Graph, canonical_edge

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#17becf", "#8c564b", "#e377c2", "#bcbd22", "#7f7f7f",
)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: Graph, c: ImmersionCertificate | None = None, name: str = "G") -> str:
    """DOT text for ``g``; with a certificate, each trail gets its own color class."""
    owner = {}
    if c is not None:
        verdict = verify(g, c)
        if not verdict:
            raise ValueError(f"certificate does not verify: {verdict}")
        for pair in sorted(c.trails):
            walk = c.trails[pair]
            for x, y in zip(walk, walk[1:]):
                owner[canonical_edge(x, y)] = pair
    terminals = {v: i for i, v in enumerate(c.terminals)} if c is not None else {}
    pair_rank = {p: k for k, p in enumerate(sorted(c.trails))} if c is not None else {}

    lines = [f"graph {_quote(name)} {{", "  node [shape=circle, fontsize=10];"]
    for v in range(g.order):
        attrs = [f"label={_quote(g.label(v))}"]
        if v in terminals:
            attrs += ["shape=doublecircle", "style=filled", 'fillcolor="#ffe08a"',
                      f"xlabel={_quote('T' + str(terminals[v] + 1))}"]
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in g.edges:
        pair = owner.get((u, v))
        if pair is None:
            style = 'color="#bbbbbb", style=dashed' if c is not None else ""
        else:
            color = PALETTE[pair_rank[pair] % len(PALETTE)]
            style = f'color="{color}", penwidth=2.5, class="trail_{pair[0]}_{pair[1]}"'
        lines.append(f"  {u} -- {v}" + (f" [{style}];" if style else ";"))
    lines.append("}")
    return "\n".join(lines) + "\n"

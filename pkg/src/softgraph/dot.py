"""Graphviz DOT rendering of software graphs, views and maps."""

from __future__ import annotations

from typing import Optional

from .core import SoftwareGraph


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _quote(text: str) -> str:
    return '"' + _escape(text) + '"'


def export_dot(g: SoftwareGraph, label_edges: bool = True, cluster_by: Optional[str] = None, name: str = "software") -> str:
    """Render ``g`` as a ``digraph``.

    Nodes are named by vertex id and labelled ``id\\n{types}``.  With
    ``cluster_by`` set, vertices of that artifact type are grouped in one
    cluster.  Output order is sorted, so equal graphs give equal text.
    """
    labels = g.label_map()
    lines = [f"digraph {_quote(name)} {{", "  node [shape=box];"]

    def node_line(v, indent="  "):
        text = _escape(v) + "\\n{" + ", ".join(sorted(labels[v])) + "}"
        return f'{indent}{_quote(v)} [label="{text}"];'

    clustered = set()
    if cluster_by is not None:
        clustered = {v for v in labels if cluster_by in labels[v]}
        lines.append(f"  subgraph {_quote('cluster_' + cluster_by)} {{")
        lines.append(f"    label={_quote(cluster_by)};")
        lines += [node_line(v, "    ") for v in sorted(clustered)]
        lines.append("  }")
    lines += [node_line(v) for v in sorted(labels) if v not in clustered]

    for e in sorted(g.edges):
        attr = f" [label={_quote(e.trace)}]" if label_edges else ""
        lines.append(f"  {_quote(e.src)} -> {_quote(e.dst)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"

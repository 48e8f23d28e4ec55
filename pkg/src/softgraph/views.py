"""Typed subgraph extraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Edge, SoftwareGraph, TypeDictionary


@dataclass(frozen=True)
class ViewSpec:
    artifact_types: frozenset
    trace_types: frozenset

    def __init__(self, artifact_types: Iterable[str] = (), trace_types: Iterable[str] = ()):
        object.__setattr__(self, "artifact_types", frozenset(artifact_types))
        object.__setattr__(self, "trace_types", frozenset(trace_types))

    @classmethod
    def full(cls, g: SoftwareGraph) -> "ViewSpec":
        return cls(g.dictionary.artifact_types, g.dictionary.trace_types)

    def __and__(self, other: "ViewSpec") -> "ViewSpec":
        return ViewSpec(self.artifact_types & other.artifact_types, self.trace_types & other.trace_types)

    def __le__(self, other: "ViewSpec") -> bool:
        return self.artifact_types <= other.artifact_types and self.trace_types <= other.trace_types


CLASS_VIEW = ViewSpec({"class", "interface", "method", "field"}, {"contain", "implement", "return"})


def view(g: SoftwareGraph, spec: ViewSpec) -> SoftwareGraph:
    """Restrict ``g`` to the vertices carrying a selected artifact type and
    to the edges of a selected trace type running between such vertices.

    Each surviving vertex keeps only its selected labels, and the result's
    dictionary shrinks to the spec's type sets.
    """
    g.dictionary.check_artifacts(spec.artifact_types)
    g.dictionary.check_traces(spec.trace_types)
    keep = spec.artifact_types
    labels = {}
    for v, attrs in g.label_map().items():
        kept = attrs & keep
        if kept:
            labels[v] = kept
    edges = [
        e for e in g.edges
        if e.trace in spec.trace_types and e.src in labels and e.dst in labels
    ]
    d = TypeDictionary.unchecked(spec.artifact_types, spec.trace_types)
    return SoftwareGraph.from_parts(d, labels, edges, check=False)


def view_stats(g: SoftwareGraph, spec: ViewSpec) -> tuple:
    v = view(g, spec)
    return len(v.vertices), len(v.edges)


def is_subgraph(small: SoftwareGraph, big: SoftwareGraph) -> bool:
    return (
        small.vertices <= big.vertices
        and small.labels <= big.labels
        and small.edges <= big.edges
    )


__all__ = ["ViewSpec", "CLASS_VIEW", "view", "view_stats", "is_subgraph", "Edge"]

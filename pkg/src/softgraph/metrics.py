"""Real-valued measurements over a software graph.

Every catalog metric runs in linear time in the size of the graph, apart
from per-vertex queries which are bounded by the vertex's degree.  New
metrics are added with :func:`register_metric`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .core import GraphError, SoftwareGraph, neighbors

ALL_OTHERS = "all_others"


@dataclass(frozen=True)
class MetricResult:
    name: str
    value: Union[int, float]
    scope: str = "graph"
    details: tuple = ()
    vacuous: bool = False

    def format(self) -> str:
        """Human-readable one-liner, e.g. ``coverage 0.5 uncovered: ME2``."""
        line = f"{self.name} {self.value}"
        if self.details:
            line += " uncovered: " + ",".join(self.details)
        elif self.vacuous:
            line += " (vacuous: no targets)"
        return line


def count_by_type(g: SoftwareGraph, a: str) -> MetricResult:
    g.dictionary.check_artifacts([a])
    return MetricResult(f"count_by_type[{a}]", len(g.vertices_of_type(a)))


def coupling(g: SoftwareGraph, v: str, direction: str = "both", attr_filter=None, trace_filter=None) -> MetricResult:
    """Number of distinct neighbouring vertices of ``v``."""
    found = neighbors(g, v, direction, trace_filter, attr_filter)
    return MetricResult("coupling", len(found), scope=v)


def reachable_from(g: SoftwareGraph, sources, trace_filter=None) -> set:
    """Vertices reachable from any source along edges whose type passes the
    filter; the sources themselves are included."""
    sources = set(sources)
    unknown = sorted(sources - g.vertices)
    if unknown:
        raise GraphError(f"unknown vertex: {', '.join(unknown)}")
    traces = None if trace_filter is None else g.dictionary.check_traces(trace_filter)

    out = g._incidence()[0]
    seen = set(sources)
    stack = list(sources)
    while stack:
        v = stack.pop()
        for e in out[v]:
            if e.dst not in seen and (traces is None or e.trace in traces):
                seen.add(e.dst)
                stack.append(e.dst)
    return seen


def coverage(g: SoftwareGraph, source_type: str, target_type: str = ALL_OTHERS, trace_filter=None) -> MetricResult:
    """Fraction of target vertices reachable from at least one source vertex.

    With ``target_type=ALL_OTHERS`` the targets are all vertices not carrying
    ``source_type``.  Zero targets give 1.0 with ``vacuous=True``.
    """
    g.dictionary.check_artifacts([source_type])
    sources = g.vertices_of_type(source_type)
    if target_type == ALL_OTHERS:
        targets = g.vertices - sources
    else:
        g.dictionary.check_artifacts([target_type])
        targets = g.vertices_of_type(target_type)

    name = "coverage"
    if not targets:
        return MetricResult(name, 1.0, vacuous=True)
    reached = reachable_from(g, sources, trace_filter)
    uncovered = tuple(sorted(targets - reached))
    value = (len(targets) - len(uncovered)) / len(targets)
    return MetricResult(name, value, details=uncovered)


METRICS: dict = {}


def register_metric(name: str, fn: Optional[Callable] = None):
    """Add ``fn`` to the catalog under ``name``; usable as a decorator."""
    if fn is None:
        return lambda f: register_metric(name, f)
    METRICS[name] = fn
    return fn


register_metric("count_by_type", count_by_type)
register_metric("coupling", coupling)
register_metric("coverage", coverage)


@register_metric("reachable_from")
def _reachable_count(g: SoftwareGraph, sources, trace_filter=None) -> MetricResult:
    if isinstance(sources, str):
        sources = [sources]
    return MetricResult("reachable_from", len(reachable_from(g, sources, trace_filter)))


def evaluate_metric(g: SoftwareGraph, name: str, **args) -> MetricResult:
    try:
        fn = METRICS[name]
    except KeyError:
        raise GraphError(f"unknown metric {name!r}; available: {', '.join(sorted(METRICS))}") from None
    try:
        return fn(g, **args)
    except TypeError as exc:
        raise GraphError(f"bad arguments for metric {name!r}: {exc}") from None

"""Typed directed multigraph of software and process artifacts.

A :class:`SoftwareGraph` holds vertices (artifacts), a label relation pairing
each vertex with one or more artifact types, and a set of typed directed
edges (traces).  Both type sets live in a :class:`TypeDictionary`.
"""

from __future__ import annotations

import contextlib
import gc
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

IDENT_RE = re.compile(r"[a-z][a-z0-9_-]*\Z")

DEFAULT_ARTIFACT_TYPES = (
    "class",
    "coding standard",
    "field",
    "grammar",
    "interface",
    "library",
    "method",
    "module",
    "requirement",
    "test suite",
    "use case",
    "unit test",
)

DEFAULT_TRACE_TYPES = (
    "apply to",
    "call",
    "contain",
    "define",
    "depend on",
    "generate",
    "implement",
    "limit",
    "require",
    "return",
    "use",
    "verify",
)

DIRECTIONS = ("out", "in", "both")


@contextlib.contextmanager
def gc_paused():
    """Suspend the cyclic collector while allocating many small acyclic tuples.

    Edge sets reach millions of entries on large maps, and generational
    collection would otherwise rescan them repeatedly.
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


class GraphError(ValueError):
    """Raised when an operation would break a graph invariant."""


class Edge(NamedTuple):
    src: str
    trace: str
    dst: str


def canonical_name(name: str) -> str:
    """Map a human-readable type name to its identifier form.

    >>> canonical_name("unit test")
    'unit_test'
    """
    return "_".join(name.strip().lower().split())


def check_identifier(name: str, kind: str = "identifier") -> str:
    if not isinstance(name, str) or not IDENT_RE.match(name):
        raise GraphError(f"malformed {kind} {name!r}: must match [a-z][a-z0-9_-]*")
    return name


@dataclass(frozen=True)
class TypeDictionary:
    """The artifact-type and trace-type vocabularies of a graph."""

    artifact_types: frozenset
    trace_types: frozenset

    def __init__(self, artifact_types: Iterable[str], trace_types: Iterable[str]):
        artifact_types = list(artifact_types)
        trace_types = list(trace_types)
        for kind, names in (("artifact type", artifact_types), ("trace type", trace_types)):
            if not names:
                raise GraphError(f"{kind} set must be non-empty")
            if len(set(names)) != len(names):
                raise GraphError(f"duplicate {kind} in dictionary")
            for name in names:
                check_identifier(name, kind)
        object.__setattr__(self, "artifact_types", frozenset(artifact_types))
        object.__setattr__(self, "trace_types", frozenset(trace_types))

    @classmethod
    def unchecked(cls, artifact_types, trace_types) -> "TypeDictionary":
        """Build without invariant checks; views may legitimately select nothing."""
        d = object.__new__(cls)
        object.__setattr__(d, "artifact_types", frozenset(artifact_types))
        object.__setattr__(d, "trace_types", frozenset(trace_types))
        return d

    @classmethod
    def default(cls) -> "TypeDictionary":
        return cls(
            [canonical_name(a) for a in DEFAULT_ARTIFACT_TYPES],
            [canonical_name(t) for t in DEFAULT_TRACE_TYPES],
        )

    def extended(self, artifact_types: Iterable[str] = (), trace_types: Iterable[str] = ()) -> "TypeDictionary":
        """Return a dictionary with extra types added (already present ones are ignored)."""
        extra_a = [a for a in dict.fromkeys(artifact_types) if a not in self.artifact_types]
        extra_t = [t for t in dict.fromkeys(trace_types) if t not in self.trace_types]
        if not extra_a and not extra_t:
            return self
        return TypeDictionary(sorted(self.artifact_types) + extra_a, sorted(self.trace_types) + extra_t)

    def check_artifacts(self, names: Iterable[str]) -> frozenset:
        names = frozenset(names)
        unknown = sorted(names - self.artifact_types)
        if unknown:
            raise GraphError(f"unknown artifact type(s): {', '.join(unknown)}")
        return names

    def check_traces(self, names: Iterable[str]) -> frozenset:
        names = frozenset(names)
        unknown = sorted(names - self.trace_types)
        if unknown:
            raise GraphError(f"unknown trace type(s): {', '.join(unknown)}")
        return names


class SoftwareGraph:
    """Vertices, their type labels, and typed directed edges over a dictionary.

    The graph is built by a single writer through :meth:`add_vertex` and
    :meth:`add_edge`; the analysis modules treat it as read-only and always
    return new graphs.

    Edges form a set of ``(src, trace, dst)`` triples, so two vertices may be
    joined by several edges only when the trace types differ.
    """

    def __init__(self, dictionary: Optional[TypeDictionary] = None):
        self.dictionary = dictionary if dictionary is not None else TypeDictionary.default()
        self._labels: dict[str, frozenset] = {}
        self._edges: set[Edge] = set()
        self._adj = None  # (out, in) incidence maps, built on first use

    @classmethod
    def from_parts(cls, dictionary, labels, edges, check=True) -> "SoftwareGraph":
        """Assemble a graph from a ``{vertex: types}`` mapping and an edge iterable.

        With ``check=False`` no invariant is enforced, so a malformed document
        can still be loaded and handed to :func:`validate`.
        """
        g = cls(dictionary)
        if check:
            for v, attrs in labels.items():
                g.add_vertex(v, attrs)
            for e in edges:
                g.add_edge(*e)
            return g
        with gc_paused():
            g._labels = {v: frozenset(attrs) for v, attrs in labels.items()}
            g._edges = {e if type(e) is Edge else Edge(*e) for e in edges}
        return g

    def _incidence(self):
        if self._adj is None:
            out = {v: set() for v in self._labels}
            inc = {v: set() for v in self._labels}
            for e in self._edges:
                out.setdefault(e.src, set()).add(e)
                inc.setdefault(e.dst, set()).add(e)
            self._adj = (out, inc)
        return self._adj

    # -- mutation -----------------------------------------------------------

    def add_vertex(self, vid: str, attrs: Iterable[str]) -> "SoftwareGraph":
        if not isinstance(vid, str) or not vid:
            raise GraphError("vertex id must be a non-empty string")
        if "#" in vid or any(ch.isspace() for ch in vid):
            raise GraphError(f"vertex id {vid!r} may not contain whitespace or '#'")
        if vid in self._labels:
            raise GraphError(f"duplicate vertex id {vid!r}")
        attrs = frozenset(attrs)
        if not attrs:
            raise GraphError(f"vertex {vid!r} needs at least one artifact type")
        self.dictionary.check_artifacts(attrs)
        self._labels[vid] = attrs
        if self._adj is not None:
            self._adj[0][vid] = set()
            self._adj[1][vid] = set()
        return self

    def add_edge(self, src: str, trace: str, dst: str) -> "SoftwareGraph":
        for v in (src, dst):
            if v not in self._labels:
                raise GraphError(f"unknown endpoint {v!r}")
        self.dictionary.check_traces([trace])
        e = Edge(src, trace, dst)
        self._edges.add(e)
        if self._adj is not None:
            self._adj[0][src].add(e)
            self._adj[1][dst].add(e)
        return self

    # -- access -------------------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._labels)

    @property
    def edges(self) -> frozenset:
        return frozenset(self._edges)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def labels(self) -> frozenset:
        """The label relation as a set of ``(vertex, artifact_type)`` pairs."""
        return frozenset((v, a) for v, attrs in self._labels.items() for a in attrs)

    def types_of(self, vid: str) -> frozenset:
        try:
            return self._labels[vid]
        except KeyError:
            raise GraphError(f"unknown vertex {vid!r}") from None

    def label_map(self) -> dict:
        return dict(self._labels)

    def vertices_of_type(self, attr: str) -> set:
        return {v for v, attrs in self._labels.items() if attr in attrs}

    def out_edges(self, vid: str) -> frozenset:
        return frozenset(self._incidence()[0].get(vid, ()))

    def in_edges(self, vid: str) -> frozenset:
        return frozenset(self._incidence()[1].get(vid, ()))

    def __contains__(self, vid) -> bool:
        return vid in self._labels

    def __len__(self) -> int:
        return len(self._labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SoftwareGraph):
            return NotImplemented
        return (
            self.dictionary == other.dictionary
            and self._labels == other._labels
            and self._edges == other._edges
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"<SoftwareGraph |V|={len(self._labels)} |E|={len(self._edges)}>"

    def copy(self) -> "SoftwareGraph":
        return SoftwareGraph.from_parts(self.dictionary, self._labels, self._edges, check=False)


def new_graph(dictionary: Optional[TypeDictionary] = None) -> SoftwareGraph:
    return SoftwareGraph(dictionary)


def neighbors(g: SoftwareGraph, v: str, direction: str = "out", trace_filter=None, attr_filter=None) -> set:
    """Distinct vertices adjacent to ``v`` along matching edges.

    ``trace_filter`` restricts the edge types followed and ``attr_filter``
    keeps only neighbours carrying at least one of the given artifact types.
    ``None`` means no restriction.  ``v`` shows up only through a self-loop.
    """
    if v not in g:
        raise GraphError(f"unknown vertex {v!r}")
    if direction not in DIRECTIONS:
        raise GraphError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    traces = None if trace_filter is None else g.dictionary.check_traces(trace_filter)
    attrs = None if attr_filter is None else g.dictionary.check_artifacts(attr_filter)

    out, inc = g._incidence()
    found = set()
    if direction in ("out", "both"):
        found.update(e.dst for e in out[v] if traces is None or e.trace in traces)
    if direction in ("in", "both"):
        found.update(e.src for e in inc[v] if traces is None or e.trace in traces)
    if attrs is not None:
        found = {u for u in found if g._labels[u] & attrs}
    return found


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    subject: tuple = field(default=())

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def validate(g: SoftwareGraph) -> list:
    """List every invariant violation in ``g``; an empty list means valid."""
    report = []
    d = g.dictionary
    for v in sorted(g._labels):
        attrs = g._labels[v]
        if not attrs:
            report.append(Violation("unlabeled vertex", f"vertex {v} has no artifact type", (v,)))
        for a in sorted(attrs - d.artifact_types):
            report.append(Violation("unknown artifact type", f"vertex {v} labeled {a}", (v, a)))
    for e in sorted(g._edges):
        for end in (e.src, e.dst):
            if end not in g._labels:
                report.append(Violation("unknown endpoint", f"edge {e.src} {e.trace} {e.dst}: no vertex {end}", tuple(e)))
        if e.trace not in d.trace_types:
            report.append(Violation("unknown trace type", f"edge {e.src} {e.trace} {e.dst}", tuple(e)))
    return report

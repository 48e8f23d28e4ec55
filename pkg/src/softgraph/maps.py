"""Abstraction maps: edge relabelling and composition of consecutive edges.

A map keeps every vertex and label of the input graph.  :func:`relabel`
renames trace types edge by edge; :func:`compose_closure` adds, until
nothing changes, an edge ``(u, z, w)`` for every walk ``u -x-> v -y-> w``
whose type pair ``(x, y)`` is mapped to ``z``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .core import Edge, GraphError, SoftwareGraph, TypeDictionary, check_identifier, gc_paused
from .views import ViewSpec, view

DEPEND = "depend"


@dataclass(frozen=True)
class MapSpec:
    relabels: dict = field(default_factory=dict)
    compositions: dict = field(default_factory=dict)

    def apply(self, g: SoftwareGraph) -> SoftwareGraph:
        return compose_closure(relabel(g, self.relabels), self.compositions)


CLASS_DIAGRAM = MapSpec(
    relabels={"contain": DEPEND, "return": DEPEND},
    compositions={(DEPEND, DEPEND): DEPEND},
)


def _with_traces(g: SoftwareGraph, new_types):
    for t in new_types:
        check_identifier(t, "trace type")
    return g.dictionary.extended(trace_types=sorted(new_types))


def relabel(g: SoftwareGraph, relabels: dict) -> SoftwareGraph:
    """Rename trace types edge-wise; edges that collide merge into one."""
    g.dictionary.check_traces(relabels)
    d = _with_traces(g, set(relabels.values()))
    edges = {Edge(e.src, relabels.get(e.trace, e.trace), e.dst) for e in g.edges}
    return SoftwareGraph.from_parts(d, g.label_map(), edges, check=False)


def compose_closure(g: SoftwareGraph, compositions: dict) -> SoftwareGraph:
    """Smallest edge superset of ``g`` closed under the pairwise ``compositions``.

    ``compositions`` maps ``(first, second)`` trace pairs, taken in walk
    order, to the trace type of the shortcut edge.  Original edges are kept.
    """
    for pair in compositions:
        if len(pair) != 2:
            raise GraphError(f"composition key must be a pair of trace types, got {pair!r}")
        g.dictionary.check_traces(pair)
    d = _with_traces(g, set(compositions.values()))

    by_first = defaultdict(list)
    by_second = defaultdict(list)
    for (x, y), z in compositions.items():
        by_first[x].append((y, z))
        by_second[y].append((x, z))

    edges = set(g.edges)
    out_index = defaultdict(lambda: defaultdict(set))  # v -> trace -> {dst}
    in_index = defaultdict(lambda: defaultdict(set))   # v -> trace -> {src}
    for u, x, v in edges:
        out_index[u][x].add(v)
        in_index[v][x].add(u)

    bound = len(g.vertices) ** 2 * len(d.trace_types)
    pending = list(edges) if compositions else []
    while pending:
        u, x, v = pending.pop()
        found = []
        for y, z in by_first.get(x, ()):
            found.extend(Edge(u, z, w) for w in out_index[v].get(y, ()))
        for w_type, z in by_second.get(x, ()):
            found.extend(Edge(s, z, v) for s in in_index[u].get(w_type, ()))
        for e in found:
            if e not in edges:
                edges.add(e)
                out_index[e.src][e.trace].add(e.dst)
                in_index[e.dst][e.trace].add(e.src)
                pending.append(e)
        assert len(edges) <= bound, "closure exceeded |V|^2 * |T| edges"

    return SoftwareGraph.from_parts(d, g.label_map(), edges, check=False)


def class_diagram(g: SoftwareGraph) -> SoftwareGraph:
    """Class-level dependency graph.

    Equivalent to relabelling ``contain`` and ``return`` to ``depend``,
    closing ``(depend, depend) -> depend`` and viewing only classes and
    ``depend`` edges.  Rather than materialise the closure over every vertex,
    only class-to-class reachability along depend edges is computed, which
    keeps large graphs tractable.
    """
    d = g.dictionary
    missing = sorted({"class"} - d.artifact_types) + sorted({"contain", "return"} - d.trace_types)
    if missing:
        raise GraphError(f"class diagram needs types absent from dictionary: {', '.join(missing)}")

    dep_types = {"contain", "return", DEPEND}
    succ = defaultdict(set)
    for e in g.edges:
        if e.trace in dep_types:
            succ[e.src].add(e.dst)

    classes = sorted(g.vertices_of_type("class"))
    bit = {c: 1 << i for i, c in enumerate(classes)}
    reach = _reach_bits(g.vertices, succ, bit)

    decoded = {}
    edges = []
    with gc_paused():
        for c in classes:
            r = reach[c]
            if r not in decoded:
                # bit i of r is classes[i]; reversed binary string puts bit 0 first
                decoded[r] = [classes[i] for i, b in enumerate(bin(r)[:1:-1]) if b == "1"]
            edges.extend(Edge(c, DEPEND, w) for w in decoded[r])
    vd = TypeDictionary.unchecked({"class"}, {DEPEND})
    return SoftwareGraph.from_parts(vd, {c: {"class"} for c in classes}, edges, check=False)


def _reach_bits(vertices, succ, bit) -> dict:
    """Bitset of marked vertices reachable by a path of length >= 1, per vertex.

    Iterative Tarjan; components come out sinks first, so each component's
    set is final once all of its successors' sets are.
    """
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comp_reach = {}
    result = {}
    counter = 0

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] != index[v]:
                continue
            members = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                members.append(w)
                if w == v:
                    break
            member_set = set(members)
            own = 0
            for m in members:
                own |= bit.get(m, 0)
            acc = 0
            cyclic = len(members) > 1
            for m in members:
                for w in succ.get(m, ()):
                    if w in member_set:
                        cyclic = True
                    else:
                        acc |= comp_reach[w]
            if cyclic:
                acc |= own
            for m in members:
                comp_reach[m] = acc | own
                result[m] = acc
    return result


def class_diagram_by_closure(g: SoftwareGraph) -> SoftwareGraph:
    """Literal relabel, closure, view pipeline; quadratic, used as a cross-check."""
    mapped = CLASS_DIAGRAM.apply(g)
    return view(mapped, ViewSpec({"class"}, {DEPEND}))

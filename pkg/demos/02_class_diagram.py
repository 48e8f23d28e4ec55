"""Abstract a detailed graph into a class diagram with a map.

Run with ``python demos/02_class_diagram.py``.
"""
from softgraph import (
    CLASS_DIAGRAM,
    ViewSpec,
    class_diagram,
    compose_closure,
    relabel,
    sample_graph,
    serialize_graph,
    view,
)

g = sample_graph()
print(serialize_graph(g))

# %% Step 1: forget the difference between containing and returning.
r = relabel(g, CLASS_DIAGRAM.relabels)
print(sorted(e for e in r.edges if e.trace == "depend"))

# %% Step 2: chain consecutive depend edges until nothing new appears.
closed = compose_closure(r, CLASS_DIAGRAM.compositions)
print(len(r.edges), "->", len(closed.edges), "edges")

# %% Step 3: keep classes and depend edges.  C1 depends on C2 through method ME1.
print(sorted(view(closed, ViewSpec({"class"}, {"depend"})).edges))

# %% class_diagram() does the same in one call, without materialising the full closure.
print(sorted(class_diagram(g).edges))

# %% Compositions may mix types: a call followed by a return implies a dependency.
calls_then_returns = compose_closure(g, {("call", "return"): "call"})
print(sorted(set(calls_then_returns.edges) - set(g.edges)))

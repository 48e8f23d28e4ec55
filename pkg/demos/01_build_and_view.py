"""Build a small software graph by hand and look at it through a view.

Run with ``python demos/01_build_and_view.py``.
"""
from softgraph import CLASS_VIEW, ViewSpec, export_dot, neighbors, new_graph, validate, view, view_stats

# %% A graph starts from the default dictionary of artifact and trace types.
g = new_graph()
print(sorted(g.dictionary.artifact_types))

# %% Vertices carry one or more artifact types; edges are typed traces.
g.add_vertex("Billing", {"module"})
g.add_vertex("Invoice", {"class"})
g.add_vertex("Invoice.total", {"method"})
g.add_vertex("Invoice.lines", {"field"})
g.add_vertex("Printable", {"interface"})
g.add_vertex("test_total", {"unit_test"})
g.add_vertex("REQ-12", {"requirement"})

g.add_edge("REQ-12", "define", "Billing")
g.add_edge("Billing", "contain", "Invoice")
g.add_edge("Invoice", "contain", "Invoice.total")
g.add_edge("Invoice", "contain", "Invoice.lines")
g.add_edge("Invoice", "implement", "Printable")
g.add_edge("test_total", "verify", "Invoice.total")
print(g, "violations:", validate(g))

# %% Who does Invoice contain?
print(neighbors(g, "Invoice", "out", {"contain"}))

# %% The class view keeps code-level artifacts only.
cv = view(g, CLASS_VIEW)
print(sorted(cv.vertices), view_stats(g, CLASS_VIEW))

# %% Any combination of types makes a view: here, the process side only.
process = ViewSpec({"requirement", "module", "unit_test"}, {"define", "verify"})
print(sorted(view(g, process).edges))

# %% Views render straight to Graphviz.
print(export_dot(cv, cluster_by="class"))

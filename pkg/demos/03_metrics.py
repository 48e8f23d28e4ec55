"""Coupling, reachability and coverage metrics, and a CI-style gate.

Run with ``python demos/03_metrics.py``.
"""
from softgraph import ALL_OTHERS, count_by_type, coupling, coverage, evaluate_metric, reachable_from, sample_graph

g = sample_graph()

# %% Size and coupling.
print(count_by_type(g, "class").format())
print(coupling(g, "C1", "out").format(), "| methods only:", coupling(g, "C1", "out", {"method"}).value)

# %% Reachability follows edges in their stored direction.
print(sorted(reachable_from(g, {"U1"})))

# %% Test coverage.  Following any edge, ME2 is reached through ME1's call;
# counting only direct verification, ME2 is untested.
print(coverage(g, "unit_test", "method").format())
print(coverage(g, "unit_test", "method", {"verify"}).format())

# %% Requirements coverage: everything should trace back to some requirement.
print(coverage(g, "requirement", ALL_OTHERS).format())

# %% The same through the metric catalog, as the CLI uses it.
result = evaluate_metric(g, "coverage", source_type="unit_test", target_type="method", trace_filter=["verify"])
threshold = 0.8
print("gate:", "pass" if result.value >= threshold else "fail")

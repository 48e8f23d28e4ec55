"""Filtering and drilling down with the query language.

Run with ``python demos/04_queries.py``.
"""
from softgraph import eval_query, format_query, parse_query, sample_graph

g = sample_graph()

queries = [
    "type:class or type:interface",
    "type:method and not in(verify, type:unit_test)",   # untested methods
    "type:class and out(contain, type:method)",          # classes with methods
    "id:ME* and in(call, type:method)",                  # methods called by methods
    "type:module and in(define, type:requirement)",      # modules with a defining requirement
    "both(type:grammar)",                                # anything touching a grammar
]
for text in queries:
    ast = parse_query(text)
    print(f"{format_query(ast):60} -> {sorted(eval_query(g, ast))}")

# %% Errors point at the offending column.
try:
    parse_query("type:class and (out(contain, type:method)")
except ValueError as exc:
    print(exc)

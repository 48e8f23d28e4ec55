"""Typed directed multigraphs for software and software-process architecture."""

from importlib import resources

from .core import (
    Edge,
    GraphError,
    SoftwareGraph,
    TypeDictionary,
    Violation,
    canonical_name,
    neighbors,
    new_graph,
    validate,
)
from .dot import export_dot
from .maps import CLASS_DIAGRAM, MapSpec, class_diagram, compose_closure, relabel
from .metrics import (
    ALL_OTHERS,
    MetricResult,
    count_by_type,
    coupling,
    coverage,
    evaluate_metric,
    reachable_from,
    register_metric,
)
from .query import QueryError, QuerySyntaxError, eval_query, format_query, parse_query
from .textformat import GraphDocument, GraphSyntaxError, load, parse_document, parse_graph_text, save, serialize_graph
from .views import CLASS_VIEW, ViewSpec, view, view_stats

__version__ = "0.1.0"


def sample_text() -> str:
    """Text of the bundled ``sample.sg`` fixture."""
    return resources.files(__name__).joinpath("data/sample.sg").read_text(encoding="utf-8")


def sample_graph() -> SoftwareGraph:
    return parse_graph_text(sample_text(), source="sample.sg")

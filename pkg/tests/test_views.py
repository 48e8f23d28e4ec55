import random

import pytest

from softgraph import CLASS_VIEW, GraphError, ViewSpec, new_graph, validate, view, view_stats
from softgraph.views import is_subgraph

from oracles import brute_view, random_graph, random_spec

# Frozen from brute_view over the bundled sample (see test_class_view_matches_oracle).
CLASS_VIEW_VERTICES = {"C1", "C2", "I1", "F1", "ME1", "ME2"}
CLASS_VIEW_EDGES = {
    ("C1", "contain", "F1"),
    ("C1", "contain", "ME1"),
    ("C1", "implement", "I1"),
    ("ME1", "return", "C2"),
    ("C2", "contain", "ME2"),
}


def test_class_view_matches_oracle(sample):
    vs, ls, es = brute_view(sample, CLASS_VIEW.artifact_types, CLASS_VIEW.trace_types)
    assert vs == CLASS_VIEW_VERTICES
    assert es == CLASS_VIEW_EDGES
    v = view(sample, CLASS_VIEW)
    assert v.vertices == vs
    assert v.labels == ls
    assert v.edges == es
    assert validate(v) == []


def test_class_view_drops_process_artifacts(sample):
    v = view(sample, CLASS_VIEW)
    assert not v.vertices & {"R1", "U1", "M1", "G1"}
    assert not {e.trace for e in v.edges} & {"verify", "define", "generate", "call"}


def test_view_stats(sample):
    assert view_stats(sample, CLASS_VIEW) == (6, 5)
    assert view_stats(sample, ViewSpec.full(sample)) == (10, 10)
    assert view_stats(sample, ViewSpec()) == (0, 0)


def test_full_spec_is_identity(sample):
    assert view(sample, ViewSpec.full(sample)) == sample


def test_empty_spec(sample):
    v = view(sample, ViewSpec())
    assert not v.vertices and not v.edges


def test_unknown_types_rejected(sample):
    with pytest.raises(GraphError):
        view(sample, ViewSpec({"banana"}, {"call"}))
    with pytest.raises(GraphError):
        view(sample, ViewSpec({"class"}, {"depend"}))


def test_multi_label_vertex_keeps_selected_label():
    g = new_graph().add_vertex("L", {"class", "library"})
    v = view(g, ViewSpec({"class"}, {"use"}))
    assert v.labels == {("L", "class")}


def test_view_laws_random():
    rng = random.Random(7)
    for _ in range(50):
        g = random_graph(rng)
        s1, s2 = random_spec(rng), random_spec(rng)
        v1 = view(g, s1)
        assert is_subgraph(v1, g)
        assert view(v1, s1) == v1
        assert view(v1, s2 & s1) == view(g, s1 & s2)
        assert is_subgraph(view(g, s1 & s2), v1)

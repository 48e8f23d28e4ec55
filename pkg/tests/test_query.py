import random

import pytest

from softgraph import QueryError, QuerySyntaxError, eval_query, format_query, neighbors, new_graph, parse_query
from softgraph.query import And, IdGlob, Not, Or, Step, TypeIs

from oracles import brute_holds, random_ast, random_graph


@pytest.mark.parametrize(
    "text, ast",
    [
        ("type:class", TypeIs("class")),
        (
            "type:method and in(verify, type:unit_test)",
            And(TypeIs("method"), Step("in", ("verify",), TypeIs("unit_test"))),
        ),
        ("not not id:C*", Not(Not(IdGlob("C*")))),
        ("type:a or type:b and type:c", Or(TypeIs("a"), And(TypeIs("b"), TypeIs("c")))),
        ("(type:a or type:b) and type:c", And(Or(TypeIs("a"), TypeIs("b")), TypeIs("c"))),
        ("both(call|use, id:?1)", Step("both", ("call", "use"), IdGlob("?1"))),
        ("out(type:class)", Step("out", None, TypeIs("class"))),
        ("out ( type: class )", Step("out", None, TypeIs("class"))),
        ("type:a\n  and\n type:b", And(TypeIs("a"), TypeIs("b"))),
    ],
)
def test_parse(text, ast):
    assert parse_query(text) == ast


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("type:", 1, 6),
        ("", 1, 1),
        ("(type:class", 1, 12),
        ("type:class)", 1, 11),
        ("type:Class", 1, 6),
        ("in(verify type:x)", 1, 4),
        ("type:a and\n  frob", 2, 3),
        ("type:a $", 1, 8),
    ],
)
def test_syntax_errors(text, line, col):
    with pytest.raises(QuerySyntaxError) as info:
        parse_query(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_syntax_error_lists_expected():
    with pytest.raises(QuerySyntaxError) as info:
        parse_query("type:")
    assert info.value.expected == ("IDENT",)


def test_eval_on_sample(sample):
    assert eval_query(sample, "type:method and not in(verify, type:unit_test)") == {"ME2"}
    assert eval_query(sample, "type:class or type:interface") == {"C1", "C2", "I1"}
    assert eval_query(sample, "not type:library") == sample.vertices
    assert eval_query(sample, "id:ME*") == {"ME1", "ME2"}
    assert eval_query(sample, "type:class and out(contain, type:method)") == {"C1", "C2"}


def test_eval_unknown_type(sample):
    with pytest.raises(QueryError, match="banana"):
        eval_query(sample, "type:banana")
    with pytest.raises(QueryError, match="depend"):
        eval_query(sample, "out(depend, type:class)")


def test_glob_only_star_and_question():
    g = new_graph().add_vertex("a.b", {"class"}).add_vertex("axb", {"class"})
    assert eval_query(g, "id:a.b") == {"a.b"}
    assert eval_query(g, "id:a?b") == {"a.b", "axb"}


def test_round_trip_and_oracle_random():
    rng = random.Random(19)
    for _ in range(60):
        g = random_graph(rng, max_vertices=15, max_edges=35)
        q = random_ast(rng)
        text = format_query(q)
        assert parse_query(text) == q
        assert parse_query(format_query(parse_query(text))) == parse_query(text)
        got = eval_query(g, q)
        assert got == {v for v in g.vertices if brute_holds(g, v, q)}
        if isinstance(q, Step):
            inner = eval_query(g, q.operand)
            traces = None if q.traces is None else set(q.traces)
            assert got == {v for v in g.vertices if neighbors(g, v, q.direction, traces) & inner}

"""A small query language selecting vertex sets.

Grammar::

    query     := orExpr
    orExpr    := andExpr ("or" andExpr)*
    andExpr   := unary ("and" unary)*
    unary     := "not" unary | atom
    atom      := "type:" IDENT | "id:" GLOB | stepFn | "(" query ")"
    stepFn    := ("out" | "in" | "both") "(" [traceList ","] query ")"
    traceList := IDENT ("|" IDENT)*

``out(T, q)`` holds at ``v`` when some vertex reached from ``v`` by one
edge of a type in ``T`` satisfies ``q``; ``in`` and ``both`` follow edges
backwards or either way.  Without a trace list any edge type counts.

>>> str(parse_query("type:method and not in(verify, type:unit_test)"))
'(type:method and not in(verify, type:unit_test))'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import IDENT_RE, GraphError, SoftwareGraph

WORD_RE = re.compile(r"[A-Za-z0-9_.*?\-]+")
GLOB_RE = re.compile(r"[A-Za-z0-9_.*?\-]+\Z")
STEP_WORDS = ("out", "in", "both")


class QuerySyntaxError(ValueError):
    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        text = f"{message} at line {line}, col {column}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class QueryError(GraphError):
    """Evaluation failure, e.g. a type missing from the graph's dictionary."""


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class TypeIs:
    name: str
    pos: tuple = field(default=(1, 1), compare=False, repr=False)

    def __str__(self):
        return f"type:{self.name}"


@dataclass(frozen=True)
class IdGlob:
    pattern: str

    def __str__(self):
        return f"id:{self.pattern}"


@dataclass(frozen=True)
class Not:
    operand: "Node"

    def __str__(self):
        return f"not {self.operand}"


@dataclass(frozen=True)
class And:
    left: "Node"
    right: "Node"

    def __str__(self):
        return f"({self.left} and {self.right})"


@dataclass(frozen=True)
class Or:
    left: "Node"
    right: "Node"

    def __str__(self):
        return f"({self.left} or {self.right})"


@dataclass(frozen=True)
class Step:
    direction: str
    traces: Optional[tuple]
    operand: "Node"
    pos: tuple = field(default=(1, 1), compare=False, repr=False)

    def __str__(self):
        if self.traces is None:
            return f"{self.direction}({self.operand})"
        return f"{self.direction}({'|'.join(self.traces)}, {self.operand})"


Node = Union[TypeIs, IdGlob, Not, And, Or, Step]


# -- lexer --------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # WORD, TYPE, ID, (, ), ",", |, EOF
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    tokens = []
    line, line_start = 1, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            line_start = i + 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            continue
        col = i - line_start + 1
        if ch in "(),|":
            tokens.append(Token(ch, ch, line, col))
            i += 1
            continue
        m = WORD_RE.match(text, i)
        if not m:
            raise QuerySyntaxError(f"unexpected character {ch!r}", line, col)
        word = m.group()
        end = m.end()
        if word in ("type", "id") and text.startswith(":", end):
            tokens.append(Token(word.upper(), word + ":", line, col))
            end += 1
        else:
            tokens.append(Token("WORD", word, line, col))
        i = end
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


# -- parser -------------------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def fail(self, expected, tok=None):
        tok = tok or self.tok
        what = "end of input" if tok.kind == "EOF" else f"{tok.text!r}"
        raise QuerySyntaxError(f"unexpected {what}", tok.line, tok.col, expected)

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def is_word(self, text) -> bool:
        return self.tok.kind == "WORD" and self.tok.text == text

    def expect(self, kind):
        if self.tok.kind != kind:
            self.fail([repr(kind)])
        return self.advance()

    def ident(self) -> Token:
        tok = self.tok
        if tok.kind != "WORD" or not IDENT_RE.match(tok.text):
            self.fail(["IDENT"])
        return self.advance()

    def parse(self) -> Node:
        if self.tok.kind == "EOF":
            raise QuerySyntaxError("empty query", self.tok.line, self.tok.col, ["query"])
        node = self.or_expr()
        if self.tok.kind != "EOF":
            self.fail(["'and'", "'or'", "end of input"])
        return node

    def or_expr(self):
        node = self.and_expr()
        while self.is_word("or"):
            self.advance()
            node = Or(node, self.and_expr())
        return node

    def and_expr(self):
        node = self.unary()
        while self.is_word("and"):
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self):
        if self.is_word("not"):
            self.advance()
            return Not(self.unary())
        return self.atom()

    def atom(self):
        tok = self.tok
        if tok.kind == "TYPE":
            self.advance()
            name = self.ident()
            return TypeIs(name.text, (name.line, name.col))
        if tok.kind == "ID":
            self.advance()
            pat = self.tok
            if pat.kind != "WORD" or not GLOB_RE.match(pat.text):
                self.fail(["GLOB"])
            self.advance()
            return IdGlob(pat.text)
        if tok.kind == "(":
            self.advance()
            node = self.or_expr()
            self.expect(")")
            return node
        if tok.kind == "WORD" and tok.text in STEP_WORDS and self.peek().kind == "(":
            return self.step()
        self.fail(["'type:'", "'id:'", "'out'", "'in'", "'both'", "'not'", "'('"])

    def step(self):
        direction = self.advance()
        self.expect("(")
        traces = None
        # A trace list is a run of bare identifiers ended by a comma.
        if self.tok.kind == "WORD" and self.peek().kind in (",", "|"):
            names = [self.ident().text]
            while self.tok.kind == "|":
                self.advance()
                names.append(self.ident().text)
            self.expect(",")
            traces = tuple(sorted(set(names)))
        operand = self.or_expr()
        self.expect(")")
        return Step(direction.text, traces, operand, (direction.line, direction.col))


def parse_query(text: str) -> Node:
    return _Parser(text).parse()


def format_query(node: Node) -> str:
    """Canonical text of an AST; parsing it gives back an equal AST."""
    return str(node)


# -- evaluation ---------------------------------------------------------------

def glob_to_regex(pattern: str):
    parts = []
    for ch in pattern:
        if ch == "*":
            parts.append(".*")
        elif ch == "?":
            parts.append(".")
        else:
            parts.append(re.escape(ch))
    return re.compile("".join(parts) + r"\Z", re.DOTALL)


def eval_query(g: SoftwareGraph, q: Union[Node, str]) -> set:
    """Vertices of ``g`` satisfying the query ``q`` (AST or text)."""
    if isinstance(q, str):
        q = parse_query(q)
    return _eval(g, q)


def _eval(g: SoftwareGraph, node) -> set:
    if isinstance(node, TypeIs):
        if node.name not in g.dictionary.artifact_types:
            line, col = node.pos
            raise QueryError(f"unknown artifact type {node.name!r} at line {line}, col {col}")
        return g.vertices_of_type(node.name)
    if isinstance(node, IdGlob):
        rx = glob_to_regex(node.pattern)
        return {v for v in g.vertices if rx.match(v)}
    if isinstance(node, Not):
        return set(g.vertices) - _eval(g, node.operand)
    if isinstance(node, And):
        return _eval(g, node.left) & _eval(g, node.right)
    if isinstance(node, Or):
        return _eval(g, node.left) | _eval(g, node.right)
    if isinstance(node, Step):
        traces = None
        if node.traces is not None:
            unknown = [t for t in node.traces if t not in g.dictionary.trace_types]
            if unknown:
                line, col = node.pos
                raise QueryError(f"unknown trace type {unknown[0]!r} in step at line {line}, col {col}")
            traces = set(node.traces)
        targets = _eval(g, node.operand)
        out, inc = g._incidence()
        hits = set()
        # v satisfies out(...) when an edge v -> w lands in targets, so walk back from w.
        for w in targets:
            if node.direction in ("out", "both"):
                hits.update(e.src for e in inc[w] if traces is None or e.trace in traces)
            if node.direction in ("in", "both"):
                hits.update(e.dst for e in out[w] if traces is None or e.trace in traces)
        return hits
    raise TypeError(f"not a query node: {node!r}")

"""Recursive-descent parser for terms and types.

Grammar::

    term   ::= '\\' ident ':' type '.' term  |  app
    app    ::= unit unit*                         -- left associative
    unit   ::= ('fst' | 'snd') unit  |  atom
    atom   ::= ident | ident '[' num (',' num)* ']' | num | '[]' | '[.]' | '[·]'
             | '(' term ')' | '(' term ',' term ')'
    type   ::= prod ('->' type)?                  -- right associative
    prod   ::= tatom ('*' tatom)*                 -- left associative
    tatom  ::= 'Real' | '(' type ')'

``--`` starts a line comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from . import primitives
from .errors import ParseError
from .syntax import (REAL, App, Arrow, Const, Hole, Lam, Pair, Prim, Prod, Proj, Span,
                     Term, Type, Var)

_TOKEN = re.compile(r"""
    (?P<ws>\s+|--[^\n]*)
  | (?P<num>-?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?)
  | (?P<hole>\[\s*(?:\.|·)?\s*\])
  | (?P<arrow>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>[\\λ:.(),*\[\]])
""", re.VERBOSE)

KEYWORDS = {"fst", "snd", "Real"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            out.append(Token(kind, text, line, pos - line_start + 1))
        nl = text.count("\n")
        if nl:
            line += nl
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg}, found {found}", tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("sym", "arrow", "ident")

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def span(self, tok: Token) -> Span:
        return Span(tok.line, tok.col)

    # types ---------------------------------------------------------------
    def type(self) -> Type:
        left = self.prod()
        if self.tok.kind == "arrow":
            self.i += 1
            return Arrow(left, self.type())
        return left

    def prod(self) -> Type:
        t = self.tatom()
        while self.at("*"):
            self.i += 1
            t = Prod(t, self.tatom())
        return t

    def tatom(self) -> Type:
        if self.at("Real"):
            self.i += 1
            return REAL
        if self.at("("):
            self.i += 1
            t = self.type()
            self.expect(")")
            return t
        self.error("expected a type")

    # terms ---------------------------------------------------------------
    def term(self) -> Term:
        if self.at("\\") or self.at("λ"):
            start = self.tok
            self.i += 1
            name = self.ident()
            self.expect(":")
            ty = self.type()
            self.expect(".")
            return Lam(name, ty, self.term(), self.span(start))
        return self.app()

    def ident(self) -> str:
        if self.tok.kind != "ident" or self.tok.text in KEYWORDS:
            self.error("expected a variable name")
        name = self.tok.text
        self.i += 1
        return name

    def starts_unit(self) -> bool:
        t = self.tok
        if t.kind in ("num", "hole"):
            return True
        if t.kind == "ident":
            return t.text != "Real"
        return t.kind == "sym" and t.text == "("

    def app(self) -> Term:
        start = self.tok
        if not self.starts_unit():
            self.error("expected a term")
        t = self.unit()
        while self.starts_unit():
            t = App(t, self.unit(), self.span(start))
        # a trailing lambda is allowed as last argument: f \x:Real. x
        if self.at("\\") or self.at("λ"):
            t = App(t, self.term(), self.span(start))
        return t

    def unit(self) -> Term:
        if self.at("fst") or self.at("snd"):
            start = self.tok
            idx = 1 if start.text == "fst" else 2
            self.i += 1
            if not self.starts_unit():
                self.error(f"expected an argument for {start.text}")
            return Proj(idx, self.unit(), self.span(start))
        return self.atom()

    def atom(self) -> Term:
        t = self.tok
        sp = self.span(t)
        if t.kind == "num":
            self.i += 1
            return Const(float(t.text), sp)
        if t.kind == "hole":
            self.i += 1
            return Hole(sp)
        if t.kind == "ident":
            self.i += 1
            if self.at("[") and primitives.is_primitive(t.text):
                return Prim(t.text, self.params(), sp)
            if primitives.is_primitive(t.text):
                if t.text in primitives.PARAMETRIC:
                    self.error(f"{t.text} needs parameters in brackets", t)
                return Prim(t.text, (), sp)
            return Var(t.text, sp)
        if self.at("("):
            self.i += 1
            first = self.term()
            if self.at(","):
                self.i += 1
                second = self.term()
                self.expect(")")
                return Pair(first, second, sp)
            self.expect(")")
            return first
        self.error("expected a term")

    def params(self) -> tuple[float, ...]:
        self.expect("[")
        vals = []
        while True:
            if self.tok.kind != "num":
                self.error("expected a numeric parameter")
            vals.append(float(self.tok.text))
            self.i += 1
            if self.at(","):
                self.i += 1
                continue
            self.expect("]")
            return tuple(vals)

    def done(self):
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")


def parse(src: str) -> Term:
    """Parse a term; raises :class:`ParseError` with line and column."""
    p = _Parser(src)
    t = p.term()
    p.done()
    return t


def parse_type(src: str) -> Type:
    p = _Parser(src)
    t = p.type()
    p.done()
    return t

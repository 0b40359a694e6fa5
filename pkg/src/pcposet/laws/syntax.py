"""Recursive-descent parser and printer for universally quantified order laws.

Grammar::

    stmt    := impl
    impl    := disj ("=>" disj)?
    disj    := conj ("|" conj)*
    conj    := atom ("&" atom)*
    atom    := "!" atom | "(" stmt ")" | term REL term
    REL     := "=" | "=1" | "=2" | "<=" | "<=1" | "<=2" | "sub"
    term    := primary "*"*
    primary := IDENT | "0" | "1" | ("L"|"U"|"Max"|"Min") "(" term ("," term)* ")"
             | "(" term ")"

Identifiers are ASCII lowercase words; ``sub`` is reserved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class LawSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, expected: tuple[str, ...] = ()):
        self.pos = pos
        self.expected = expected
        if expected:
            message += f" (expected one of: {', '.join(expected)})"
        super().__init__(f"at position {pos}: {message}")


class ArityError(LawSyntaxError):
    pass


# --- terms -----------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Star:
    arg: "Term"


@dataclass(frozen=True)
class Cone:
    op: str  # "L" or "U"
    args: tuple["Term", ...]


@dataclass(frozen=True)
class Extremal:
    op: str  # "Max" or "Min"
    arg: "Term"


Term = Union[Var, Const, Star, Cone, Extremal]


# --- statements ------------------------------------------------------------

RELATIONS = ("=", "=1", "=2", "<=", "<=1", "<=2", "sub")


@dataclass(frozen=True)
class Rel:
    op: str
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not:
    arg: "Statement"


@dataclass(frozen=True)
class And:
    args: tuple["Statement", ...]


@dataclass(frozen=True)
class Or:
    args: tuple["Statement", ...]


@dataclass(frozen=True)
class Implies:
    lhs: "Statement"
    rhs: "Statement"


Statement = Union[Rel, Not, And, Or, Implies]


# --- lexer -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<rel><=1|<=2|<=|=>|=1|=2|=)"
    r"|(?P<word>[A-Za-z]+)"
    r"|(?P<num>[0-9]+)"
    r"|(?P<punct>[()*,&|!]))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LawSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tok = m.group(kind)
        start = m.start(kind)
        if kind == "word" and tok == "sub":
            kind = "rel"
        elif tok == "=>":
            kind = "punct"
        out.append(Token(kind, tok, start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            raise LawSyntaxError(self._found(), self.tok.pos, (repr(text),))
        return self.advance()

    def _found(self) -> str:
        return "unexpected end of input" if self.tok.kind == "end" else f"unexpected {self.tok.text!r}"

    # statements

    def statement(self) -> Statement:
        lhs = self.disj()
        if self.tok.text == "=>":
            self.advance()
            return Implies(lhs, self.disj())
        return lhs

    def disj(self) -> Statement:
        args = [self.conj()]
        while self.tok.text == "|":
            self.advance()
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self) -> Statement:
        args = [self.atom()]
        while self.tok.text == "&":
            self.advance()
            args.append(self.atom())
        return args[0] if len(args) == 1 else And(tuple(args))

    def atom(self) -> Statement:
        if self.tok.text == "!":
            self.advance()
            return Not(self.atom())
        if self.tok.text == "(":
            # either a parenthesised statement or a parenthesised term
            save = self.i
            self.advance()
            try:
                inner = self.statement()
                self.expect(")")
                if self.tok.kind == "rel":
                    raise LawSyntaxError("relation after statement", self.tok.pos)
                return inner
            except LawSyntaxError:
                self.i = save
        lhs = self.term()
        if self.tok.kind != "rel":
            raise LawSyntaxError(self._found(), self.tok.pos, RELATIONS)
        op = self.advance().text
        return Rel(op, lhs, self.term())

    # terms

    def term(self) -> Term:
        t = self.primary()
        while self.tok.text == "*":
            self.advance()
            t = Star(t)
        return t

    def primary(self) -> Term:
        tok = self.tok
        if tok.kind == "num":
            if tok.text not in ("0", "1"):
                raise LawSyntaxError(f"unknown constant {tok.text!r}", tok.pos, ("0", "1"))
            self.advance()
            return Const(int(tok.text))
        if tok.kind == "word":
            if tok.text in ("L", "U", "Max", "Min"):
                self.advance()
                self.expect("(")
                args = [self.term()]
                while self.tok.text == ",":
                    comma = self.advance()
                    args.append(self.term())
                    if tok.text in ("Max", "Min"):
                        raise ArityError(f"{tok.text} takes exactly one argument", comma.pos)
                self.expect(")")
                if tok.text in ("Max", "Min"):
                    return Extremal(tok.text, args[0])
                return Cone(tok.text, tuple(args))
            if tok.text.islower() and tok.text.isascii():
                self.advance()
                return Var(tok.text)
            raise LawSyntaxError(f"unknown identifier {tok.text!r}", tok.pos)
        if tok.text == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        raise LawSyntaxError(self._found(), tok.pos, ("identifier", "0", "1", "L", "U", "Max", "Min", "("))


def parse_statement(text: str) -> Statement:
    p = _Parser(text)
    stmt = p.statement()
    if p.tok.kind != "end":
        raise LawSyntaxError(p._found(), p.tok.pos, ("end of input",))
    return stmt


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "end":
        raise LawSyntaxError(p._found(), p.tok.pos, ("end of input",))
    return t


# --- printing --------------------------------------------------------------


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Star):
        return format_term(t.arg) + "*"
    if isinstance(t, Cone):
        return f"{t.op}({', '.join(format_term(a) for a in t.args)})"
    if isinstance(t, Extremal):
        return f"{t.op}({format_term(t.arg)})"
    raise TypeError(t)


_LEVEL = {Implies: 0, Or: 1, And: 2, Rel: 3, Not: 3}


def format_statement(s: Statement, min_level: int = 0) -> str:
    if isinstance(s, Rel):
        text = f"{format_term(s.lhs)} {s.op} {format_term(s.rhs)}"
    elif isinstance(s, Not):
        text = "!" + format_statement(s.arg, 3)
    elif isinstance(s, And):
        text = " & ".join(format_statement(a, 3) for a in s.args)
    elif isinstance(s, Or):
        text = " | ".join(format_statement(a, 2) for a in s.args)
    elif isinstance(s, Implies):
        text = f"{format_statement(s.lhs, 1)} => {format_statement(s.rhs, 1)}"
    else:
        raise TypeError(s)
    return f"({text})" if _LEVEL[type(s)] < min_level else text


def free_vars(node) -> list[str]:
    """Variable names in order of first appearance."""
    seen: dict[str, None] = {}

    def walk(x) -> None:
        if isinstance(x, Var):
            seen.setdefault(x.name, None)
        elif isinstance(x, (Star, Extremal, Not)):
            walk(x.arg)
        elif isinstance(x, (Cone, And, Or)):
            for a in x.args:
                walk(a)
        elif isinstance(x, (Rel, Implies)):
            walk(x.lhs)
            walk(x.rhs)

    walk(node)
    return list(seen)


def uses_star_or_constants(node) -> bool:
    if isinstance(node, (Star, Const)):
        return True
    if isinstance(node, Var):
        return False
    if isinstance(node, (Extremal, Not)):
        return uses_star_or_constants(node.arg)
    if isinstance(node, (Cone, And, Or)):
        return any(uses_star_or_constants(a) for a in node.args)
    return uses_star_or_constants(node.lhs) or uses_star_or_constants(node.rhs)

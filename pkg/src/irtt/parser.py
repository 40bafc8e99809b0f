"""Recursive-descent parser for the concrete syntax.

Grammar (whitespace-insensitive)::

    Type    ::= "1" | "N" | Type "*" Type | "P" "[" nat "]" "(" Type ")" | "(" Type ")"
    Term    ::= ident | "()" | decimal | "S" Term | Term "+" Term | Term "." Term
              | "<" Term "," Term ">" | "fst" Term | "snd" Term
              | "{" ident ":" Type "|" Formula "}" "@" nat | "(" Term ")"
    Formula ::= Term "=" Term | Term "in" Term | "false"
              | Formula "\\/" Formula | Formula "/\\" Formula | Formula "=>" Formula
              | "forall" ident ":" Type "." Formula
              | "exists" ident ":" Type "." Formula | "(" Formula ")"

``*``, ``+``, ``.``, ``\\/`` and ``/\\`` are left-associative, ``=>`` is
right-associative, ``/\\`` binds tighter than ``\\/`` which binds tighter
than ``=>``, and quantifier bodies extend as far right as possible.
Decimal literals are sugar for iterated successors.

Variable mentions take the sort of the innermost binder of that name;
free mentions must be given a sort through the ``ctx`` argument.  The
sort annotation of an equality is inferred from its operands.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .ast import (
    Add,
    And,
    Eq,
    Exists,
    FALSE,
    Forall,
    Formula,
    Fst,
    Imp,
    IrttError,
    Mem,
    Mul,
    NAT,
    Or,
    Pair,
    Pow,
    Prod,
    SetAbs,
    Snd,
    STAR,
    Star,
    Succ,
    Term,
    Zero,
    TypeSymbol,
    UNIT,
    Var,
    numeral,
)


class ParseError(IrttError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.message = message
        self.pos = pos


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "ident" | "sym" | "eof"
    text: str
    pos: int


_KEYWORDS = frozenset({"forall", "exists", "false", "in", "fst", "snd", "S", "N", "P"})

_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<int>\d+)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
      | (?P<sym>\\/|/\\|=>|[()\[\]{}<>,:.|@*+=^])
    )""",
    re.VERBOSE,
)


def tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", bad_pos)
        if m.lastgroup is None:
            break
        tokens.append(_Token(m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: Mapping[str, TypeSymbol] | None):
        self.tokens = tokenize(text)
        self.idx = 0
        self.ctx = dict(ctx) if ctx else {}

    # -- token plumbing -----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def next(self) -> _Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def at_sym(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "sym" and tok.text == text

    def at_word(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text == text

    def accept_sym(self, text: str) -> bool:
        if self.at_sym(text):
            self.idx += 1
            return True
        return False

    def expect_sym(self, text: str) -> None:
        if not self.accept_sym(text):
            tok = self.peek()
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)

    def expect_ident(self) -> _Token:
        tok = self.peek()
        if tok.kind != "ident" or tok.text in _KEYWORDS:
            raise ParseError(f"expected an identifier, found {tok.text or 'end of input'!r}", tok.pos)
        return self.next()

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind != "int":
            raise ParseError(f"expected a number, found {tok.text or 'end of input'!r}", tok.pos)
        self.next()
        return int(tok.text)

    def expect_eof(self) -> None:
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)

    # -- types ----------------------------------------------------------------

    def type_(self) -> TypeSymbol:
        t = self.type_atom()
        while self.accept_sym("*"):
            t = Prod(t, self.type_atom())
        return t

    def type_atom(self) -> TypeSymbol:
        tok = self.peek()
        if tok.kind == "int":
            if tok.text != "1":
                raise ParseError(f"expected a type, found {tok.text!r}", tok.pos)
            self.next()
            return UNIT
        if self.at_word("N"):
            self.next()
            return NAT
        if self.at_word("P"):
            self.next()
            self.expect_sym("[")
            level = self.expect_int()
            self.expect_sym("]")
            self.expect_sym("(")
            body = self.type_()
            self.expect_sym(")")
            return Pow(level, body)
        if self.accept_sym("("):
            t = self.type_()
            self.expect_sym(")")
            return t
        raise ParseError(f"expected a type, found {tok.text or 'end of input'!r}", tok.pos)

    # -- terms ----------------------------------------------------------------

    def term(self, env: dict[str, TypeSymbol]) -> Term:
        t = self.term_mul(env)
        while self.accept_sym("+"):
            t = Add(t, self.term_mul(env))
        return t

    def term_mul(self, env: dict[str, TypeSymbol]) -> Term:
        t = self.term_prefix(env)
        while self.accept_sym("."):
            t = Mul(t, self.term_prefix(env))
        return t

    def term_prefix(self, env: dict[str, TypeSymbol]) -> Term:
        if self.at_word("S"):
            self.next()
            return Succ(self.term_prefix(env))
        if self.at_word("fst"):
            self.next()
            return Fst(self.term_prefix(env))
        if self.at_word("snd"):
            self.next()
            return Snd(self.term_prefix(env))
        return self.term_atom(env)

    def term_atom(self, env: dict[str, TypeSymbol]) -> Term:
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return numeral(int(tok.text))
        if tok.kind == "ident" and tok.text not in _KEYWORDS:
            self.next()
            sort = env.get(tok.text, self.ctx.get(tok.text))
            if sort is None:
                raise ParseError(f"unbound variable {tok.text!r} (no sort in scope)", tok.pos)
            return Var(tok.text, sort)
        if self.accept_sym("("):
            if self.accept_sym(")"):
                return STAR
            t = self.term(env)
            self.expect_sym(")")
            return t
        if self.accept_sym("<"):
            left = self.term(env)
            self.expect_sym(",")
            right = self.term(env)
            self.expect_sym(">")
            return Pair(left, right)
        if self.accept_sym("{"):
            name = self.expect_ident()
            self.expect_sym(":")
            sort = self.type_()
            self.expect_sym("|")
            body = self.formula({**env, name.text: sort})
            self.expect_sym("}")
            self.expect_sym("@")
            level = self.expect_int()
            return SetAbs(name.text, sort, body, level)
        raise ParseError(f"expected a term, found {tok.text or 'end of input'!r}", tok.pos)

    # -- formulas ---------------------------------------------------------------

    def formula(self, env: dict[str, TypeSymbol]) -> Formula:
        left = self.formula_or(env)
        if self.accept_sym("=>"):
            return Imp(left, self.formula(env))
        return left

    def formula_or(self, env: dict[str, TypeSymbol]) -> Formula:
        f = self.formula_and(env)
        while self.accept_sym("\\/"):
            f = Or(f, self.formula_and(env))
        return f

    def formula_and(self, env: dict[str, TypeSymbol]) -> Formula:
        f = self.formula_atom(env)
        while self.accept_sym("/\\"):
            f = And(f, self.formula_atom(env))
        return f

    def formula_atom(self, env: dict[str, TypeSymbol]) -> Formula:
        tok = self.peek()
        if self.at_word("false"):
            self.next()
            return FALSE
        if self.at_word("forall") or self.at_word("exists"):
            cls = Forall if tok.text == "forall" else Exists
            self.next()
            name = self.expect_ident()
            self.expect_sym(":")
            sort = self.type_()
            self.expect_sym(".")
            body = self.formula({**env, name.text: sort})
            return cls(name.text, sort, body)
        if self.at_sym("("):
            # A parenthesis may open a bracketed formula or the left-hand
            # term of an atomic formula; try the formula reading first and
            # fall back on failure, reporting whichever error got further.
            saved = self.idx
            try:
                self.next()
                f = self.formula(env)
                self.expect_sym(")")
                return f
            except ParseError as formula_err:
                self.idx = saved
                try:
                    return self.atomic(env)
                except ParseError as term_err:
                    raise term_err if term_err.pos >= formula_err.pos else formula_err
        return self.atomic(env)

    def atomic(self, env: dict[str, TypeSymbol]) -> Formula:
        lhs = self.term(env)
        if self.accept_sym("="):
            pos = self.peek().pos
            rhs = self.term(env)
            sort = self._eq_sort(lhs, rhs, pos)
            return Eq(sort, lhs, rhs)
        if self.at_word("in"):
            self.next()
            rhs = self.term(env)
            return Mem(lhs, rhs)
        tok = self.peek()
        raise ParseError(f"expected '=' or 'in', found {tok.text or 'end of input'!r}", tok.pos)

    def _eq_sort(self, lhs: Term, rhs: Term, pos: int) -> TypeSymbol:
        ls = _syntactic_sort(lhs)
        rs = _syntactic_sort(rhs)
        if ls is not None and rs is not None and ls != rs:
            raise ParseError(
                f"equality operands have different sorts ({ls} vs {rs})", pos
            )
        sort = ls if ls is not None else rs
        if sort is None:
            raise ParseError("cannot infer the sort of this equality", pos)
        return sort


def _syntactic_sort(t: Term) -> TypeSymbol | None:
    """Sort of a term by formation rules alone; no level or arity checks."""
    match t:
        case Var(_, sort):
            return sort
        case Star():
            return UNIT
        case Zero() | Succ(_) | Add(_, _) | Mul(_, _):
            return NAT
        case Pair(a, b):
            left, right = _syntactic_sort(a), _syntactic_sort(b)
            return Prod(left, right) if left is not None and right is not None else None
        case Fst(a):
            inner = _syntactic_sort(a)
            return inner.left if isinstance(inner, Prod) else None
        case Snd(a):
            inner = _syntactic_sort(a)
            return inner.right if isinstance(inner, Prod) else None
        case SetAbs(_, sort, _, k):
            return Pow(k, sort)
    return None


def parse_type(text: str) -> TypeSymbol:
    p = _Parser(text, None)
    t = p.type_()
    p.expect_eof()
    return t


def parse_term(text: str, ctx: Mapping[str, TypeSymbol] | None = None) -> Term:
    p = _Parser(text, ctx)
    t = p.term({})
    p.expect_eof()
    return t


def parse_formula(text: str, ctx: Mapping[str, TypeSymbol] | None = None) -> Formula:
    p = _Parser(text, ctx)
    f = p.formula({})
    p.expect_eof()
    return f

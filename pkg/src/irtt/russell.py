"""Embedding of classical ramified types into the type-symbol language.

A classical ramified type is either the type of individuals ``0^0`` or a
tuple type ``(t1,...,tk)^m`` whose order ``m`` exceeds the order of every
component.  Individuals embed as the naturals; a tuple type of order
``m`` embeds as the level-``m`` power set of the left-nested product of
its components, the empty product being the unit type.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ast import IrttError, NAT, Pow, Prod, TypeSymbol, UNIT
from .parser import ParseError, tokenize


class RussellTypeError(IrttError):
    pass


class RussellType:
    def __str__(self) -> str:
        return print_russell(self)


@dataclass(frozen=True)
class Individual(RussellType):
    """The base type ``0^0``; its order is 0."""


@dataclass(frozen=True)
class Tuple(RussellType):
    components: tuple[RussellType, ...]
    order: int

    def __post_init__(self) -> None:
        if self.order < 0:
            raise RussellTypeError(f"order must be a natural number, got {self.order}")
        for c in self.components:
            if self.order <= russell_order(c):
                raise RussellTypeError(
                    f"tuple order {self.order} must exceed component order "
                    f"{russell_order(c)} in {print_russell(self)}"
                )


def russell_order(t: RussellType) -> int:
    match t:
        case Individual():
            return 0
        case Tuple(_, order):
            return order
    raise RussellTypeError(f"not a ramified type: {t!r}")


def is_minimal(t: RussellType) -> bool:
    """True iff every tuple order is the least admissible one."""
    match t:
        case Individual():
            return True
        case Tuple(components, order):
            least = 1 + max((russell_order(c) for c in components), default=-1)
            return order == least and all(is_minimal(c) for c in components)
    raise RussellTypeError(f"not a ramified type: {t!r}")


def russell_embed(t: RussellType) -> TypeSymbol:
    match t:
        case Individual():
            return NAT
        case Tuple(components, order):
            if not components:
                return Pow(order, UNIT)
            body = russell_embed(components[0])
            for c in components[1:]:
                body = Prod(body, russell_embed(c))
            return Pow(order, body)
    raise RussellTypeError(f"not a ramified type: {t!r}")


def print_russell(t: RussellType) -> str:
    match t:
        case Individual():
            return "0^0"
        case Tuple(components, order):
            inner = ",".join(print_russell(c) for c in components)
            return f"({inner})^{order}"
    raise RussellTypeError(f"not a ramified type: {t!r}")


def parse_russell(text: str) -> RussellType:
    """Parse ``0^0`` / ``(t1,...,tk)^m`` notation."""
    tokens = tokenize(text)
    idx = 0

    def peek():
        return tokens[idx]

    def next_tok():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expect(text_: str):
        tok = next_tok()
        if tok.text != text_:
            raise ParseError(f"expected {text_!r}, found {tok.text or 'end of input'!r}", tok.pos)

    def rtype() -> RussellType:
        tok = peek()
        if tok.kind == "int" and tok.text == "0":
            next_tok()
            expect("^")
            tok = next_tok()
            if tok.text != "0":
                raise ParseError("the individual type is written 0^0", tok.pos)
            return Individual()
        if tok.text == "(":
            next_tok()
            components: list[RussellType] = []
            if peek().text != ")":
                components.append(rtype())
                while peek().text == ",":
                    next_tok()
                    components.append(rtype())
            expect(")")
            expect("^")
            tok = next_tok()
            if tok.kind != "int":
                raise ParseError(f"expected an order, found {tok.text or 'end of input'!r}", tok.pos)
            try:
                return Tuple(tuple(components), int(tok.text))
            except RussellTypeError as err:
                raise ParseError(str(err), tok.pos) from err
        raise ParseError(f"expected a ramified type, found {tok.text or 'end of input'!r}", tok.pos)

    result = rtype()
    tok = peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
    return result

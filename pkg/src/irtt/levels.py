"""The two level measures on type symbols and the canonical equality formula.

``level`` bounds which quantifiers a formula about a type may use;
``eq_level`` is the least formula level at which extensional equality on
the type is expressible.  ``eq_formula`` produces that expression: a
formula equivalent to primitive equality (given extensionality) whose
minimal level is exactly ``eq_level``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ast import (
    And,
    Eq,
    Forall,
    Formula,
    Fst,
    Imp,
    IrttError,
    Mem,
    Nat,
    Pow,
    Prod,
    Snd,
    Term,
    TypeSymbol,
    Unit,
    Var,
    free_names,
    fresh_name,
)


def level(t: TypeSymbol) -> int:
    """``level(1) = level(N) = 0``, products take the max, ``level(P[n](A)) = max(n+1, level(A))``."""
    match t:
        case Unit() | Nat():
            return 0
        case Prod(left, right):
            return max(level(left), level(right))
        case Pow(n, body):
            return max(n + 1, level(body))
    raise IrttError(f"not a type symbol: {t!r}")


def eq_level(t: TypeSymbol) -> int:
    """As :func:`level`, except ``eq_level(P[n](A)) = max(n, level(A))``.

    The power-set case uses the *level* of the body, not its equality
    level: deciding equality of subsets quantifies over the body type.
    """
    match t:
        case Unit() | Nat():
            return 0
        case Prod(left, right):
            return max(eq_level(left), eq_level(right))
        case Pow(n, body):
            return max(n, level(body))
    raise IrttError(f"not a type symbol: {t!r}")


@dataclass(frozen=True)
class LevelPair:
    level: int
    eq_level: int

    def __post_init__(self) -> None:
        if self.level < self.eq_level:
            raise IrttError(
                f"level {self.level} below equality level {self.eq_level}"
            )


def level_pair(t: TypeSymbol) -> LevelPair:
    return LevelPair(level(t), eq_level(t))


def eq_formula(t: TypeSymbol, x: Term, y: Term) -> Formula:
    """A formula expressing ``x = y`` at sort ``t`` with minimal level ``eq_level(t)``.

    Primitive equality at the base types, componentwise recursion at
    products, and pointwise bi-implication of membership at power sets
    (the bi-implication is expanded: the connective inventory has no
    primitive ``<=>``).
    """
    match t:
        case Unit() | Nat():
            return Eq(t, x, y)
        case Prod(left, right):
            return And(
                eq_formula(left, Fst(x), Fst(y)),
                eq_formula(right, Snd(x), Snd(y)),
            )
        case Pow(_, body):
            z = fresh_name("z", free_names(x, y))
            zv = Var(z, body)
            return Forall(
                z,
                body,
                And(Imp(Mem(zv, x), Mem(zv, y)), Imp(Mem(zv, y), Mem(zv, x))),
            )
    raise IrttError(f"not a type symbol: {t!r}")

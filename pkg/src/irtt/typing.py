"""Sort inference for terms and level checking for formulas.

``sort_of`` computes the unique sort of a term by the formation rules;
``min_level`` computes the least ``k`` such that a formula belongs to the
level-``k`` formula class.  The levelled classes are cumulative, so
``wf_formula(f, k)`` is monotone in ``k``.

The grammar is sort-agnostic; these checks form a separate pass.  A set
abstraction ``{x:A | body}@k`` is a term of sort ``P[k](A)`` only when
``min_level(body) <= k`` — the predicativity discipline.
"""
from __future__ import annotations

from typing import Mapping

from .ast import (
    Add,
    And,
    Eq,
    Exists,
    Falsum,
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
    Star,
    Succ,
    Term,
    TypeSymbol,
    UNIT,
    Var,
    Zero,
    Expr,
    free_vars,
)
from .levels import level

#: Sorts of the free variables in scope, keyed by variable name.
SortContext = dict[str, TypeSymbol]


class TypingError(IrttError):
    pass


class UnboundVariableError(TypingError):
    pass


class IllSortedError(TypingError):
    pass


class LevelViolationError(TypingError):
    pass


def context_of(*xs: Expr) -> SortContext:
    """Sort context induced by the free variables of the given expressions.

    Raises :class:`IllSortedError` if one name occurs free at two sorts.
    """
    ctx: SortContext = {}
    for x in xs:
        for name, sort in sorted(free_vars(x), key=lambda p: p[0]):
            if name in ctx and ctx[name] != sort:
                raise IllSortedError(
                    f"variable {name!r} occurs free at both {ctx[name]} and {sort}"
                )
            ctx[name] = sort
    return ctx


def sort_of(t: Term, ctx: Mapping[str, TypeSymbol] | None = None) -> TypeSymbol:
    """The unique sort of ``t``, or a :class:`TypingError` explaining why none exists."""
    return _sort_of(t, dict(ctx) if ctx else {})


def _sort_of(t: Term, ctx: SortContext) -> TypeSymbol:
    match t:
        case Var(name, sort):
            if name not in ctx:
                raise UnboundVariableError(f"unbound variable {name!r}")
            if ctx[name] != sort:
                raise IllSortedError(
                    f"variable {name!r} has sort {ctx[name]} in scope but is used at {sort}"
                )
            return sort
        case Star():
            return UNIT
        case Zero():
            return NAT
        case Succ(a):
            _expect(t, a, NAT, ctx)
            return NAT
        case Add(a, b) | Mul(a, b):
            _expect(t, a, NAT, ctx)
            _expect(t, b, NAT, ctx)
            return NAT
        case Pair(a, b):
            return Prod(_sort_of(a, ctx), _sort_of(b, ctx))
        case Fst(a):
            inner = _sort_of(a, ctx)
            if not isinstance(inner, Prod):
                raise IllSortedError(f"fst applied to a term of sort {inner}: {t}")
            return inner.left
        case Snd(a):
            inner = _sort_of(a, ctx)
            if not isinstance(inner, Prod):
                raise IllSortedError(f"snd applied to a term of sort {inner}: {t}")
            return inner.right
        case SetAbs(var, sort, body, k):
            body_level = _min_level(body, {**ctx, var: sort})
            if body_level > k:
                raise LevelViolationError(
                    f"set abstraction annotated @{k} but its body needs level {body_level}: {t}"
                )
            return Pow(k, sort)
    raise IrttError(f"not a term: {t!r}")


def _expect(parent: Term, t: Term, want: TypeSymbol, ctx: SortContext) -> None:
    got = _sort_of(t, ctx)
    if got != want:
        raise IllSortedError(f"expected sort {want}, got {got} in {parent}")


def min_level(f: Formula, ctx: Mapping[str, TypeSymbol] | None = None) -> int:
    """Least ``k`` with ``f`` in the level-``k`` formula class.

    Equality at sort ``A`` needs ``level(A)``; membership in a set of
    sort ``P[n](A)`` needs ``n``; connectives take the max of their
    children; a quantifier over ``A`` needs ``max(level(A), body)``.
    """
    return _min_level(f, dict(ctx) if ctx else {})


def _min_level(f: Formula, ctx: SortContext) -> int:
    match f:
        case Eq(sort, lhs, rhs):
            for side in (lhs, rhs):
                got = _sort_of(side, ctx)
                if got != sort:
                    raise IllSortedError(
                        f"equality at sort {sort} applied to a term of sort {got}: {f}"
                    )
            return level(sort)
        case Mem(elem, set_):
            set_sort = _sort_of(set_, ctx)
            if not isinstance(set_sort, Pow):
                raise IllSortedError(f"membership in a term of sort {set_sort}: {f}")
            elem_sort = _sort_of(elem, ctx)
            if elem_sort != set_sort.body:
                raise IllSortedError(
                    f"membership of a {elem_sort} term in a set over {set_sort.body}: {f}"
                )
            return set_sort.level
        case Falsum():
            return 0
        case Or(a, b) | And(a, b) | Imp(a, b):
            return max(_min_level(a, ctx), _min_level(b, ctx))
        case Forall(var, sort, body) | Exists(var, sort, body):
            return max(level(sort), _min_level(body, {**ctx, var: sort}))
    raise IrttError(f"not a formula: {f!r}")


def wf_formula(f: Formula, k: int, ctx: Mapping[str, TypeSymbol] | None = None) -> bool:
    """True iff ``f`` is well-sorted and ``min_level(f) <= k``."""
    try:
        return min_level(f, ctx) <= k
    except TypingError:
        return False


def wf_diagnostic(f: Formula, k: int, ctx: Mapping[str, TypeSymbol] | None = None) -> str | None:
    """``None`` if ``f`` is well-formed at level ``k``, else the reason it is not."""
    try:
        got = min_level(f, ctx)
    except TypingError as err:
        return str(err)
    if got > k:
        return f"formula has minimal level {got}, above the requested level {k}"
    return None

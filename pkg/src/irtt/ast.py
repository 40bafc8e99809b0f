"""Core abstract syntax: ramified type symbols, terms, formulas, sequents.

Type symbols are built from the unit and natural-number base types with
binary products and level-indexed power sets ``P[k](A)``.  Terms and
formulas are the two syntactic classes of the object language; every set
abstraction carries an explicit power-set level annotation ``@k``.

Binding is by name.  Substitution is capture-avoiding; alpha-equivalence
is decided by renaming bound variables to canonical markers that cannot
appear in source text.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Union


class IrttError(Exception):
    """Base class for errors raised by this package."""


# --------------------------------------------------------------------------
# Type symbols
# --------------------------------------------------------------------------

class TypeSymbol:
    """Base class of ramified type symbols."""

    def __str__(self) -> str:
        from . import printer

        return printer.print_type(self)


@dataclass(frozen=True)
class Unit(TypeSymbol):
    pass


@dataclass(frozen=True)
class Nat(TypeSymbol):
    pass


@dataclass(frozen=True)
class Prod(TypeSymbol):
    left: TypeSymbol
    right: TypeSymbol


@dataclass(frozen=True)
class Pow(TypeSymbol):
    level: int
    body: TypeSymbol

    def __post_init__(self) -> None:
        if self.level < 0:
            raise IrttError(f"power-set level must be a natural number, got {self.level}")


UNIT = Unit()
NAT = Nat()


def type_pow_depth(t: TypeSymbol) -> int:
    """Maximal nesting of power-set constructors in ``t``."""
    match t:
        case Unit() | Nat():
            return 0
        case Prod(left, right):
            return max(type_pow_depth(left), type_pow_depth(right))
        case Pow(_, body):
            return 1 + type_pow_depth(body)
    raise IrttError(f"not a type symbol: {t!r}")


# --------------------------------------------------------------------------
# Terms
# --------------------------------------------------------------------------

class Term:
    """Base class of terms."""

    def __str__(self) -> str:
        from . import printer

        return printer.print_term(self)


@dataclass(frozen=True)
class Var(Term):
    name: str
    sort: TypeSymbol


@dataclass(frozen=True)
class Star(Term):
    pass


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Succ(Term):
    arg: Term


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Fst(Term):
    arg: Term


@dataclass(frozen=True)
class Snd(Term):
    arg: Term


@dataclass(frozen=True)
class SetAbs(Term):
    """Set abstraction ``{var:sort | body}@ann_level`` of sort ``P[ann_level](sort)``."""

    var: str
    sort: TypeSymbol
    body: "Formula"
    ann_level: int

    def __post_init__(self) -> None:
        if self.ann_level < 0:
            raise IrttError(f"set-abstraction level must be a natural number, got {self.ann_level}")


STAR = Star()
ZERO = Zero()


def numeral(n: int) -> Term:
    """The term ``S (S ... 0)`` with ``n`` successors."""
    if n < 0:
        raise IrttError(f"numerals are naturals, got {n}")
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def numeral_value(t: Term) -> int | None:
    """Inverse of :func:`numeral`; ``None`` if ``t`` is not a closed numeral."""
    n = 0
    while isinstance(t, Succ):
        t = t.arg
        n += 1
    return n if isinstance(t, Zero) else None


# --------------------------------------------------------------------------
# Formulas
# --------------------------------------------------------------------------

class Formula:
    """Base class of formulas."""

    def __str__(self) -> str:
        from . import printer

        return printer.print_formula(self)


@dataclass(frozen=True)
class Eq(Formula):
    sort: TypeSymbol
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Mem(Formula):
    elem: Term
    set: Term


@dataclass(frozen=True)
class Falsum(Formula):
    pass


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    sort: TypeSymbol
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    sort: TypeSymbol
    body: Formula


FALSE = Falsum()

#: Canonical truth: the connective inventory has no primitive top element.
TRUTH = Imp(FALSE, FALSE)

Expr = Union[Term, Formula]


@dataclass(frozen=True)
class Sequent:
    hypotheses: tuple[Formula, ...]
    goal: Formula

    def __str__(self) -> str:
        hyps = ", ".join(str(h) for h in self.hypotheses)
        return f"{hyps} |- {self.goal}" if hyps else f"|- {self.goal}"


# --------------------------------------------------------------------------
# Variables, substitution, alpha-equivalence
# --------------------------------------------------------------------------

def _free_into(x: Expr, bound: frozenset[str], out: set[tuple[str, TypeSymbol]]) -> None:
    match x:
        case Var(name, sort):
            if name not in bound:
                out.add((name, sort))
        case Star() | Zero() | Falsum():
            pass
        case Succ(a) | Fst(a) | Snd(a):
            _free_into(a, bound, out)
        case Add(a, b) | Mul(a, b) | Pair(a, b):
            _free_into(a, bound, out)
            _free_into(b, bound, out)
        case SetAbs(v, _, body, _):
            _free_into(body, bound | {v}, out)
        case Eq(_, a, b):
            _free_into(a, bound, out)
            _free_into(b, bound, out)
        case Mem(a, b):
            _free_into(a, bound, out)
            _free_into(b, bound, out)
        case Or(a, b) | And(a, b) | Imp(a, b):
            _free_into(a, bound, out)
            _free_into(b, bound, out)
        case Forall(v, _, body) | Exists(v, _, body):
            _free_into(body, bound | {v}, out)
        case _:
            raise IrttError(f"not a term or formula: {x!r}")


def free_vars(x: Expr) -> frozenset[tuple[str, TypeSymbol]]:
    """Free variables of a term or formula as (name, sort) pairs."""
    out: set[tuple[str, TypeSymbol]] = set()
    _free_into(x, frozenset(), out)
    return frozenset(out)


def free_names(*xs: Expr) -> frozenset[str]:
    names: set[str] = set()
    for x in xs:
        names.update(n for n, _ in free_vars(x))
    return frozenset(names)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """A name not in ``avoid``, derived from ``base`` by priming."""
    avoid = set(avoid)
    name = base
    while name in avoid:
        name += "'"
    return name


def subst_term(t: Term, name: str, repl: Term) -> Term:
    match t:
        case Var(n, _):
            return repl if n == name else t
        case Star() | Zero():
            return t
        case Succ(a):
            return Succ(subst_term(a, name, repl))
        case Add(a, b):
            return Add(subst_term(a, name, repl), subst_term(b, name, repl))
        case Mul(a, b):
            return Mul(subst_term(a, name, repl), subst_term(b, name, repl))
        case Pair(a, b):
            return Pair(subst_term(a, name, repl), subst_term(b, name, repl))
        case Fst(a):
            return Fst(subst_term(a, name, repl))
        case Snd(a):
            return Snd(subst_term(a, name, repl))
        case SetAbs(v, sort, body, k):
            if v == name:
                return t
            if v in free_names(repl) and name in free_names(body):
                w = fresh_name(v, free_names(repl) | free_names(body) | {name})
                body = subst_formula(body, v, Var(w, sort))
                v = w
            return SetAbs(v, sort, subst_formula(body, name, repl), k)
    raise IrttError(f"not a term: {t!r}")


def subst_formula(f: Formula, name: str, repl: Term) -> Formula:
    match f:
        case Eq(sort, a, b):
            return Eq(sort, subst_term(a, name, repl), subst_term(b, name, repl))
        case Mem(a, b):
            return Mem(subst_term(a, name, repl), subst_term(b, name, repl))
        case Falsum():
            return f
        case Or(a, b):
            return Or(subst_formula(a, name, repl), subst_formula(b, name, repl))
        case And(a, b):
            return And(subst_formula(a, name, repl), subst_formula(b, name, repl))
        case Imp(a, b):
            return Imp(subst_formula(a, name, repl), subst_formula(b, name, repl))
        case Forall(v, sort, body) | Exists(v, sort, body):
            cls = type(f)
            if v == name:
                return f
            if v in free_names(repl) and name in free_names(body):
                w = fresh_name(v, free_names(repl) | free_names(body) | {name})
                body = subst_formula(body, v, Var(w, sort))
                v = w
            return cls(v, sort, subst_formula(body, name, repl))
    raise IrttError(f"not a formula: {f!r}")


def _alpha(x: Expr, env: dict[str, str], counter: itertools.count) -> Expr:
    # Canonical bound names use '#', which the tokenizer never produces,
    # so they cannot collide with free variables.
    match x:
        case Var(n, sort):
            return Var(env.get(n, n), sort)
        case Star() | Zero() | Falsum():
            return x
        case Succ(a):
            return Succ(_alpha(a, env, counter))
        case Add(a, b):
            return Add(_alpha(a, env, counter), _alpha(b, env, counter))
        case Mul(a, b):
            return Mul(_alpha(a, env, counter), _alpha(b, env, counter))
        case Pair(a, b):
            return Pair(_alpha(a, env, counter), _alpha(b, env, counter))
        case Fst(a):
            return Fst(_alpha(a, env, counter))
        case Snd(a):
            return Snd(_alpha(a, env, counter))
        case SetAbs(v, sort, body, k):
            w = f"#{next(counter)}"
            return SetAbs(w, sort, _alpha(body, {**env, v: w}, counter), k)
        case Eq(sort, a, b):
            return Eq(sort, _alpha(a, env, counter), _alpha(b, env, counter))
        case Mem(a, b):
            return Mem(_alpha(a, env, counter), _alpha(b, env, counter))
        case Or(a, b):
            return Or(_alpha(a, env, counter), _alpha(b, env, counter))
        case And(a, b):
            return And(_alpha(a, env, counter), _alpha(b, env, counter))
        case Imp(a, b):
            return Imp(_alpha(a, env, counter), _alpha(b, env, counter))
        case Forall(v, sort, body) | Exists(v, sort, body):
            cls = type(x)
            w = f"#{next(counter)}"
            return cls(w, sort, _alpha(body, {**env, v: w}, counter))
    raise IrttError(f"not a term or formula: {x!r}")


def alpha_normalize(x: Expr) -> Expr:
    """Rename bound variables to canonical position-based names."""
    return _alpha(x, {}, itertools.count())


def alpha_eq(a: Expr, b: Expr) -> bool:
    """Structural equality up to renaming of bound variables."""
    return alpha_normalize(a) == alpha_normalize(b)


def _annotation_types(x: Expr, out: list[TypeSymbol]) -> None:
    match x:
        case Var(_, sort):
            out.append(sort)
        case Star() | Zero() | Falsum():
            pass
        case Succ(a) | Fst(a) | Snd(a):
            _annotation_types(a, out)
        case Add(a, b) | Mul(a, b) | Pair(a, b):
            _annotation_types(a, out)
            _annotation_types(b, out)
        case SetAbs(_, sort, body, k):
            out.append(Pow(k, sort))
            _annotation_types(body, out)
        case Eq(sort, a, b):
            out.append(sort)
            _annotation_types(a, out)
            _annotation_types(b, out)
        case Mem(a, b):
            _annotation_types(a, out)
            _annotation_types(b, out)
        case Or(a, b) | And(a, b) | Imp(a, b):
            _annotation_types(a, out)
            _annotation_types(b, out)
        case Forall(_, sort, body) | Exists(_, sort, body):
            out.append(sort)
            _annotation_types(body, out)
        case _:
            raise IrttError(f"not a term or formula: {x!r}")


def pow_depth(x: Expr) -> int:
    """Maximal power-set nesting over every type annotation in ``x``."""
    types: list[TypeSymbol] = []
    _annotation_types(x, types)
    return max((type_pow_depth(t) for t in types), default=0)


def sequent_pow_depth(s: Sequent) -> int:
    return max([pow_depth(s.goal)] + [pow_depth(h) for h in s.hypotheses])

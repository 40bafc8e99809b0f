"""Setoid interpretation: index calculus, type/formula translation, universes.

Each type symbol is read as a setoid — a carrier type in some universe
``U_m`` together with an equivalence relation valued in some ``U_n`` —
written here as an ``(m, n)`` index.  Power sets become spaces of
extensional propositional functions into ``Omega_k``, the setoid of
level-``k`` propositions under bi-implication.

Formulas translate propositions-as-types: universals to ``Pi``,
existentials to ``Sigma``, conjunction to a non-dependent ``Sigma``,
disjunction to ``Sum``, implication to a non-dependent ``Pi``, falsity
to the empty type.  Equality translates structurally (so the translation
of equality at a power set is the pointwise bi-implication, which can
land strictly below the formula-class level of primitive equality).
Set abstractions yield a lambda paired with a named hole standing for
the extensionality proof obligation.

``infer_universe`` computes the least universe containing a translated
type or proposition by the standard closure rules.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .ast import (
    Add as TAdd,
    And,
    Eq,
    Exists,
    Falsum,
    Forall,
    Formula,
    Fst as TFst,
    Imp,
    IrttError,
    Mem,
    Mul as TMul,
    Nat as TNat,
    Or,
    Pair as TPair,
    Pow as TPow,
    Prod as TProd,
    SetAbs,
    Snd as TSnd,
    Star as TStar,
    Succ as TSucc,
    Term,
    TypeSymbol,
    Unit as TUnit,
    Var as TVar,
    Zero as TZero,
)
from .printer import print_term
from .typing import context_of, min_level


class InterpError(IrttError):
    pass


# --------------------------------------------------------------------------
# Setoid indices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SetoidIndex:
    """Universe index pair: carrier in ``U_m``, equivalence valued in ``U_n``."""

    carrier_level: int
    eq_rel_level: int

    def admissible_as(self, other: "SetoidIndex") -> bool:
        """Cumulativity: an (m, n)-setoid is an (m', n')-setoid for larger indices."""
        return (
            other.carrier_level >= self.carrier_level
            and other.eq_rel_level >= self.eq_rel_level
        )

    def as_pair(self) -> tuple[int, int]:
        return (self.carrier_level, self.eq_rel_level)


def index_product(a: SetoidIndex, b: SetoidIndex) -> SetoidIndex:
    """Index of a binary product of setoids: componentwise maximum."""
    return SetoidIndex(
        max(a.carrier_level, b.carrier_level),
        max(a.eq_rel_level, b.eq_rel_level),
    )


def index_exponent(dom: SetoidIndex, cod: SetoidIndex) -> SetoidIndex:
    """Index of an exponent of setoids.

    The carrier packs a function with its extensionality proof, so it
    joins all four input levels; equality is pointwise, so it needs the
    domain carrier and the codomain relation.
    """
    m, n = dom.carrier_level, dom.eq_rel_level
    k, l = cod.carrier_level, cod.eq_rel_level
    return SetoidIndex(max(m, n, k, l), max(m, l))


def omega_index(n: int) -> SetoidIndex:
    """Index of ``Omega_n``: propositions of level ``n`` under bi-implication."""
    return SetoidIndex(n + 1, n)


# --------------------------------------------------------------------------
# Target syntax
# --------------------------------------------------------------------------

class MlttExpr:
    def __str__(self) -> str:
        from .sexp import write_sexp

        return write_sexp(mltt_to_sexp(self))


@dataclass(frozen=True)
class Pi(MlttExpr):
    var: str
    domain: MlttExpr
    body: MlttExpr


@dataclass(frozen=True)
class Sigma(MlttExpr):
    var: str
    domain: MlttExpr
    body: MlttExpr


@dataclass(frozen=True)
class Sum(MlttExpr):
    left: MlttExpr
    right: MlttExpr


@dataclass(frozen=True)
class IdType(MlttExpr):
    carrier: MlttExpr
    lhs: MlttExpr
    rhs: MlttExpr


@dataclass(frozen=True)
class NatType(MlttExpr):
    pass


@dataclass(frozen=True)
class UnitType(MlttExpr):
    pass


@dataclass(frozen=True)
class EmptyType(MlttExpr):
    pass


@dataclass(frozen=True)
class Universe(MlttExpr):
    level: int


@dataclass(frozen=True)
class Lambda(MlttExpr):
    var: str
    domain: MlttExpr
    body: MlttExpr


@dataclass(frozen=True)
class Apply(MlttExpr):
    fn: MlttExpr
    arg: MlttExpr


@dataclass(frozen=True)
class PairC(MlttExpr):
    fst: MlttExpr
    snd: MlttExpr


@dataclass(frozen=True)
class Proj1(MlttExpr):
    arg: MlttExpr


@dataclass(frozen=True)
class Proj2(MlttExpr):
    arg: MlttExpr


@dataclass(frozen=True)
class Hole(MlttExpr):
    """A named proof obligation left to an ambient proof assistant."""

    obligation: str


@dataclass(frozen=True)
class Ref(MlttExpr):
    """A variable or constant; translated variables carry their carrier type."""

    name: str
    type_: MlttExpr | None = None


@dataclass(frozen=True)
class NatLit(MlttExpr):
    value: int


@dataclass(frozen=True)
class SetoidDesc:
    carrier: MlttExpr
    eq_rel: MlttExpr
    index: SetoidIndex


def _iff(p: MlttExpr, q: MlttExpr) -> MlttExpr:
    return Sigma("_", Pi("_", p, q), Pi("_", q, p))


def mltt_free_refs(e: MlttExpr) -> frozenset[str]:
    match e:
        case Ref(name, _):
            return frozenset({name})
        case NatType() | UnitType() | EmptyType() | Universe(_) | Hole(_) | NatLit(_):
            return frozenset()
        case Pi(var, domain, body) | Sigma(var, domain, body) | Lambda(var, domain, body):
            return mltt_free_refs(domain) | (mltt_free_refs(body) - {var})
        case Sum(a, b) | Apply(a, b) | PairC(a, b):
            return mltt_free_refs(a) | mltt_free_refs(b)
        case IdType(c, a, b):
            return mltt_free_refs(c) | mltt_free_refs(a) | mltt_free_refs(b)
        case Proj1(a) | Proj2(a):
            return mltt_free_refs(a)
    raise InterpError(f"not a target expression: {e!r}")


# --------------------------------------------------------------------------
# Type translation
# --------------------------------------------------------------------------

def interp_type(t: TypeSymbol) -> SetoidDesc:
    """Setoid for a type symbol; its index follows the index calculus above."""
    match t:
        case TUnit():
            carrier: MlttExpr = UnitType()
            index = SetoidIndex(0, 0)
        case TNat():
            carrier = NatType()
            index = SetoidIndex(0, 0)
        case TProd(left, right):
            dl, dr = interp_type(left), interp_type(right)
            carrier = Sigma("_", dl.carrier, dr.carrier)
            index = index_product(dl.index, dr.index)
        case TPow(k, body):
            db = interp_type(body)
            fn_type = Pi("x", db.carrier, Universe(k))
            fref = Ref("f", fn_type)
            extensional = Pi(
                "x",
                db.carrier,
                Pi(
                    "y",
                    db.carrier,
                    Pi(
                        "_",
                        eq_apply(body, Ref("x", db.carrier), Ref("y", db.carrier)),
                        _iff(Apply(fref, Ref("x", db.carrier)), Apply(fref, Ref("y", db.carrier))),
                    ),
                ),
            )
            carrier = Sigma("f", fn_type, extensional)
            index = index_exponent(db.index, omega_index(k))
        case _:
            raise InterpError(f"not a type symbol: {t!r}")
    rel = Lambda(
        "a",
        carrier,
        Lambda("b", carrier, eq_apply(t, Ref("a", carrier), Ref("b", carrier))),
    )
    return SetoidDesc(carrier, rel, index)


def eq_apply(t: TypeSymbol, a: MlttExpr, b: MlttExpr) -> MlttExpr:
    """The setoid equality of ``t`` applied to two translated elements."""
    match t:
        case TUnit():
            return IdType(UnitType(), a, b)
        case TNat():
            return IdType(NatType(), a, b)
        case TProd(left, right):
            return Sigma(
                "_",
                eq_apply(left, Proj1(a), Proj1(b)),
                eq_apply(right, Proj2(a), Proj2(b)),
            )
        case TPow(_, body):
            db = interp_type(body)
            z = "z"
            taken = mltt_free_refs(a) | mltt_free_refs(b)
            while z in taken:
                z += "'"
            zr = Ref(z, db.carrier)
            return Pi(z, db.carrier, _iff(Apply(Proj1(a), zr), Apply(Proj1(b), zr)))
    raise InterpError(f"not a type symbol: {t!r}")


def omega_setoid(n: int) -> SetoidDesc:
    """The setoid of level-``n`` propositions under bi-implication."""
    carrier = Universe(n)
    rel = Lambda("a", carrier, Lambda("b", carrier, _iff(Ref("a", carrier), Ref("b", carrier))))
    return SetoidDesc(carrier, rel, omega_index(n))


# --------------------------------------------------------------------------
# Formula and term translation
# --------------------------------------------------------------------------

def interp_term(t: Term) -> MlttExpr:
    match t:
        case TVar(name, sort):
            return Ref(name, interp_type(sort).carrier)
        case TStar():
            return Ref("star", UnitType())
        case TZero():
            return NatLit(0)
        case TSucc(a):
            inner = interp_term(a)
            if isinstance(inner, NatLit):
                return NatLit(inner.value + 1)
            return Apply(Ref("succ"), inner)
        case TAdd(a, b):
            return Apply(Apply(Ref("plus"), interp_term(a)), interp_term(b))
        case TMul(a, b):
            return Apply(Apply(Ref("times"), interp_term(a)), interp_term(b))
        case TPair(a, b):
            return PairC(interp_term(a), interp_term(b))
        case TFst(a):
            return Proj1(interp_term(a))
        case TSnd(a):
            return Proj2(interp_term(a))
        case SetAbs(var, sort, body, _):
            ds = interp_type(sort)
            return PairC(
                Lambda(var, ds.carrier, interp_formula_unchecked(body)),
                Hole(f"extensionality of {print_term(t)}"),
            )
    raise InterpError(f"not a term: {t!r}")


def interp_formula(f: Formula, ctx: Mapping[str, TypeSymbol] | None = None) -> MlttExpr:
    """Propositions-as-types skeleton of a well-formed formula."""
    min_level(f, ctx if ctx is not None else context_of(f))
    return interp_formula_unchecked(f)


def interp_formula_unchecked(f: Formula) -> MlttExpr:
    match f:
        case Eq(sort, lhs, rhs):
            return eq_apply(sort, interp_term(lhs), interp_term(rhs))
        case Mem(elem, set_):
            d = interp_term(set_)
            fn = d.fst if isinstance(d, PairC) else Proj1(d)
            return Apply(fn, interp_term(elem))
        case Falsum():
            return EmptyType()
        case Or(a, b):
            return Sum(interp_formula_unchecked(a), interp_formula_unchecked(b))
        case And(a, b):
            return Sigma("_", interp_formula_unchecked(a), interp_formula_unchecked(b))
        case Imp(a, b):
            return Pi("_", interp_formula_unchecked(a), interp_formula_unchecked(b))
        case Forall(var, sort, body):
            return Pi(var, interp_type(sort).carrier, interp_formula_unchecked(body))
        case Exists(var, sort, body):
            return Sigma(var, interp_type(sort).carrier, interp_formula_unchecked(body))
    raise InterpError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# Universe inference
# --------------------------------------------------------------------------

def infer_universe(e: MlttExpr) -> int:
    """Least ``n`` with ``e : U_n``, for type- or proposition-shaped ``e``.

    Pi, Sigma and Sum join their parts, ``U_k : U_{k+1}``, base types and
    identity over them live in ``U_0``, and an applied predicate lands in
    the universe its codomain names.
    """
    match e:
        case NatType() | UnitType() | EmptyType():
            return 0
        case Universe(k):
            return k + 1
        case Pi(_, domain, body) | Sigma(_, domain, body):
            return max(infer_universe(domain), infer_universe(body))
        case Sum(a, b):
            return max(infer_universe(a), infer_universe(b))
        case IdType(carrier, _, _):
            return infer_universe(carrier)
        case Apply(fn, _):
            return _applied_universe(fn)
    raise InterpError(f"cannot infer a universe for {e!r}")


def _applied_universe(fn: MlttExpr) -> int:
    if isinstance(fn, Lambda):
        return infer_universe(fn.body)
    fn_type = _element_type(fn)
    if isinstance(fn_type, Pi) and isinstance(fn_type.body, Universe):
        return fn_type.body.level
    raise InterpError(f"cannot infer the universe of an application of {fn!r}")


def _element_type(e: MlttExpr) -> MlttExpr:
    """Best-effort type of a term-shaped expression, for universe digs."""
    match e:
        case Ref(name, type_):
            if type_ is None:
                raise InterpError(f"reference {name!r} carries no type")
            return type_
        case Proj1(a):
            if isinstance(a, PairC):
                return _element_type(a.fst)
            inner = _element_type(a)
            if isinstance(inner, Sigma):
                return inner.domain
            raise InterpError(f"projection from a non-pair type {inner!r}")
        case Proj2(a):
            if isinstance(a, PairC):
                return _element_type(a.snd)
            inner = _element_type(a)
            if isinstance(inner, Sigma):
                return inner.body
            raise InterpError(f"projection from a non-pair type {inner!r}")
        case PairC(a, b):
            return Sigma("_", _element_type(a), _element_type(b))
        case Lambda(var, domain, body):
            return Pi(var, domain, Universe(infer_universe(body)))
        case NatLit(_):
            return NatType()
        case Apply(fn, _):
            fn_type = _element_type(fn)
            if isinstance(fn_type, Pi):
                return fn_type.body
            raise InterpError(f"application of a non-function type {fn_type!r}")
    raise InterpError(f"no element type for {e!r}")


def collect_holes(e: MlttExpr) -> list[Hole]:
    """All proof obligations in ``e``, in traversal order."""
    out: list[Hole] = []

    def walk(x: MlttExpr) -> None:
        match x:
            case Hole(_):
                out.append(x)
            case Ref(_, type_):
                if type_ is not None:
                    walk(type_)
            case NatType() | UnitType() | EmptyType() | Universe(_) | NatLit(_):
                pass
            case Pi(_, domain, body) | Sigma(_, domain, body) | Lambda(_, domain, body):
                walk(domain)
                walk(body)
            case Sum(a, b) | Apply(a, b) | PairC(a, b):
                walk(a)
                walk(b)
            case IdType(c, a, b):
                walk(c)
                walk(a)
                walk(b)
            case Proj1(a) | Proj2(a):
                walk(a)
            case _:
                raise InterpError(f"not a target expression: {x!r}")

    walk(e)
    return out


def mltt_to_sexp(e: MlttExpr):
    match e:
        case Pi(var, domain, body):
            return ["pi", [var, mltt_to_sexp(domain)], mltt_to_sexp(body)]
        case Sigma(var, domain, body):
            return ["sigma", [var, mltt_to_sexp(domain)], mltt_to_sexp(body)]
        case Sum(a, b):
            return ["sum", mltt_to_sexp(a), mltt_to_sexp(b)]
        case IdType(c, a, b):
            return ["id", mltt_to_sexp(c), mltt_to_sexp(a), mltt_to_sexp(b)]
        case NatType():
            return "nat"
        case UnitType():
            return "unit"
        case EmptyType():
            return "empty"
        case Universe(k):
            return ["U", str(k)]
        case Lambda(var, domain, body):
            return ["lambda", [var, mltt_to_sexp(domain)], mltt_to_sexp(body)]
        case Apply(fn, arg):
            return ["apply", mltt_to_sexp(fn), mltt_to_sexp(arg)]
        case PairC(a, b):
            return ["pair", mltt_to_sexp(a), mltt_to_sexp(b)]
        case Proj1(a):
            return ["p1", mltt_to_sexp(a)]
        case Proj2(a):
            return ["p2", mltt_to_sexp(a)]
        case Hole(obligation):
            return ["hole", obligation.replace(" ", "_")]
        case Ref(name, _):
            return name
        case NatLit(value):
            return str(value)
    raise InterpError(f"not a target expression: {e!r}")

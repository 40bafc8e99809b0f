"""Pretty-printers for types, terms and formulas.

Printing is the inverse of parsing: ``parse(print(x))`` is structurally
equal to ``x``.  Parentheses are inserted exactly where the operator
precedences require them; closed successor chains print as decimals.
"""
from __future__ import annotations

from .ast import (
    Add,
    And,
    Eq,
    Exists,
    Falsum,
    Forall,
    Fst,
    Imp,
    IrttError,
    Mem,
    Mul,
    Nat,
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
    Unit,
    Var,
    Zero,
    Formula,
    numeral_value,
)

# Precedence contexts.  Higher numbers demand tighter-binding expressions.
_TY_PROD, _TY_ATOM = 0, 1
_TM_ADD, _TM_MUL, _TM_PREFIX, _TM_ATOM = 0, 1, 2, 3
_FM_IMP, _FM_OR, _FM_AND, _FM_ATOM = 0, 1, 2, 3


def _wrap(s: str, needed: bool) -> str:
    return f"({s})" if needed else s


def print_type(t: TypeSymbol, prec: int = _TY_PROD) -> str:
    match t:
        case Unit():
            return "1"
        case Nat():
            return "N"
        case Prod(left, right):
            s = f"{print_type(left, _TY_PROD)} * {print_type(right, _TY_ATOM)}"
            return _wrap(s, prec > _TY_PROD)
        case Pow(level, body):
            return f"P[{level}]({print_type(body, _TY_PROD)})"
    raise IrttError(f"not a type symbol: {t!r}")


def print_term(t: Term, prec: int = _TM_ADD) -> str:
    n = numeral_value(t)
    if n is not None:
        return str(n)
    match t:
        case Var(name, _):
            return name
        case Star():
            return "()"
        case Zero():
            return "0"
        case Succ(a):
            return _wrap(f"S {print_term(a, _TM_PREFIX)}", prec > _TM_PREFIX)
        case Fst(a):
            return _wrap(f"fst {print_term(a, _TM_PREFIX)}", prec > _TM_PREFIX)
        case Snd(a):
            return _wrap(f"snd {print_term(a, _TM_PREFIX)}", prec > _TM_PREFIX)
        case Add(a, b):
            s = f"{print_term(a, _TM_ADD)} + {print_term(b, _TM_MUL)}"
            return _wrap(s, prec > _TM_ADD)
        case Mul(a, b):
            s = f"{print_term(a, _TM_MUL)} . {print_term(b, _TM_PREFIX)}"
            return _wrap(s, prec > _TM_MUL)
        case Pair(a, b):
            return f"<{print_term(a)}, {print_term(b)}>"
        case SetAbs(var, sort, body, k):
            return f"{{{var}:{print_type(sort)} | {print_formula(body)}}}@{k}"
    raise IrttError(f"not a term: {t!r}")


def print_formula(f: Formula, prec: int = _FM_IMP) -> str:
    match f:
        case Eq(_, lhs, rhs):
            return f"{print_term(lhs)} = {print_term(rhs)}"
        case Mem(elem, set_):
            return f"{print_term(elem)} in {print_term(set_)}"
        case Falsum():
            return "false"
        case Imp(a, b):
            s = f"{print_formula(a, _FM_OR)} => {print_formula(b, _FM_IMP)}"
            return _wrap(s, prec > _FM_IMP)
        case Or(a, b):
            s = f"{print_formula(a, _FM_OR)} \\/ {print_formula(b, _FM_AND)}"
            return _wrap(s, prec > _FM_OR)
        case And(a, b):
            s = f"{print_formula(a, _FM_AND)} /\\ {print_formula(b, _FM_ATOM)}"
            return _wrap(s, prec > _FM_AND)
        case Forall(var, sort, body):
            s = f"forall {var}:{print_type(sort)}. {print_formula(body, _FM_IMP)}"
            return _wrap(s, prec > _FM_IMP)
        case Exists(var, sort, body):
            s = f"exists {var}:{print_type(sort)}. {print_formula(body, _FM_IMP)}"
            return _wrap(s, prec > _FM_IMP)
    raise IrttError(f"not a formula: {f!r}")

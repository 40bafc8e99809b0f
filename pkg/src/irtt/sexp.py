"""Nested-list (s-expression) serialization of syntax and proof scripts.

Every file format of the toolkit is an s-expression over bare atoms:

* proof scripts (``.irttp``): ``(theorem NAME (hypotheses F...) (goal F) (proof P))``
* sequent files (``.irtts``): ``(sequent (hypotheses F...) (goal F))``
* theory files (``.irtt``): ``(theory DECL...)``

Types, terms and formulas are written fully explicitly — every variable
carries its sort — so files are self-contained and round-trip exactly.
Lines starting with ``;`` are comments.
"""
from __future__ import annotations

from .ast import (
    Add,
    And,
    Eq,
    Exists,
    FALSE,
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
    Sequent,
    SetAbs,
    Snd,
    STAR,
    Star,
    Succ,
    Term,
    TypeSymbol,
    UNIT,
    Var,
    ZERO,
    Zero,
)

class SexpError(IrttError):
    pass


# --------------------------------------------------------------------------
# Reader / writer
# --------------------------------------------------------------------------

def read_sexp(text: str):
    """Parse one s-expression; raises on trailing non-comment input."""
    tokens = _tokenize_sexp(text)
    expr, rest = _read(tokens, 0)
    if rest != len(tokens):
        raise SexpError(f"trailing input after s-expression: {tokens[rest]!r}")
    return expr


def _tokenize_sexp(text: str) -> list[str]:
    tokens: list[str] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c in " \t\r\n":
            i += 1
        elif c == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif c in "()":
            tokens.append(c)
            i += 1
        else:
            j = i
            while j < len(text) and text[j] not in " \t\r\n();":
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


def _read(tokens: list[str], i: int):
    if i >= len(tokens):
        raise SexpError("unexpected end of input")
    tok = tokens[i]
    if tok == "(":
        items = []
        i += 1
        while True:
            if i >= len(tokens):
                raise SexpError("missing closing parenthesis")
            if tokens[i] == ")":
                return items, i + 1
            item, i = _read(tokens, i)
            items.append(item)
    if tok == ")":
        raise SexpError("unexpected closing parenthesis")
    return tok, i + 1


def write_sexp(expr, indent: int = 0, width: int = 100) -> str:
    """Render with light indentation so generated files stay reviewable."""
    flat = _write_flat(expr)
    if len(flat) + indent <= width or isinstance(expr, str):
        return flat
    head, *rest = expr
    pad = " " * (indent + 2)
    parts = [_write_flat(head) if isinstance(head, str) else write_sexp(head, indent + 2, width)]
    for item in rest:
        parts.append("\n" + pad + write_sexp(item, indent + 2, width))
    return "(" + "".join(parts) + ")"


def _write_flat(expr) -> str:
    if isinstance(expr, str):
        return expr
    return "(" + " ".join(_write_flat(e) for e in expr) + ")"


# --------------------------------------------------------------------------
# Codecs
# --------------------------------------------------------------------------

def type_to_sexp(t: TypeSymbol):
    if t == UNIT:
        return "unit"
    if t == NAT:
        return "nat"
    match t:
        case Prod(left, right):
            return ["prod", type_to_sexp(left), type_to_sexp(right)]
        case Pow(level, body):
            return ["pow", str(level), type_to_sexp(body)]
    raise SexpError(f"not a type symbol: {t!r}")


def type_from_sexp(s, typedefs: dict[str, TypeSymbol] | None = None) -> TypeSymbol:
    if isinstance(s, str):
        if s == "unit":
            return UNIT
        if s == "nat":
            return NAT
        if typedefs and s in typedefs:
            return typedefs[s]
        raise SexpError(f"unknown type name {s!r}")
    match s:
        case ["prod", left, right]:
            return Prod(type_from_sexp(left, typedefs), type_from_sexp(right, typedefs))
        case ["pow", level, body]:
            return Pow(_nat(level), type_from_sexp(body, typedefs))
    raise SexpError(f"malformed type: {s!r}")


def term_to_sexp(t: Term):
    match t:
        case Var(name, sort):
            return ["var", name, type_to_sexp(sort)]
        case Star():
            return "star"
        case Zero():
            return "zero"
        case Succ(a):
            return ["succ", term_to_sexp(a)]
        case Add(a, b):
            return ["add", term_to_sexp(a), term_to_sexp(b)]
        case Mul(a, b):
            return ["mul", term_to_sexp(a), term_to_sexp(b)]
        case Pair(a, b):
            return ["pair", term_to_sexp(a), term_to_sexp(b)]
        case Fst(a):
            return ["fst", term_to_sexp(a)]
        case Snd(a):
            return ["snd", term_to_sexp(a)]
        case SetAbs(var, sort, body, k):
            return ["setabs", var, type_to_sexp(sort), formula_to_sexp(body), str(k)]
    raise SexpError(f"not a term: {t!r}")


def term_from_sexp(s, typedefs: dict[str, TypeSymbol] | None = None) -> Term:
    if isinstance(s, str):
        if s == "star":
            return STAR
        if s == "zero":
            return ZERO
        raise SexpError(f"unknown term atom {s!r}")
    match s:
        case ["var", str(name), sort]:
            return Var(name, type_from_sexp(sort, typedefs))
        case ["succ", a]:
            return Succ(term_from_sexp(a, typedefs))
        case ["add", a, b]:
            return Add(term_from_sexp(a, typedefs), term_from_sexp(b, typedefs))
        case ["mul", a, b]:
            return Mul(term_from_sexp(a, typedefs), term_from_sexp(b, typedefs))
        case ["pair", a, b]:
            return Pair(term_from_sexp(a, typedefs), term_from_sexp(b, typedefs))
        case ["fst", a]:
            return Fst(term_from_sexp(a, typedefs))
        case ["snd", a]:
            return Snd(term_from_sexp(a, typedefs))
        case ["setabs", str(var), sort, body, k]:
            return SetAbs(var, type_from_sexp(sort, typedefs), formula_from_sexp(body, typedefs), _nat(k))
    raise SexpError(f"malformed term: {s!r}")


def formula_to_sexp(f: Formula):
    match f:
        case Eq(sort, lhs, rhs):
            return ["eq", type_to_sexp(sort), term_to_sexp(lhs), term_to_sexp(rhs)]
        case Mem(elem, set_):
            return ["mem", term_to_sexp(elem), term_to_sexp(set_)]
        case Falsum():
            return "false"
        case Or(a, b):
            return ["or", formula_to_sexp(a), formula_to_sexp(b)]
        case And(a, b):
            return ["and", formula_to_sexp(a), formula_to_sexp(b)]
        case Imp(a, b):
            return ["imp", formula_to_sexp(a), formula_to_sexp(b)]
        case Forall(var, sort, body):
            return ["forall", var, type_to_sexp(sort), formula_to_sexp(body)]
        case Exists(var, sort, body):
            return ["exists", var, type_to_sexp(sort), formula_to_sexp(body)]
    raise SexpError(f"not a formula: {f!r}")


def formula_from_sexp(s, typedefs: dict[str, TypeSymbol] | None = None) -> Formula:
    if s == "false":
        return FALSE
    match s:
        case ["eq", sort, lhs, rhs]:
            return Eq(type_from_sexp(sort, typedefs), term_from_sexp(lhs, typedefs), term_from_sexp(rhs, typedefs))
        case ["mem", elem, set_]:
            return Mem(term_from_sexp(elem, typedefs), term_from_sexp(set_, typedefs))
        case ["or", a, b]:
            return Or(formula_from_sexp(a, typedefs), formula_from_sexp(b, typedefs))
        case ["and", a, b]:
            return And(formula_from_sexp(a, typedefs), formula_from_sexp(b, typedefs))
        case ["imp", a, b]:
            return Imp(formula_from_sexp(a, typedefs), formula_from_sexp(b, typedefs))
        case ["forall", str(var), sort, body]:
            return Forall(var, type_from_sexp(sort, typedefs), formula_from_sexp(body, typedefs))
        case ["exists", str(var), sort, body]:
            return Exists(var, type_from_sexp(sort, typedefs), formula_from_sexp(body, typedefs))
    raise SexpError(f"malformed formula: {s!r}")


def sequent_to_sexp(s: Sequent):
    return [
        "sequent",
        ["hypotheses", *[formula_to_sexp(h) for h in s.hypotheses]],
        ["goal", formula_to_sexp(s.goal)],
    ]


def sequent_from_sexp(s, typedefs: dict[str, TypeSymbol] | None = None) -> Sequent:
    match s:
        case ["sequent", ["hypotheses", *hyps], ["goal", goal]]:
            return Sequent(
                tuple(formula_from_sexp(h, typedefs) for h in hyps),
                formula_from_sexp(goal, typedefs),
            )
    raise SexpError(f"malformed sequent: {s!r}")


def _nat(s) -> int:
    if isinstance(s, str) and s.isdigit():
        return int(s)
    raise SexpError(f"expected a natural number, got {s!r}")

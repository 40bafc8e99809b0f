"""Theory files: ordered named declarations loaded from ``.irtt`` sources.

A theory is a sequence of declarations::

    (theory
      (typedef NAME TYPE)
      (formula NAME FORMULA)
      (localset NAME TYPE TERM LEVEL)
      (script NAME (theorem ...)))

Names are unique across all declaration kinds and later declarations may
use earlier type abbreviations; forward references are rejected.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ast import Formula, IrttError, TypeSymbol
from .kernel import Theorem, theorem_from_sexp
from .localset import LocalSetDesc, LocalSetError
from .sexp import (
    SexpError,
    formula_from_sexp,
    read_sexp,
    term_from_sexp,
    type_from_sexp,
    _nat,
)


class TheoryError(IrttError):
    pass


@dataclass
class TheoryFile:
    order: list[tuple[str, str]] = field(default_factory=list)  # (kind, name)
    types: dict[str, TypeSymbol] = field(default_factory=dict)
    formulas: dict[str, Formula] = field(default_factory=dict)
    local_sets: dict[str, LocalSetDesc] = field(default_factory=dict)
    scripts: dict[str, Theorem] = field(default_factory=dict)

    def names(self) -> set[str]:
        return {name for _, name in self.order}


def load_theory(text: str) -> TheoryFile:
    try:
        sexp = read_sexp(text)
    except SexpError as err:
        raise TheoryError(str(err)) from err
    if not isinstance(sexp, list) or not sexp or sexp[0] != "theory":
        raise TheoryError("a theory file is a (theory ...) form")
    theory = TheoryFile()
    for decl in sexp[1:]:
        _load_declaration(theory, decl)
    return theory


def _load_declaration(theory: TheoryFile, decl) -> None:
    if not isinstance(decl, list) or len(decl) < 2 or not isinstance(decl[1], str):
        raise TheoryError(f"malformed declaration: {decl!r}")
    kind, name = decl[0], decl[1]
    if name in theory.names():
        raise TheoryError(f"duplicate name {name!r}")
    try:
        match kind:
            case "typedef":
                if len(decl) != 3:
                    raise TheoryError(f"typedef takes a name and a type: {decl!r}")
                theory.types[name] = type_from_sexp(decl[2], theory.types)
            case "formula":
                if len(decl) != 3:
                    raise TheoryError(f"formula takes a name and a formula: {decl!r}")
                theory.formulas[name] = formula_from_sexp(decl[2], theory.types)
            case "localset":
                if len(decl) != 5:
                    raise TheoryError(
                        f"localset takes a name, carrier, predicate and level: {decl!r}"
                    )
                theory.local_sets[name] = LocalSetDesc(
                    type_from_sexp(decl[2], theory.types),
                    term_from_sexp(decl[3], theory.types),
                    _nat(decl[4]),
                )
            case "script":
                if len(decl) != 3:
                    raise TheoryError(f"script takes a name and a theorem: {decl!r}")
                theory.scripts[name] = theorem_from_sexp(decl[2])
            case _:
                raise TheoryError(f"unknown declaration kind {kind!r}")
    except (SexpError, LocalSetError) as err:
        # An unknown type name here is an undeclared or forward reference.
        raise TheoryError(f"in declaration of {name!r}: {err}") from err
    theory.order.append((kind, name))

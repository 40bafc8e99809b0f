"""Convenience constructors for proof scripts.

These build :class:`~irtt.kernel.RuleApplication` trees; they perform no
checking themselves — the kernel remains the sole arbiter.  The derived
combinators (symmetry, transitivity, congruence, membership in a set
abstraction) expand to the primitive rules, so scripts written with them
stay within the fixed rule inventory.
"""
from __future__ import annotations

from .ast import (
    Eq,
    FALSE,
    Formula,
    Fst,
    Pair,
    SetAbs,
    Snd,
    Term,
    TypeSymbol,
    TRUTH,
    Var,
    free_names,
    fresh_name,
    subst_formula,
)
from .kernel import RuleApplication
from .typing import context_of, sort_of

P = RuleApplication


def assume(f: Formula) -> P:
    return P("assume", (f,))


def and_intro(left: P, right: P) -> P:
    return P("and_intro", (), (left, right))


def and_elim1(sub: P) -> P:
    return P("and_elim1", (), (sub,))


def and_elim2(sub: P) -> P:
    return P("and_elim2", (), (sub,))


def or_intro1(right_disjunct: Formula, sub: P) -> P:
    return P("or_intro1", (right_disjunct,), (sub,))


def or_intro2(left_disjunct: Formula, sub: P) -> P:
    return P("or_intro2", (left_disjunct,), (sub,))


def or_elim(disjunction: P, left_case: P, right_case: P) -> P:
    return P("or_elim", (), (disjunction, left_case, right_case))


def imp_intro(antecedent: Formula, sub: P) -> P:
    return P("imp_intro", (antecedent,), (sub,))


def imp_elim(implication: P, argument: P) -> P:
    return P("imp_elim", (), (implication, argument))


def false_elim(target: Formula, sub: P) -> P:
    return P("false_elim", (target,), (sub,))


def forall_intro(name: str, sort: TypeSymbol, sub: P) -> P:
    return P("forall_intro", (name, sort), (sub,))


def forall_elim(term: Term, sub: P) -> P:
    return P("forall_elim", (term,), (sub,))


def exists_intro(target: Formula, witness: Term, sub: P) -> P:
    return P("exists_intro", (target, witness), (sub,))


def exists_elim(name: str, witnessed: P, body: P) -> P:
    return P("exists_elim", (name,), (witnessed, body))


def eq_refl(term: Term) -> P:
    return P("eq_refl", (term,))


def eq_subst(name: str, template: Formula, equality: P, base: P) -> P:
    return P("eq_subst", (name, template), (equality, base))


def axiom(scheme: str, *params) -> P:
    return P("axiom", (scheme, *params))


# --------------------------------------------------------------------------
# Derived combinators
# --------------------------------------------------------------------------

def truth() -> P:
    """Proof of the canonical truth ``false => false``."""
    return imp_intro(FALSE, assume(FALSE))


def eq_sym(sort: TypeSymbol, a: Term, b: Term, proof_ab: P) -> P:
    """From ``a = b`` conclude ``b = a``."""
    w = fresh_name("w", free_names(a, b))
    return eq_subst(w, Eq(sort, Var(w, sort), a), proof_ab, eq_refl(a))


def eq_trans(sort: TypeSymbol, a: Term, b: Term, c: Term, proof_ab: P, proof_bc: P) -> P:
    """From ``a = b`` and ``b = c`` conclude ``a = c``."""
    w = fresh_name("w", free_names(a, b, c))
    return eq_subst(w, Eq(sort, a, Var(w, sort)), proof_bc, proof_ab)


def pair_fst_eq(a: Term, b: Term) -> P:
    """Proof of ``fst <a, b> = a``."""
    sa = sort_of(a, context_of(a))
    sb = sort_of(b, context_of(b))
    return forall_elim(b, forall_elim(a, axiom("pair_fst", sa, sb)))


def pair_snd_eq(a: Term, b: Term) -> P:
    """Proof of ``snd <a, b> = b``."""
    sa = sort_of(a, context_of(a))
    sb = sort_of(b, context_of(b))
    return forall_elim(b, forall_elim(a, axiom("pair_snd", sa, sb)))


def mem_intro(setabs: SetAbs, elem: Term, body_proof: P) -> P:
    """From ``body[elem/x]`` conclude ``elem in {x:A | body}@k``."""
    inst = forall_elim(elem, axiom("comprehension", setabs))
    return imp_elim(and_elim2(inst), body_proof)


def mem_elim(setabs: SetAbs, elem: Term, mem_proof: P) -> P:
    """From ``elem in {x:A | body}@k`` conclude ``body[elem/x]``."""
    inst = forall_elim(elem, axiom("comprehension", setabs))
    return imp_elim(and_elim1(inst), mem_proof)


def fst_rewrite(a: Term, b: Term, template_var: str, template: Formula, base: P) -> P:
    """From ``template[fst <a,b> / w]`` conclude ``template[a / w]``."""
    return eq_subst(template_var, template, pair_fst_eq(a, b), base)


def fst_rewrite_back(a: Term, b: Term, template_var: str, template: Formula, base: P) -> P:
    """From ``template[a / w]`` conclude ``template[fst <a,b> / w]``."""
    sa = sort_of(a, context_of(a))
    return eq_subst(
        template_var,
        template,
        eq_sym(sa, Fst(Pair(a, b)), a, pair_fst_eq(a, b)),
        base,
    )

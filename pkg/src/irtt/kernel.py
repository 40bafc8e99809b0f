"""Trusted proof checker: natural deduction over sorted intuitionistic logic.

A proof script is a tree of rule applications.  Checking synthesizes the
conclusion of each node bottom-up under the hypothesis list handed down,
so weakening a claim never invalidates a script: hypotheses are referred
to by formula, not by position.  The rule inventory is fixed:

    assume, and_intro, and_elim1, and_elim2, or_intro1, or_intro2,
    or_elim, imp_intro, imp_elim, false_elim, forall_intro, forall_elim,
    exists_intro, exists_elim, eq_refl, eq_subst, axiom

Equality has two primitive rules: reflexivity and substitution of equals
into a template formula; symmetry, transitivity and congruences are
derivable.  Axiom schemes instantiate to closed formulas whose level
annotations are computed here.  The excluded-middle scheme ``pem`` is
admissible only when checking in classical mode.

Every formula appearing in an accepted derivation is well-sorted, which
for this syntax is the same as being well-formed at its minimal level;
the quantifier and set-abstraction level side conditions are enforced by
the level computation itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

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
    Succ,
    Term,
    TRUTH,
    TypeSymbol,
    UNIT,
    Var,
    ZERO,
    alpha_eq,
    free_names,
    free_vars,
    fresh_name,
    numeral,
    subst_formula,
)
from .levels import eq_level, level
from .typing import TypingError, context_of, min_level, sort_of

if TYPE_CHECKING:
    from .localset import LocalSetDesc


# --------------------------------------------------------------------------
# Scripts and verdicts
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RuleApplication:
    """One proof step: a rule name, its arguments, and its subproofs."""

    rule: str
    args: tuple = ()
    subs: tuple["RuleApplication", ...] = ()


ProofScript = RuleApplication


@dataclass(frozen=True)
class Theorem:
    """A named claim bundled with a proof script."""

    name: str
    claim: Sequent
    proof: RuleApplication


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None = None
    path: tuple[int, ...] = ()


@dataclass(frozen=True)
class AxiomInstance:
    scheme: str
    params: tuple
    formula: Formula


class ProofError(IrttError):
    def __init__(self, message: str, path: tuple[int, ...]):
        where = "/".join(map(str, path)) if path else "root"
        super().__init__(f"step {where}: {message}")
        self.message = message
        self.path = path


class AxiomError(IrttError):
    pass


# (argument kinds, number of subproofs) per rule; kinds drive both
# checking and the s-expression codec.
RULE_SIGNATURES: dict[str, tuple[tuple[str, ...], int]] = {
    "assume": (("formula",), 0),
    "and_intro": ((), 2),
    "and_elim1": ((), 1),
    "and_elim2": ((), 1),
    "or_intro1": (("formula",), 1),
    "or_intro2": (("formula",), 1),
    "or_elim": ((), 3),
    "imp_intro": (("formula",), 1),
    "imp_elim": ((), 2),
    "false_elim": (("formula",), 1),
    "forall_intro": (("name", "type"), 1),
    "forall_elim": (("term",), 1),
    "exists_intro": (("formula", "term"), 1),
    "exists_elim": (("name",), 2),
    "eq_refl": (("term",), 0),
    "eq_subst": (("name", "formula"), 2),
    # axiom nodes append scheme parameters after the scheme name
    "axiom": (("name",), 0),
}

AXIOM_SIGNATURES: dict[str, tuple[str, ...]] = {
    "unit_eq": (),
    "pair_fst": ("type", "type"),
    "pair_snd": ("type", "type"),
    "pair_eta": ("type", "type"),
    "peano_succ_nonzero": (),
    "peano_succ_inj": (),
    "peano_add_zero": (),
    "peano_add_succ": (),
    "peano_mul_zero": (),
    "peano_mul_succ": (),
    "induction": ("name", "formula"),
    "extensionality": ("type", "nat"),
    "comprehension": ("term",),
    "fr": ("type", "type", "nat", "nat", "nat"),
    "rdc": ("type", "nat", "nat"),
    "pem": ("formula",),
}

#: Schemes whose instances the finite-model oracle cannot certify: the
#: oracle reads the naturals modulo the base size, which falsifies the
#: successor axiom and breaks choice sequences indexed by the naturals.
ARITHMETIC_SCHEMES = frozenset(
    {
        "peano_succ_nonzero",
        "peano_succ_inj",
        "peano_add_zero",
        "peano_add_succ",
        "peano_mul_zero",
        "peano_mul_succ",
        "induction",
        "rdc",
    }
)


def uses_arithmetic(script: RuleApplication) -> bool:
    """True iff the script invokes a scheme the oracle refuses to certify."""
    if script.rule == "axiom" and script.args and script.args[0] in ARITHMETIC_SCHEMES:
        return True
    return any(uses_arithmetic(sub) for sub in script.subs)


def uses_pem(script: RuleApplication) -> bool:
    if script.rule == "axiom" and script.args and script.args[0] == "pem":
        return True
    return any(uses_pem(sub) for sub in script.subs)


# --------------------------------------------------------------------------
# Axiom schemes
# --------------------------------------------------------------------------

def map_conjunction(
    dom_type: TypeSymbol,
    dom_pred: Term,
    cod_type: TypeSymbol,
    cod_pred: Term,
    graph: Term,
) -> Formula:
    """The statement that ``graph`` is a map between the given local sets.

    Conjunction of three conditions: the graph relates members of the
    domain set to members of the codomain set, it is functional, and it
    is total on the domain set.
    """
    avoid = free_names(dom_pred, cod_pred, graph)
    x = fresh_name("x", avoid)
    y = fresh_name("y", avoid | {x})
    z = fresh_name("z", avoid | {x, y})
    xv, yv, zv = Var(x, dom_type), Var(y, cod_type), Var(z, cod_type)
    relation = Forall(
        x,
        dom_type,
        Forall(
            y,
            cod_type,
            Imp(Mem(Pair(xv, yv), graph), And(Mem(xv, dom_pred), Mem(yv, cod_pred))),
        ),
    )
    functional = Forall(
        x,
        dom_type,
        Forall(
            y,
            cod_type,
            Forall(
                z,
                cod_type,
                Imp(
                    And(Mem(Pair(xv, yv), graph), Mem(Pair(xv, zv), graph)),
                    Eq(cod_type, yv, zv),
                ),
            ),
        ),
    )
    total = Forall(
        x,
        dom_type,
        Imp(
            Mem(xv, dom_pred),
            Exists(y, cod_type, And(Mem(yv, cod_pred), Mem(Pair(xv, yv), graph))),
        ),
    )
    return And(And(relation, functional), total)


def derive_map_predicate(dom: "LocalSetDesc", cod: "LocalSetDesc", graph: Term) -> Formula:
    """Map statement for ``graph`` between two described local sets."""
    graph_sort = sort_of(graph, context_of(graph))
    want = Prod(dom.carrier, cod.carrier)
    if not (isinstance(graph_sort, Pow) and graph_sort.body == want):
        raise TypingError(
            f"graph has sort {graph_sort}, expected a power of {want}"
        )
    return map_conjunction(dom.carrier, dom.predicate, cod.carrier, cod.predicate, graph)


def membership_iff(lhs_set: Term, rhs_set: Term, over: TypeSymbol) -> Formula:
    """``forall w:over. (w in lhs <=> w in rhs)`` with the biconditional expanded."""
    w = fresh_name("w", free_names(lhs_set, rhs_set))
    wv = Var(w, over)
    return Forall(
        w,
        over,
        And(Imp(Mem(wv, lhs_set), Mem(wv, rhs_set)), Imp(Mem(wv, rhs_set), Mem(wv, lhs_set))),
    )


def full_reducibility(sort: TypeSymbol, r: int) -> Formula:
    """The level-collapse statement: every level-``r`` subset has a level-0 extensional equal.

    Classically a theorem (via ``pem``), intuitionistically not provable
    from the axioms here; its functional special case is the ``fr`` scheme.
    """
    x, y = "X", "Y"
    xv, yv = Var(x, Pow(r, sort)), Var(y, Pow(0, sort))
    z = "z"
    zv = Var(z, sort)
    body = Forall(
        z,
        sort,
        And(Imp(Mem(zv, xv), Mem(zv, yv)), Imp(Mem(zv, yv), Mem(zv, xv))),
    )
    return Forall(x, Pow(r, sort), Exists(y, Pow(0, sort), body))


def _nat_param(value, what: str) -> int:
    if not isinstance(value, int) or value < 0:
        raise AxiomError(f"{what} must be a natural number, got {value!r}")
    return value


def _type_param(value, what: str) -> TypeSymbol:
    if not isinstance(value, TypeSymbol):
        raise AxiomError(f"{what} must be a type symbol, got {value!r}")
    return value


def instantiate_axiom(scheme: str, *params) -> AxiomInstance:
    """Build the closed formula of an axiom scheme, levels filled in."""
    builder = _AXIOM_BUILDERS.get(scheme)
    if builder is None:
        raise AxiomError(f"unknown axiom scheme {scheme!r}")
    formula = builder(*params)
    try:
        min_level(formula, context_of(formula))
    except TypingError as err:
        raise AxiomError(f"ill-formed {scheme} instance: {err}") from err
    return AxiomInstance(scheme, tuple(params), formula)


def _ax_unit_eq() -> Formula:
    zv = Var("z", UNIT)
    return Forall("z", UNIT, Eq(UNIT, zv, STAR))


def _ax_pair_fst(a, b) -> Formula:
    a = _type_param(a, "first component sort")
    b = _type_param(b, "second component sort")
    xv, yv = Var("x", a), Var("y", b)
    return Forall("x", a, Forall("y", b, Eq(a, Fst(Pair(xv, yv)), xv)))


def _ax_pair_snd(a, b) -> Formula:
    a = _type_param(a, "first component sort")
    b = _type_param(b, "second component sort")
    xv, yv = Var("x", a), Var("y", b)
    return Forall("x", a, Forall("y", b, Eq(b, Snd(Pair(xv, yv)), yv)))


def _ax_pair_eta(a, b) -> Formula:
    a = _type_param(a, "first component sort")
    b = _type_param(b, "second component sort")
    zv = Var("z", Prod(a, b))
    return Forall("z", Prod(a, b), Eq(Prod(a, b), Pair(Fst(zv), Snd(zv)), zv))


def _ax_peano_succ_nonzero() -> Formula:
    xv = Var("x", NAT)
    return Forall("x", NAT, Imp(Eq(NAT, Succ(xv), ZERO), FALSE))


def _ax_peano_succ_inj() -> Formula:
    xv, yv = Var("x", NAT), Var("y", NAT)
    return Forall(
        "x", NAT, Forall("y", NAT, Imp(Eq(NAT, Succ(xv), Succ(yv)), Eq(NAT, xv, yv)))
    )


def _ax_peano_add_zero() -> Formula:
    xv = Var("x", NAT)
    return Forall("x", NAT, Eq(NAT, Add(xv, ZERO), xv))


def _ax_peano_add_succ() -> Formula:
    xv, yv = Var("x", NAT), Var("y", NAT)
    return Forall(
        "x",
        NAT,
        Forall("y", NAT, Eq(NAT, Add(xv, Succ(yv)), Succ(Add(xv, yv)))),
    )


def _ax_peano_mul_zero() -> Formula:
    xv = Var("x", NAT)
    return Forall("x", NAT, Eq(NAT, Mul(xv, ZERO), ZERO))


def _ax_peano_mul_succ() -> Formula:
    xv, yv = Var("x", NAT), Var("y", NAT)
    return Forall(
        "x",
        NAT,
        Forall("y", NAT, Eq(NAT, Mul(xv, Succ(yv)), Add(Mul(xv, yv), xv))),
    )


def _ax_induction(var, formula) -> Formula:
    if not isinstance(var, str):
        raise AxiomError(f"induction variable must be a name, got {var!r}")
    if not isinstance(formula, Formula):
        raise AxiomError(f"induction needs a formula, got {formula!r}")
    for name, sort in free_vars(formula):
        if name == var and sort != NAT:
            raise AxiomError(
                f"induction variable {var!r} occurs at sort {sort}, expected N"
            )
    base = subst_formula(formula, var, ZERO)
    step = Forall(
        var, NAT, Imp(formula, subst_formula(formula, var, Succ(Var(var, NAT))))
    )
    return Imp(And(base, step), Forall(var, NAT, formula))


def _ax_extensionality(a, k) -> Formula:
    from .levels import eq_formula

    a = _type_param(a, "carrier sort")
    k = _nat_param(k, "power level")
    pk = Pow(k, a)
    xv, yv = Var("X", pk), Var("Y", pk)
    return Forall(
        "X", pk, Forall("Y", pk, Imp(eq_formula(pk, xv, yv), Eq(pk, xv, yv)))
    )


def _ax_comprehension(setabs) -> Formula:
    if not isinstance(setabs, SetAbs):
        raise AxiomError(f"comprehension needs a set abstraction, got {setabs!r}")
    try:
        sort_of(setabs, context_of(setabs))
    except TypingError as err:
        raise AxiomError(str(err)) from err
    z = fresh_name("z", free_names(setabs) | {setabs.var})
    zv = Var(z, setabs.sort)
    inst = subst_formula(setabs.body, setabs.var, zv)
    return Forall(
        z,
        setabs.sort,
        And(Imp(Mem(zv, setabs), inst), Imp(inst, Mem(zv, setabs))),
    )


def _ax_fr(a, b, m, n, r) -> Formula:
    a = _type_param(a, "domain sort")
    b = _type_param(b, "codomain sort")
    m = _nat_param(m, "domain set level")
    n = _nat_param(n, "codomain set level")
    r = _nat_param(r, "graph level")
    k = max(eq_level(b), m, n)
    ab = Prod(a, b)
    xv = Var("X", Pow(m, a))
    yv = Var("Y", Pow(n, b))
    fv = Var("F", Pow(r, ab))
    mapc = map_conjunction(a, xv, b, yv, fv)
    reduced = Exists("G", Pow(k, ab), membership_iff(fv, Var("G", Pow(k, ab)), ab))
    return Forall(
        "X",
        Pow(m, a),
        Forall("Y", Pow(n, b), Forall("F", Pow(r, ab), Imp(mapc, reduced))),
    )


def _ax_rdc(a, m, n) -> Formula:
    a = _type_param(a, "carrier sort")
    m = _nat_param(m, "domain set level")
    n = _nat_param(n, "relation level")
    k = level(a)
    aa = Prod(a, a)
    na = Prod(NAT, a)
    dv = Var("D", Pow(m, a))
    rv = Var("R", Pow(n, aa))
    av = Var("a", a)
    xv, yv, zv = Var("x", a), Var("y", a), Var("z", a)
    iv = Var("i", NAT)
    fv = Var("F", Pow(k, na))
    nat_full = SetAbs("u", NAT, TRUTH, 0)
    precondition = And(
        Mem(av, dv),
        Forall(
            "x",
            a,
            Imp(
                Mem(xv, dv),
                Exists("y", a, And(Mem(yv, dv), Mem(Pair(xv, yv), rv))),
            ),
        ),
    )
    is_map = map_conjunction(NAT, nat_full, a, dv, fv)
    starts = Mem(Pair(ZERO, av), fv)
    follows = Forall(
        "i",
        NAT,
        Forall(
            "y",
            a,
            Forall(
                "z",
                a,
                Imp(
                    And(
                        Mem(Pair(iv, yv), fv),
                        Mem(Pair(Add(iv, numeral(1)), zv), fv),
                    ),
                    Mem(Pair(yv, zv), rv),
                ),
            ),
        ),
    )
    conclusion = Exists("F", Pow(k, na), And(And(is_map, starts), follows))
    return Forall(
        "D",
        Pow(m, a),
        Forall("R", Pow(n, aa), Forall("a", a, Imp(precondition, conclusion))),
    )


def _ax_pem(formula) -> Formula:
    if not isinstance(formula, Formula):
        raise AxiomError(f"pem needs a formula, got {formula!r}")
    return Or(formula, Imp(formula, FALSE))


_AXIOM_BUILDERS = {
    "unit_eq": _ax_unit_eq,
    "pair_fst": _ax_pair_fst,
    "pair_snd": _ax_pair_snd,
    "pair_eta": _ax_pair_eta,
    "peano_succ_nonzero": _ax_peano_succ_nonzero,
    "peano_succ_inj": _ax_peano_succ_inj,
    "peano_add_zero": _ax_peano_add_zero,
    "peano_add_succ": _ax_peano_add_succ,
    "peano_mul_zero": _ax_peano_mul_zero,
    "peano_mul_succ": _ax_peano_mul_succ,
    "induction": _ax_induction,
    "extensionality": _ax_extensionality,
    "comprehension": _ax_comprehension,
    "fr": _ax_fr,
    "rdc": _ax_rdc,
    "pem": _ax_pem,
}


# --------------------------------------------------------------------------
# Checking
# --------------------------------------------------------------------------

def check_proof(script: RuleApplication, claim: Sequent, classical: bool = False) -> Verdict:
    """Check that ``script`` derives ``claim``; pure in all three arguments."""
    try:
        ctx = context_of(*claim.hypotheses, claim.goal)
        for f in (*claim.hypotheses, claim.goal):
            min_level(f, ctx)
    except TypingError as err:
        return Verdict(False, f"ill-formed claim: {err}")
    try:
        conclusion = _check(script, claim.hypotheses, classical, ())
        if not alpha_eq(conclusion, claim.goal):
            raise ProofError(
                f"script proves {conclusion} but the claim is {claim.goal}", ()
            )
    except ProofError as err:
        return Verdict(False, str(err), err.path)
    return Verdict(True)


def _fail(path: tuple[int, ...], message: str) -> ProofError:
    return ProofError(message, path)


def _wf(f: Formula, path: tuple[int, ...], what: str = "formula") -> Formula:
    try:
        min_level(f, context_of(f))
    except TypingError as err:
        raise _fail(path, f"ill-formed {what} {f}: {err}")
    return f


def _term_sort(t: Term, path: tuple[int, ...]) -> TypeSymbol:
    try:
        return sort_of(t, context_of(t))
    except TypingError as err:
        raise _fail(path, f"ill-formed term {t}: {err}")


def _check(
    node: RuleApplication,
    hyps: tuple[Formula, ...],
    classical: bool,
    path: tuple[int, ...],
) -> Formula:
    if not isinstance(node, RuleApplication):
        raise _fail(path, f"not a rule application: {node!r}")
    sig = RULE_SIGNATURES.get(node.rule)
    if sig is None:
        raise _fail(path, f"unknown rule {node.rule!r}")
    kinds, n_subs = sig
    if node.rule == "axiom":
        if not node.args or not isinstance(node.args[0], str):
            raise _fail(path, "axiom step needs a scheme name")
    elif len(node.args) != len(kinds):
        raise _fail(path, f"rule {node.rule} takes {len(kinds)} argument(s), got {len(node.args)}")
    if len(node.subs) != n_subs:
        raise _fail(path, f"rule {node.rule} takes {n_subs} subproof(s), got {len(node.subs)}")

    def sub(i: int, hyps_: tuple[Formula, ...]) -> Formula:
        return _check(node.subs[i], hyps_, classical, path + (i,))

    match node.rule:
        case "assume":
            f = _wf(node.args[0], path)
            if not any(alpha_eq(f, h) for h in hyps):
                raise _fail(path, f"assumed formula {f} is not among the hypotheses")
            return f
        case "and_intro":
            return And(sub(0, hyps), sub(1, hyps))
        case "and_elim1" | "and_elim2":
            c = sub(0, hyps)
            if not isinstance(c, And):
                raise _fail(path, f"subproof concludes {c}, not a conjunction")
            return c.left if node.rule == "and_elim1" else c.right
        case "or_intro1":
            other = _wf(node.args[0], path)
            return Or(sub(0, hyps), other)
        case "or_intro2":
            other = _wf(node.args[0], path)
            return Or(other, sub(0, hyps))
        case "or_elim":
            c = sub(0, hyps)
            if not isinstance(c, Or):
                raise _fail(path, f"subproof concludes {c}, not a disjunction")
            left = sub(1, hyps + (c.left,))
            right = sub(2, hyps + (c.right,))
            if not alpha_eq(left, right):
                raise _fail(
                    path, f"case conclusions differ: {left} versus {right}"
                )
            return left
        case "imp_intro":
            antecedent = _wf(node.args[0], path)
            return Imp(antecedent, sub(0, hyps + (antecedent,)))
        case "imp_elim":
            c = sub(0, hyps)
            if not isinstance(c, Imp):
                raise _fail(path, f"subproof concludes {c}, not an implication")
            arg = sub(1, hyps)
            if not alpha_eq(arg, c.left):
                raise _fail(path, f"implication expects {c.left}, second subproof gives {arg}")
            return c.right
        case "false_elim":
            target = _wf(node.args[0], path)
            c = sub(0, hyps)
            if not isinstance(c, Falsum):
                raise _fail(path, f"subproof concludes {c}, not falsity")
            return target
        case "forall_intro":
            name, sort = node.args
            if not isinstance(name, str) or not isinstance(sort, TypeSymbol):
                raise _fail(path, "forall_intro takes a variable name and a sort")
            body = sub(0, hyps)
            for h in hyps:
                if (name, sort) in free_vars(h):
                    raise _fail(
                        path,
                        f"eigenvariable {name}:{sort} occurs free in hypothesis {h}",
                    )
            return _wf(Forall(name, sort, body), path, "conclusion")
        case "forall_elim":
            term = node.args[0]
            if not isinstance(term, Term):
                raise _fail(path, "forall_elim takes a term")
            c = sub(0, hyps)
            if not isinstance(c, Forall):
                raise _fail(path, f"subproof concludes {c}, not a universal")
            got = _term_sort(term, path)
            if got != c.sort:
                raise _fail(
                    path,
                    f"instantiation term has sort {got}, quantifier expects {c.sort}",
                )
            return subst_formula(c.body, c.var, term)
        case "exists_intro":
            target, witness = node.args
            if not isinstance(target, Exists):
                raise _fail(path, f"exists_intro target {target} is not an existential")
            _wf(target, path)
            if not isinstance(witness, Term):
                raise _fail(path, "exists_intro takes a witness term")
            got = _term_sort(witness, path)
            if got != target.sort:
                raise _fail(
                    path, f"witness has sort {got}, quantifier expects {target.sort}"
                )
            c = sub(0, hyps)
            expected = subst_formula(target.body, target.var, witness)
            if not alpha_eq(c, expected):
                raise _fail(path, f"subproof concludes {c}, expected {expected}")
            return target
        case "exists_elim":
            name = node.args[0]
            if not isinstance(name, str):
                raise _fail(path, "exists_elim takes an eigenvariable name")
            c = sub(0, hyps)
            if not isinstance(c, Exists):
                raise _fail(path, f"subproof concludes {c}, not an existential")
            ev = (name, c.sort)
            inst = subst_formula(c.body, c.var, Var(name, c.sort))
            conclusion = sub(1, hyps + (inst,))
            for h in hyps:
                if ev in free_vars(h):
                    raise _fail(path, f"eigenvariable {name} occurs free in hypothesis {h}")
            if ev in free_vars(c):
                raise _fail(path, f"eigenvariable {name} occurs free in {c}")
            if ev in free_vars(conclusion):
                raise _fail(path, f"eigenvariable {name} occurs free in conclusion {conclusion}")
            return conclusion
        case "eq_refl":
            term = node.args[0]
            if not isinstance(term, Term):
                raise _fail(path, "eq_refl takes a term")
            sort = _term_sort(term, path)
            return Eq(sort, term, term)
        case "eq_subst":
            name, template = node.args
            if not isinstance(name, str) or not isinstance(template, Formula):
                raise _fail(path, "eq_subst takes a variable name and a template formula")
            c = sub(0, hyps)
            if not isinstance(c, Eq):
                raise _fail(path, f"first subproof concludes {c}, not an equality")
            for vname, vsort in free_vars(template):
                if vname == name and vsort != c.sort:
                    raise _fail(
                        path,
                        f"template uses {name} at sort {vsort}, equality is at {c.sort}",
                    )
            base = sub(1, hyps)
            expected = subst_formula(template, name, c.lhs)
            if not alpha_eq(base, expected):
                raise _fail(path, f"second subproof concludes {base}, expected {expected}")
            return _wf(subst_formula(template, name, c.rhs), path, "conclusion")
        case "axiom":
            scheme = node.args[0]
            if scheme == "pem" and not classical:
                raise _fail(
                    path,
                    "axiom scheme 'pem' (excluded middle) requires classical mode",
                )
            try:
                instance = instantiate_axiom(scheme, *node.args[1:])
            except (AxiomError, IrttError) as err:
                raise _fail(path, str(err))
            return instance.formula
    raise _fail(path, f"unknown rule {node.rule!r}")


# --------------------------------------------------------------------------
# Script serialization
# --------------------------------------------------------------------------

def proof_to_sexp(p: RuleApplication):
    from . import sexp as sx

    if p.rule == "axiom":
        scheme = p.args[0]
        kinds = AXIOM_SIGNATURES.get(scheme)
        if kinds is None:
            raise sx.SexpError(f"unknown axiom scheme {scheme!r}")
        encoded = [_encode_arg(k, a) for k, a in zip(kinds, p.args[1:])]
        return ["axiom", scheme, *encoded]
    kinds, _ = RULE_SIGNATURES[p.rule]
    encoded = [_encode_arg(k, a) for k, a in zip(kinds, p.args)]
    return [p.rule, *encoded, *[proof_to_sexp(s) for s in p.subs]]


def proof_from_sexp(s) -> RuleApplication:
    from . import sexp as sx

    if not isinstance(s, list) or not s or not isinstance(s[0], str):
        raise sx.SexpError(f"malformed proof step: {s!r}")
    rule, *rest = s
    sig = RULE_SIGNATURES.get(rule)
    if sig is None:
        raise sx.SexpError(f"unknown rule {rule!r}")
    kinds, n_subs = sig
    if rule == "axiom":
        if not rest or not isinstance(rest[0], str):
            raise sx.SexpError("axiom step needs a scheme name")
        scheme = rest[0]
        pkinds = AXIOM_SIGNATURES.get(scheme)
        if pkinds is None:
            raise sx.SexpError(f"unknown axiom scheme {scheme!r}")
        if len(rest) - 1 != len(pkinds):
            raise sx.SexpError(f"axiom scheme {scheme} takes {len(pkinds)} parameter(s)")
        params = tuple(_decode_arg(k, a) for k, a in zip(pkinds, rest[1:]))
        return RuleApplication("axiom", (scheme, *params))
    if len(rest) != len(kinds) + n_subs:
        raise sx.SexpError(
            f"rule {rule} takes {len(kinds)} argument(s) and {n_subs} subproof(s)"
        )
    args = tuple(_decode_arg(k, a) for k, a in zip(kinds, rest))
    subs = tuple(proof_from_sexp(x) for x in rest[len(kinds):])
    return RuleApplication(rule, args, subs)


def _encode_arg(kind: str, value):
    from . import sexp as sx

    match kind:
        case "formula":
            return sx.formula_to_sexp(value)
        case "term":
            return sx.term_to_sexp(value)
        case "type":
            return sx.type_to_sexp(value)
        case "name":
            return value
        case "nat":
            return str(value)
    raise sx.SexpError(f"unknown argument kind {kind!r}")


def _decode_arg(kind: str, s):
    from . import sexp as sx

    match kind:
        case "formula":
            return sx.formula_from_sexp(s)
        case "term":
            return sx.term_from_sexp(s)
        case "type":
            return sx.type_from_sexp(s)
        case "name":
            if not isinstance(s, str):
                raise sx.SexpError(f"expected a name, got {s!r}")
            return s
        case "nat":
            return sx._nat(s)
    raise sx.SexpError(f"unknown argument kind {kind!r}")


def theorem_to_sexp(t: Theorem):
    from . import sexp as sx

    return [
        "theorem",
        t.name,
        ["hypotheses", *[sx.formula_to_sexp(h) for h in t.claim.hypotheses]],
        ["goal", sx.formula_to_sexp(t.claim.goal)],
        ["proof", proof_to_sexp(t.proof)],
    ]


def theorem_from_sexp(s) -> Theorem:
    from . import sexp as sx

    match s:
        case ["theorem", str(name), ["hypotheses", *hyps], ["goal", goal], ["proof", proof]]:
            return Theorem(
                name,
                Sequent(tuple(sx.formula_from_sexp(h) for h in hyps), sx.formula_from_sexp(goal)),
                proof_from_sexp(proof),
            )
    raise sx.SexpError(f"malformed theorem: {s!r}")


def load_theorem(text: str) -> Theorem:
    from . import sexp as sx

    return theorem_from_sexp(sx.read_sexp(text))


def dump_theorem(t: Theorem) -> str:
    from . import sexp as sx

    return sx.write_sexp(theorem_to_sexp(t)) + "\n"

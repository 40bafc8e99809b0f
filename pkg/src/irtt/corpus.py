"""Bundled proof scripts and the shipped prelude theory.

One executable witness per axiom scheme and equality lemma:

* ``comprehension_beta`` — membership in a set abstraction via its
  defining axiom.
* ``comprehension_double`` — an even numeral belongs to the set of
  doubles; exercises the arithmetic axioms.
* ``extensionality_empty`` — two distinct presentations of the empty
  subset of the naturals are equal, by extensionality.
* ``equality_formula_pow1`` / ``equality_formula_pair`` — primitive
  equality at a power sort and at a product sort is equivalent to its
  canonical low-level equality formula.
* ``reducibility_functions`` — the functional-reducibility instance that
  keeps function graphs over the naturals at level 0.
* ``pem_full_reducibility`` — with excluded middle, every level-1 subset
  of the naturals is extensionally equal to a level-0 subset.  The proof
  builds the indicator graph of the subset, shows totality classically,
  reduces the graph with the functional-reducibility axiom, and reads
  the level-0 subset back off the reduced graph.  The successor axiom
  separates the two indicator values, so this script counts as
  arithmetic for the oracle.

Scripts are built programmatically and shipped as ``.irttp`` files; a
round-trip test keeps the files in sync with the builders.
"""
from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from pathlib import Path

from .ast import (
    And,
    Eq,
    Exists,
    FALSE,
    Forall,
    Fst,
    Imp,
    Mem,
    NAT,
    Pair,
    Pow,
    Prod,
    Sequent,
    SetAbs,
    Snd,
    TRUTH,
    Term,
    Var,
    ZERO,
    numeral,
)
from .kernel import (
    RuleApplication,
    Theorem,
    dump_theorem,
    full_reducibility,
    instantiate_axiom,
    map_conjunction,
    membership_iff,
    uses_arithmetic,
)
from .levels import eq_formula
from .proofs import (
    and_elim1,
    and_elim2,
    and_intro,
    assume,
    axiom,
    eq_refl,
    eq_subst,
    eq_sym,
    eq_trans,
    exists_elim,
    exists_intro,
    false_elim,
    forall_elim,
    forall_intro,
    imp_elim,
    imp_intro,
    mem_elim,
    mem_intro,
    or_elim,
    or_intro1,
    or_intro2,
    pair_fst_eq,
    pair_snd_eq,
    truth,
)

SCRIPT_SUFFIX = ".irttp"
ONE = numeral(1)
NN = Prod(NAT, NAT)
P1N = Pow(1, NAT)
P0N = Pow(0, NAT)
P0NN = Pow(0, NN)


@dataclass(frozen=True)
class CorpusEntry:
    theorem: Theorem
    classical: bool

    @property
    def name(self) -> str:
        return self.theorem.name

    @property
    def arithmetic(self) -> bool:
        return uses_arithmetic(self.theorem.proof)


def _comprehension_beta() -> Theorem:
    xv = Var("x", NAT)
    diag = SetAbs("x", NAT, Eq(NAT, xv, xv), 0)
    goal = Mem(ZERO, diag)
    return Theorem("comprehension_beta", Sequent((), goal), mem_intro(diag, ZERO, eq_refl(ZERO)))


def _comprehension_double() -> Theorem:
    xv, yv = Var("x", NAT), Var("y", NAT)
    doubles = SetAbs("x", NAT, Exists("y", NAT, Eq(NAT, xv, Add_(yv, yv))), 0)
    two = numeral(2)
    # 2 = 1 + 1 from the addition axioms, then introduce the witness.
    one_plus_one = Add_(ONE, ONE)
    one_plus_zero = Add_(ONE, ZERO)
    p_succ = forall_elim(ZERO, forall_elim(ONE, axiom("peano_add_succ")))
    p_zero = forall_elim(ONE, axiom("peano_add_zero"))
    from .ast import Succ

    cong = eq_subst(
        "v",
        Eq(NAT, Succ(one_plus_zero), Succ(Var("v", NAT))),
        p_zero,
        eq_refl(Succ(one_plus_zero)),
    )
    sum_is_two = eq_trans(NAT, one_plus_one, Succ(one_plus_zero), two, p_succ, cong)
    two_is_sum = eq_sym(NAT, one_plus_one, two, sum_is_two)
    witnessed = exists_intro(
        Exists("y", NAT, Eq(NAT, two, Add_(yv, yv))), ONE, two_is_sum
    )
    goal = Mem(two, doubles)
    return Theorem(
        "comprehension_double", Sequent((), goal), mem_intro(doubles, two, witnessed)
    )


def Add_(a: Term, b: Term):
    from .ast import Add

    return Add(a, b)


def _extensionality_empty() -> Theorem:
    empty1 = SetAbs("x", NAT, FALSE, 0)
    empty2 = SetAbs("x", NAT, And(FALSE, FALSE), 0)
    zv = Var("z", NAT)
    ext_use = forall_elim(empty2, forall_elim(empty1, axiom("extensionality", NAT, 0)))
    dir1 = imp_intro(
        Mem(zv, empty1),
        false_elim(Mem(zv, empty2), mem_elim(empty1, zv, assume(Mem(zv, empty1)))),
    )
    dir2 = imp_intro(
        Mem(zv, empty2),
        false_elim(
            Mem(zv, empty1), and_elim1(mem_elim(empty2, zv, assume(Mem(zv, empty2))))
        ),
    )
    pointwise = forall_intro("z", NAT, and_intro(dir1, dir2))
    goal = Eq(P0N, empty1, empty2)
    return Theorem(
        "extensionality_empty", Sequent((), goal), imp_elim(ext_use, pointwise)
    )


def _equality_formula_pow1() -> Theorem:
    xv, yv = Var("X", P1N), Var("Y", P1N)
    pointwise = eq_formula(P1N, xv, yv)
    goal = Forall(
        "X",
        P1N,
        Forall(
            "Y",
            P1N,
            And(Imp(Eq(P1N, xv, yv), pointwise), Imp(pointwise, Eq(P1N, xv, yv))),
        ),
    )
    zv = Var("z", NAT)
    wv = Var("W", P1N)
    template = Forall(
        "z",
        NAT,
        And(Imp(Mem(zv, xv), Mem(zv, wv)), Imp(Mem(zv, wv), Mem(zv, xv))),
    )
    reflexive_base = forall_intro(
        "z",
        NAT,
        and_intro(
            imp_intro(Mem(zv, xv), assume(Mem(zv, xv))),
            imp_intro(Mem(zv, xv), assume(Mem(zv, xv))),
        ),
    )
    dir1 = imp_intro(
        Eq(P1N, xv, yv),
        eq_subst("W", template, assume(Eq(P1N, xv, yv)), reflexive_base),
    )
    dir2 = imp_intro(
        pointwise,
        imp_elim(
            forall_elim(yv, forall_elim(xv, axiom("extensionality", NAT, 1))),
            assume(pointwise),
        ),
    )
    proof = forall_intro("X", P1N, forall_intro("Y", P1N, and_intro(dir1, dir2)))
    return Theorem("equality_formula_pow1", Sequent((), goal), proof)


def _equality_formula_pair() -> Theorem:
    xv, yv = Var("x", NN), Var("y", NN)
    componentwise = eq_formula(NN, xv, yv)
    goal = Forall(
        "x",
        NN,
        Forall(
            "y",
            NN,
            And(
                Imp(Eq(NN, xv, yv), componentwise),
                Imp(componentwise, Eq(NN, xv, yv)),
            ),
        ),
    )
    template = And(
        Eq(NAT, Fst(xv), Fst(Var("w", NN))), Eq(NAT, Snd(xv), Snd(Var("w", NN)))
    )
    dir1 = imp_intro(
        Eq(NN, xv, yv),
        eq_subst(
            "w",
            template,
            assume(Eq(NN, xv, yv)),
            and_intro(eq_refl(Fst(xv)), eq_refl(Snd(xv))),
        ),
    )
    # Backward: rebuild both sides from their components and chain.
    pair_x = Pair(Fst(xv), Snd(xv))
    pair_y = Pair(Fst(yv), Snd(yv))
    eta_x = forall_elim(xv, axiom("pair_eta", NAT, NAT))
    eta_y = forall_elim(yv, axiom("pair_eta", NAT, NAT))
    h = assume(componentwise)
    first_swap = eq_subst(
        "v",
        Eq(NN, pair_x, Pair(Var("v", NAT), Snd(xv))),
        and_elim1(h),
        eq_refl(pair_x),
    )
    both_swapped = eq_subst(
        "v",
        Eq(NN, pair_x, Pair(Fst(yv), Var("v", NAT))),
        and_elim2(h),
        first_swap,
    )
    chain = eq_trans(
        NN,
        xv,
        pair_x,
        yv,
        eq_sym(NN, pair_x, xv, eta_x),
        eq_trans(NN, pair_x, pair_y, yv, both_swapped, eta_y),
    )
    dir2 = imp_intro(componentwise, chain)
    proof = forall_intro("x", NN, forall_intro("y", NN, and_intro(dir1, dir2)))
    return Theorem("equality_formula_pair", Sequent((), goal), proof)


def _reducibility_functions() -> Theorem:
    instance = instantiate_axiom("fr", NAT, NAT, 0, 0, 1)
    return Theorem(
        "reducibility_functions",
        Sequent((), instance.formula),
        axiom("fr", NAT, NAT, 0, 0, 1),
    )


def _pem_full_reducibility() -> Theorem:
    """Excluded middle collapses level-1 subsets of the naturals to level 0."""
    goal = full_reducibility(NAT, 1)
    x_set = Var("X", P1N)
    nat_full = SetAbs("u", NAT, TRUTH, 0)

    def indicator_body(w: Term):
        inside = And(Mem(Fst(w), x_set), Eq(NAT, Snd(w), ONE))
        outside = And(Imp(Mem(Fst(w), x_set), FALSE), Eq(NAT, Snd(w), ZERO))
        return inside, outside

    wv = Var("w", NN)
    graph = SetAbs("w", NN, _or(*indicator_body(wv)), 1)

    def member_nat_full(t: Term) -> RuleApplication:
        return mem_intro(nat_full, t, truth())

    def graph_member_inside(elem: Term, in_proof: RuleApplication) -> RuleApplication:
        # elem in X  |-  <elem, 1> in graph
        point = Pair(elem, ONE)
        inside, outside = indicator_body(point)
        first = eq_subst(
            "v",
            Mem(Var("v", NAT), x_set),
            eq_sym(NAT, Fst(point), elem, pair_fst_eq(elem, ONE)),
            in_proof,
        )
        return mem_intro(
            graph, point, or_intro1(outside, and_intro(first, pair_snd_eq(elem, ONE)))
        )

    def graph_member_outside(elem: Term, out_proof: RuleApplication) -> RuleApplication:
        # (elem in X => false)  |-  <elem, 0> in graph
        point = Pair(elem, ZERO)
        inside, outside = indicator_body(point)
        first = eq_subst(
            "v",
            Imp(Mem(Var("v", NAT), x_set), FALSE),
            eq_sym(NAT, Fst(point), elem, pair_fst_eq(elem, ZERO)),
            out_proof,
        )
        return mem_intro(
            graph, point, or_intro2(inside, and_intro(first, pair_snd_eq(elem, ZERO)))
        )

    # --- the indicator graph is a map from the naturals to the naturals ----
    xv, yv, zv = Var("x", NAT), Var("y", NAT), Var("z", NAT)

    relation_proof = forall_intro(
        "x",
        NAT,
        forall_intro(
            "y",
            NAT,
            imp_intro(
                Mem(Pair(xv, yv), graph),
                and_intro(member_nat_full(xv), member_nat_full(yv)),
            ),
        ),
    )

    def value_from_case(val_var: Var, other: Term, case_hyp, value: Term) -> RuleApplication:
        # from (... /\ snd <x, v> = value) conclude v = value
        point = Pair(xv, val_var)
        snd_eq = pair_snd_eq(xv, val_var)
        return eq_trans(
            NAT,
            val_var,
            Snd(point),
            value,
            eq_sym(NAT, Snd(point), val_var, snd_eq),
            and_elim2(assume(case_hyp)),
        )

    def in_from_case(case_hyp, val_var: Var) -> RuleApplication:
        # from (fst <x, v> in X /\ ...) conclude x in X
        return eq_subst(
            "v",
            Mem(Var("v", NAT), x_set),
            pair_fst_eq(xv, val_var),
            and_elim1(assume(case_hyp)),
        )

    def out_from_case(case_hyp, val_var: Var) -> RuleApplication:
        # from ((fst <x, v> in X => false) /\ ...) conclude x in X => false
        return eq_subst(
            "v",
            Imp(Mem(Var("v", NAT), x_set), FALSE),
            pair_fst_eq(xv, val_var),
            and_elim1(assume(case_hyp)),
        )

    conj = And(Mem(Pair(xv, yv), graph), Mem(Pair(xv, zv), graph))
    d_y = mem_elim(graph, Pair(xv, yv), and_elim1(assume(conj)))
    d_z = mem_elim(graph, Pair(xv, zv), and_elim2(assume(conj)))
    in_y, out_y = indicator_body(Pair(xv, yv))
    in_z, out_z = indicator_body(Pair(xv, zv))
    y_eq_z = Eq(NAT, yv, zv)

    def agree(case_y, case_z, value: Term) -> RuleApplication:
        y_val = value_from_case(yv, zv, case_y, value)
        z_val = value_from_case(zv, yv, case_z, value)
        return eq_trans(NAT, yv, value, zv, y_val, eq_sym(NAT, zv, value, z_val))

    def clash(in_case, in_var: Var, out_case, out_var: Var) -> RuleApplication:
        contradiction = imp_elim(out_from_case(out_case, out_var), in_from_case(in_case, in_var))
        return false_elim(y_eq_z, contradiction)

    functional_inner = or_elim(
        d_y,
        or_elim(d_z, agree(in_y, in_z, ONE), clash(in_y, yv, out_z, zv)),
        or_elim(d_z, clash(in_z, zv, out_y, yv), agree(out_y, out_z, ZERO)),
    )
    functional_proof = forall_intro(
        "x",
        NAT,
        forall_intro(
            "y",
            NAT,
            forall_intro("z", NAT, imp_intro(conj, functional_inner)),
        ),
    )

    exists_image = Exists(
        "y", NAT, And(Mem(yv, nat_full), Mem(Pair(xv, yv), graph))
    )
    case_in = exists_intro(
        exists_image,
        ONE,
        and_intro(member_nat_full(ONE), graph_member_inside(xv, assume(Mem(xv, x_set)))),
    )
    case_out = exists_intro(
        exists_image,
        ZERO,
        and_intro(
            member_nat_full(ZERO),
            graph_member_outside(xv, assume(Imp(Mem(xv, x_set), FALSE))),
        ),
    )
    total_proof = forall_intro(
        "x",
        NAT,
        imp_intro(
            Mem(xv, nat_full),
            or_elim(axiom("pem", Mem(xv, x_set)), case_in, case_out),
        ),
    )
    map_proof = and_intro(and_intro(relation_proof, functional_proof), total_proof)

    # --- reduce the graph to level 0 and read off the level-0 subset -------
    reduced = imp_elim(
        forall_elim(
            graph, forall_elim(nat_full, forall_elim(nat_full, axiom("fr", NAT, NAT, 0, 0, 1)))
        ),
        map_proof,
    )
    g_var = Var("G", P0NN)
    pointwise_fg = membership_iff(graph, g_var, NN)
    level0_set = SetAbs("u", NAT, Mem(Pair(Var("u", NAT), ONE), g_var), 0)

    inner_goal = goal.body  # exists Y ... with X free
    zv2 = Var("z", NAT)
    at_z = forall_elim(Pair(zv2, ONE), assume(pointwise_fg))
    into = imp_intro(
        Mem(zv2, x_set),
        mem_intro(
            level0_set,
            zv2,
            imp_elim(and_elim1(at_z), graph_member_inside(zv2, assume(Mem(zv2, x_set)))),
        ),
    )
    back_graph = imp_elim(
        and_elim2(at_z), mem_elim(level0_set, zv2, assume(Mem(zv2, level0_set)))
    )
    in_z2, out_z2 = indicator_body(Pair(zv2, ONE))
    from_inside = eq_subst(
        "v",
        Mem(Var("v", NAT), x_set),
        pair_fst_eq(zv2, ONE),
        and_elim1(assume(in_z2)),
    )
    one_is_snd = eq_sym(NAT, Snd(Pair(zv2, ONE)), ONE, pair_snd_eq(zv2, ONE))
    one_eq_zero = eq_trans(
        NAT, ONE, Snd(Pair(zv2, ONE)), ZERO, one_is_snd, and_elim2(assume(out_z2))
    )
    absurd = imp_elim(forall_elim(ZERO, axiom("peano_succ_nonzero")), one_eq_zero)
    from_outside = false_elim(Mem(zv2, x_set), absurd)
    back = imp_intro(
        Mem(zv2, level0_set),
        or_elim(mem_elim(graph, Pair(zv2, ONE), back_graph), from_inside, from_outside),
    )
    witness_use = exists_intro(
        inner_goal,
        level0_set,
        forall_intro("z", NAT, and_intro(into, back)),
    )
    proof = forall_intro("X", P1N, exists_elim("G", reduced, witness_use))
    return Theorem("pem_full_reducibility", Sequent((), goal), proof)


def _or(left, right):
    from .ast import Or

    return Or(left, right)


def entries() -> list[CorpusEntry]:
    """All bundled scripts, classical flag included."""
    return [
        CorpusEntry(_comprehension_beta(), False),
        CorpusEntry(_comprehension_double(), False),
        CorpusEntry(_extensionality_empty(), False),
        CorpusEntry(_equality_formula_pow1(), False),
        CorpusEntry(_equality_formula_pair(), False),
        CorpusEntry(_reducibility_functions(), False),
        CorpusEntry(_pem_full_reducibility(), True),
    ]


def prelude_sexp():
    """The shipped theory: common abbreviations and local sets."""
    full = lambda carrier: ["setabs", "u", carrier, ["imp", "false", "false"], "0"]
    wv = ["var", "w", "natpair"]
    return [
        "theory",
        ["typedef", "natpair", ["prod", "nat", "nat"]],
        ["formula", "truth", ["imp", "false", "false"]],
        ["localset", "NN", "nat", full("nat"), "0"],
        ["localset", "UNIT1", "unit", full("unit"), "0"],
        ["localset", "OMEGA1", ["pow", "1", "unit"], full(["pow", "1", "unit"]), "0"],
        [
            "localset",
            "EQN",
            "natpair",
            ["setabs", "w", "natpair", ["eq", "nat", ["fst", wv], ["snd", wv]], "0"],
            "0",
        ],
    ]


def bundled_dir() -> Path:
    return Path(str(importlib.resources.files("irtt"))) / "scripts"


def write_corpus(directory: Path | str) -> list[Path]:
    """Regenerate the shipped script files; returns the paths written."""
    from .sexp import write_sexp

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for entry in entries():
        path = directory / f"{entry.name}{SCRIPT_SUFFIX}"
        header = f"; {entry.name}: check with `irtt prove`"
        if entry.classical:
            header += " --classical"
        path.write_text(header + "\n" + dump_theorem(entry.theorem), encoding="utf-8")
        written.append(path)
    prelude = directory / "prelude.irtt"
    prelude.write_text(
        "; shipped theory: common abbreviations and local sets\n"
        + write_sexp(prelude_sexp())
        + "\n",
        encoding="utf-8",
    )
    written.append(prelude)
    return written


if __name__ == "__main__":  # pragma: no cover
    import sys

    target = sys.argv[1] if len(sys.argv) > 1 else str(bundled_dir())
    for p in write_corpus(target):
        print(p)

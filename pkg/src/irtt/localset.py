"""Local sets and maps between them, with exact level bookkeeping.

A local set is a carrier type together with a levelled predicate carving
out a subset; a map is a total functional relation given by a levelled
graph.  Each construction here (composition, identities, products,
quotients, exponentials, equalizers, characteristic maps) builds its
result as honest syntax and computes the output level by a fixed max
formula over the input levels, so that the defining set abstraction is
admissible at its annotation.

Wherever a defining predicate needs equality at a sort whose level would
exceed the target annotation, the canonical equality formula (minimal
level: the sort's equality level) is used instead of primitive equality;
this is exactly what the equality-level measure exists for.

Constructions do not trust their inputs: well-definedness conditions are
emitted as proof obligations (sequents) for the kernel or the oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ast import (
    And,
    Exists,
    Forall,
    Formula,
    Fst,
    Imp,
    IrttError,
    Mem,
    NAT,
    Pair,
    Pow,
    Prod,
    Sequent,
    SetAbs,
    Snd,
    STAR,
    Term,
    TRUTH,
    TypeSymbol,
    UNIT,
    Var,
    alpha_eq,
    free_names,
    fresh_name,
)
from .kernel import AxiomInstance, derive_map_predicate, instantiate_axiom, membership_iff
from .levels import eq_formula, eq_level, level
from .typing import TypingError, context_of, sort_of


class LocalSetError(IrttError):
    pass


@dataclass(frozen=True)
class Obligation:
    """A named proof obligation attached to a construction."""

    name: str
    sequent: Sequent


@dataclass(frozen=True)
class LocalSetDesc:
    """Triple of carrier type, defining predicate, and predicate level."""

    carrier: TypeSymbol
    predicate: Term
    level: int

    def __post_init__(self) -> None:
        try:
            got = sort_of(self.predicate, context_of(self.predicate))
        except TypingError as err:
            raise LocalSetError(f"ill-sorted predicate: {err}") from err
        want = Pow(self.level, self.carrier)
        if got != want:
            raise LocalSetError(f"predicate has sort {got}, expected {want}")

    def __str__(self) -> str:
        return f"({self.carrier}, {self.predicate}, {self.level})"


@dataclass(frozen=True)
class MapDesc:
    """A morphism: a levelled graph between two local sets."""

    dom: LocalSetDesc
    cod: LocalSetDesc
    graph: Term
    level: int

    def __post_init__(self) -> None:
        try:
            got = sort_of(self.graph, context_of(self.graph))
        except TypingError as err:
            raise LocalSetError(f"ill-sorted graph: {err}") from err
        want = Pow(self.level, Prod(self.dom.carrier, self.cod.carrier))
        if got != want:
            raise LocalSetError(f"graph has sort {got}, expected {want}")

    def __str__(self) -> str:
        return f"({self.graph}, {self.level})"

    def map_obligation(self) -> Obligation:
        """The statement that the graph really is a map between its endpoints."""
        return Obligation(
            "is-map",
            Sequent((), derive_map_predicate(self.dom, self.cod, self.graph)),
        )


def maps_equal_formula(f: MapDesc, g: MapDesc) -> Formula:
    """Graph extensionality: the criterion for two parallel maps being equal."""
    if f.dom.carrier != g.dom.carrier or f.cod.carrier != g.cod.carrier:
        raise LocalSetError("maps over different carriers cannot be compared")
    return membership_iff(f.graph, g.graph, Prod(f.dom.carrier, f.cod.carrier))


# --------------------------------------------------------------------------
# Basic local sets
# --------------------------------------------------------------------------

def full_set(carrier: TypeSymbol, k: int = 0) -> SetAbs:
    """``{u:carrier | true}@k``."""
    return SetAbs("u", carrier, TRUTH, k)


def type_local_set(carrier: TypeSymbol) -> LocalSetDesc:
    """The whole type as a local set at level 0."""
    return LocalSetDesc(carrier, full_set(carrier), 0)


def nat_local_set() -> LocalSetDesc:
    return type_local_set(NAT)


def unit_local_set() -> LocalSetDesc:
    """The terminal local set."""
    return type_local_set(UNIT)


def omega_local_set(k: int) -> LocalSetDesc:
    """Truth values of level ``k``: the full local set over ``P[k](1)``."""
    return type_local_set(Pow(k, UNIT))


def truth_value(k: int) -> SetAbs:
    """The designated truth ``{u:1 | true}@k : P[k](1)``."""
    return SetAbs("u", UNIT, TRUTH, k)


# --------------------------------------------------------------------------
# Category structure
# --------------------------------------------------------------------------

def identity(x: LocalSetDesc) -> MapDesc:
    """Diagonal graph restricted to the set; level ``max(m, eq_level(A))``.

    Equality on the carrier appears through its canonical formula, which
    is what keeps the level at the equality level rather than the level.
    """
    lvl = max(x.level, eq_level(x.carrier))
    w = fresh_name("w", free_names(x.predicate))
    wv = Var(w, Prod(x.carrier, x.carrier))
    body = And(
        And(Mem(Fst(wv), x.predicate), Mem(Snd(wv), x.predicate)),
        eq_formula(x.carrier, Fst(wv), Snd(wv)),
    )
    graph = SetAbs(w, Prod(x.carrier, x.carrier), body, lvl)
    return MapDesc(x, x, graph, lvl)


def compose(g: MapDesc, f: MapDesc) -> MapDesc:
    """Relational composition; level ``max(level(B), k, l)`` through middle type ``B``."""
    if f.cod != g.dom:
        raise LocalSetError(
            f"codomain {f.cod} of the first map differs from domain {g.dom} of the second"
        )
    a, b, c = f.dom.carrier, f.cod.carrier, g.cod.carrier
    q = max(level(b), f.level, g.level)
    avoid = free_names(f.graph, g.graph)
    w = fresh_name("w", avoid)
    y = fresh_name("y", avoid | {w})
    wv = Var(w, Prod(a, c))
    yv = Var(y, b)
    body = Exists(
        y,
        b,
        And(Mem(Pair(Fst(wv), yv), f.graph), Mem(Pair(yv, Snd(wv)), g.graph)),
    )
    graph = SetAbs(w, Prod(a, c), body, q)
    return MapDesc(f.dom, g.cod, graph, q)


@dataclass(frozen=True)
class ProductResult:
    local_set: LocalSetDesc
    p1: MapDesc
    p2: MapDesc


def product(x1: LocalSetDesc, x2: LocalSetDesc) -> ProductResult:
    """Binary product at level ``max(m1, m2)``; projections at ``max(m1, m2, eq_level(Ai))``."""
    a1, a2 = x1.carrier, x2.carrier
    lvl = max(x1.level, x2.level)
    avoid = free_names(x1.predicate, x2.predicate)
    z = fresh_name("z", avoid)
    zv = Var(z, Prod(a1, a2))
    pred = SetAbs(
        z,
        Prod(a1, a2),
        And(Mem(Fst(zv), x1.predicate), Mem(Snd(zv), x2.predicate)),
        lvl,
    )
    ls = LocalSetDesc(Prod(a1, a2), pred, lvl)

    def projection(i: int, xi: LocalSetDesc) -> MapDesc:
        r = max(x1.level, x2.level, eq_level(xi.carrier))
        w = fresh_name("z", free_names(pred, xi.predicate))
        wv = Var(w, Prod(Prod(a1, a2), xi.carrier))
        component = Fst(Fst(wv)) if i == 1 else Snd(Fst(wv))
        body = And(
            And(Mem(Fst(wv), pred), Mem(Snd(wv), xi.predicate)),
            eq_formula(xi.carrier, component, Snd(wv)),
        )
        graph = SetAbs(w, Prod(Prod(a1, a2), xi.carrier), body, r)
        return MapDesc(ls, xi, graph, r)

    return ProductResult(ls, projection(1, x1), projection(2, x2))


def pairing(f: MapDesc, g: MapDesc) -> MapDesc:
    """Mediating map ``<f, g>`` into the product; level ``max(p, q)``."""
    if f.dom != g.dom:
        raise LocalSetError("pairing needs two maps out of the same local set")
    prod = product(f.cod, g.cod)
    c = f.dom.carrier
    a1, a2 = f.cod.carrier, g.cod.carrier
    lvl = max(f.level, g.level)
    w = fresh_name("w", free_names(f.graph, g.graph))
    wv = Var(w, Prod(c, Prod(a1, a2)))
    body = And(
        Mem(Pair(Fst(wv), Fst(Snd(wv))), f.graph),
        Mem(Pair(Fst(wv), Snd(Snd(wv))), g.graph),
    )
    graph = SetAbs(w, Prod(c, Prod(a1, a2)), body, lvl)
    return MapDesc(f.dom, prod.local_set, graph, lvl)


# --------------------------------------------------------------------------
# Quotients
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientResult:
    local_set: LocalSetDesc
    projection: MapDesc
    obligations: tuple[Obligation, ...]


def _equivalence_obligations(x: LocalSetDesc, e: LocalSetDesc) -> tuple[Obligation, ...]:
    a = x.carrier
    xv, yv, zv = Var("x", a), Var("y", a), Var("z", a)
    reflexive = Forall(
        "x",
        a,
        And(
            Imp(Mem(xv, x.predicate), Mem(Pair(xv, xv), e.predicate)),
            Imp(Mem(Pair(xv, xv), e.predicate), Mem(xv, x.predicate)),
        ),
    )
    symmetric = Forall(
        "x",
        a,
        Forall(
            "y",
            a,
            Imp(Mem(Pair(xv, yv), e.predicate), Mem(Pair(yv, xv), e.predicate)),
        ),
    )
    transitive = Forall(
        "x",
        a,
        Forall(
            "y",
            a,
            Forall(
                "z",
                a,
                Imp(
                    And(Mem(Pair(xv, yv), e.predicate), Mem(Pair(yv, zv), e.predicate)),
                    Mem(Pair(xv, zv), e.predicate),
                ),
            ),
        ),
    )
    return (
        Obligation("reflexive-on-domain", Sequent((), reflexive)),
        Obligation("symmetric", Sequent((), symmetric)),
        Obligation("transitive", Sequent((), transitive)),
    )


def quotient(x: LocalSetDesc, e: LocalSetDesc) -> QuotientResult:
    """Quotient by an equivalence relation; level ``max(m, n, level(A))``.

    The carrier of the quotient is the level-``l`` power of the original
    carrier: points become equivalence classes.
    """
    a = x.carrier
    if e.carrier != Prod(a, a):
        raise LocalSetError(
            f"relation carrier {e.carrier} is not {Prod(a, a)}"
        )
    l = max(x.level, e.level, level(a))
    b = Pow(l, a)
    avoid = free_names(x.predicate, e.predicate)
    s = fresh_name("s", avoid)
    xn = fresh_name("x", avoid | {s})
    yn = fresh_name("y", avoid | {s, xn})
    sv, xv, yv = Var(s, b), Var(xn, a), Var(yn, a)
    classes = SetAbs(
        s,
        b,
        Exists(
            xn,
            a,
            And(
                Mem(xv, x.predicate),
                Forall(
                    yn,
                    a,
                    And(
                        Imp(Mem(yv, sv), Mem(Pair(xv, yv), e.predicate)),
                        Imp(Mem(Pair(xv, yv), e.predicate), Mem(yv, sv)),
                    ),
                ),
            ),
        ),
        l,
    )
    qls = LocalSetDesc(b, classes, l)
    w = fresh_name("w", avoid)
    wv = Var(w, Prod(a, b))
    q_body = And(
        And(Mem(Fst(wv), x.predicate), Mem(Snd(wv), classes)),
        Mem(Fst(wv), Snd(wv)),
    )
    q_graph = SetAbs(w, Prod(a, b), q_body, l)
    q_map = MapDesc(x, qls, q_graph, l)
    return QuotientResult(qls, q_map, _equivalence_obligations(x, e))


def respects_formula(f: MapDesc, e: LocalSetDesc) -> Formula:
    """``f`` sends related points to equal values: the quotient factorization premise."""
    a, c = f.dom.carrier, f.cod.carrier
    xv, x2v = Var("x", a), Var("x'", a)
    zv, z2v = Var("z", c), Var("z'", c)
    return Forall(
        "x",
        a,
        Forall(
            "x'",
            a,
            Forall(
                "z",
                c,
                Forall(
                    "z'",
                    c,
                    Imp(
                        And(
                            And(Mem(Pair(xv, zv), f.graph), Mem(Pair(x2v, z2v), f.graph)),
                            Mem(Pair(xv, x2v), e.predicate),
                        ),
                        eq_formula(c, zv, z2v),
                    ),
                ),
            ),
        ),
    )


def quotient_factor(q: QuotientResult, f: MapDesc) -> MapDesc:
    """The map through which a relation-respecting ``f`` factors; level ``max(l, k, p)``."""
    if f.dom != q.projection.dom:
        raise LocalSetError("the factored map must share the quotient's domain")
    b = q.local_set.carrier
    c = f.cod.carrier
    a = f.dom.carrier
    r = max(q.local_set.level, f.level, f.cod.level)
    avoid = free_names(q.local_set.predicate, f.graph, f.dom.predicate)
    w = fresh_name("w", avoid)
    u = fresh_name("u", avoid | {w})
    wv = Var(w, Prod(b, c))
    uv = Var(u, a)
    body = And(
        Mem(Fst(wv), q.local_set.predicate),
        Exists(
            u,
            a,
            And(
                And(Mem(uv, f.dom.predicate), Mem(uv, Fst(wv))),
                Mem(Pair(uv, Snd(wv)), f.graph),
            ),
        ),
    )
    graph = SetAbs(w, Prod(b, c), body, r)
    return MapDesc(q.local_set, f.cod, graph, r)


# --------------------------------------------------------------------------
# Exponentials
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentialResult:
    local_set: LocalSetDesc
    ev: MapDesc
    graph_level: int  # the level k of the graphs collected into the carrier


def exponential(x: LocalSetDesc, y: LocalSetDesc) -> ExponentialResult:
    """Function space: graphs at level ``k = max(eq_level(B), m, n)``.

    The carrier is ``P[k](A*B)``; collecting exactly the level-``k``
    graphs is what the functional-reducibility axiom makes exhaustive.
    The set of maps lives at ``s = max(level(A), level(B), m, n)``, as
    does the evaluation map.
    """
    a, b = x.carrier, y.carrier
    m, n = x.level, y.level
    k = max(eq_level(b), m, n)
    s = max(level(a), level(b), m, n)
    graph_sort = Pow(k, Prod(a, b))
    fn = fresh_name("f", free_names(x.predicate, y.predicate))
    from .kernel import map_conjunction

    member = map_conjunction(a, x.predicate, b, y.predicate, Var(fn, graph_sort))
    exp_pred = SetAbs(fn, graph_sort, member, s)
    exp_ls = LocalSetDesc(graph_sort, exp_pred, s)

    prod = product(exp_ls, x)
    w = fresh_name("w", free_names(exp_pred, y.predicate))
    wv = Var(w, Prod(Prod(graph_sort, a), b))
    ev_body = And(
        And(Mem(Fst(wv), prod.local_set.predicate), Mem(Snd(wv), y.predicate)),
        Mem(Pair(Snd(Fst(wv)), Snd(wv)), Fst(Fst(wv))),
    )
    ev_graph = SetAbs(w, Prod(Prod(graph_sort, a), b), ev_body, s)
    ev = MapDesc(prod.local_set, y, ev_graph, s)
    return ExponentialResult(exp_ls, ev, k)


@dataclass(frozen=True)
class TransposeResult:
    map: MapDesc
    fr_instance: AxiomInstance
    beta: Obligation
    uniqueness: Obligation


def transpose(g: MapDesc, z: LocalSetDesc, x: LocalSetDesc, y: LocalSetDesc) -> TransposeResult:
    """Currying: turn ``g : Z*X -> Y`` into a map ``Z -> Y^X``.

    The transpose's defining formula joins every level in sight:
    ``t = max(level(A), level(B), level(C), m, n, p, q)``.  Its beta law
    needs one functional-reducibility instance to push an arbitrary
    section of ``g`` down to a level-``k`` graph.
    """
    if g.cod != y:
        raise LocalSetError("the transposed map must land in the exponential's base")
    zx = product(z, x)
    if g.dom.carrier != zx.local_set.carrier or not alpha_eq(
        g.dom.predicate, zx.local_set.predicate
    ):
        raise LocalSetError("the transposed map must start from the product with the base")
    expo = exponential(x, y)
    a, b, c = x.carrier, y.carrier, z.carrier
    m, n, p, q = x.level, y.level, z.level, g.level
    k = expo.graph_level
    t = max(level(a), level(b), level(c), m, n, p, q)
    graph_sort = Pow(k, Prod(a, b))
    avoid = free_names(z.predicate, expo.local_set.predicate, g.graph)
    w = fresh_name("w", avoid)
    xn = fresh_name("x", avoid | {w})
    yn = fresh_name("y", avoid | {w, xn})
    wv = Var(w, Prod(c, graph_sort))
    xv, yv = Var(xn, a), Var(yn, b)
    inner = Pair(Pair(Fst(wv), xv), yv)
    body = And(
        And(Mem(Fst(wv), z.predicate), Mem(Snd(wv), expo.local_set.predicate)),
        Forall(
            xn,
            a,
            Forall(
                yn,
                b,
                And(
                    Imp(Mem(Pair(xv, yv), Snd(wv)), Mem(inner, g.graph)),
                    Imp(Mem(inner, g.graph), Mem(Pair(xv, yv), Snd(wv))),
                ),
            ),
        ),
    )
    graph = SetAbs(w, Prod(c, graph_sort), body, t)
    h = MapDesc(z, expo.local_set, graph, t)

    fr_instance = instantiate_axiom("fr", a, b, m, n, q)
    h_times_id = pairing(compose(h, zx.p1), zx.p2)
    beta_lhs = compose(expo.ev, h_times_id)
    beta = Obligation(
        "beta",
        Sequent(
            (derive_map_predicate(g.dom, g.cod, g.graph),),
            maps_equal_formula(beta_lhs, g),
        ),
    )
    other = Var("H'", Pow(t, Prod(c, graph_sort)))
    other_map = MapDesc(z, expo.local_set, other, t)
    other_lhs = compose(expo.ev, pairing(compose(other_map, zx.p1), zx.p2))
    uniqueness = Obligation(
        "uniqueness",
        Sequent(
            (
                derive_map_predicate(g.dom, g.cod, g.graph),
                derive_map_predicate(z, expo.local_set, other),
                maps_equal_formula(other_lhs, g),
            ),
            maps_equal_formula(other_map, h),
        ),
    )
    return TransposeResult(h, fr_instance, beta, uniqueness)


# --------------------------------------------------------------------------
# Equalizers
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EqualizerResult:
    local_set: LocalSetDesc
    inclusion: MapDesc


def equalizer(f: MapDesc, g: MapDesc) -> EqualizerResult:
    """Agreement set of two parallel maps; level ``max(level(B), k, l)``."""
    if f.dom != g.dom or f.cod != g.cod:
        raise LocalSetError("equalizers need two parallel maps")
    a, b = f.dom.carrier, f.cod.carrier
    r = max(level(b), f.level, g.level)
    avoid = free_names(f.graph, g.graph)
    an = fresh_name("a", avoid)
    yn = fresh_name("y", avoid | {an})
    av, yv = Var(an, a), Var(yn, b)
    pred = SetAbs(
        an,
        a,
        Exists(yn, b, And(Mem(Pair(av, yv), f.graph), Mem(Pair(av, yv), g.graph))),
        r,
    )
    els = LocalSetDesc(a, pred, r)
    p = max(r, eq_level(a))
    z = fresh_name("z", avoid)
    zv = Var(z, Prod(a, a))
    incl_body = And(Mem(Fst(zv), pred), eq_formula(a, Fst(zv), Snd(zv)))
    incl_graph = SetAbs(z, Prod(a, a), incl_body, p)
    inclusion = MapDesc(els, f.dom, incl_graph, p)
    return EqualizerResult(els, inclusion)


# --------------------------------------------------------------------------
# Characteristic maps
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CharacteristicResult:
    map: MapDesc
    subset: Obligation
    correspondence: Obligation


def characteristic(x: LocalSetDesc, y: Term, k: int) -> CharacteristicResult:
    """Characteristic map of a subset ``y`` into the truth values of level ``k``.

    The subset must be given at level ``max(m, k)``, which is also the
    level of the resulting map.
    """
    a = x.carrier
    m = x.level
    lvl = max(m, k)
    try:
        got = sort_of(y, context_of(y))
    except TypingError as err:
        raise LocalSetError(f"ill-sorted subset: {err}") from err
    if got != Pow(lvl, a):
        raise LocalSetError(f"subset has sort {got}, expected {Pow(lvl, a)}")
    omega = omega_local_set(k)
    z = fresh_name("z", free_names(y))
    zv = Var(z, Prod(a, Pow(k, UNIT)))
    body = And(Mem(Fst(zv), y), Mem(STAR, Snd(zv)))
    graph = SetAbs(z, Prod(a, Pow(k, UNIT)), body, lvl)
    chi = MapDesc(x, omega, graph, lvl)

    u = fresh_name("u", free_names(y, x.predicate))
    uv = Var(u, a)
    subset = Obligation(
        "subset-of-domain",
        Sequent((), Forall(u, a, Imp(Mem(uv, y), Mem(uv, x.predicate)))),
    )
    t_k = truth_value(k)
    correspondence = Obligation(
        "classifies",
        Sequent(
            (),
            Forall(
                u,
                a,
                Imp(
                    Mem(uv, x.predicate),
                    And(
                        Imp(Mem(Pair(uv, t_k), graph), Mem(uv, y)),
                        Imp(Mem(uv, y), Mem(Pair(uv, t_k), graph)),
                    ),
                ),
            ),
        ),
    )
    return CharacteristicResult(chi, subset, correspondence)

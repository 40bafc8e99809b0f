"""Brute-force classical semantics over small finite carriers.

The naturals are read modulo the base size, products as cartesian
products, and every power set — whatever its level — as the full
powerset: levels collapse extensionally in classical semantics.  That
makes the oracle a sound refuter and a classical validator, but it
cannot certify anything that leans on genuine arithmetic: the successor
axiom fails modulo a finite base, and choice sequences indexed by the
naturals wrap around.  Use :func:`irtt.kernel.uses_arithmetic` to decide
whether a script's claim is eligible.

Evaluation is pure; membership in a set abstraction evaluates the body
directly rather than materializing the subset.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping

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
    Nat,
    Or,
    Pair,
    Pow,
    Prod,
    Sequent,
    SetAbs,
    Snd,
    Star,
    Succ,
    Term,
    TypeSymbol,
    Unit,
    Var,
    Zero,
    pow_depth,
    sequent_pow_depth,
    type_pow_depth,
)
from .typing import context_of, min_level

#: Default ceiling on the size of any carrier the oracle will materialize.
DEFAULT_BUDGET = 1 << 16

#: Assignment of model elements to free variable names.
Valuation = Mapping[str, object]


class OracleError(IrttError):
    pass


class BudgetExceededError(OracleError):
    def __init__(self, type_: TypeSymbol, size: int, budget: int):
        super().__init__(
            f"carrier of {type_} has {size} elements, beyond the budget of {budget}"
        )
        self.type_ = type_
        self.size = size
        self.budget = budget


class FiniteModel:
    """Finite carriers for every type, driven by a base size for the naturals."""

    def __init__(self, base_size: int, depth_bound: int = 2, budget: int = DEFAULT_BUDGET):
        if base_size < 1:
            raise OracleError(f"base size must be at least 1, got {base_size}")
        self.base_size = base_size
        self.depth_bound = depth_bound
        self.budget = budget
        self._carriers: dict[TypeSymbol, tuple] = {}

    def __repr__(self) -> str:
        return f"FiniteModel(base_size={self.base_size}, depth_bound={self.depth_bound})"

    def carrier_size(self, t: TypeSymbol) -> int:
        match t:
            case Unit():
                return 1
            case Nat():
                return self.base_size
            case Prod(left, right):
                return self.carrier_size(left) * self.carrier_size(right)
            case Pow(_, body):
                inner = self.carrier_size(body)
                if inner > 40:  # 2**inner would not be representable sanely
                    raise BudgetExceededError(t, 2**inner, self.budget)
                return 2**inner
        raise OracleError(f"not a type symbol: {t!r}")

    def carrier(self, t: TypeSymbol) -> tuple:
        """All elements of the carrier, in a deterministic order."""
        cached = self._carriers.get(t)
        if cached is not None:
            return cached
        size = self.carrier_size(t)
        if size > self.budget:
            raise BudgetExceededError(t, size, self.budget)
        match t:
            case Unit():
                elems: tuple = ((),)
            case Nat():
                elems = tuple(range(self.base_size))
            case Prod(left, right):
                elems = tuple(
                    itertools.product(self.carrier(left), self.carrier(right))
                )
            case Pow(_, body):
                base = self.carrier(body)
                elems = tuple(
                    frozenset(base[i] for i in range(len(base)) if mask >> i & 1)
                    for mask in range(1 << len(base))
                )
            case _:
                raise OracleError(f"not a type symbol: {t!r}")
        self._carriers[t] = elems
        return elems

    def check_depth(self, needed: int) -> None:
        if needed > self.depth_bound:
            raise OracleError(
                f"power-set nesting {needed} exceeds the model's depth bound {self.depth_bound}"
            )


def eval_term(model: FiniteModel, t: Term, valuation: Valuation):
    match t:
        case Var(name, _):
            try:
                return valuation[name]
            except KeyError:
                raise OracleError(f"valuation misses variable {name!r}") from None
        case Star():
            return ()
        case Zero():
            return 0
        case Succ(a):
            return (eval_term(model, a, valuation) + 1) % model.base_size
        case Add(a, b):
            return (
                eval_term(model, a, valuation) + eval_term(model, b, valuation)
            ) % model.base_size
        case Mul(a, b):
            return (
                eval_term(model, a, valuation) * eval_term(model, b, valuation)
            ) % model.base_size
        case Pair(a, b):
            return (eval_term(model, a, valuation), eval_term(model, b, valuation))
        case Fst(a):
            return eval_term(model, a, valuation)[0]
        case Snd(a):
            return eval_term(model, a, valuation)[1]
        case SetAbs(var, sort, body, _):
            # The level annotation is semantically inert: powers collapse.
            return frozenset(
                elem
                for elem in model.carrier(sort)
                if eval_formula(model, body, {**valuation, var: elem})
            )
    raise OracleError(f"not a term: {t!r}")


def eval_formula(model: FiniteModel, f: Formula, valuation: Valuation) -> bool:
    """Classical truth value of ``f`` under ``valuation``."""
    match f:
        case Eq(_, lhs, rhs):
            return eval_term(model, lhs, valuation) == eval_term(model, rhs, valuation)
        case Mem(elem, set_):
            value = eval_term(model, elem, valuation)
            if isinstance(set_, SetAbs):
                return eval_formula(model, set_.body, {**valuation, set_.var: value})
            return value in eval_term(model, set_, valuation)
        case Falsum():
            return False
        case Or(a, b):
            return eval_formula(model, a, valuation) or eval_formula(model, b, valuation)
        case And(a, b):
            return eval_formula(model, a, valuation) and eval_formula(model, b, valuation)
        case Imp(a, b):
            return not eval_formula(model, a, valuation) or eval_formula(model, b, valuation)
        case Forall(var, sort, body):
            return all(
                eval_formula(model, body, {**valuation, var: elem})
                for elem in model.carrier(sort)
            )
        case Exists(var, sort, body):
            return any(
                eval_formula(model, body, {**valuation, var: elem})
                for elem in model.carrier(sort)
            )
    raise OracleError(f"not a formula: {f!r}")


def _valuations(model: FiniteModel, ctx: dict[str, TypeSymbol]) -> Iterator[dict[str, object]]:
    names = sorted(ctx)
    carriers = [model.carrier(ctx[name]) for name in names]
    for combo in itertools.product(*carriers):
        yield dict(zip(names, combo))


def check_sequent(model: FiniteModel, s: Sequent) -> bool:
    """True iff every valuation satisfying the hypotheses satisfies the goal."""
    model.check_depth(sequent_pow_depth(s))
    ctx = context_of(*s.hypotheses, s.goal)
    for f in (*s.hypotheses, s.goal):
        min_level(f, ctx)
    for valuation in _valuations(model, ctx):
        if all(eval_formula(model, h, valuation) for h in s.hypotheses):
            if not eval_formula(model, s.goal, valuation):
                return False
    return True


def check_formula(model: FiniteModel, f: Formula) -> bool:
    """Validity of ``f`` over all valuations of its free variables."""
    return check_sequent(model, Sequent((), f))


def find_countermodel(
    f: Formula,
    max_base: int,
    max_depth: int,
    budget: int = DEFAULT_BUDGET,
) -> tuple[FiniteModel, dict[str, object]] | None:
    """Smallest base size (then depth) falsifying ``f``, or ``None`` within bounds."""
    needed_depth = pow_depth(f)
    if needed_depth > max_depth:
        return None
    ctx = context_of(f)
    min_level(f, ctx)
    for base in range(1, max_base + 1):
        model = FiniteModel(base, needed_depth, budget)
        for valuation in _valuations(model, ctx):
            if not eval_formula(model, f, valuation):
                return model, valuation
    return None


def validate_in_models(
    s: Sequent,
    bases: Iterable[int] = range(1, 4),
    depth: int = 2,
    budget: int = DEFAULT_BUDGET,
) -> dict[int, bool]:
    """Check a sequent across base sizes; maps base size to validity."""
    results: dict[int, bool] = {}
    for base in bases:
        results[base] = check_sequent(FiniteModel(base, depth, budget), s)
    return results

"""Three-valued bounded evaluation of arithmetic formulas over N.

Quantifier-free and bounded-quantifier formulas evaluate exactly.  An
unbounded exists is searched up to the budget's q_bound and certified True
on a witness; an unbounded forall is certified False on a counterexample;
otherwise the verdict is Unknown.  Connectives follow strong Kleene.
"""

import itertools
from dataclasses import dataclass

from .terms import (Add, And, BExists, BForall, Eq, Exists, FalseC, Forall,
                    Iff, Implies, Lit, Lt, Mul, Not, One, Or, TrueC, Var,
                    Zero)


@dataclass(frozen=True)
class TriState:
    value: str  # "true" | "false" | "unknown"
    reason: str = ""

    def is_true(self):
        return self.value == "true"

    def is_false(self):
        return self.value == "false"

    def is_exact(self):
        return self.value != "unknown"

    def __bool__(self):
        raise TypeError("TriState is three-valued; test .is_true()/.is_false()")


TRUE = TriState("true")
FALSE = TriState("false")


def unknown(reason):
    return TriState("unknown", reason)


@dataclass(frozen=True)
class Budget:
    q_bound: int = 64          # search ceiling per unbounded quantifier
    depth: int = 16            # nesting guard for unbounded searches
    expansion_limit: int = 10 ** 6  # per-bounded-quantifier expansion cap

    def __post_init__(self):
        if self.q_bound < 0:
            raise ValueError("q_bound must be >= 0")


class WitnessSearchError(Exception):
    """The witness-search body did not evaluate exactly."""


def eval_term(t, v):
    """Value of a term under an assignment (missing variables read as 0)."""
    if isinstance(t, Var):
        return v.get(t, 0)
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Lit):
        return t.n
    if isinstance(t, Add):
        return eval_term(t.left, v) + eval_term(t.right, v)
    if isinstance(t, Mul):
        return eval_term(t.left, v) * eval_term(t.right, v)
    raise TypeError(f"not a term: {t!r}")


def _neg(r):
    if r.is_true():
        return FALSE
    if r.is_false():
        return TRUE
    return r


def _conj(a, b):
    if a.is_false() or b.is_false():
        return FALSE
    if a.is_true() and b.is_true():
        return TRUE
    return a if not a.is_exact() else b


def _disj(a, b):
    if a.is_true() or b.is_true():
        return TRUE
    if a.is_false() and b.is_false():
        return FALSE
    return a if not a.is_exact() else b


def eval_formula(f, v, budget=Budget(), _depth=0):
    if isinstance(f, TrueC):
        return TRUE
    if isinstance(f, FalseC):
        return FALSE
    if isinstance(f, Eq):
        return TRUE if eval_term(f.left, v) == eval_term(f.right, v) else FALSE
    if isinstance(f, Lt):
        return TRUE if eval_term(f.left, v) < eval_term(f.right, v) else FALSE
    if isinstance(f, Not):
        return _neg(eval_formula(f.body, v, budget, _depth))
    if isinstance(f, And):
        # short-circuit: And(False, _) is False in strong Kleene, so the
        # right side need not be evaluated at all
        a = eval_formula(f.left, v, budget, _depth)
        if a.is_false():
            return FALSE
        return _conj(a, eval_formula(f.right, v, budget, _depth))
    if isinstance(f, Or):
        a = eval_formula(f.left, v, budget, _depth)
        if a.is_true():
            return TRUE
        return _disj(a, eval_formula(f.right, v, budget, _depth))
    if isinstance(f, Implies):
        a = eval_formula(f.left, v, budget, _depth)
        if a.is_false():
            return TRUE
        return _disj(_neg(a), eval_formula(f.right, v, budget, _depth))
    if isinstance(f, Iff):
        a = eval_formula(f.left, v, budget, _depth)
        b = eval_formula(f.right, v, budget, _depth)
        if a.is_exact() and b.is_exact():
            return TRUE if a.value == b.value else FALSE
        return a if not a.is_exact() else b
    if isinstance(f, (BForall, BExists)):
        n = eval_term(f.bound, v)
        if n > budget.expansion_limit:
            return unknown(f"bounded range {n} exceeds expansion limit")
        hit = TRUE if isinstance(f, BExists) else FALSE
        out = FALSE if isinstance(f, BExists) else TRUE
        pending = None
        for i in range(n):
            r = eval_formula(f.body, _bind(v, f.var, i), budget, _depth)
            if r == hit:
                return hit
            if not r.is_exact():
                pending = r
        return pending if pending is not None else out
    if isinstance(f, (Forall, Exists)):
        if _depth >= budget.depth:
            return unknown("unbounded-quantifier depth guard exceeded")
        hit = TRUE if isinstance(f, Exists) else FALSE
        pending = None
        for i in range(budget.q_bound + 1):
            r = eval_formula(f.body, _bind(v, f.var, i), budget, _depth + 1)
            if r == hit:
                return hit
            if not r.is_exact():
                pending = r
        kind = "witness" if isinstance(f, Exists) else "counterexample"
        if pending is not None:
            return pending
        return unknown(f"no {kind} <= {budget.q_bound}")
    raise TypeError(f"not a formula: {f!r}")


def _bind(v, var, n):
    v2 = dict(v)
    v2[var] = n
    return v2


def _strip_exists_block(f):
    block = []
    while isinstance(f, Exists):
        block.append(f.var)
        f = f.body
    return block, f


def find_witnesses(f, v, budget=Budget()):
    """Least witnesses for a leading block of unbounded existentials.

    Returns a list of (Var, value) pairs (empty for an empty block and a
    true body), or None when no witness tuple <= q_bound exists.  Raises
    WitnessSearchError when the body cannot be evaluated exactly.
    """
    block, body = _strip_exists_block(f)
    if not block:
        r = eval_formula(body, v, budget)
        if not r.is_exact():
            raise WitnessSearchError(r.reason)
        return [] if r.is_true() else None
    # lexicographic search, leftmost component most significant
    for tup in itertools.product(range(budget.q_bound + 1), repeat=len(block)):
        v2 = dict(v)
        for var, val in zip(block, tup):
            v2[var] = val
        r = eval_formula(body, v2, budget)
        if not r.is_exact():
            raise WitnessSearchError(r.reason)
        if r.is_true():
            return list(zip(block, tup))
    return None

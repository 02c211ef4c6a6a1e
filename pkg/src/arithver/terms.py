"""Terms and formulas of first-order arithmetic over {0, 1, +, *, <}.

Numerals are stored as Lit nodes and expanded to sums of ones only on
demand.  All nodes are immutable; substitution returns new trees.
"""

from dataclasses import dataclass
import re

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __post_init__(self):
        if not _IDENT_RE.match(self.name):
            raise ValueError(f"bad variable name: {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Zero(Term):
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class One(Term):
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Lit(Term):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("literals are naturals")

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term

    def __str__(self):
        return f"({self.left} * {self.right})"


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class TrueC(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class FalseC(Formula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term

    def __str__(self):
        return f"{self.left} = {self.right}"


@dataclass(frozen=True)
class Lt(Formula):
    left: Term
    right: Term

    def __str__(self):
        return f"{self.left} < {self.right}"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def __str__(self):
        return f"~({self.body})"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} /\\ {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} \\/ {self.right})"


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} -> {self.right})"


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} <-> {self.right})"


@dataclass(frozen=True)
class Forall(Formula):
    var: Var
    body: Formula

    def __str__(self):
        return f"(forall {self.var} . {self.body})"


@dataclass(frozen=True)
class Exists(Formula):
    var: Var
    body: Formula

    def __str__(self):
        return f"(exists {self.var} . {self.body})"


@dataclass(frozen=True)
class BForall(Formula):
    var: Var
    bound: Term
    body: Formula

    def __post_init__(self):
        if self.var in term_vars(self.bound):
            raise ValueError(f"bound term of forall {self.var}<... mentions {self.var}")

    def __str__(self):
        return f"(forall {self.var} < {self.bound} . {self.body})"


@dataclass(frozen=True)
class BExists(Formula):
    var: Var
    bound: Term
    body: Formula

    def __post_init__(self):
        if self.var in term_vars(self.bound):
            raise ValueError(f"bound term of exists {self.var}<... mentions {self.var}")

    def __str__(self):
        return f"(exists {self.var} < {self.bound} . {self.body})"


def mk_numeral(n):
    """The numeral for n (a Lit node; see expand_to_core for the strict form)."""
    if n < 0:
        raise ValueError("numerals are naturals")
    return Lit(n)


def _ones_sum(n):
    # left-nested 1 + 1 + ... + 1
    if n == 0:
        return Zero()
    t = One()
    for _ in range(n - 1):
        t = Add(t, One())
    return t


def expand_to_core(t):
    """Replace every Lit node by its expansion over {0, 1, +}."""
    if isinstance(t, Lit):
        return _ones_sum(t.n)
    if isinstance(t, Add):
        return Add(expand_to_core(t.left), expand_to_core(t.right))
    if isinstance(t, Mul):
        return Mul(expand_to_core(t.left), expand_to_core(t.right))
    return t


def term_vars(t):
    """Set of variables occurring in a term."""
    if isinstance(t, Var):
        return {t}
    if isinstance(t, (Add, Mul)):
        return term_vars(t.left) | term_vars(t.right)
    return set()


def free_vars(f):
    """Variables with a free occurrence in a formula.

    The bound term of a bounded quantifier is outside the binder's scope,
    so its variables count as free unless bound further out.
    """
    if isinstance(f, (TrueC, FalseC)):
        return set()
    if isinstance(f, (Eq, Lt)):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    if isinstance(f, (BForall, BExists)):
        return (free_vars(f.body) - {f.var}) | term_vars(f.bound)
    raise TypeError(f"not a formula: {f!r}")


def fresh_var(base, avoid):
    """First primed copy of base whose name collides with nothing in avoid."""
    names = {v.name for v in avoid}
    name = base.name
    while name in names:
        name += "'"
    return Var(name)


def subst_term(t, env):
    """Substitute env (Var -> Term) into a term."""
    if isinstance(t, Var):
        return env.get(t, t)
    if isinstance(t, Add):
        return Add(subst_term(t.left, env), subst_term(t.right, env))
    if isinstance(t, Mul):
        return Mul(subst_term(t.left, env), subst_term(t.right, env))
    return t


def substitute_simultaneous(f, pairs):
    """Capture-avoiding simultaneous substitution of terms for variables."""
    targets = [v for v, _ in pairs]
    if len(set(targets)) != len(targets):
        raise ValueError("substitution targets must be distinct")
    return _subst(f, dict(pairs))


def substitute(f, var, term):
    return _subst(f, {var: term})


def _subst(f, env):
    env = {v: t for v, t in env.items() if t != v}
    if not env:
        return f
    if isinstance(f, (TrueC, FalseC)):
        return f
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, env), subst_term(f.right, env))
    if isinstance(f, Lt):
        return Lt(subst_term(f.left, env), subst_term(f.right, env))
    if isinstance(f, Not):
        return Not(_subst(f.body, env))
    if isinstance(f, (And, Or, Implies, Iff)):
        return type(f)(_subst(f.left, env), _subst(f.right, env))
    if isinstance(f, (Forall, Exists)):
        var, body, env2 = _enter_binder(f.var, f.body, env)
        return type(f)(var, _subst(body, env2))
    if isinstance(f, (BForall, BExists)):
        bound = subst_term(f.bound, env)
        var, body, env2 = _enter_binder(f.var, f.body, env)
        return type(f)(var, bound, _subst(body, env2))
    raise TypeError(f"not a formula: {f!r}")


def _enter_binder(var, body, env):
    env = {v: t for v, t in env.items() if v != var}
    captured = any(var in term_vars(t) for v, t in env.items() if v in free_vars(body))
    if captured:
        avoid = set(free_vars(body))
        for t in env.values():
            avoid |= term_vars(t)
        new = fresh_var(var, avoid)
        body = _subst(body, {var: new})
        return new, body, env
    return var, body, env


def alpha_key(f, depth=0, bound=None):
    """Canonical form with bound variables replaced by binding depth.

    Two formulas are alpha-equivalent iff their keys are equal.
    """
    if bound is None:
        bound = {}

    def term_key(t):
        if isinstance(t, Var):
            return ("bv", bound[t]) if t in bound else ("fv", t.name)
        if isinstance(t, Zero):
            return ("lit", 0)
        if isinstance(t, One):
            return ("lit", 1)
        if isinstance(t, Lit):
            return ("lit", t.n)
        return (type(t).__name__, term_key(t.left), term_key(t.right))

    if isinstance(f, (TrueC, FalseC)):
        return (type(f).__name__,)
    if isinstance(f, (Eq, Lt)):
        return (type(f).__name__, term_key(f.left), term_key(f.right))
    if isinstance(f, Not):
        return ("Not", alpha_key(f.body, depth, bound))
    if isinstance(f, (And, Or, Implies, Iff)):
        return (type(f).__name__, alpha_key(f.left, depth, bound),
                alpha_key(f.right, depth, bound))
    if isinstance(f, (Forall, Exists)):
        inner = dict(bound)
        inner[f.var] = depth
        return (type(f).__name__, alpha_key(f.body, depth + 1, inner))
    if isinstance(f, (BForall, BExists)):
        def term_key_outer(t):
            return alpha_key(Eq(t, Zero()), depth, bound)[1]
        inner = dict(bound)
        inner[f.var] = depth
        return (type(f).__name__, term_key_outer(f.bound),
                alpha_key(f.body, depth + 1, inner))
    raise TypeError(f"not a formula: {f!r}")


def alpha_equal(f, g):
    return alpha_key(f) == alpha_key(g)


def conj(parts):
    """Right-nested conjunction of a list of formulas (true when empty)."""
    parts = list(parts)
    if not parts:
        return TrueC()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disj(parts):
    parts = list(parts)
    if not parts:
        return FalseC()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out

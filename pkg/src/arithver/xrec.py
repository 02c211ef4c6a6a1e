"""The X-recursive function calculus: schemas, evaluation, defining
formulas, the standard library of arithmetic combinators, characteristic
functions of level-0 formulas, and compilation to while-programs.
"""

from dataclasses import dataclass

from . import coding
from .alpha import _Names, beta_graph, _beta_inst
from .terms import (Add as AddT, And, BExists, BForall, Eq, Exists, FalseC,
                    Lit, Lt, Mul as MulT, Not, One, Or, TrueC, Var, Zero,
                    conj, free_vars, mk_numeral, substitute)
from .evaluator import eval_formula
from .hierarchy import classify, prenexify, desugar
from .whilelang import Assign, Less, Seq, While


class XRecSchema:
    __slots__ = ()


@dataclass(frozen=True)
class Const(XRecSchema):
    value: int
    arity: int

    def __post_init__(self):
        if self.value < 0 or self.arity < 0:
            raise ValueError("Const needs a natural value and arity")


@dataclass(frozen=True)
class Proj(XRecSchema):
    index: int  # 1-based
    arity: int

    def __post_init__(self):
        if not 1 <= self.index <= self.arity:
            raise ValueError(f"projection index {self.index} out of 1..{self.arity}")


@dataclass(frozen=True)
class AddF(XRecSchema):
    arity: int = 2


@dataclass(frozen=True)
class MulF(XRecSchema):
    arity: int = 2


@dataclass(frozen=True)
class Cn(XRecSchema):
    f: XRecSchema
    gs: tuple

    def __post_init__(self):
        gs = tuple(self.gs)
        object.__setattr__(self, "gs", gs)
        if self.f.arity != len(gs):
            raise ValueError(f"Cn: f takes {self.f.arity} args, got {len(gs)} inner functions")
        if gs and any(g.arity != gs[0].arity for g in gs):
            raise ValueError("Cn: inner functions must share one arity")

    @property
    def arity(self):
        return self.gs[0].arity if self.gs else 0


@dataclass(frozen=True)
class Pr(XRecSchema):
    f: XRecSchema
    g: XRecSchema

    def __post_init__(self):
        if self.g.arity != self.f.arity + 2:
            raise ValueError("Pr: g must take two more arguments than f")

    @property
    def arity(self):
        return self.f.arity + 1


@dataclass(frozen=True)
class Mn(XRecSchema):
    f: XRecSchema

    def __post_init__(self):
        if self.f.arity < 1:
            raise ValueError("Mn: f needs the search argument")

    @property
    def arity(self):
        return self.f.arity - 1


@dataclass(frozen=True)
class EvalResult:
    value: int = None
    diverged: bool = False
    fuel_spent: int = 0

    def is_value(self):
        return not self.diverged


class _Fuel:
    def __init__(self, amount):
        self.left = amount

    def spend(self, n=1):
        if self.left < n:
            raise _OutOfFuel
        self.left -= n


class _OutOfFuel(Exception):
    pass


def xrec_eval(h, args, fuel=10 ** 6):
    """Call-by-value evaluation; Mn burns fuel per probe and may diverge."""
    if len(args) != h.arity:
        raise ValueError(f"arity mismatch: {h.arity} expected, got {len(args)}")
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    tank = _Fuel(fuel)
    try:
        v = _eval(h, list(args), tank)
    except _OutOfFuel:
        return EvalResult(diverged=True, fuel_spent=fuel)
    return EvalResult(value=v, fuel_spent=fuel - tank.left)


def _eval(h, args, tank):
    tank.spend()
    if isinstance(h, Const):
        return h.value
    if isinstance(h, Proj):
        return args[h.index - 1]
    if isinstance(h, AddF):
        return args[0] + args[1]
    if isinstance(h, MulF):
        return args[0] * args[1]
    if isinstance(h, Cn):
        mids = [_eval(g, args, tank) for g in h.gs]
        return _eval(h.f, mids, tank)
    if isinstance(h, Pr):
        xs, y = args[:-1], args[-1]
        acc = _eval(h.f, xs, tank)
        for i in range(y):
            acc = _eval(h.g, xs + [i, acc], tank)
        return acc
    if isinstance(h, Mn):
        y = 0
        while True:
            if _eval(h.f, args + [y], tank) == 0:
                return y
            y += 1
    raise TypeError(f"not a schema: {h!r}")


# ---------------------------------------------------------------------------
# Defining formulas


def gamma(h):
    """The defining formula of h: a generalized Sigma_1 formula with
    gamma_h(xs, y) true iff h(xs) = y.  Returns (formula, xs, y)."""
    names = _Names()
    xs = names.fresh_vec([f"x{i}" for i in range(1, h.arity + 1)])
    y = names.fresh("y")
    return _gamma(h, names, xs, y), xs, y


def _gamma(h, names, xs, y):
    if isinstance(h, Const):
        return Eq(y, mk_numeral(h.value))
    if isinstance(h, Proj):
        return Eq(y, xs[h.index - 1])
    if isinstance(h, AddF):
        return Eq(y, AddT(xs[0], xs[1]))
    if isinstance(h, MulF):
        return Eq(y, MulT(xs[0], xs[1]))
    if isinstance(h, Cn):
        zs = names.fresh_vec([f"z{i}" for i in range(1, len(h.gs) + 1)])
        parts = [_gamma(g, names, xs, z) for g, z in zip(h.gs, zs)]
        parts.append(_gamma(h.f, names, zs, y))
        out = conj(parts)
        for z in reversed(zs):
            out = Exists(z, out)
        return out
    if isinstance(h, Pr):
        # xs = vec + [count]; exists w: (w)_0 = f(vec), steps, (w)_count = y
        vec, count = xs[:-1], xs[-1]
        w = names.fresh("w")
        i = names.fresh("i")
        u, v, t = names.fresh("u"), names.fresh("v"), names.fresh("t")
        base = BExists(u, AddT(w, Lit(1)),
                       And(beta_graph(w, Lit(0), u, names),
                           _gamma(h.f, names, vec, u)))
        step = BExists(u, AddT(w, Lit(1)),
                       BExists(v, AddT(w, Lit(1)),
                               conj([beta_graph(w, i, u, names),
                                     beta_graph(w, AddT(i, Lit(1)), v, names),
                                     _gamma(h.g, names, vec + [i, u], v)])))
        last = BExists(t, AddT(w, Lit(1)),
                       And(beta_graph(w, count, t, names), Eq(t, y)))
        return Exists(w, conj([base, BForall(i, count, step), last]))
    if isinstance(h, Mn):
        i = names.fresh("i")
        z = names.fresh("z")
        zero = _gamma(h.f, names, xs + [y], Lit(0))
        prior = BForall(i, y,
                        Exists(z, And(_gamma(h.f, names, xs + [i], z),
                                      Not(Eq(z, Lit(0))))))
        return And(zero, prior)
    raise TypeError(f"not a schema: {h!r}")


def gamma_instance(h, args, value):
    """A witnessed closed instance of gamma_h(args, value).

    Mirrors evaluation: every existential, including the beta-trace codes
    of primitive recursion, is filled in with the concrete number it must
    take, so the instance is quantifier-free and evaluates exactly.
    Raises ValueError when h(args) != value or h diverges at desk fuel.
    """
    r = xrec_eval(h, list(args), fuel=10 ** 7)
    if r.diverged or r.value != value:
        raise ValueError("gamma_instance needs the true value of h(args)")
    return _gamma_inst(h, list(args), value)


def _val(h, args):
    r = xrec_eval(h, args, fuel=10 ** 7)
    if r.diverged:
        raise ValueError("subcomputation diverged")
    return r.value


def _gamma_inst(h, args, value):
    if isinstance(h, Const):
        return Eq(Lit(value), mk_numeral(h.value))
    if isinstance(h, Proj):
        return Eq(Lit(value), Lit(args[h.index - 1]))
    if isinstance(h, AddF):
        return Eq(Lit(value), AddT(Lit(args[0]), Lit(args[1])))
    if isinstance(h, MulF):
        return Eq(Lit(value), MulT(Lit(args[0]), Lit(args[1])))
    if isinstance(h, Cn):
        mids = [_val(g, args) for g in h.gs]
        parts = [_gamma_inst(g, args, m) for g, m in zip(h.gs, mids)]
        parts.append(_gamma_inst(h.f, mids, value))
        return conj(parts)
    if isinstance(h, Pr):
        vec, count = args[:-1], args[-1]
        trace = [_val(h.f, vec)]
        for i in range(count):
            trace.append(_val(h.g, vec + [i, trace[-1]]))
        w = coding.seq_encode(trace)
        parts = [And(_beta_inst(w, 0, trace[0]), _gamma_inst(h.f, vec, trace[0]))]
        for i in range(count):
            parts.append(conj([_beta_inst(w, i, trace[i]),
                               _beta_inst(w, i + 1, trace[i + 1]),
                               _gamma_inst(h.g, vec + [i, trace[i]], trace[i + 1])]))
        parts.append(And(_beta_inst(w, count, trace[count]),
                         Eq(Lit(trace[count]), Lit(value))))
        return conj(parts)
    if isinstance(h, Mn):
        parts = [_gamma_inst(h.f, args + [value], 0)]
        for i in range(value):
            z = _val(h.f, args + [i])
            parts.append(And(_gamma_inst(h.f, args + [i], z),
                             Not(Eq(Lit(z), Lit(0)))))
        return conj(parts)
    raise TypeError(f"not a schema: {h!r}")


# ---------------------------------------------------------------------------
# Standard library


def _cn(f, *gs):
    return Cn(f, tuple(gs))


def _projs(n):
    return [Proj(i, n) for i in range(1, n + 1)]


def pred_schema():
    # p(0) = 0; p(x+1) = x
    return Pr(Const(0, 0), Proj(1, 2))


def monus_schema():
    # x - 0 = x; x - (y+1) = pred(x - y)
    return Pr(Proj(1, 1), _cn(pred_schema(), Proj(3, 3)))


def _monus(a, b):
    # a - b as a schema over the common arity of a and b
    return _cn(monus_schema(), a, b)


def sgbar_schema():
    # 1 - x
    return _cn(monus_schema(), Const(1, 1), Proj(1, 1))


def sg_schema():
    # 1 - (1 - x)
    return _cn(monus_schema(), Const(1, 1), sgbar_schema())


def chi_lt_schema():
    # sg(y - x)
    return _cn(sg_schema(), _cn(monus_schema(), Proj(2, 2), Proj(1, 2)))


def chi_eq_schema():
    # 1 - (sg(x-y) + sg(y-x))
    x, y = Proj(1, 2), Proj(2, 2)
    return _cn(monus_schema(), Const(1, 2),
               _cn(AddF(), _cn(sg_schema(), _cn(monus_schema(), x, y)),
                   _cn(sg_schema(), _cn(monus_schema(), y, x))))


def cases(branches):
    """Definition by cases: sum of g_i * chi_i over (chi_i, g_i) pairs.

    The guards must be mutually exclusive and collectively exhaustive on
    the inputs actually used; that is a semantic obligation checked by the
    callers' tests, not here.
    """
    if not branches:
        raise ValueError("cases needs at least one branch")
    n = branches[0][1].arity
    for c, g in branches:
        if c.arity != n or g.arity != n:
            raise ValueError("cases: all guards and branches share one arity")
    total = None
    for c, g in branches:
        term = _cn(MulF(), g, c)
        total = term if total is None else _cn(AddF(), total, term)
    return total


def max_schema():
    x, y = Proj(1, 2), Proj(2, 2)
    ge = _cn(sgbar_schema(), _cn(monus_schema(), y, x))   # 1 iff x >= y
    lt = chi_lt_schema()                                  # 1 iff x < y
    return cases([(ge, x), (lt, y)])


def min_schema():
    x, y = Proj(1, 2), Proj(2, 2)
    ge = _cn(sgbar_schema(), _cn(monus_schema(), y, x))
    lt = chi_lt_schema()
    return cases([(ge, y), (lt, x)])


def sum_of(f):
    """g(xs, y) = sum of f(xs, i) for i = 0..y."""
    n = f.arity
    if n < 1:
        raise ValueError("sum_of needs f of arity >= 1")
    base = _cn(f, *_projs(n - 1), Const(0, n - 1))
    np2 = n + 1  # arity of the step function g(xs, i, acc)
    step = _cn(AddF(),
               _cn(f, *_projs(np2)[:n - 1], _cn(AddF(), Proj(n, np2), Const(1, np2))),
               Proj(np2, np2))
    return Pr(base, step)


def prod_of(f):
    """h(xs, y) = product of f(xs, i) for i = 0..y."""
    n = f.arity
    if n < 1:
        raise ValueError("prod_of needs f of arity >= 1")
    base = _cn(f, *_projs(n - 1), Const(0, n - 1))
    np2 = n + 1
    step = _cn(MulF(),
               _cn(f, *_projs(np2)[:n - 1], _cn(AddF(), Proj(n, np2), Const(1, np2))),
               Proj(np2, np2))
    return Pr(base, step)


def bforall(c):
    """chi of (forall v < y . R(xs, v)) from chi_R = c(xs, v); y is last.

    max(sgbar(y), prod_{i<=y-1} c(xs, i)) -- the empty range is true.
    """
    n = c.arity
    u = prod_of(c)
    shifted = _cn(u, *_projs(n)[:n - 1], _cn(pred_schema(), Proj(n, n)))
    empty = _cn(sgbar_schema(), Proj(n, n))
    return _cn(max_schema(), empty, shifted)


def bexists(c):
    """chi of (exists v < y . R(xs, v)): min(sg(y), sg(sum_{i<=y-1} c))."""
    n = c.arity
    e = _cn(sg_schema(), sum_of(c))
    shifted = _cn(e, *_projs(n)[:n - 1], _cn(pred_schema(), Proj(n, n)))
    nonempty = _cn(sg_schema(), Proj(n, n))
    return _cn(min_schema(), nonempty, shifted)


STDLIB = {
    "pred": pred_schema,
    "monus": monus_schema,
    "sg": sg_schema,
    "sgbar": sgbar_schema,
    "chi_eq": chi_eq_schema,
    "chi_lt": chi_lt_schema,
    "max": max_schema,
    "min": min_schema,
}

STDLIB_COMBINATORS = {
    "sum_of": sum_of,
    "prod_of": prod_of,
    "bforall": bforall,
    "bexists": bexists,
    "cases": cases,
}


def stdlib(name, *args):
    """Schema from the documented catalog; combinators take arguments."""
    if name in STDLIB:
        if args:
            raise ValueError(f"{name} takes no arguments")
        return STDLIB[name]()
    if name in STDLIB_COMBINATORS:
        return STDLIB_COMBINATORS[name](*args)
    raise ValueError(f"unknown stdlib schema: {name}")


# ---------------------------------------------------------------------------
# Characteristic functions of level-0 formulas


class NotLevelZero(Exception):
    pass


def _term_schema(t, order):
    n = len(order)
    if isinstance(t, Var):
        return Proj(order.index(t) + 1, n)
    if isinstance(t, Zero):
        return Const(0, n)
    if isinstance(t, One):
        return Const(1, n)
    if isinstance(t, Lit):
        return Const(t.n, n)
    if isinstance(t, AddT):
        return _cn(AddF(), _term_schema(t.left, order), _term_schema(t.right, order))
    if isinstance(t, MulT):
        return _cn(MulF(), _term_schema(t.left, order), _term_schema(t.right, order))
    raise TypeError(f"not a term: {t!r}")


def sigma0_char(f, var_order=None):
    """A schema computing the 0/1 characteristic function of a level-0
    formula over the given variable order (default: sorted by name)."""
    lvl = classify(f)
    if lvl.n != 0:
        raise NotLevelZero(f"formula is {lvl}, not level 0")
    if var_order is None:
        var_order = sorted(free_vars(f), key=lambda v: v.name)
    return _char(desugar(f), list(var_order))


def _char(f, order):
    n = len(order)
    if isinstance(f, TrueC):
        return Const(1, n)
    if isinstance(f, FalseC):
        return Const(0, n)
    if isinstance(f, Eq):
        return _cn(chi_eq_schema(), _term_schema(f.left, order),
                   _term_schema(f.right, order))
    if isinstance(f, Lt):
        return _cn(chi_lt_schema(), _term_schema(f.left, order),
                   _term_schema(f.right, order))
    if isinstance(f, Not):
        return _cn(monus_schema(), Const(1, n), _char(f.body, order))
    if isinstance(f, And):
        return _cn(min_schema(), _char(f.left, order), _char(f.right, order))
    if isinstance(f, Or):
        return _cn(max_schema(), _char(f.left, order), _char(f.right, order))
    if isinstance(f, (BForall, BExists)):
        inner_order = order + [f.var]
        if f.var in order:
            raise ValueError(f"bound variable {f.var} shadows a free one")
        c = _char(f.body, inner_order)
        closure = bforall(c) if isinstance(f, BForall) else bexists(c)
        return _cn(closure, *_projs(n), _term_schema(f.bound, order))
    raise TypeError(f"unexpected node in level-0 formula: {f!r}")


# ---------------------------------------------------------------------------
# Sigma_1 formulas to schemas and programs


class ShapeError(Exception):
    pass


class FunctionalityError(Exception):
    pass


def _strip_exists(f):
    block = []
    while isinstance(f, Exists):
        block.append(f.var)
        f = f.body
    return block, f


def _check_functionality(body, block, xs, result, grid=4, search=12):
    """Sample check that the relation is single-valued in the result."""
    import itertools
    for point in itertools.product(range(grid + 1), repeat=len(xs)):
        env = dict(zip(xs, point))
        results = set()
        for y in range(search + 1):
            env[result] = y
            if not block:
                if eval_formula(body, env).is_true():
                    results.add(y)
            else:
                for zs in itertools.product(range(search + 1), repeat=len(block)):
                    env2 = dict(env)
                    env2.update(zip(block, zs))
                    if eval_formula(body, env2).is_true():
                        results.add(y)
                        break
        if len(results) > 1:
            raise FunctionalityError(
                f"two results {sorted(results)} at input {point}")


def sigma1_to_xrec(f, result_var, check=True):
    """An X-recursive schema computing the function a Sigma_1 formula
    defines (result_var as output, remaining free variables as inputs,
    sorted by name).

    Follows the least-witness construction: g(xs) finds the least cap w
    below which the result and the existential block live; h(xs, w) finds
    the least result under that cap.  Returns (schema, input_vars).
    """
    g0 = prenexify(f)
    block, body = _strip_exists(g0)
    if classify(body).n != 0:
        raise ShapeError("matrix is not level 0 after prenexing")
    if result_var not in free_vars(f):
        raise ShapeError(f"result variable {result_var} is not free in the formula")
    xs = sorted(free_vars(f) - {result_var}, key=lambda v: v.name)
    if check:
        _check_functionality(body, block, xs, result_var)

    names = _Names(free_vars(g0) | set(block))
    cap = names.fresh("w")
    # g: least cap with exists result<cap exists zs<cap body
    inner = body
    for z in reversed(block):
        inner = BExists(z, cap, inner)
    g_formula = BExists(result_var, cap, inner)
    g_char = sigma0_char(Not(g_formula), var_order=xs + [cap])
    g_schema = Mn(g_char)
    # h: least u with u < cap and exists zs<cap body(u)
    u = names.fresh("u")
    inner2 = substitute(body, result_var, u)
    for z in reversed(block):
        inner2 = BExists(z, cap, inner2)
    h_formula = And(Lt(u, cap), inner2)
    h_char = sigma0_char(Not(h_formula), var_order=xs + [cap, u])
    h_schema = Mn(h_char)
    n = len(xs)
    schema = _cn(h_schema, *_projs(n), g_schema)
    return schema, xs


def compile_to_while(h):
    """A while-program whose first program variable computes h.

    Returns (program, result_var, input_vars).  The result register is
    written first so that it is the first variable in pre-order; inputs
    are touched immediately after to pin their order.
    """
    names = _Names()
    res = names.fresh("res")
    ps = names.fresh_vec([f"p{i}" for i in range(1, h.arity + 1)])
    body = _emit(h, ps, res, names)
    prog = Assign(res, Lit(0))
    for p in ps:
        prog = Seq(prog, Assign(p, p))
    prog = Seq(prog, body)
    return prog, res, ps


def _seq(parts):
    out = parts[0]
    for p in parts[1:]:
        out = Seq(out, p)
    return out


def _emit(h, args, target, names):
    if isinstance(h, Const):
        return Assign(target, Lit(h.value))
    if isinstance(h, Proj):
        return Assign(target, args[h.index - 1])
    if isinstance(h, AddF):
        return Assign(target, AddT(args[0], args[1]))
    if isinstance(h, MulF):
        return Assign(target, MulT(args[0], args[1]))
    if isinstance(h, Cn):
        ts = names.fresh_vec(["t" for _ in h.gs])
        parts = [_emit(g, args, t, names) for g, t in zip(h.gs, ts)]
        parts.append(_emit(h.f, ts, target, names))
        return _seq(parts)
    if isinstance(h, Pr):
        vec, count = args[:-1], args[-1]
        acc = names.fresh("acc")
        i = names.fresh("i")
        tmp = names.fresh("s")
        parts = [_emit(h.f, vec, acc, names), Assign(i, Lit(0))]
        body = _seq([_emit(h.g, vec + [i, acc], tmp, names),
                     Assign(acc, tmp),
                     Assign(i, AddT(i, Lit(1)))])
        parts.append(While(Less(i, count), body))
        parts.append(Assign(target, acc))
        return _seq(parts)
    if isinstance(h, Mn):
        y = names.fresh("y")
        probe = names.fresh("m")
        parts = [Assign(y, Lit(0)),
                 _emit(h.f, args + [y], probe, names),
                 While(Less(Lit(0), probe),
                       _seq([Assign(y, AddT(y, Lit(1))),
                             _emit(h.f, args + [y], probe, names)])),
                 Assign(target, y)]
        return _seq(parts)
    raise TypeError(f"not a schema: {h!r}")


def sigma1_to_program(f, result_var, check=True):
    """Compile a functional Sigma_1 formula to a while-program.

    Returns (program, result_var_of_program, input_vars_of_program,
    formula_input_vars).
    """
    schema, xs = sigma1_to_xrec(f, result_var, check=check)
    prog, res, ps = compile_to_while(schema)
    return prog, res, ps, xs


def pi1_counterexample_program(psi, y):
    """The least-counterexample searcher for a Pi_1 sentence forall y psi.

    Builds phi(x, y) = x = x and not psi(y) and (forall i < y . psi(i))
    and compiles it; the program halts exactly on the least y falsifying
    psi, and runs forever when forall y psi holds.
    """
    if classify(psi).n != 0:
        raise ShapeError("psi must be level 0")
    fv = free_vars(psi)
    if fv - {y}:
        raise ShapeError(f"psi may mention only {y}, found {sorted(v.name for v in fv)}")
    names = _Names(fv | {y})
    x = names.fresh("x")
    i = names.fresh("i")
    phi = And(Eq(x, x),
              And(Not(psi), BForall(i, y, substitute(psi, y, i))))
    return sigma1_to_program(phi, y, check=False)

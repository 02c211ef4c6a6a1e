"""The program-encoding formula alpha_S, verification conditions and the
desk-scale Hoare-triple checker.

alpha_S(xs, ys) is a generalized Sigma_1 formula holding exactly on the
input/output pairs of S over N.  Loops are encoded by an iteration count
and a beta-coded trace of tuple-coded loop-head states.  Since the graph
of the pairing and beta functions must be spelled out in the language
{0,1,+,*,<}, small helper formulas express z = <x,y>, v = b mod m and
(w)_i = v with bounded quantifiers only.

instantiate_alpha replaces every existential (including the bounded ones
carrying huge trace codes) by concrete numerals computed from an actual
run, so the instance is quantifier-free and evaluates exactly.
"""

from dataclasses import dataclass, field

from . import coding
from .terms import (Add, And, BExists, BForall, Eq, Exists, FalseC, Forall,
                    Implies, Lit, Lt, Mul, Not, Or, TrueC, Var, conj,
                    free_vars, fresh_var, mk_numeral, substitute,
                    substitute_simultaneous, term_vars)
from .evaluator import Budget, eval_formula, eval_term
from .whilelang import (Assign, If, Program, Seq, While, bool_to_formula,
                        eval_bool, program_vars, run)


class _Names:
    """Fresh-variable supply avoiding a growing set of names."""

    def __init__(self, avoid=()):
        self.used = {v.name for v in avoid}

    def fresh(self, base):
        name = base
        primes = 0
        while name in self.used:
            primes += 1
            if primes <= 3:
                name = base + "'" * primes
            else:
                name = f"{base}_{primes}"
        self.used.add(name)
        return Var(name)

    def fresh_vec(self, bases):
        return [self.fresh(b) for b in bases]


def pair_graph(z, x, y):
    """z = <x,y> as an equation: 2z = (x+y)(x+y+1) + 2x."""
    s = Add(x, y)
    return Eq(Add(z, z), Add(Mul(s, Add(s, Lit(1))), Add(x, x)))


def mod_graph(v, b, m, names):
    """v = b mod m (m >= 1): v < m and b = q*m + v for some q <= b."""
    q = names.fresh("q")
    return And(Lt(v, m), BExists(q, Add(b, Lit(1)), Eq(b, Add(Mul(q, m), v))))


def beta_graph(w, i, v, names):
    """v = (w)_i: components b,c of w satisfy v = b mod (1 + (i+1)c).

    b, c <= w because the pairing never shrinks, so the search is bounded.
    """
    b, c = names.fresh("b"), names.fresh("c")
    m = Add(Lit(1), Mul(Add(i, Lit(1)), c))
    return BExists(b, Add(w, Lit(1)),
                   BExists(c, Add(w, Lit(1)),
                           And(pair_graph(w, b, c), mod_graph(v, b, m, names))))


def tuple_graph(t, components, names):
    """t = <c1,...,cm> (right-nested pairing); m >= 1."""
    if len(components) == 1:
        return Eq(t, components[0])
    r = names.fresh("r")
    return BExists(r, Add(t, Lit(1)),
                   And(pair_graph(t, components[0], r),
                       tuple_graph(r, components[1:], names)))


def _state_graph(w, i, terms, names):
    """The loop-head state at index i of trace w equals the given terms."""
    t = names.fresh("t")
    return BExists(t, Add(w, Lit(1)),
                   And(beta_graph(w, i, t, names), tuple_graph(t, terms, names)))


def output_vars(xs, names=None):
    """Primed copies of the program variables, in the same order."""
    names = names or _Names(xs)
    return names.fresh_vec([x.name + "'" for x in xs])


def encode_alpha(prog):
    """alpha_S over the program variables and fresh primed outputs.

    Returns (formula, xs, ys).
    """
    xs = program_vars(prog)
    names = _Names(xs)
    ys = names.fresh_vec([x.name + "'" for x in xs])
    return _alpha(prog, xs, xs, ys, names), xs, ys


def _guard_at(guard, xs, at):
    """The guard as a formula, with program variables replaced by terms."""
    g = bool_to_formula(guard)
    return substitute_simultaneous(g, list(zip(xs, at)))


def _alpha(prog, xs, invars, outvars, names):
    """alpha for prog relating the term vectors invars -> outvars.

    invars/outvars are parallel to xs (the full program-variable vector).
    """
    if isinstance(prog, Assign):
        i = xs.index(prog.var)
        rhs = substitute_term_vec(prog.expr, xs, invars)
        eqs = []
        for j, (xv, yv) in enumerate(zip(invars, outvars)):
            eqs.append(Eq(outvars[j], rhs if j == i else invars[j]))
        return conj(eqs)
    if isinstance(prog, Seq):
        zs = names.fresh_vec([x.name + "''" for x in xs])
        a1 = _alpha(prog.first, xs, invars, zs, names)
        a2 = _alpha(prog.second, xs, zs, outvars, names)
        out = And(a1, a2)
        for z in reversed(zs):
            out = Exists(z, out)
        return out
    if isinstance(prog, If):
        g = _guard_at(prog.guard, xs, invars)
        a1 = _alpha(prog.then, xs, invars, outvars, names)
        a2 = _alpha(prog.els, xs, invars, outvars, names)
        return Or(And(g, a1), And(Not(g), a2))
    if isinstance(prog, While):
        return _alpha_while(prog, xs, invars, outvars, names)
    raise TypeError(f"not a program: {prog!r}")


def substitute_term_vec(t, xs, terms):
    from .terms import subst_term
    return subst_term(t, dict(zip(xs, terms)))


def _alpha_while(prog, xs, invars, outvars, names):
    m = len(xs)
    i = names.fresh("i")
    w = names.fresh("w")
    j = names.fresh("j")
    us = names.fresh_vec(["u" + str(k) for k in range(1, m + 1)])
    vs = names.fresh_vec(["v" + str(k) for k in range(1, m + 1)])

    # x-vec = (w)_0, y-vec = (w)_i
    head = _state_graph(w, Lit(0), invars, names)
    tail = _state_graph(w, i, outvars, names)

    # forall j < i: B((w)_j) and alpha_body((w)_j, (w)_{j+1})
    step = And(_state_graph(w, j, us, names),
               And(_state_graph(w, Add(j, Lit(1)), vs, names),
                   And(_guard_at(prog.guard, xs, us),
                       _alpha(prog.body, xs, us, vs, names))))
    for v in reversed(vs):
        step = BExists(v, Add(w, Lit(1)), step)
    for u in reversed(us):
        step = BExists(u, Add(w, Lit(1)), step)
    loop = BForall(j, i, step)

    a_s = And(head, And(loop, tail))
    body = And(Exists(w, a_s), Not(_guard_at(prog.guard, xs, outvars)))
    return Exists(i, body)


def encode_alpha_out(prog, index, inputs):
    """alpha_S^(i): non-input variables and all outputs but one closed off.

    index is 1-based into the program-variable vector; inputs is the list
    of input variables (a subset of the program variables).  Returns
    (formula, input_vars, result_var): the free variables are the inputs
    and the designated output.
    """
    alpha, xs, ys = encode_alpha(prog)
    if not 1 <= index <= len(xs):
        raise IndexError(f"output index {index} out of range for {len(xs)} variables")
    for p in inputs:
        if p not in xs:
            raise ValueError(f"{p} is not a program variable")
    names = _Names(list(free_vars(alpha)) + xs + ys)
    y = names.fresh("y")
    out = And(alpha, Eq(y, ys[index - 1]))
    for yv in reversed(ys):
        out = Exists(yv, out)
    for q in reversed([x for x in xs if x not in inputs]):
        out = Exists(q, out)
    return out, list(inputs), y


class FuelExhausted(Exception):
    pass


def instantiate_alpha(prog, state, fuel):
    """A closed, quantifier-free instance of alpha_S for an actual run.

    Every existential (iteration counts, trace codes, intermediates, the
    bounded coding witnesses) is replaced by numerals computed from the
    execution.  Returns None when fuel runs out before termination.
    """
    xs = program_vars(prog)
    try:
        final, inst, _ = _inst(prog, xs, dict(state), fuel)
    except FuelExhausted:
        return None
    return inst


def _num_state(xs, st):
    return [st.get(x, 0) for x in xs]


def _pair_inst(z, x, y):
    return pair_graph(Lit(z), Lit(x), Lit(y))


def _mod_inst(v, b, m):
    q = b // m
    return And(Lt(Lit(v), Lit(m)),
               Eq(Lit(b), Add(Mul(Lit(q), Lit(m)), Lit(v))))


def _beta_inst(w, i, v):
    b, c = coding.split(w)
    m = 1 + (i + 1) * c
    return And(_pair_inst(w, b, c), _mod_inst(v, b, m))


def _tuple_inst(t, vals):
    if len(vals) == 1:
        return Eq(Lit(t), Lit(vals[0]))
    rest = coding.tuple_encode(vals[1:])
    return And(_pair_inst(t, vals[0], rest), _tuple_inst(rest, vals[1:]))


def _state_inst(w, i, vals):
    t = coding.beta_index(w, i)
    return And(_beta_inst(w, i, t), _tuple_inst(t, vals))


def _guard_inst(guard, xs, st):
    return _guard_at(guard, xs, [Lit(v) for v in _num_state(xs, st)])


def _inst(prog, xs, st, fuel):
    """Mirror of run() that also builds the witnessed alpha instance.

    Mutates st; returns (state, instance formula, remaining fuel).
    """
    if isinstance(prog, Assign):
        if fuel < 1:
            raise FuelExhausted
        before = [Lit(v) for v in _num_state(xs, st)]
        st[prog.var] = eval_term(prog.expr, st)
        after = _num_state(xs, st)
        i = xs.index(prog.var)
        rhs = substitute_term_vec(prog.expr, xs, before)
        eqs = [Eq(Lit(after[j]), rhs if j == i else before[j])
               for j in range(len(xs))]
        return st, conj(eqs), fuel - 1
    if isinstance(prog, Seq):
        st, a1, fuel = _inst(prog.first, xs, st, fuel)
        st, a2, fuel = _inst(prog.second, xs, st, fuel)
        return st, And(a1, a2), fuel
    if isinstance(prog, If):
        if fuel < 1:
            raise FuelExhausted
        fuel -= 1
        g = _guard_inst(prog.guard, xs, st)
        if eval_bool(prog.guard, st):
            st, a, fuel = _inst(prog.then, xs, st, fuel)
            return st, And(g, a), fuel
        st, a, fuel = _inst(prog.els, xs, st, fuel)
        return st, And(Not(g), a), fuel
    if isinstance(prog, While):
        heads = [_num_state(xs, st)]
        parts = []
        while True:
            if fuel < 1:
                raise FuelExhausted
            fuel -= 1
            if not eval_bool(prog.guard, st):
                break
            g = _guard_inst(prog.guard, xs, st)
            st, a, fuel = _inst(prog.body, xs, st, fuel)
            parts.append(And(g, a))
            heads.append(_num_state(xs, st))
        k = len(heads) - 1
        w = coding.seq_encode([coding.tuple_encode(h) for h in heads])
        pieces = [_state_inst(w, 0, heads[0])]
        for j in range(k):
            pieces.append(_state_inst(w, j, heads[j]))
            pieces.append(_state_inst(w, j + 1, heads[j + 1]))
            pieces.append(parts[j])
        pieces.append(_state_inst(w, k, heads[k]))
        pieces.append(Not(_guard_inst(prog.guard, xs, st)))
        return st, conj(pieces), fuel
    raise TypeError(f"not a program: {prog!r}")


@dataclass(frozen=True)
class HoareTriple:
    pre: "Formula"
    prog: Program
    post: "Formula"
    params: tuple = ()  # parameter variables swept alongside inputs

    def mode(self):
        return "with-params" if self.params else "plain"


def vc(triple):
    """Universal closure of pre(xs) /\\ alpha_S(xs, ys) -> post(ys/xs)."""
    alpha, xs, ys = encode_alpha(triple.prog)
    post = substitute_simultaneous(triple.post, list(zip(xs, ys)))
    body = Implies(And(triple.pre, alpha), post)
    closed = body
    for v in reversed(list(triple.params) + xs + ys):
        closed = Forall(v, closed)
    return closed


def vc_instance(triple, state, fuel):
    """The VC body at a concrete input, with alpha witnessed by the run.

    Returns None when the run exhausts its fuel.
    """
    xs = program_vars(triple.prog)
    inst = instantiate_alpha(triple.prog, state, fuel)
    if inst is None:
        return None
    out = run(triple.prog, state, fuel)
    pre = substitute_simultaneous(
        triple.pre, [(x, Lit(state.get(x, 0))) for x in xs])
    post = substitute_simultaneous(
        triple.post, [(x, Lit(out.state.get(x, 0))) for x in xs])
    return Implies(And(pre, inst), post)


@dataclass(frozen=True)
class Verdict:
    status: str  # "verified" | "counterexample" | "inconclusive"
    grid: int = 0
    fuel: int = 0
    caveats: tuple = ()
    input: dict = None
    output: dict = None

    def is_verified(self):
        return self.status == "verified"


def _grid_points(vs, grid):
    import itertools
    for tup in itertools.product(range(grid + 1), repeat=len(vs)):
        yield dict(zip(vs, tup))


def check_triple(triple, grid, fuel, budget=Budget()):
    """Sweep all inputs (and parameters) with components <= grid.

    A terminating run from a pre-state that lands in a post-violating
    state is a Counterexample.  Unknown assertion verdicts and exhausted
    runs become caveats and never silently verify; if nothing at all could
    be decided and Unknowns occurred, the verdict is Inconclusive.
    """
    if grid < 0 or fuel < 1:
        raise ValueError("grid >= 0 and fuel >= 1 required")
    xs = program_vars(triple.prog)
    sweep = list(triple.params) + xs
    caveats = []
    decided_pass = 0
    unknowns = 0
    for point in _grid_points(sweep, grid):
        pre_v = eval_formula(triple.pre, point, budget)
        if pre_v.is_false():
            decided_pass += 1
            continue
        if not pre_v.is_exact():
            unknowns += 1
            caveats.append(f"pre Unknown at {_fmt(point)}: {pre_v.reason}")
            continue
        out = run(triple.prog, point, fuel)
        if not out.terminated:
            caveats.append(f"fuel exhausted at {_fmt(point)}; divergence assumed")
            continue
        post_env = dict(point)
        post_env.update(out.state)
        post_v = eval_formula(triple.post, post_env, budget)
        if post_v.is_false():
            return Verdict("counterexample", grid, fuel,
                           input=dict(point), output=dict(out.state))
        if post_v.is_true():
            decided_pass += 1
        else:
            unknowns += 1
            caveats.append(f"post Unknown at {_fmt(point)}: {post_v.reason}")
    if unknowns and not decided_pass:
        return Verdict("inconclusive", grid, fuel, caveats=tuple(caveats))
    return Verdict("verified", grid, fuel, caveats=tuple(caveats))


def _fmt(point):
    return ",".join(f"{v.name}={n}" for v, n in point.items())

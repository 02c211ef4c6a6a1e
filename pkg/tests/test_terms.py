import pytest
from hypothesis import given, strategies as st

from arithver.terms import (Add, And, BExists, BForall, Eq, Exists, FalseC,
                            Forall, Iff, Implies, Lit, Lt, Mul, Not, One, Or,
                            TrueC, Var, Zero, alpha_equal, conj, disj,
                            expand_to_core, free_vars, fresh_var, mk_numeral,
                            substitute, substitute_simultaneous, term_vars)
from arithver.evaluator import eval_term

x, y, z = Var("x"), Var("y"), Var("z")


def test_var_name_validation():
    Var("abc_1'")
    with pytest.raises(ValueError):
        Var("1abc")
    with pytest.raises(ValueError):
        Var("")


def test_numeral_expansion():
    for n in range(12):
        core = expand_to_core(mk_numeral(n))
        assert eval_term(core, {}) == n


def test_expand_to_core_recurses():
    t = Add(Mul(Lit(3), x), Lit(2))
    assert eval_term(expand_to_core(t), {x: 5}) == 17


def test_term_vars():
    assert term_vars(Add(Mul(x, y), Lit(3))) == {x, y}
    assert term_vars(Zero()) == set()


def test_free_vars_quantifiers():
    f = Forall(x, Lt(x, y))
    assert free_vars(f) == {y}
    g = Exists(y, f)
    assert free_vars(g) == set()


def test_free_vars_bounded_bound_term_is_free():
    # the bound term sits outside the binder's scope
    f = BForall(x, Add(y, Lit(1)), Lt(x, z))
    assert free_vars(f) == {y, z}


def test_bounded_quantifier_rejects_self_bound():
    with pytest.raises(ValueError):
        BForall(x, Add(x, Lit(1)), TrueC())


def test_fresh_var():
    v = fresh_var(x, {x, Var("x'")})
    assert v == Var("x''")


def test_substitute_basic():
    f = Eq(Add(x, y), z)
    g = substitute(f, x, Lit(3))
    assert g == Eq(Add(Lit(3), y), z)


def test_substitute_shadowed_is_noop():
    f = Forall(x, Eq(x, y))
    assert substitute(f, x, Lit(5)) == f


def test_substitute_capture_avoidance():
    # [y := x] into forall x . y < x must rename the binder
    f = Forall(x, Lt(y, x))
    g = substitute(f, y, x)
    assert isinstance(g, Forall)
    assert g.var != x
    assert g.body == Lt(x, g.var)


def test_substitute_bounded_capture_avoidance():
    f = BForall(x, Lit(9), Lt(y, x))
    g = substitute(f, y, Add(x, One()))
    assert g.var != x
    assert g.bound == Lit(9)


def test_substitute_bound_term_is_substituted():
    f = BExists(x, y, Eq(x, x))
    g = substitute(f, y, Lit(7))
    assert g.bound == Lit(7)


def test_simultaneous_is_not_sequential():
    f = Eq(x, y)
    g = substitute_simultaneous(f, [(x, y), (y, x)])
    assert g == Eq(y, x)


def test_simultaneous_rejects_duplicates():
    with pytest.raises(ValueError):
        substitute_simultaneous(Eq(x, y), [(x, y), (x, z)])


def test_alpha_equal_renames():
    f = Forall(x, Lt(x, y))
    g = Forall(z, Lt(z, y))
    assert alpha_equal(f, g)
    assert not alpha_equal(f, Forall(z, Lt(z, x)))


def test_alpha_equal_bounded():
    f = BExists(x, y, Eq(x, Zero()))
    g = BExists(z, y, Eq(z, Zero()))
    assert alpha_equal(f, g)
    assert not alpha_equal(f, BExists(z, x, Eq(z, Zero())))


def test_alpha_distinguishes_free_from_bound():
    assert not alpha_equal(Forall(x, Eq(x, x)), Forall(x, Eq(x, y)))


def test_conj_disj():
    assert conj([]) == TrueC()
    assert disj([]) == FalseC()
    f = conj([Eq(x, x), Lt(x, y), TrueC()])
    assert f == And(Eq(x, x), And(Lt(x, y), TrueC()))


_names = st.sampled_from(["x", "y", "z", "u"])


@st.composite
def terms_st(draw, depth=3):
    if depth == 0:
        return draw(st.one_of(
            st.builds(Var, _names),
            st.builds(Lit, st.integers(0, 9)),
            st.just(Zero()), st.just(One())))
    kind = draw(st.integers(0, 3))
    if kind <= 1:
        return draw(terms_st(depth=0))
    sub = terms_st(depth=depth - 1)
    ctor = Add if kind == 2 else Mul
    return ctor(draw(sub), draw(sub))


@given(terms_st(), st.dictionaries(st.builds(Var, _names), st.integers(0, 20)))
def test_expand_preserves_value(t, env):
    assert eval_term(expand_to_core(t), env) == eval_term(t, env)


@given(terms_st(), terms_st())
def test_subst_term_then_eval(t, r):
    f = Eq(t, Zero())
    g = substitute(f, x, r)
    env = {y: 3, z: 5, Var("u"): 7}
    env_with = dict(env)
    env_with[x] = eval_term(r, env)
    assert (eval_term(g.left, env) ==
            eval_term(f.left, env_with))

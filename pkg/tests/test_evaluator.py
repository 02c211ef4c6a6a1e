import pytest

from arithver.terms import (Add, And, BExists, BForall, Eq, Exists, FalseC,
                            Forall, Iff, Implies, Lit, Lt, Mul, Not, Or,
                            TrueC, Var)
from arithver.evaluator import (FALSE, TRUE, Budget, TriState,
                                WitnessSearchError, eval_formula, eval_term,
                                find_witnesses, unknown)

x, y, z = Var("x"), Var("y"), Var("z")


def test_tristate_is_not_a_bool():
    with pytest.raises(TypeError):
        bool(TRUE)
    assert TRUE.is_true() and not TRUE.is_false() and TRUE.is_exact()
    assert FALSE.is_false() and FALSE.is_exact()
    assert not unknown("why").is_exact()


def test_eval_term_missing_vars_read_zero():
    assert eval_term(Add(x, Lit(3)), {}) == 3


def test_atoms():
    assert eval_formula(Eq(Add(x, y), Lit(5)), {x: 2, y: 3}).is_true()
    assert eval_formula(Lt(x, x), {x: 4}).is_false()
    assert eval_formula(TrueC(), {}).is_true()
    assert eval_formula(FalseC(), {}).is_false()


def test_connectives_exact():
    f = Implies(Lt(x, y), Lt(x, Add(y, Lit(1))))
    for a in range(4):
        for b in range(4):
            assert eval_formula(f, {x: a, y: b}).is_true()
    assert eval_formula(Iff(Eq(x, x), FalseC()), {}).is_false()


def test_strong_kleene_short_circuits_through_unknown():
    u = Exists(z, Eq(Mul(z, z), Lit(7)))  # never true; Unknown at any budget
    b = Budget(q_bound=5)
    assert eval_formula(And(FalseC(), u), {}, b).is_false()
    assert eval_formula(And(u, FalseC()), {}, b).is_false()
    assert eval_formula(Or(TrueC(), u), {}, b).is_true()
    assert eval_formula(Or(u, TrueC()), {}, b).is_true()
    assert not eval_formula(And(TrueC(), u), {}, b).is_exact()
    assert not eval_formula(Not(u), {}, b).is_exact()


def test_bounded_quantifiers_are_exact():
    f = BExists(z, x, Eq(Mul(z, z), y))
    assert eval_formula(f, {x: 4, y: 9}).is_true()
    assert eval_formula(f, {x: 3, y: 9}).is_false()  # bound is strict
    g = BForall(z, x, Lt(z, x))
    assert eval_formula(g, {x: 6}).is_true()
    assert eval_formula(g, {x: 0}).is_true()  # empty range


def test_bounded_expansion_limit():
    f = BForall(z, x, Lt(z, Add(x, Lit(1))))
    r = eval_formula(f, {x: 10}, Budget(expansion_limit=5))
    assert not r.is_exact()
    assert "expansion limit" in r.reason


def test_unbounded_exists_found():
    f = Exists(z, Eq(Mul(z, z), Lit(49)))
    assert eval_formula(f, {}, Budget(q_bound=10)).is_true()


def test_unbounded_exists_not_found_is_unknown():
    f = Exists(z, Eq(Mul(z, z), Lit(50)))
    r = eval_formula(f, {}, Budget(q_bound=100))
    assert not r.is_exact()
    assert "witness" in r.reason


def test_unbounded_forall_counterexample():
    f = Forall(z, Lt(z, Lit(3)))
    assert eval_formula(f, {}, Budget(q_bound=10)).is_false()


def test_unbounded_forall_no_counterexample_is_unknown():
    f = Forall(z, Lt(z, Add(z, Lit(1))))
    r = eval_formula(f, {}, Budget(q_bound=20))
    assert not r.is_exact()


def test_depth_guard():
    f = Exists(x, Eq(x, x))
    for _ in range(20):
        f = Exists(Var("v"), f)
    r = eval_formula(f, {}, Budget(q_bound=1, depth=3))
    # either certified by an early witness or unknown; never an error
    assert isinstance(r, TriState)


def test_nested_alternation():
    # forall z <= bound fails fast, exists certifies on a witness
    f = Exists(y, Forall(z, Or(Lt(z, y), Eq(z, z))))
    r = eval_formula(f, {}, Budget(q_bound=4))
    assert not r.is_exact()  # the forall can never be certified true
    g = Forall(y, Exists(z, Eq(z, Add(y, Lit(1)))))
    assert not eval_formula(g, {}, Budget(q_bound=6)).is_exact()


def test_find_witnesses_single():
    f = Exists(z, Eq(Mul(z, z), Lit(36)))
    assert find_witnesses(f, {}) == [(z, 6)]


def test_find_witnesses_block_lexicographic_least():
    f = Exists(x, Exists(y, Eq(Add(x, y), Lit(4))))
    assert find_witnesses(f, {}) == [(x, 0), (y, 4)]


def test_find_witnesses_empty_block():
    assert find_witnesses(Eq(Lit(2), Lit(2)), {}) == []
    assert find_witnesses(Eq(Lit(2), Lit(3)), {}) is None


def test_find_witnesses_none_in_range():
    f = Exists(z, Eq(z, Lit(99)))
    assert find_witnesses(f, {}, Budget(q_bound=10)) is None


def test_find_witnesses_inexact_body_raises():
    f = Exists(x, Forall(z, Lt(x, Add(z, Lit(1)))))
    with pytest.raises(WitnessSearchError):
        find_witnesses(f, {}, Budget(q_bound=3))


def test_budget_validation():
    with pytest.raises(ValueError):
        Budget(q_bound=-1)

import random

import pytest

from brouwerlab.algebra import build_bn, check_brouwer_laws
from brouwerlab.errors import BudgetExceeded, NotComparable, UnboundVariable
from brouwerlab.formula import parse_formula, sample_formula
from brouwerlab.semantics import (
    Countermodel,
    NotFoundUpToBound,
    countermodel_search,
    evaluate,
    factor_algebra,
    first_refutation,
    gamma_hom_check,
    in_theory,
    in_theory_many,
    interval_algebra,
)

B2 = build_bn(2)
U = B2.elements  # U0 = 1 (empty) ... U4 = 0 (whole)
F = parse_formula


def test_identity_is_zero_everywhere():
    for a in B2.elements:
        assert evaluate(B2, F("p -> p"), {"p": a}) == B2.bottom
        assert evaluate(B2, F("F -> p"), {"p": a}) == B2.bottom


def test_lem_at_u1():
    value = evaluate(B2, F("p | ~p"), {"p": U[1]})
    assert value == U[1] | U[2] and value != B2.bottom


def test_interval_implication():
    iv = interval_algebra(B2, U[3], U[0])
    assert iv.imp(U[1], U[2]) == U[2]
    assert all(check_brouwer_laws(iv).values())


def test_interval_errors_and_degenerate():
    with pytest.raises(NotComparable):
        interval_algebra(B2, U[1], U[2])
    assert len(interval_algebra(B2, U[1], U[1])) == 1


def test_factor_is_down_set_of_x():
    fac = factor_algebra(B2, U[1])
    assert set(fac.elements) == {z for z in U if B2.leq(z, U[1])}


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        evaluate(B2, F("p & q"), {"p": U[0]})


def test_in_theory_examples():
    assert in_theory(build_bn(1), F("p | ~p"))
    assert not in_theory(B2, F("p | ~p"))
    assert in_theory(build_bn(3), F("p -> (q -> p)"))


def test_first_refutation_is_first_in_order():
    assert first_refutation(B2, F("~p | ~~p")) == {"p": U[1]}


def test_budget():
    with pytest.raises(BudgetExceeded):
        first_refutation(build_bn(3), F("p & q & r & s & t"), budget=1000)


def test_batched_theory_agrees():
    algs = [build_bn(1), B2, factor_algebra(B2, U[3]), interval_algebra(B2, U[3], U[0])]
    rng = random.Random(0)
    for _ in range(30):
        phi = sample_formula(rng.randrange(1 << 20), 4, ["p", "q"])
        assert in_theory_many(algs, phi) == [in_theory(a, phi) for a in algs]


@pytest.mark.parametrize("text, bound", [("~p | ~~p", 3), ("p | ~p", 2), ("((p -> q) -> p) -> p", 3)])
def test_countermodels(text, bound):
    cm = countermodel_search(F(text), bound)
    assert isinstance(cm, Countermodel) and cm.n <= bound
    assert cm.verify()
    rep = cm.report()
    assert set(rep) == {"n", "x", "valuation", "value"}


def test_no_countermodel_for_theorem():
    res = countermodel_search(F("p -> p"), 3)
    assert isinstance(res, NotFoundUpToBound)
    assert "not a proof" in res.note


def test_gamma_on_b2():
    rep = gamma_hom_check(B2, U[1], U[2])
    assert rep.ok and rep.formulas_checked == 100


def test_gamma_from_zero_is_identity():
    rep = gamma_hom_check(B2, B2.bottom, U[3], n_formulas=10)
    assert rep.ok and rep.y == U[3]

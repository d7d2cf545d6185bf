from collections import Counter

import pytest
from hypothesis import given, strategies as st

from brouwerlab.errors import FormulaSyntaxError, FreshNotFresh
from brouwerlab.formula import (
    BOT,
    And,
    Bottom,
    Implies,
    Or,
    Var,
    connectives,
    is_positive,
    parse_formula,
    positify,
    sample_formula,
    to_text,
)

p, q, r = Var("p"), Var("q"), Var("r")


def test_negation_desugars():
    assert parse_formula("~p | ~~p") == Or(Implies(p, BOT), Implies(Implies(p, BOT), BOT))


def test_implication_right_associative():
    assert parse_formula("p -> q -> r") == Implies(p, Implies(q, r))


def test_precedence():
    assert parse_formula("p & q | r -> p") == Implies(Or(And(p, q), r), p)
    assert parse_formula("~p & q") == And(Implies(p, BOT), q)


@pytest.mark.parametrize("text, pos", [("p & | q", 4), ("(p", 2), ("p q", 2), ("p $ q", 2), ("", 0)])
def test_syntax_errors(text, pos):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert info.value.position == pos


def test_positify_examples():
    phi = parse_formula("~p | ~~p")
    pq = And(p, q)
    assert positify(phi, "q") == Or(Implies(p, pq), Implies(Implies(p, pq), pq))
    assert positify(Implies(p, q), "r") == Implies(p, q)
    assert positify(BOT, "x1") == Var("x1")


def test_positify_rejects_used_name():
    with pytest.raises(FreshNotFresh):
        positify(Implies(p, BOT), "p")


def test_is_positive():
    assert is_positive(parse_formula("p -> (q | p)"))
    assert not is_positive(parse_formula("~p"))


def test_sampler_is_deterministic_and_sized():
    assert sample_formula(7, 0, ["p"]) in (p, BOT)
    assert sample_formula(3, 6, ["p", "q"]) == sample_formula(3, 6, ["p", "q"])
    assert connectives(sample_formula(3, 6, ["p", "q"])) == 6


def test_sampler_covers_all_node_kinds():
    seen = Counter()
    for seed in range(10_000):
        stack = [sample_formula(seed, 6, ["p", "q"])]
        while stack:
            f = stack.pop()
            seen[type(f)] += 1
            if hasattr(f, "left"):
                stack += [f.left, f.right]
    assert all(seen[t] for t in (And, Or, Implies, Bottom))


formulas = st.recursive(
    st.sampled_from([p, q, r, BOT]),
    lambda sub: st.builds(lambda c, a, b: c(a, b), st.sampled_from([And, Or, Implies]), sub, sub),
    max_leaves=12,
)


@given(formulas)
def test_print_parse_round_trip(f):
    assert parse_formula(to_text(f)) == f


@given(formulas)
def test_positify_output_is_positive(f):
    assert is_positive(positify(f, "fresh"))

import pytest

from brouwerlab.algebra import build_bn, upset_brouwer_algebra
from brouwerlab.degrees import (
    Presentation,
    WitnessConfig,
    alpha_embedding,
    beta_embedding,
    build_main_witness,
    check_main_equation,
    check_relativized_equation,
    columns_problem,
    degree_structure_from_presentation,
    generated_subalgebra,
    is_canonical_subset,
    is_strong_antichain,
    isomorphic_to_bn,
    muchnik_algebra,
    mutate_witness,
    parse_presentation_text,
    recheck_counterexample,
    small_presentations,
    verify_usl_embedding,
)
from brouwerlab.errors import (
    AntichainViolated,
    EBelowBViolation,
    ENotInAmbientComplement,
    InconsistentPresentation,
    InputFormatError,
    InvalidConfig,
    MemberOutsideAmbient,
    NotCanonical,
    NotDownwardClosed,
    UnknownElement,
)
from brouwerlab.formula import parse_formula
from brouwerlab.poset import chain
from brouwerlab.semantics import in_theory


def structure(text):
    return degree_structure_from_presentation(parse_presentation_text(text))


def test_single_generator():
    d = structure("generators: a")
    assert [d.name(i) for i in range(len(d.degrees))] == ["0", "a", "T"]
    d.validate()


def test_trigger_collapses_join():
    d = structure("generators: b1 b2\njump: b1 b2")
    assert len(d.degrees) == 4
    assert d.join(d.generator_degree("b1"), d.generator_degree("b2")) == d.top


def test_below_relation_closes():
    d = structure("generators: a c\nbelow: a<=c")
    assert d.le(d.generator_degree("a"), d.generator_degree("c"))
    assert len(d.degrees) == 4  # 0, a, a+c, T


def test_inconsistent_presentations():
    with pytest.raises(InconsistentPresentation):
        structure("generators: a\nbelow: top<=a")
    with pytest.raises(InconsistentPresentation):
        structure("generators: a b\njump: a b\nkeep: a b")
    with pytest.raises(InconsistentPresentation):
        structure("generators: a b\nbelow: a<=b\njump: a b")


def test_presentation_format_errors():
    with pytest.raises(InputFormatError):
        parse_presentation_text("generators: a\nbelow: a<b")
    with pytest.raises(UnknownElement):
        parse_presentation_text("generators: a\njump: a z")
    with pytest.raises(InputFormatError):
        parse_presentation_text("generators: top")


def test_three_chain_algebra():
    d = structure("generators: a")
    alg = muchnik_algebra(d)
    assert len(alg) == 4
    assert d.cone(d.zero) == d.full == alg.bottom


def test_small_presentations_are_consistent_and_satisfy_weak_lem():
    phi = parse_formula("~p | ~~p")
    for p in small_presentations(3):
        d = degree_structure_from_presentation(p)
        d.validate()
        assert in_theory(muchnik_algebra(d), phi)


def witness(n, *X, **kw):
    return build_main_witness(WitnessConfig.of(n, *X), **kw)


def test_witness_n1():
    w = witness(1, [1])
    d = w.structure
    assert w.D[0] == d.join(w.b[0], w.a[0])
    assert d.join(w.D[0], w.a[1]) == d.top


def test_witness_n2():
    w = witness(2, [1])
    d = w.structure
    assert d.name(w.D[0]) == "a1+b1" and d.name(w.D[1]) == "b2"
    assert d.join(w.D[1], w.a[0]) == d.top


def test_bad_config():
    with pytest.raises(InvalidConfig):
        WitnessConfig.of(2, [3])
    with pytest.raises(InvalidConfig):
        WitnessConfig(2, 2, (frozenset(),))


def test_antichain_checks():
    w = witness(2, [1])
    d = w.structure
    assert is_strong_antichain(d, w.ambient, list(w.D))
    assert is_strong_antichain(d, w.ambient, [w.D[0]])
    assert not is_strong_antichain(d, w.ambient, [w.a[0], w.D[0]])
    with pytest.raises(MemberOutsideAmbient):
        is_strong_antichain(d, w.ambient, [d.top])
    with pytest.raises(NotDownwardClosed):
        is_strong_antichain(d, 1 << d.top, [])
    with pytest.raises(AntichainViolated):
        alpha_embedding(d, w.ambient, [w.a[0], w.D[0]])


def test_alpha_values_and_implication():
    w = witness(2, [1], [1, 2])
    d = w.structure
    alpha = w.alpha()
    I, empty = frozenset({1, 2}), frozenset()
    assert alpha[empty] == w.complement
    assert alpha[I] == w.complement | d.cones(w.D)
    ops = d.ops.interval(alpha[I], alpha[empty])
    for X in alpha:
        for Y in alpha:
            assert ops.imp(alpha[X], alpha[Y]) == alpha[(I - X) | Y]


@pytest.mark.parametrize("cfg", [WitnessConfig.of(2, [1]), WitnessConfig.of(1, [1]),
                                 WitnessConfig.of(3, [1], [2, 3], [])])
def test_embedding_flags(cfg):
    w = build_main_witness(cfg)
    alpha = w.alpha()
    I = frozenset(range(1, cfg.n + 1))
    rep = verify_usl_embedding(alpha, w.structure.ops, (alpha[I], alpha[frozenset()]))
    assert rep.ok and rep.counterexample is None


def test_embedding_mutation_reports_implication():
    w = witness(2, [], drop=[{"b1", "b2"}], strict=False)
    alpha = w.alpha(check=False)
    I = frozenset({1, 2})
    iv = (alpha[I], alpha[frozenset()])
    rep = verify_usl_embedding(alpha, w.structure.ops, iv)
    assert not rep.preserves_implication
    assert recheck_counterexample(alpha, w.structure.ops, iv, rep.counterexample)


def test_dropped_trigger_breaks_postconditions_when_strict():
    with pytest.raises(InconsistentPresentation):
        witness(2, [], drop=[{"b1", "b2"}])
    with pytest.raises(InvalidConfig):
        witness(2, [1], drop=[{"b1", "a1"}])  # not a trigger: 1 is in X1


def test_columns_problem():
    w = witness(2, [1])
    d = w.structure
    assert columns_problem(w) == d.cone(w.a[0]) | d.cone(w.a[1])
    assert columns_problem(w) >> d.top & 1
    wr = witness(2, [1], m=1)
    assert columns_problem(wr) == wr.structure.cones((*wr.a, *wr.e))


@pytest.mark.parametrize("cfg", [WitnessConfig.of(2, [1], [1, 2]), WitnessConfig.of(1, [1]),
                                 WitnessConfig.of(3, [1, 2], [], [3])])
def test_main_equation(cfg):
    rep = check_main_equation(build_main_witness(cfg))
    assert rep.equal and rep.diff == []


def test_main_equation_mutation_golden():
    cfg = WitnessConfig.of(2, [1])
    res = mutate_witness(cfg, frozenset({"b2", "a1"}))
    assert res.equation_diff == ["a1+b2"]
    assert res.detected


def test_redundant_trigger_mutation_goes_unnoticed():
    # b1+b2 still collapses through {b2, a1} because D1 contains a1
    res = mutate_witness(WitnessConfig.of(2, [1]), frozenset({"b1", "b2"}))
    assert not res.detected


def test_relativized_equation():
    assert check_relativized_equation(witness(2, [1], m=1)).equal
    assert check_relativized_equation(witness(2, [1])).equal  # m = 0


def test_e_trigger_removal_is_invisible():
    # D1 + e1 lies in the cone of e1, which is outside the ambient set either way
    w = witness(2, [1], m=1, drop=[{"b1", "e1"}], strict=False)
    assert check_relativized_equation(w).equal


def test_beta_embedding():
    w = witness(2, [1], m=1)
    d = w.structure
    E = d.cones(w.e)
    beta, D = beta_embedding(d, w.ambient, list(w.D), E, 0)
    alpha = w.alpha()
    assert all(beta[X] == alpha[X] | D for X in alpha)
    I = frozenset({1, 2})
    assert verify_usl_embedding(beta, d.ops, (beta[I], beta[frozenset()])).ok
    with pytest.raises(EBelowBViolation):
        beta_embedding(d, w.ambient, list(w.D), E, E)
    with pytest.raises(ENotInAmbientComplement):
        beta_embedding(d, w.ambient, list(w.D), d.cone(w.D[0]), 0)


def test_canonical_subset_failures():
    d = structure("generators: a b")
    alg = muchnik_algebra(d)
    ga, gb = d.generator_degree("a"), d.generator_degree("b")
    union = d.cone(ga) | d.cone(gb)
    rep = is_canonical_subset(alg, [union])
    assert not rep.meet_irreducible
    with pytest.raises(NotCanonical):
        generated_subalgebra(alg, [union])
    rep = is_canonical_subset(alg, [d.cone(ga)])
    assert rep.meet_irreducible and not rep.closed


def test_generated_single_generator():
    alg = build_bn(2)
    sub = generated_subalgebra(alg, [alg.bottom])
    assert sub.elements == (alg.bottom,)


def test_isomorphism_search():
    assert isomorphic_to_bn(build_bn(1), 1) is not None
    assert isomorphic_to_bn(upset_brouwer_algebra(chain(3)), 2) is None
    iso = isomorphic_to_bn(build_bn(2), 2)
    assert iso is not None and len(iso) == 5

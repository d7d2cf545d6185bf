import pytest

from brouwerlab.algebra import build_bn
from brouwerlab.degrees import WitnessConfig, build_main_witness, sample_witness_configs
from brouwerlab.formula import parse_formula
from brouwerlab.medvedev import (
    alpha_interval,
    check_free_algebra,
    medvedev_layer,
    muchnik_alpha_range_report,
    refute_in_columns_factor,
    transport_countermodel,
)
from brouwerlab.semantics import countermodel_search


@pytest.mark.parametrize("cfg", sample_witness_configs(12, seed=4))
def test_free_algebra(cfg):
    rep = check_free_algebra(build_main_witness(cfg))
    assert rep.ok, rep.canonical.detail
    assert rep.generated_size == len(build_bn(cfg.n))


def test_collapsed_range_is_not_canonical():
    rep = muchnik_alpha_range_report(build_main_witness(WitnessConfig.of(2, [1])))
    assert not rep.meet_irreducible and rep.closed and rep.distributes


def test_region_has_expected_points():
    for n in (1, 2, 3):
        ai = alpha_interval(build_main_witness(WitnessConfig.of(n, [1])))
        assert len(ai.layer.problems) == 2 ** n + 1
        assert len(ai.algebra) == len(build_bn(n))


def test_region_matches_full_layer():
    w = build_main_witness(WitnessConfig.of(2, [1]))
    ai = alpha_interval(w)
    full = medvedev_layer(w.structure)
    I = frozenset({1, 2})
    lo, hi = full.embed(ai.alpha[I]), full.embed(ai.alpha[frozenset()])
    full_iv = full.ops.interval(lo, hi).enumerate()
    assert len(full_iv) == len(ai.algebra)


def test_iso_sends_cones_to_range():
    ai = alpha_interval(build_main_witness(WitnessConfig.of(2, [1])))
    bn = build_bn(2)
    assert ai.from_bn(bn.bottom) == ai.algebra.bottom
    assert ai.from_bn(bn.top) == ai.algebra.top
    for a in bn.elements:
        for b in bn.elements:
            assert ai.from_bn(bn.imp(a, b)) == ai.algebra.imp(ai.from_bn(a), ai.from_bn(b))


@pytest.mark.parametrize("text", ["~p | ~~p", "p | ~p", "((p -> q) -> p) -> p"])
def test_transport(text):
    rep = transport_countermodel(countermodel_search(parse_formula(text), 3), n_formulas=20)
    assert rep.ok and rep.exhaustive


def test_columns_factor_refutes_lem():
    w = build_main_witness(WitnessConfig.of(2, [1]))
    rep = refute_in_columns_factor(w, parse_formula("p | ~p"), n_formulas=10)
    assert rep.refuted and rep.gamma.ok
    assert refute_in_columns_factor(w, parse_formula("p -> p")) is None

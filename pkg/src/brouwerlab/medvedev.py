"""Free meet-completion of a Muchnik algebra (the Medvedev layer).

Under the collapse, ⊗ of two mass problems is their union, so every union of
cones is itself a single problem and the α-range generates only a Boolean
algebra. The layer here keeps ⊗ formal: its points ``Q`` are the Muchnik
problems ordered by ``N <= N'`` iff ``N ⊇ N'``, its elements are up-sets of
``Q``, and a problem ``N`` embeds as the principal up-set ``↑N`` (all problems
contained in ``N``). Principal up-sets are meet-irreducible, ⊕ and → are
preserved on them, and ⊗ of principal up-sets is a genuine union of up-sets.

Everything below ``↑α(I)`` only involves problems contained in ``α(I)``, so
interval work restricts ``Q`` to that region (2ⁿ + 1 points).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .algebra import CARRIER_CAP, FiniteBrouwerAlgebra, UpsetOps, build_bn, with_carrier
from .degrees import (
    DegreeStructure,
    Witness,
    WitnessConfig,
    build_main_witness,
    generated_subalgebra,
    is_canonical_subset,
    isomorphic_to_bn,
)
from .errors import CarrierTooLarge
from .formula import Formula
from .poset import Poset, bits, enumerate_upsets
from .semantics import (
    Countermodel,
    GammaReport,
    evaluate,
    first_refutation,
    gamma_hom_check,
    interval_algebra,
)


@dataclass(frozen=True, eq=False)
class MedvedevLayer:
    structure: DegreeStructure
    problems: tuple[int, ...]  # Muchnik problems, one per point of Q

    @cached_property
    def point(self) -> dict[int, int]:
        return {N: i for i, N in enumerate(self.problems)}

    @cached_property
    def space(self) -> Poset:
        probs = self.problems
        up = tuple(
            sum(1 << j for j, M in enumerate(probs) if M & N == M)
            for N in probs
        )
        names = tuple("{" + ",".join(self.structure.names(N)) + "}" for N in probs)
        return Poset(names, up)

    @property
    def ops(self) -> UpsetOps:
        q = self.space
        return UpsetOps(q, q.full, 0, q.full, "medvedev")

    def embed(self, N: int) -> int:
        """``↑N``: every problem of ``Q`` contained in ``N``."""
        return self.space.up[self.point[N]]

    def meet_of(self, problems: Iterable[int]) -> int:
        out = 0
        for N in problems:
            out |= self.embed(N)
        return out


def medvedev_layer(d: DegreeStructure, within: int | None = None,
                   cap: int = CARRIER_CAP) -> MedvedevLayer:
    """Layer over the Muchnik problems contained in ``within`` (all of them by default)."""
    probs = enumerate_upsets(d.poset, within=within, limit=cap)
    return MedvedevLayer(d, tuple(probs))


# -- the α-range interval --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlphaInterval:
    witness: Witness
    layer: MedvedevLayer
    algebra: FiniteBrouwerAlgebra  # [↑α(I), ↑α(∅)]
    alpha: dict  # subset -> Muchnik problem
    range: dict  # subset -> Medvedev element ↑α(X)

    @property
    def n(self) -> int:
        return self.witness.cfg.n

    def from_bn(self, u: int) -> int:
        """Natural isomorphism ℬₙ → interval: ``cone(S) ↦ ↑α(S)``, extended over ⊗."""
        bn_space = build_bn(self.n).space
        out = self.range[frozenset()]
        for i in bits(u):
            S = frozenset(int(c) for c in bn_space.elements[i].strip("{}").split(","))
            out |= self.range[S]
        return out


def alpha_interval(w: Witness, cap: int = CARRIER_CAP) -> AlphaInterval:
    d = w.structure
    alpha = w.alpha()
    I = frozenset(range(1, w.cfg.n + 1))
    layer = medvedev_layer(d, within=alpha[I], cap=cap)
    lo, hi = layer.embed(alpha[I]), layer.embed(alpha[frozenset()])
    alg = layer.ops.interval(lo, hi).enumerate(cap)
    alg = with_carrier(alg, alg.elements, name=f"medvedev[alpha(I),alpha(0)] n={w.cfg.n}")
    rng = {X: layer.embed(N) for X, N in alpha.items()}
    return AlphaInterval(w, layer, alg, alpha, rng)


@dataclass
class FreeAlgebraReport:
    canonical: object  # CanonicalReport, or None when the interval could not be enumerated
    generated_size: int
    bn_size: int
    isomorphism_found: bool
    note: str = ""

    @property
    def ok(self) -> bool:
        return (self.canonical is not None and self.canonical.ok
                and self.generated_size == self.bn_size and self.isomorphism_found)


def check_free_algebra(w: Witness, cap: int = CARRIER_CAP) -> FreeAlgebraReport:
    try:
        ai = alpha_interval(w, cap)
    except CarrierTooLarge as exc:
        return FreeAlgebraReport(None, 0, len(build_bn(w.cfg.n)), False,
                                 f"interval [α(I), α(∅)] not enumerable: {exc}")
    gens = sorted(set(ai.range.values()), key=lambda m: (bin(m).count("1"), m))
    canon = is_canonical_subset(ai.algebra, gens)
    bn = len(build_bn(w.cfg.n))
    if not canon.ok:
        return FreeAlgebraReport(canon, 0, bn, False)
    sub = generated_subalgebra(ai.algebra, gens)
    iso = isomorphic_to_bn(sub, w.cfg.n)
    return FreeAlgebraReport(canon, len(sub), bn, iso is not None)


def muchnik_alpha_range_report(w: Witness):
    """Canonicity of the α-range inside the collapsed Muchnik interval (for comparison)."""
    alpha = w.alpha()
    I = frozenset(range(1, w.cfg.n + 1))
    iv = w.structure.ops.interval(alpha[I], alpha[frozenset()]).enumerate()
    return is_canonical_subset(iv, sorted(set(alpha.values())))


# -- transport of a countermodel into the columns interval ------------------------------

def witness_config_for(cm: Countermodel) -> WitnessConfig:
    """Columns from the ⊆-maximal sets in the countermodel's ``x``."""
    space = build_bn(cm.n).space
    tops = [frozenset(int(c) for c in space.elements[i].strip("{}").split(","))
            for i in space.minimal(cm.x)]
    tops.sort(key=lambda s: (len(s), sorted(s)))
    return WitnessConfig.of(cm.n, *(tops or [()]))


@dataclass
class TransportReport:
    cfg: WitnessConfig
    equation_holds: bool
    refuted: bool
    value: int
    bottom: int
    valuation: dict
    gamma: GammaReport | None
    exhaustive: bool
    source_size: int
    factor_valuation: dict = field(default_factory=dict)  # the refutation in [↑α(I), y]
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.equation_holds and self.refuted and self.gamma is not None and self.gamma.ok


def _pull_back(w: Witness, ai: AlphaInterval, phi: Formula, images: dict, cap: int,
               n_formulas: int, seed: int, check_gamma: bool = True) -> TransportReport:
    """Evaluate ``phi`` in ``[0, z]`` at the preimages ``c ⊗ z`` of region elements ``images``.

    ``γ(u) = ↑α(I) ⊕ u`` maps ``[0, z]`` onto ``[↑α(I), y]``, so a refutation
    there pulls back along ``c ↦ c ⊗ z``.
    """
    cfg, d = w.cfg, w.structure
    layer = medvedev_layer(d, cap=cap)
    q = layer.space
    I = frozenset(range(1, cfg.n + 1))
    lo = layer.embed(ai.alpha[I])
    z = layer.meet_of(d.cone(a) for a in (*w.a, *w.e))
    y = layer.meet_of(ai.alpha[X] for X in cfg.X)
    notes = []

    # region problems sit inside the full layer unchanged
    def lift(u: int) -> int:
        return layer.meet_of(ai.layer.problems[i] for i in bits(u))

    equation = (lo & z) == y
    if not equation:
        notes.append("columns equation fails in the meet-completion")
    src = UpsetOps(q, q.full, z, q.full, "medvedev[0,z]")
    pulled = {v: lift(c) | z for v, c in images.items()}
    value = evaluate(src, phi, pulled)

    gamma, exhaustive, size = None, False, 0
    if check_gamma:
        try:
            zero_z = enumerate_upsets(q, within=q.full, base=z, limit=cap)
            x_y = enumerate_upsets(q, within=lo, base=y, limit=cap)
            size = len(zero_z)
            alg = with_carrier(FiniteBrouwerAlgebra(q, q.full, 0, q.full, "medvedev", ()),
                               set(zero_z) | set(x_y))
            gamma = gamma_hom_check(alg, lo, z, n_formulas=n_formulas, seed=seed)
            exhaustive = True
        except CarrierTooLarge as exc:
            notes.append(f"[0,z] not enumerable: {exc}")
    return TransportReport(cfg, equation, value != src.bottom, value, src.bottom,
                           {v: q.members(u) for v, u in sorted(pulled.items())},
                           gamma, exhaustive, size,
                           {v: ai.layer.space.members(c) for v, c in sorted(images.items())},
                           notes)


def transport_countermodel(cm: Countermodel, m: int = 0, cap: int = CARRIER_CAP,
                           n_formulas: int = 100, seed: int = 0) -> TransportReport:
    """Carry a ℬₙ/x countermodel into ``[0, z]`` of the witness for ``x``."""
    cfg = witness_config_for(cm)
    w = build_main_witness(cfg, m=m)
    ai = alpha_interval(w)
    images = {v: ai.from_bn(b) for v, b in cm.valuation.items()}
    rep = _pull_back(w, ai, cm.formula, images, cap, n_formulas, seed)
    y = ai.range[frozenset()]
    for X in cfg.X:
        y |= ai.range[X]
    if ai.from_bn(cm.x) != y:
        rep.equation_holds = False
        rep.notes.append("image of x differs from the product of the α(X_j)")
    return rep


def refute_in_columns_factor(w: Witness, phi: Formula, cap: int = CARRIER_CAP,
                             n_formulas: int = 100, seed: int = 0,
                             check_gamma: bool = True) -> TransportReport | None:
    """Look for a refutation of ``phi`` in ``[↑α(I), y]`` and pull it back to ``[0, z]``.

    Returns None when ``phi`` holds throughout the factor.
    """
    ai = alpha_interval(w)
    y = ai.range[frozenset()]
    for X in w.cfg.X:
        y |= ai.range[X]
    factor = interval_algebra(ai.algebra, ai.algebra.bottom, y)
    v = first_refutation(factor, phi)
    if v is None:
        return None
    return _pull_back(w, ai, phi, v, cap, n_formulas, seed, check_gamma)

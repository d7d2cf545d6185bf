"""Acceptance checks, one function per criterion.

Each check returns ``(passed, detail)``; :func:`run_all` adds timings and
compares them with the stated limits. Nothing here is tuned to pass: a check
that fails reports the counts behind the failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice, product

from .algebra import (
    FiniteBrouwerAlgebra,
    build_bn,
    bn_poset,
    check_brouwer_laws,
    lazy_upset_algebra,
    upset_brouwer_algebra,
    with_carrier,
)
from .degrees import (
    WitnessConfig,
    build_main_witness,
    check_main_equation,
    check_relativized_equation,
    degree_structure_from_presentation,
    muchnik_algebra,
    mutate_witness,
    proof_relevant_triggers,
    sample_witness_configs,
    small_presentations,
    verify_usl_embedding,
)
from .errors import CarrierTooLarge
from .formula import (
    BOT,
    And,
    Formula,
    Var,
    parse_formula,
    sample_formula,
    sample_positive_formula,
    to_text,
    variables,
)
from .kripke import Frame, KripkeCountermodel, forcing_set, frames_of_size, kripke_ipc_oracle
from .medvedev import check_free_algebra, transport_countermodel
from .poset import Poset, brute_force_upset_count
from .semantics import (
    Countermodel,
    evaluate,
    factor_algebra,
    in_theory,
    in_theory_many,
    interval_algebra,
)

FAMILY_CAP = 64
WITNESS_SAMPLE = 50
WITNESS_SEED = 0
RELATIVIZED_SAMPLE = 20
RELATIVIZED_SEED = 1
COUNTERMODEL_FORMULAS = ("~p | ~~p", "p | ~p", "((p -> q) -> p) -> p")


# -- shared families ------------------------------------------------------------------

def frame_poset(frame: Frame) -> Poset:
    names = tuple(f"w{i}" for i in range(frame.size))
    up = tuple(sum(1 << v for v in frame.above(w)) for w in range(frame.size))
    return Poset(names, up)


@lru_cache(maxsize=None)
def base_algebras() -> tuple[FiniteBrouwerAlgebra, ...]:
    """ℬ₁..ℬ₃, up-set algebras of every poset with at most five points and
    Muchnik algebras of every small presentation, all with carrier ≤ 64."""
    out = [build_bn(n) for n in (1, 2, 3)]
    for k in range(1, 6):
        for i, frame in enumerate(frames_of_size(k)):
            out.append(upset_brouwer_algebra(frame_poset(frame), name=f"poset:{k}.{i}"))
    for i, pres in enumerate(small_presentations(4)):
        try:
            alg = muchnik_algebra(degree_structure_from_presentation(pres), cap=FAMILY_CAP)
        except CarrierTooLarge:
            continue
        out.append(with_carrier(alg, alg.elements, name=f"muchnik:{i}"))
    return tuple(a for a in out if len(a) <= FAMILY_CAP)


@lru_cache(maxsize=None)
def algebra_family() -> tuple[FiniteBrouwerAlgebra, ...]:
    """Base algebras plus every factor of each and two seeded intervals of each."""
    rng = random.Random(7)
    out = []
    for alg in base_algebras():
        out.append(alg)
        for x in alg.elements:
            if x != alg.bottom:
                out.append(factor_algebra(alg, x))
        for _ in range(2):
            a, b = rng.choice(alg.elements), rng.choice(alg.elements)
            out.append(interval_algebra(alg, a, alg.join(a, b)))
    return tuple(out)


# -- criteria -----------------------------------------------------------------------------

def criterion_1():
    fam = algebra_family()
    failures = []
    for alg in fam:
        laws = check_brouwer_laws(alg)
        bad = [k for k, v in laws.items() if not v]
        if bad:
            failures.append(f"{alg.name}: {','.join(bad)}")
    return not failures, f"{len(fam)} algebras checked; failures: {failures[:3] or 'none'}"


def criterion_2():
    sizes = [len(build_bn(n)) for n in (1, 2, 3)]
    brute = brute_force_upset_count(bn_poset(3))
    ok = sizes[0] == 2 and sizes[1] == 5 and sizes[2] == brute
    return ok, f"|B1|={sizes[0]} |B2|={sizes[1]} |B3|={sizes[2]} brute-force={brute}"


IPC_SCHEMES = (
    "A -> (B -> A)",
    "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
    "A & B -> A",
    "A & B -> B",
    "A -> (B -> A & B)",
    "A -> A | B",
    "B -> A | B",
    "(A -> C) -> ((B -> C) -> (A | B -> C))",
    "F -> A",
    "(A -> B) -> ((A -> ~B) -> ~A)",
)


def instantiate(scheme: Formula, subst: dict[str, Formula]) -> Formula:
    if isinstance(scheme, Var):
        return subst.get(scheme.name, scheme)
    if scheme == BOT:
        return scheme
    return type(scheme)(instantiate(scheme.left, subst), instantiate(scheme.right, subst))


def ipc_instances(per_scheme: int = 20, seed: int = 3) -> list[Formula]:
    rng = random.Random(seed)
    out = []
    for text in IPC_SCHEMES:
        scheme = parse_formula(text)
        for _ in range(per_scheme):
            subst = {m: sample_formula(rng.randrange(1 << 30), rng.randint(0, 2), ["p", "q"])
                     for m in "ABC"}
            out.append(instantiate(scheme, subst))
    return out


def criterion_3():
    instances = ipc_instances()
    # a conjunction is 0 iff every conjunct is 0, so one sweep per algebra suffices
    big = instances[0]
    for f in instances[1:]:
        big = And(big, f)
    fam = algebra_family()
    failures = []
    for alg, ok in zip(fam, in_theory_many(fam, big)):
        if not ok:
            bad = next(f for f in instances if not in_theory(alg, f))
            failures.append(f"{alg.name}: {to_text(bad)}")
    return not failures, (f"{len(instances)} instances x {len(fam)} algebras; "
                          f"failures: {failures[:3] or 'none'}")


def criterion_4():
    from .semantics import countermodel_search

    parts, ok = [], True
    for text in COUNTERMODEL_FORMULAS:
        phi = parse_formula(text)
        cm = countermodel_search(phi, 3)
        kr = kripke_ipc_oracle(phi, max_worlds=3)
        good = isinstance(cm, Countermodel) and cm.n <= 3 and cm.verify() and isinstance(kr, KripkeCountermodel)
        ok &= good
        n = cm.n if isinstance(cm, Countermodel) else None
        w = kr.frame.size if isinstance(kr, KripkeCountermodel) else None
        parts.append(f"{text}: B_n n={n}, kripke worlds={w}")
    return ok, "; ".join(parts)


def criterion_5():
    from .semantics import countermodel_search

    phi = parse_formula("~p | ~~p")
    pres = small_presentations(4)
    failed = [i for i, p in enumerate(pres)
              if not in_theory(muchnik_algebra(degree_structure_from_presentation(p)), phi)]
    cm = countermodel_search(phi, 3)
    refuted = isinstance(cm, Countermodel) and cm.verify()
    return not failed and refuted, (f"valid in {len(pres) - len(failed)}/{len(pres)} Muchnik algebras; "
                                    f"refuted in B_n/x: {refuted}")


def witness_sample() -> list[WitnessConfig]:
    return sample_witness_configs(WITNESS_SAMPLE, WITNESS_SEED)


def criterion_6():
    cfgs = witness_sample()
    all_flags = flipped = 0
    for cfg in cfgs:
        w = build_main_witness(cfg)
        alpha = w.alpha()
        I = frozenset(range(1, cfg.n + 1))
        all_flags += verify_usl_embedding(alpha, w.structure.ops, (alpha[I], alpha[frozenset()])).ok
        flipped += any(mutate_witness(cfg, t).embedding_flags_flipped for t in proof_relevant_triggers(w))
    ok = all_flags == len(cfgs) and flipped == len(cfgs)
    return ok, (f"all flags true on {all_flags}/{len(cfgs)} configs; "
                f"a single {{b_i,b_j}} removal flips a flag on {flipped}/{len(cfgs)}")


def criterion_7():
    cfgs = witness_sample()
    good = 0
    first_bad = None
    for cfg in cfgs:
        rep = check_free_algebra(build_main_witness(cfg))
        if rep.ok:
            good += 1
        elif first_bad is None:
            first_bad = (cfg, rep.canonical.detail)
    return good == len(cfgs), f"{good}/{len(cfgs)} configs canonical, |B_n|-sized and isomorphic; first failure: {first_bad}"


def criterion_8():
    cfgs = witness_sample()
    equal = sum(check_main_equation(build_main_witness(cfg)).equal for cfg in cfgs)
    rel_cfgs = sample_witness_configs(RELATIVIZED_SAMPLE, RELATIVIZED_SEED)
    rel = sum(check_relativized_equation(build_main_witness(cfg, m=1)).equal for cfg in rel_cfgs)
    muts = detected = 0
    for cfg in cfgs:
        for t in build_main_witness(cfg).structure.presentation.jump_triggers:
            muts += 1
            detected += mutate_witness(cfg, t).detected
    ok = equal == len(cfgs) and rel == len(rel_cfgs) and detected == muts
    return ok, (f"main equation {equal}/{len(cfgs)}; relativized {rel}/{len(rel_cfgs)}; "
                f"single-trigger mutations detected {detected}/{muts}")


def criterion_9():
    from .semantics import countermodel_search

    parts, ok = [], True
    for text in COUNTERMODEL_FORMULAS:
        t0 = time.perf_counter()
        cm = countermodel_search(parse_formula(text), 3)
        rep = transport_countermodel(cm)
        dt = time.perf_counter() - t0
        good = rep.ok and rep.exhaustive and dt < 60
        ok &= good
        parts.append(f"{text}: refuted={rep.refuted} gamma={rep.gamma.ok if rep.gamma else None} "
                     f"[0,z]={rep.source_size} {dt:.1f}s")
    return ok, "; ".join(parts)


def closed_subcollection(alg: FiniteBrouwerAlgebra, seeds: list[int]) -> FiniteBrouwerAlgebra:
    """Closure of ``seeds`` and 0 under ⊕, ⊗ and →."""
    got = {alg.bottom, *seeds}
    frontier = set(got)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(got):
                new |= {alg.join(a, b), alg.meet(a, b), alg.imp(a, b), alg.imp(b, a)}
        frontier = new - got
        got |= frontier
    top = min(got, key=lambda m: bin(m).count("1"))
    return with_carrier(alg, got, top=top, name=f"{alg.name}<sub>")


def sample_subcollections(count: int = 10, seed: int = 5) -> list[tuple[FiniteBrouwerAlgebra, FiniteBrouwerAlgebra]]:
    rng = random.Random(seed)
    ambients = [build_bn(3), build_bn(2),
                upset_brouwer_algebra(frame_poset(frames_of_size(5)[17]), name="poset:5.17")]
    out = []
    for i in range(count):
        amb = ambients[i % len(ambients)]
        seeds = rng.sample(amb.elements, 3)
        out.append((amb, closed_subcollection(amb, seeds)))
    return out


def criterion_10():
    rng = random.Random(11)
    formulas = [sample_positive_formula(rng.randrange(1 << 30), rng.randint(1, 5), ["p", "q", "r"])
                for _ in range(100)]
    subs = sample_subcollections()
    checked = mismatches = 0
    for amb, sub in subs:
        for phi in formulas:
            vs = variables(phi)
            for combo in islice(product(sub.elements, repeat=len(vs)), 200):
                v = dict(zip(vs, combo))
                checked += 1
                mismatches += evaluate(sub, phi, v) != evaluate(amb, phi, v)
    sizes = sorted(len(s) for _, s in subs)
    return mismatches == 0, f"{checked} evaluations over sub-collections of sizes {sizes}; mismatches {mismatches}"


def criterion_11():
    rng = random.Random(13)
    frames = [f for k in range(1, 7) for f in frames_of_size(k)]
    mismatches = 0
    for _ in range(200):
        frame = rng.choice(frames)
        p = frame_poset(frame)
        phi = sample_formula(rng.randrange(1 << 30), rng.randint(1, 6), ["p", "q"])
        masks = {v: p.upclosure(rng.getrandbits(frame.size)) for v in ("p", "q")}
        worlds = {v: frozenset(i for i in range(frame.size) if m >> i & 1) for v, m in masks.items()}
        alg_val = evaluate(lazy_upset_algebra(p), phi, masks)
        kr_val = sum(1 << w for w in forcing_set(frame, worlds, phi))
        mismatches += alg_val != kr_val
    return mismatches == 0, f"200 triples; mismatches {mismatches}"


# -- runner ----------------------------------------------------------------------------------

@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds <= self.limit

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        timing = f"{self.seconds:.1f}s/{self.limit:.0f}s"
        return f"[{status}] {self.number:2d}. {self.title} ({timing}): {self.detail}"


CRITERIA = (
    (1, "lattice and adjunction laws", criterion_1, 30),
    (2, "carrier counts", criterion_2, 5),
    (3, "soundness of IPC axiom instances", criterion_3, 60),
    (4, "countermodels and Kripke oracle", criterion_4, 60),
    (5, "weak excluded middle dichotomy", criterion_5, 60),
    (6, "embedding flags and mutation sensitivity", criterion_6, 300),
    (7, "canonicity and free algebra", criterion_7, 300),
    (8, "main and relativized equations, mutations", criterion_8, 300),
    (9, "end-to-end transport into the columns interval", criterion_9, 180),
    (10, "positive fragment preserved by sub-collections", criterion_10, 60),
    (11, "algebraic and Kripke evaluation agree", criterion_11, 30),
)


def run_criterion(number: int) -> CriterionResult:
    num, title, fn, limit = CRITERIA[number - 1]
    t0 = time.perf_counter()
    passed, detail = fn()
    return CriterionResult(num, title, bool(passed), detail, time.perf_counter() - t0, limit)


def run_all() -> list[CriterionResult]:
    return [run_criterion(n) for n, *_ in CRITERIA]

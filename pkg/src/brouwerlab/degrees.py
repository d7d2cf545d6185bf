"""Finite degree structures and Muchnik-style mass problems over them.

A degree is a set of generators closed under the ``below`` relation and
containing no jump trigger, or the designated top degree ⊤ (standing in for
a jump). Joining degrees takes the closed union and collapses to ⊤ as soon
as a trigger is covered. Mass problems are up-sets of the induced order,
stored as masks over degree indices, so ⊕ is intersection, ⊗ is union and
implication is the pointwise up-set implication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Mapping

from .algebra import (
    CARRIER_CAP,
    FiniteBrouwerAlgebra,
    UpsetOps,
    build_bn,
    lazy_upset_algebra,
    pointwise_imp,
    upset_brouwer_algebra,
    with_carrier,
)
from .errors import (
    AntichainViolated,
    EBelowBViolation,
    EmptyColumns,
    ENotInAmbientComplement,
    InconsistentPresentation,
    InputFormatError,
    InvalidConfig,
    MemberOutsideAmbient,
    NotCanonical,
    NotDownwardClosed,
    UnknownElement,
)
from .poset import IDENT, Poset, bits, poset_from_relation

TOP_NAME = "top"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    below: tuple[tuple[str, str], ...] = ()
    jump_triggers: tuple[frozenset, ...] = ()
    keep_below_top: tuple[frozenset, ...] = ()  # generator sets whose join must stay below ⊤

    def without_trigger(self, trigger: frozenset) -> "Presentation":
        return Presentation(
            self.generators,
            self.below,
            tuple(t for t in self.jump_triggers if t != trigger),
            self.keep_below_top,
        )


def parse_presentation_text(text: str) -> Presentation:
    """Parse::

        generators: a1 a2 b1 b2
        below: a1<=d1
        jump: b1 b2
        keep: b1 a1
    """
    gens: list[str] = []
    below: list[tuple[str, str]] = []
    jumps: list[frozenset] = []
    keeps: list[frozenset] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise InputFormatError(f"line {lineno}: expected 'key: values'")
        key, tokens = key.strip(), rest.split()
        if key == "generators":
            for tok in tokens:
                if not IDENT.match(tok) or tok == TOP_NAME:
                    raise InputFormatError(f"line {lineno}: bad generator {tok!r}")
            gens.extend(tokens)
        elif key == "below":
            for tok in tokens:
                m = re.fullmatch(r"([A-Za-z][A-Za-z0-9_]*)<=([A-Za-z][A-Za-z0-9_]*)", tok)
                if not m:
                    raise InputFormatError(f"line {lineno}: bad relation {tok!r}")
                below.append((m.group(1), m.group(2)))
        elif key in ("jump", "keep"):
            if not tokens:
                raise InputFormatError(f"line {lineno}: empty {key} set")
            (jumps if key == "jump" else keeps).append(frozenset(tokens))
        else:
            raise InputFormatError(f"line {lineno}: unknown key {key!r}")
    known = set(gens) | {TOP_NAME}
    for g, h in below:
        for e in (g, h):
            if e not in known:
                raise UnknownElement(f"unknown generator {e!r}")
    for s in (*jumps, *keeps):
        for e in s:
            if e not in gens:
                raise UnknownElement(f"unknown generator {e!r}")
    return Presentation(tuple(gens), tuple(below), tuple(jumps), tuple(keeps))


@dataclass(frozen=True, eq=False)
class DegreeStructure:
    presentation: Presentation
    degrees: tuple[int, ...]  # generator masks; the last entry is ⊤
    top_mask: int  # sentinel mask used for ⊤ (a bit above all generators)
    closure_of: tuple[int, ...]  # per generator: mask of generators below it (inclusive)
    trigger_masks: tuple[int, ...]

    @property
    def generators(self) -> tuple[str, ...]:
        return self.presentation.generators

    @cached_property
    def index(self) -> dict[int, int]:
        return {d: i for i, d in enumerate(self.degrees)}

    @property
    def zero(self) -> int:
        return self.index[0]

    @property
    def top(self) -> int:
        return self.index[self.top_mask]

    def close(self, gmask: int) -> int:
        """Closed generator set, or the ⊤ sentinel if a trigger is covered."""
        if gmask & self.top_mask:
            return self.top_mask
        out = 0
        for g in bits(gmask):
            out |= self.closure_of[g]
        if any(t & out == t for t in self.trigger_masks):
            return self.top_mask
        return out

    def join(self, d: int, e: int) -> int:
        return self.index[self.close(self.degrees[d] | self.degrees[e])]

    def join_all(self, ds: Iterable[int]) -> int:
        out = self.zero
        for d in ds:
            out = self.join(out, d)
        return out

    def generator_degree(self, name: str) -> int:
        g = self.generators.index(name)
        return self.index[self.close(1 << g)]

    def degree_of(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << self.generators.index(name)
        return self.index[self.close(m)]

    def le(self, d: int, e: int) -> bool:
        return self.join(d, e) == e

    def name(self, d: int) -> str:
        m = self.degrees[d]
        if m == self.top_mask:
            return "T"
        if m == 0:
            return "0"
        return "+".join(self.generators[g] for g in bits(m))

    @cached_property
    def poset(self) -> Poset:
        n = len(self.degrees)
        names = [self.name(d) for d in range(n)]
        up = []
        for d in range(n):
            dm = self.degrees[d]
            row = 0
            for e in range(n):
                em = self.degrees[e]
                if em == self.top_mask or (dm != self.top_mask and dm & em == dm):
                    row |= 1 << e
            up.append(row)
        return Poset(tuple(names), tuple(up))

    @property
    def full(self) -> int:
        return self.poset.full

    def cone(self, d: int) -> int:
        return self.poset.up[d]

    def cones(self, ds: Iterable[int]) -> int:
        out = 0
        for d in ds:
            out |= self.cone(d)
        return out

    @property
    def ops(self) -> UpsetOps:
        """Brouwer operations on mass problems, no carrier enumeration."""
        return lazy_upset_algebra(self.poset, "muchnik")

    def imp(self, a: int, b: int) -> int:
        return pointwise_imp(self.poset, a, b)

    def names(self, mask: int) -> list[str]:
        return self.poset.members(mask)

    @property
    def non_computable(self) -> int:
        """The simulated 0′: every degree except the least one."""
        return self.full & ~(1 << self.zero)

    def validate(self) -> None:
        """Exhaustive join-semilattice checks (intended for small structures)."""
        n = len(self.degrees)
        for d in range(n):
            assert self.join(d, d) == d
            assert self.join(self.zero, d) == d
            assert self.join(self.top, d) == self.top
            for e in range(n):
                assert self.join(d, e) == self.join(e, d)
                for f in range(n):
                    assert self.join(self.join(d, e), f) == self.join(d, self.join(e, f))


def degree_structure_from_presentation(p: Presentation) -> DegreeStructure:
    gens = p.generators
    if len(set(gens)) != len(gens):
        raise InputFormatError("duplicate generator")
    gi = {g: i for i, g in enumerate(gens)}
    n = len(gens)
    for g, h in p.below:
        if g == TOP_NAME and h != TOP_NAME:
            raise InconsistentPresentation(f"below: {TOP_NAME}<={h} forces {h} to the top degree")
    closure = [1 << i for i in range(n)]
    rel = [(gi[g], gi[h]) for g, h in p.below if g != TOP_NAME and h != TOP_NAME]
    changed = True
    while changed:
        changed = False
        for g, h in rel:
            new = closure[h] | closure[g]
            if new != closure[h]:
                closure[h] = new
                changed = True
    triggers = tuple(sum(1 << gi[g] for g in t) for t in p.jump_triggers)
    top_mask = 1 << n

    def triggered(m: int) -> bool:
        return any(t & m == t for t in triggers)

    def close(m: int) -> int:
        out = 0
        for g in bits(m):
            out |= closure[g]
        return out

    for i, g in enumerate(gens):
        if triggered(closure[i]):
            raise InconsistentPresentation(f"generator {g} is forced to the top degree")
    for keep in p.keep_below_top:
        if triggered(close(sum(1 << gi[g] for g in keep))):
            raise InconsistentPresentation(
                f"join of {' '.join(sorted(keep))} is required below the top but covers a trigger"
            )
    degrees = [m for m in range(1 << n) if close(m) == m and not triggered(m)]
    degrees.sort(key=lambda m: (bin(m).count("1"), m))
    degrees.append(top_mask)
    return DegreeStructure(p, tuple(degrees), top_mask, tuple(closure), triggers)


def muchnik_algebra(d: DegreeStructure, cap: int = CARRIER_CAP) -> FiniteBrouwerAlgebra:
    return upset_brouwer_algebra(d.poset, cap=cap, name="muchnik")


# -- antichains and the power-set embedding --------------------------------------

def is_strong_antichain(d: DegreeStructure, ambient: int, fs: list[int]) -> bool:
    if not d.poset.is_downset(ambient):
        raise NotDownwardClosed("ambient set is not downward closed")
    for f in fs:
        if not ambient >> f & 1:
            raise MemberOutsideAmbient(f"degree {d.name(f)} is not in the ambient set")
    return all(
        not ambient >> d.join(fs[i], fs[j]) & 1
        for i in range(len(fs))
        for j in range(i + 1, len(fs))
    )


def all_subsets(n: int) -> list[frozenset]:
    return [frozenset(c) for r in range(n + 1) for c in combinations(range(1, n + 1), r)]


def alpha_embedding(d: DegreeStructure, ambient: int, fs: list[int], check: bool = True) -> dict:
    """``X ↦ complement(ambient) ∪ ⋃_{i∈X} cone(f_i)`` for every ``X ⊆ {1..len(fs)}``."""
    if check and not is_strong_antichain(d, ambient, fs):
        raise AntichainViolated("the degrees are not a strong upwards antichain in the ambient set")
    comp = d.full & ~ambient
    return {X: comp | d.cones(fs[i - 1] for i in X) for X in all_subsets(len(fs))}


@dataclass
class EmbeddingReport:
    injective: bool = True
    preserves_join: bool = True
    preserves_implication: bool = True
    preserves_bounds: bool = True
    counterexample: tuple | None = None  # (X, Y, property)

    @property
    def ok(self) -> bool:
        return self.injective and self.preserves_join and self.preserves_implication and self.preserves_bounds

    def flags(self) -> dict[str, bool]:
        return {
            "injective": self.injective,
            "preserves_join": self.preserves_join,
            "preserves_implication": self.preserves_implication,
            "preserves_bounds": self.preserves_bounds,
        }


def _embedding_failure(mapping, ops, lo, hi, X, Y, prop) -> bool:
    I = max(mapping, key=len)
    if prop == "injective":
        return X != Y and mapping[X] == mapping[Y]
    if prop == "preserves_join":
        return mapping[X & Y] != ops.join(mapping[X], mapping[Y])
    if prop == "preserves_implication":
        return mapping[(I - X) | Y] != ops.join(ops.imp(mapping[X], mapping[Y]), lo)
    if prop == "preserves_bounds":
        return not (mapping[I] == lo and mapping[frozenset()] == hi
                    and ops.leq(lo, mapping[X]) and ops.leq(mapping[X], hi))
    raise ValueError(prop)


def verify_usl_embedding(mapping: Mapping[frozenset, int], ops, interval: tuple[int, int]) -> EmbeddingReport:
    """Exhaustively check that ``mapping`` embeds ``(P(I), ⊇)`` into ``[lo, hi]``
    preserving ⊕, the interval implication and both bounds."""
    lo, hi = interval
    rep = EmbeddingReport()
    props = ("preserves_bounds", "injective", "preserves_join", "preserves_implication")
    keys = sorted(mapping, key=lambda s: (len(s), sorted(s)))
    for X in keys:
        for Y in keys:
            for prop in props:
                if getattr(rep, prop) and _embedding_failure(mapping, ops, lo, hi, X, Y, prop):
                    setattr(rep, prop, False)
                    if rep.counterexample is None:
                        rep.counterexample = (X, Y, prop)
    return rep


def recheck_counterexample(mapping, ops, interval, counterexample) -> bool:
    X, Y, prop = counterexample
    return _embedding_failure(mapping, ops, interval[0], interval[1], X, Y, prop)


# -- canonical subsets, free subalgebras, B_n ---------------------------------------

@dataclass
class CanonicalReport:
    meet_irreducible: bool
    closed: bool
    distributes: bool
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.meet_irreducible and self.closed and self.distributes


def is_canonical_subset(alg: FiniteBrouwerAlgebra, subset: list[int]) -> CanonicalReport:
    for a in subset:
        alg.require(a)
    sub = set(subset)
    detail = []
    irreducible = True
    for a in subset:
        parts = [b for b in alg.elements if alg.leq(a, b) and b != a]  # b ⊗ c = a forces b, c >= a
        hit = next(((b, c) for b, c in combinations(parts, 2) if alg.meet(b, c) == a), None)
        if hit:
            irreducible = False
            detail.append(f"{alg.label(a)} = {alg.label(hit[0])} ⊗ {alg.label(hit[1])}")
            break
    closed = True
    for a, b in product(subset, repeat=2):
        for op, sym in ((alg.join, "⊕"), (alg.imp, "→")):
            if op(a, b) not in sub:
                closed = False
                detail.append(f"{alg.label(a)} {sym} {alg.label(b)} leaves the subset")
                break
        if not closed:
            break
    distributes = True
    for a in subset:
        for b, c in combinations(alg.elements, 2):
            if alg.imp(a, alg.meet(b, c)) != alg.meet(alg.imp(a, b), alg.imp(a, c)):
                distributes = False
                detail.append(f"→ from {alg.label(a)} fails to distribute over {alg.label(b)} ⊗ {alg.label(c)}")
                break
        if not distributes:
            break
    return CanonicalReport(irreducible, closed, distributes, "; ".join(detail))


def generated_subalgebra(alg: FiniteBrouwerAlgebra, gens: list[int]) -> FiniteBrouwerAlgebra:
    """All finite ⊗-products of a canonical generating set."""
    rep = is_canonical_subset(alg, gens)
    if not rep.ok:
        raise NotCanonical(rep.detail)
    products = set(gens)
    frontier = set(gens)
    while frontier:
        new = {alg.meet(a, g) for a in frontier for g in gens} - products
        products |= new
        frontier = new
    for a, b in product(products, repeat=2):
        for r in (alg.join(a, b), alg.meet(a, b), alg.imp(a, b)):
            if r not in products:
                raise NotCanonical("products of the generators are not closed under the operations")
    lo = max(products, key=lambda m: bin(m).count("1"))
    hi = min(products, key=lambda m: bin(m).count("1"))
    return with_carrier(alg, products, bottom=lo, top=hi, name=f"{alg.name}<gen>")


def find_isomorphism(src: FiniteBrouwerAlgebra, dst: FiniteBrouwerAlgebra) -> dict | None:
    """Backtracking search for an order isomorphism; re-verified on all operations."""
    if len(src) != len(dst):
        return None
    n = len(src)

    def profile(alg, a):
        return (sum(alg.leq(b, a) for b in alg.elements), sum(alg.leq(a, b) for b in alg.elements))

    sp = {a: profile(src, a) for a in src.elements}
    dp = {b: profile(dst, b) for b in dst.elements}
    order = sorted(src.elements, key=lambda a: sp[a])
    assign: dict[int, int] = {}
    used: set[int] = set()

    def rec(k: int) -> bool:
        if k == n:
            return True
        a = order[k]
        for b in dst.elements:
            if b in used or dp[b] != sp[a]:
                continue
            if all(src.leq(a, c) == dst.leq(b, assign[c]) and src.leq(c, a) == dst.leq(assign[c], b)
                   for c in assign):
                assign[a] = b
                used.add(b)
                if rec(k + 1):
                    return True
                del assign[a]
                used.discard(b)
        return False

    if not rec(0):
        return None
    f = assign
    ok = f[src.bottom] == dst.bottom and f[src.top] == dst.top and all(
        f[src.join(a, b)] == dst.join(f[a], f[b])
        and f[src.meet(a, b)] == dst.meet(f[a], f[b])
        and f[src.imp(a, b)] == dst.imp(f[a], f[b])
        for a in src.elements
        for b in src.elements
    )
    return dict(f) if ok else None


def isomorphic_to_bn(sub: FiniteBrouwerAlgebra, n: int) -> dict | None:
    if n < 1:
        raise ValueError("n must be positive")
    return find_isomorphism(sub, build_bn(n))


# -- witness structures ------------------------------------------------------------

@dataclass(frozen=True)
class WitnessConfig:
    n: int
    k: int
    X: tuple[frozenset, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise InvalidConfig("n and k must be at least 1")
        if len(self.X) != self.k:
            raise InvalidConfig(f"expected {self.k} subsets, got {len(self.X)}")
        full = set(range(1, self.n + 1))
        for j, Xj in enumerate(self.X, 1):
            if not set(Xj) <= full:
                raise InvalidConfig(f"X{j} = {sorted(Xj)} is not a subset of 1..{self.n}")

    @classmethod
    def of(cls, n: int, *X: Iterable[int]) -> "WitnessConfig":
        return cls(n, len(X), tuple(frozenset(x) for x in X))


@dataclass(frozen=True, eq=False)
class Witness:
    cfg: WitnessConfig
    m: int  # number of E-generators (0 for the unrelativized construction)
    structure: DegreeStructure
    ambient: int
    D: tuple[int, ...]
    a: tuple[int, ...]  # degrees of a_1 .. a_{k+1}
    b: tuple[int, ...]
    e: tuple[int, ...]
    postcondition_failures: tuple[str, ...] = ()

    @property
    def complement(self) -> int:
        return self.structure.full & ~self.ambient

    def alpha(self, check: bool = True) -> dict:
        return alpha_embedding(self.structure, self.ambient, list(self.D), check=check)


def witness_presentation(cfg: WitnessConfig, m: int = 0) -> Presentation:
    n, k = cfg.n, cfg.k
    a = [f"a{j}" for j in range(1, k + 2)]
    b = [f"b{i}" for i in range(1, n + 1)]
    e = [f"e{j}" for j in range(1, m + 1)]
    triggers = [frozenset((b[i], b[j])) for i in range(n) for j in range(i + 1, n)]
    for i in range(1, n + 1):
        for j in range(1, k + 2):
            if j == k + 1 or i not in cfg.X[j - 1]:
                triggers.append(frozenset((b[i - 1], a[j - 1])))
        for ej in e:
            triggers.append(frozenset((b[i - 1], ej)))
    keeps = [
        frozenset([b[i - 1]] + [a[j - 1] for j in range(1, k + 1) if i in cfg.X[j - 1]])
        for i in range(1, n + 1)
    ]
    return Presentation(tuple(a + b + e), (), tuple(triggers), tuple(keeps))


def _witness_from_presentation(cfg: WitnessConfig, m: int, pres: Presentation) -> Witness:
    d = degree_structure_from_presentation(pres)
    n, k = cfg.n, cfg.k
    a = tuple(d.generator_degree(f"a{j}") for j in range(1, k + 2))
    b = tuple(d.generator_degree(f"b{i}") for i in range(1, n + 1))
    e = tuple(d.generator_degree(f"e{j}") for j in range(1, m + 1))
    D = tuple(
        d.degree_of([f"b{i}"] + [f"a{j}" for j in range(1, k + 1) if i in cfg.X[j - 1]])
        for i in range(1, n + 1)
    )
    excluded = d.cone(d.top) | d.cones(e)
    ambient = d.full & ~excluded
    fails = []
    for i in range(1, n + 1):
        Di = D[i - 1]
        if not ambient >> Di & 1:
            fails.append(f"D{i} not in ambient")
        for j in range(1, k + 2):
            inside = j <= k and i in cfg.X[j - 1]
            if inside and not d.le(a[j - 1], Di):
                fails.append(f"D{i} not above a{j}")
            if not inside and d.join(Di, a[j - 1]) != d.top:
                fails.append(f"D{i} + a{j} below top")
        for j in range(1, n + 1):
            if j != i and d.join(Di, b[j - 1]) != d.top:
                fails.append(f"D{i} + b{j} below top")
        for j in range(1, m + 1):
            if d.join(Di, e[j - 1]) != d.top:
                fails.append(f"D{i} + e{j} below top")
    if all(ambient >> Di & 1 for Di in D) and not is_strong_antichain(d, ambient, list(D)):
        fails.append("D is not a strong antichain")
    return Witness(cfg, m, d, ambient, D, a, b, e, tuple(fails))


def build_main_witness(cfg: WitnessConfig, m: int = 0, drop: Iterable[frozenset] = (),
                       strict: bool = True) -> Witness:
    """Degree structure realising the join constraints on ``D_1..D_n``.

    ``m > 0`` adds E-generators for the relativised construction. ``drop``
    removes jump triggers (mutation testing); with ``strict`` the witness
    postconditions must hold.
    """
    pres = witness_presentation(cfg, m)
    for t in drop:
        t = frozenset(t)
        if t not in pres.jump_triggers:
            raise InvalidConfig(f"{sorted(t)} is not a trigger of this witness")
        pres = pres.without_trigger(t)
    w = _witness_from_presentation(cfg, m, pres)
    if strict and w.postcondition_failures:
        raise InconsistentPresentation("; ".join(w.postcondition_failures))
    return w


def columns_problem(w: Witness) -> int:
    """Union of the cones of every column generator (plus the E-generators)."""
    if w.cfg.k < 1:
        raise EmptyColumns("need at least one column")
    return w.structure.cones(w.a) | w.structure.cones(w.e)


@dataclass
class EquationReport:
    equal: bool
    lhs: int
    rhs: int
    diff: list[str] = field(default_factory=list)


def check_main_equation(w: Witness) -> EquationReport:
    """``(Ā ∪ C(D)) ⊕ columns`` against ``α(X_1) ⊗ … ⊗ α(X_k)`` as up-sets."""
    d = w.structure
    alpha = w.alpha(check=False)
    lhs = (w.complement | d.cones(w.D)) & columns_problem(w)
    rhs = 0
    for Xj in w.cfg.X:
        rhs |= alpha[Xj]
    return EquationReport(lhs == rhs, lhs, rhs, d.names(lhs ^ rhs))


def default_E(w: Witness) -> int:
    return w.structure.cones(w.e)


def default_B(w: Witness) -> int:
    """The empty mass problem (the top degree 1)."""
    return 0


def beta_embedding(d: DegreeStructure, ambient: int, fs: list[int], E: int, B: int,
                   check: bool = True) -> tuple[dict, int]:
    """``X ↦ α(X) ⊗ (E → B)``; returns the map and ``E → B``."""
    comp = d.full & ~ambient
    if E & ~comp:
        raise ENotInAmbientComplement("E must lie in the complement of the ambient set")
    if E & B == E:  # E ⊆ B means E >= B
        raise EBelowBViolation("E is above B")
    D = d.imp(E, B)
    alpha = alpha_embedding(d, ambient, fs, check=check)
    return {X: v | D for X, v in alpha.items()}, D


def check_relativized_equation(w: Witness, E: int | None = None, B: int | None = None) -> EquationReport:
    d = w.structure
    E = default_E(w) if E is None else E
    B = default_B(w) if B is None else B
    Dp = d.imp(E, B)
    alpha = w.alpha(check=False)
    lhs = ((w.complement | d.cones(w.D)) | Dp) & (columns_problem(w) | Dp)
    rhs = 0
    for Xj in w.cfg.X:
        rhs |= alpha[Xj] | Dp
    return EquationReport(lhs == rhs, lhs, rhs, d.names(lhs ^ rhs))


# -- enumeration of small presentations ----------------------------------------------

def small_presentations(max_generators: int) -> list[Presentation]:
    """Presentations on at most ``max_generators`` generators: one order per
    isomorphism class, combined with every antichain of trigger sets that
    leaves each generator below the top."""
    from .kripke import frames_of_size

    out = []
    for g in range(max_generators + 1):
        names = [f"g{i}" for i in range(1, g + 1)]
        for frame in frames_of_size(g):
            below = tuple((names[x], names[y]) for x, y in sorted(frame.rel) if x != y)
            closure = [sum(1 << x for x in range(g) if (x, y) in frame.rel) for y in range(g)]
            downsets = sorted(
                {m for m in range(1 << g) if all(closure[y] & ~m == 0 for y in bits(m))},
                key=lambda m: (bin(m).count("1"), m),
            )
            # a trigger inside some generator's closure would force that generator to the top
            candidates = [m for m in downsets if m and not any(m & c == m for c in closure)]

            def rec(start: int, chosen: list[int]):
                triggers = tuple(frozenset(names[x] for x in bits(t)) for t in chosen)
                out.append(Presentation(tuple(names), below, triggers))
                for i in range(start, len(candidates)):
                    c = candidates[i]
                    if any(t & c == t or t & c == c for t in chosen):
                        continue
                    rec(i + 1, chosen + [c])

            rec(0, [])
    return out


def sample_witness_configs(count: int, seed: int = 0, max_n: int = 3, max_k: int = 3) -> list[WitnessConfig]:
    """Seeded configs: uniform ``n`` and ``k``, each ``i`` joins each ``X_j`` with probability 1/2."""
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n, k = rng.randint(1, max_n), rng.randint(1, max_k)
        out.append(WitnessConfig.of(n, *([i for i in range(1, n + 1) if rng.random() < 0.5]
                                         for _ in range(k))))
    return out


def proof_relevant_triggers(w: Witness) -> list[frozenset]:
    """The ``{b_i, b_j}`` triggers, from which the antichain property is derived."""
    return [t for t in w.structure.presentation.jump_triggers
            if all(g.startswith("b") for g in t)]


@dataclass
class MutationResult:
    trigger: frozenset
    embedding_flags_flipped: bool
    antichain_failed: bool
    equation_diff: list[str]

    @property
    def detected(self) -> bool:
        return self.antichain_failed or bool(self.equation_diff)


def mutate_witness(cfg: WitnessConfig, trigger: frozenset, m: int = 0) -> MutationResult:
    w = build_main_witness(cfg, m=m, drop=[trigger], strict=False)
    d = w.structure
    in_ambient = all(w.ambient >> D & 1 for D in w.D)
    antichain = in_ambient and is_strong_antichain(d, w.ambient, list(w.D))
    alpha = w.alpha(check=False)
    I = frozenset(range(1, cfg.n + 1))
    rep = verify_usl_embedding(alpha, d.ops, (alpha[I], alpha[frozenset()]))
    eq = check_relativized_equation(w) if m else check_main_equation(w)
    return MutationResult(frozenset(trigger), not rep.ok, not antichain, eq.diff)

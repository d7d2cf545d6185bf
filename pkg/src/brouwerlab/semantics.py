"""Evaluating formulas in finite Brouwer algebras.

∧ is read as ⊕, ∨ as ⊗, → as Brouwer implication and ⊥ as the top 1; a
formula holds at a valuation when it evaluates to 0. Whole-theory checks run
vectorised over index tables, so every valuation of a small algebra is
evaluated in one numpy pass.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

import numpy as np

from .algebra import TABLE_CAP, FiniteBrouwerAlgebra, build_bn, with_carrier
from .errors import BudgetExceeded, NotComparable, UnboundVariable
from .formula import (
    And,
    Bottom,
    Formula,
    Implies,
    Or,
    Var,
    fresh_name,
    positify,
    sample_formula,
    to_text,
    variables,
)

DEFAULT_BUDGET = 10**7
_CHUNK = 1 << 17


def evaluate(alg, phi: Formula, v: Mapping[str, object], check: bool = True):
    """Value of ``phi`` under valuation ``v``.

    ``alg`` is anything with ``join``, ``meet``, ``imp`` and ``top``.
    """
    if check and hasattr(alg, "require"):
        for name in variables(phi):
            if name in v:
                alg.require(v[name])
    memo: dict = {}

    def ev(f):
        if f in memo:
            return memo[f]
        if isinstance(f, Var):
            try:
                r = v[f.name]
            except KeyError:
                raise UnboundVariable(f"no value for variable {f.name!r}") from None
        elif isinstance(f, Bottom):
            r = alg.top
        elif isinstance(f, And):
            r = alg.join(ev(f.left), ev(f.right))
        elif isinstance(f, Or):
            r = alg.meet(ev(f.left), ev(f.right))
        else:
            r = alg.imp(ev(f.left), ev(f.right))
        memo[f] = r
        return r

    return ev(phi)


def holds(alg, phi: Formula, v: Mapping[str, object]) -> bool:
    return evaluate(alg, phi, v) == alg.bottom


def _grid_values(alg: FiniteBrouwerAlgebra, phi: Formula, vs: list[str], idx: np.ndarray) -> np.ndarray:
    J, M, I, _ = alg.tables
    n = len(alg)
    k = len(vs)
    cols = {name: (idx // n ** (k - 1 - pos)) % n for pos, name in enumerate(vs)}
    top = np.full(idx.shape, alg.top_index, dtype=np.int32)
    memo: dict = {}

    def ev(f):
        if f in memo:
            return memo[f]
        if isinstance(f, Var):
            r = cols[f.name]
        elif isinstance(f, Bottom):
            r = top
        elif isinstance(f, And):
            r = J[ev(f.left), ev(f.right)]
        elif isinstance(f, Or):
            r = M[ev(f.left), ev(f.right)]
        else:
            r = I[ev(f.left), ev(f.right)]
        memo[f] = r
        return r

    return ev(phi)


def first_refutation(alg: FiniteBrouwerAlgebra, phi: Formula, budget: int = DEFAULT_BUDGET,
                     vs: list[str] | None = None) -> dict | None:
    """First valuation (lexicographic in carrier order, first variable slowest)
    at which ``phi`` does not evaluate to 0, or None."""
    vs = variables(phi) if vs is None else vs
    n = len(alg)
    total = n ** len(vs)
    if total > budget:
        raise BudgetExceeded(f"{total} valuations exceed the budget of {budget}")
    if n <= TABLE_CAP:
        bot = alg.bottom_index
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            vals = _grid_values(alg, phi, vs, idx)
            if np.ndim(vals) == 0:
                vals = np.broadcast_to(vals, idx.shape)
            bad = np.nonzero(vals != bot)[0]
            if bad.size:
                flat = int(idx[bad[0]])
                return {
                    name: alg.elements[(flat // n ** (len(vs) - 1 - pos)) % n]
                    for pos, name in enumerate(vs)
                }
        return None
    for combo in product(alg.elements, repeat=len(vs)):
        v = dict(zip(vs, combo))
        if evaluate(alg, phi, v, check=False) != alg.bottom:
            return v
    return None


def in_theory(alg: FiniteBrouwerAlgebra, phi: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    return first_refutation(alg, phi, budget) is None


def in_theory_many(algs, phi: Formula, chunk_rows: int = 1 << 18) -> list[bool]:
    """``in_theory`` for many small algebras in one batched sweep.

    Tables of all algebras are flattened side by side and every valuation of
    every algebra becomes one row, so each formula node costs one numpy
    gather regardless of how many algebras are checked.
    """
    vs = variables(phi)
    k = len(vs)
    results = [True] * len(algs)
    batch: list[int] = []
    rows = 0
    for i, alg in enumerate(algs):
        n = len(alg) ** k
        if batch and rows + n > chunk_rows:
            _sweep(algs, batch, phi, vs, results)
            batch, rows = [], 0
        batch.append(i)
        rows += n
    if batch:
        _sweep(algs, batch, phi, vs, results)
    return results


def _sweep(algs, batch, phi, vs, results):
    k = len(vs)
    tabs = {name: [] for name in "JMI"}
    offsets, row_off, row_n, row_alg, cols = [], [], [], [], {v: [] for v in vs}
    tops, bots = [], []
    off = 0
    for pos, i in enumerate(batch):
        alg = algs[i]
        J, M, I, _ = alg.tables
        n = len(alg)
        for name, t in zip("JMI", (J, M, I)):
            tabs[name].append(t.ravel())
        total = n ** k
        idx = np.arange(total)
        for j, v in enumerate(vs):
            cols[v].append((idx // n ** (k - 1 - j)) % n)
        row_off.append(np.full(total, off))
        row_n.append(np.full(total, n))
        row_alg.append(np.full(total, pos))
        tops.append(np.full(total, alg.top_index))
        bots.append(np.full(total, alg.bottom_index))
        off += n * n
    J, M, I = (np.concatenate(tabs[c]) for c in "JMI")
    base = np.concatenate(row_off)
    width = np.concatenate(row_n)
    owner = np.concatenate(row_alg)
    top = np.concatenate(tops)
    bot = np.concatenate(bots)
    col = {v: np.concatenate(cols[v]) for v in vs}
    memo: dict = {}

    def ev(f):
        if f in memo:
            return memo[f]
        if isinstance(f, Var):
            r = col[f.name]
        elif isinstance(f, Bottom):
            r = top
        else:
            table = J if isinstance(f, And) else M if isinstance(f, Or) else I
            r = table[base + ev(f.left) * width + ev(f.right)]
        memo[f] = r
        return r

    bad = np.unique(owner[ev(phi) != bot])
    for pos in bad:
        results[batch[pos]] = False


# -- intervals and factors -------------------------------------------------------

def interval_algebra(alg: FiniteBrouwerAlgebra, x: int, y: int) -> FiniteBrouwerAlgebra:
    """The interval ``[x, y]`` with implication ``(u -> v) ⊕ x``."""
    alg.require(x)
    alg.require(y)
    if not alg.leq(x, y):
        raise NotComparable(f"{alg.label(x)} is not below {alg.label(y)}")
    carrier = [z for z in alg.elements if alg.leq(x, z) and alg.leq(z, y)]
    name = f"{alg.name}[{alg.label(x)},{alg.label(y)}]"
    return with_carrier(alg, carrier, bottom=x, top=y, floor=alg.floor & x, name=name)


def factor_algebra(alg: FiniteBrouwerAlgebra, x: int) -> FiniteBrouwerAlgebra:
    """``alg / x``, realised as the interval ``[0, x]``."""
    return interval_algebra(alg, alg.bottom, x)


# -- countermodels via the factors of B_n ---------------------------------------------

@dataclass(frozen=True)
class Countermodel:
    formula: Formula
    n: int
    x: int
    valuation: dict
    value: int
    fresh: str | None = None
    positified: Formula | None = None

    def factor(self) -> FiniteBrouwerAlgebra:
        return factor_algebra(build_bn(self.n), self.x)

    def verify(self) -> bool:
        fac = self.factor()
        val = evaluate(fac, self.formula, self.valuation)
        return val == self.value and val != fac.bottom

    def report(self) -> dict:
        fac = self.factor()
        return {
            "n": self.n,
            "x": fac.world_set(self.x),
            "valuation": {k: fac.world_set(m) for k, m in sorted(self.valuation.items())},
            "value": fac.world_set(self.value),
        }


@dataclass(frozen=True)
class NotFoundUpToBound:
    formula: Formula
    n_max: int
    note: str = field(
        default="no countermodel in any B_n/x with n up to the bound; "
        "this is bounded evidence, not a proof of IPC membership"
    )


def countermodel_search(phi: Formula, n_max: int, budget: int = DEFAULT_BUDGET):
    """Refute ``phi`` in some factor ``B_n / x`` with ``n <= n_max``.

    ⊥ is replaced by the conjunction of all variables and one fresh one; a
    valuation refuting that positive formula in ``B_n`` gives the factor
    element ``x`` as the join of all variable images.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    fresh = fresh_name(phi)
    phi_pos = positify(phi, fresh)
    vs = variables(phi_pos)
    spent = 0
    for n in range(1, n_max + 1):
        bn = build_bn(n)
        cost = len(bn) ** len(vs)
        if spent + cost > budget:
            raise BudgetExceeded(f"search up to n={n} needs {spent + cost} evaluations")
        spent += cost
        v = first_refutation(bn, phi_pos, budget, vs)
        if v is None:
            continue
        x = bn.top
        for m in v.values():
            x = bn.join(x, m)
        fac = factor_algebra(bn, x)
        val = {k: m for k, m in v.items() if k != fresh}
        value = evaluate(fac, phi, val)
        cm = Countermodel(phi, n, x, val, value, fresh if phi_pos != phi else None, phi_pos)
        assert value != fac.bottom, "factor procedure failed to transfer the refutation"
        return cm
    return NotFoundUpToBound(phi, n_max)


# -- interval map u -> x ⊕ u ----------------------------------------------

@dataclass
class GammaReport:
    x: int
    z: int
    y: int
    preserves_join: bool = True
    preserves_meet: bool = True
    preserves_imp: bool = True
    preserves_bottom: bool = True
    preserves_top: bool = True
    surjective: bool = True
    theory_transfer: bool = True
    formulas_checked: int = 0
    formulas_valid_in_source: int = 0
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return all((self.preserves_join, self.preserves_meet, self.preserves_imp,
                    self.preserves_bottom, self.preserves_top, self.surjective,
                    self.theory_transfer))


def gamma_hom_check(alg: FiniteBrouwerAlgebra, x: int, z: int, n_formulas: int = 100,
                    seed: int = 0, formula_size: int = 5) -> GammaReport:
    """Check that ``u -> x ⊕ u`` maps ``[0, z]`` onto ``[x, x ⊕ z]`` as a Brouwer homomorphism."""
    y = alg.join(x, z)
    src = factor_algebra(alg, z)
    dst = interval_algebra(alg, x, y)
    rep = GammaReport(x, z, y)

    def gamma(u):
        return alg.join(x, u)

    def fail(attr, msg):
        setattr(rep, attr, False)
        if rep.counterexample is None:
            rep.counterexample = msg

    for u in src.elements:
        for v in src.elements:
            if gamma(src.join(u, v)) != dst.join(gamma(u), gamma(v)):
                fail("preserves_join", f"join at {alg.label(u)},{alg.label(v)}")
            if gamma(src.meet(u, v)) != dst.meet(gamma(u), gamma(v)):
                fail("preserves_meet", f"meet at {alg.label(u)},{alg.label(v)}")
            if gamma(src.imp(u, v)) != dst.imp(gamma(u), gamma(v)):
                fail("preserves_imp", f"imp at {alg.label(u)},{alg.label(v)}")
    if gamma(src.bottom) != dst.bottom:
        fail("preserves_bottom", "gamma(0) != x")
    if gamma(src.top) != dst.top:
        fail("preserves_top", "gamma(z) != y")
    image = {gamma(u) for u in src.elements}
    if image != set(dst.elements):
        fail("surjective", f"{len(set(dst.elements) - image)} elements of [x,y] missed")

    rng = random.Random(seed)
    for _ in range(n_formulas):
        phi = sample_formula(rng.randrange(1 << 30), formula_size, ["p", "q"])
        rep.formulas_checked += 1
        if in_theory(src, phi):
            rep.formulas_valid_in_source += 1
            if not in_theory(dst, phi):
                fail("theory_transfer", f"{to_text(phi)} valid in [0,z] but not in [x,y]")
    return rep

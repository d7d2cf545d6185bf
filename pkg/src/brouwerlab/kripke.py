"""Independent Kripke-model oracle for IPC.

Deliberately shares no evaluation code with the algebraic engine: frames are
plain sets of ``(w, v)`` pairs over ``range(k)``, persistent valuations are
found by filtering all subsets, and forcing is computed world by world.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product

from .errors import BudgetExceeded
from .formula import And, Bottom, Formula, Implies, Or, Var, variables

DEFAULT_MAX_WORLDS = 5


@dataclass(frozen=True)
class Frame:
    size: int
    rel: frozenset  # (w, v) with w <= v, reflexive

    def above(self, w: int) -> list[int]:
        return [v for v in range(self.size) if (w, v) in self.rel]

    def covers(self) -> list[tuple[int, int]]:
        strict = {(a, b) for a, b in self.rel if a != b}
        return sorted(
            (a, b) for a, b in strict
            if not any((a, c) in strict and (c, b) in strict for c in range(self.size))
        )

    def persistent_sets(self) -> list[frozenset]:
        out = []
        for r in range(self.size + 1):
            for s in combinations(range(self.size), r):
                s = frozenset(s)
                if all(v in s for w in s for v in self.above(w)):
                    out.append(s)
        return out


def _canonical(size: int, rel: frozenset) -> frozenset:
    down = [sum((b, a) in rel for b in range(size)) for a in range(size)]
    up = [sum((a, b) in rel for b in range(size)) for a in range(size)]
    inv = [(down[a], up[a]) for a in range(size)]
    keys = sorted(set(inv))
    groups = [[a for a in range(size) if inv[a] == k] for k in keys]
    best = None
    for perms in product(*(permutations(g) for g in groups)):
        order = [a for p in perms for a in p]
        pos = {a: i for i, a in enumerate(order)}
        cand = tuple(sorted((pos[a], pos[b]) for a, b in rel))
        if best is None or cand < best:
            best = cand
    return frozenset(best)


@lru_cache(maxsize=None)
def frames_of_size(k: int) -> tuple[Frame, ...]:
    """All posets with ``k`` points, one per isomorphism class."""
    if k == 0:
        return (Frame(0, frozenset()),)
    seen = set()
    out = []
    for base in frames_of_size(k - 1):
        # attach a new maximal point above an arbitrary down-set
        for r in range(k):
            for d in combinations(range(k - 1), r):
                if not all(b in d for a in d for b in range(k - 1) if (b, a) in base.rel):
                    continue
                rel = set(base.rel) | {(a, k - 1) for a in d} | {(k - 1, k - 1)}
                canon = _canonical(k, frozenset(rel))
                if canon not in seen:
                    seen.add(canon)
                    out.append(Frame(k, canon))
    out.sort(key=lambda f: sorted(f.rel))
    return tuple(out)


def forces(frame: Frame, val: dict, w: int, phi: Formula, _memo=None) -> bool:
    memo = {} if _memo is None else _memo
    key = (w, phi)
    if key in memo:
        return memo[key]
    if isinstance(phi, Var):
        r = w in val[phi.name]
    elif isinstance(phi, Bottom):
        r = False
    elif isinstance(phi, And):
        r = forces(frame, val, w, phi.left, memo) and forces(frame, val, w, phi.right, memo)
    elif isinstance(phi, Or):
        r = forces(frame, val, w, phi.left, memo) or forces(frame, val, w, phi.right, memo)
    else:
        r = all(
            not forces(frame, val, v, phi.left, memo) or forces(frame, val, v, phi.right, memo)
            for v in frame.above(w)
        )
    memo[key] = r
    return r


def forcing_set(frame: Frame, val: dict, phi: Formula) -> frozenset:
    memo: dict = {}
    return frozenset(w for w in range(frame.size) if forces(frame, val, w, phi, memo))


@dataclass(frozen=True)
class ValidUpToBound:
    max_worlds: int


@dataclass(frozen=True)
class KripkeCountermodel:
    frame: Frame
    valuation: dict
    world: int

    def report(self) -> dict:
        return {
            "worlds": self.frame.size,
            "covers": [list(c) for c in self.frame.covers()],
            "valuation": {k: sorted(v) for k, v in sorted(self.valuation.items())},
            "failing_world": self.world,
        }


def kripke_ipc_oracle(phi: Formula, max_worlds: int = DEFAULT_MAX_WORLDS, budget: int = 10**7):
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    vs = variables(phi)
    spent = 0
    for k in range(1, max_worlds + 1):
        for frame in frames_of_size(k):
            ups = frame.persistent_sets()
            for combo in product(ups, repeat=len(vs)):
                spent += 1
                if spent > budget:
                    raise BudgetExceeded(f"more than {budget} Kripke models examined")
                val = dict(zip(vs, combo))
                memo: dict = {}
                for w in range(k):
                    if not forces(frame, val, w, phi, memo):
                        return KripkeCountermodel(frame, val, w)
    return ValidUpToBound(max_worlds)

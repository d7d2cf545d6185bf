"""Finite Brouwer algebras of up-sets.

Every algebra here is a set of up-sets of some backing poset, ordered by
reverse inclusion: ``a <= b`` iff ``a ⊇ b``. Join ⊕ is intersection, meet ⊗
is union, the whole set is 0 and the empty set is 1. Intervals and
subalgebras share the backing poset and only change the carrier, the bounds
and the ``floor`` that implication results are intersected with.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import CarrierTooLarge, InvalidN, NotComparable, NotInCarrier
from .poset import Poset, bits, enumerate_upsets, poset_from_relation

CARRIER_CAP = 4096
TABLE_CAP = 1024


def pointwise_imp(p: Poset, a: int, b: int) -> int:
    """Largest up-set ``c`` with ``a ∩ c ⊆ b``: points whose whole up-cone avoids ``a \\ b``."""
    bad = a & ~b
    if not bad:
        return p.full
    reach = 0
    down = p.down
    for i in bits(bad):
        reach |= down[i]
    return p.full & ~reach


@dataclass(frozen=True, eq=False)
class UpsetOps:
    """Brouwer operations on up-set masks of ``space`` without an enumerated carrier.

    Used directly for structures whose up-set lattice is too large to list.
    """

    space: Poset
    bottom: int
    top: int
    floor: int  # implication results are intersected with this (interval bottom)
    name: str = ""

    def join(self, a: int, b: int) -> int:
        return a & b

    def meet(self, a: int, b: int) -> int:
        return a | b

    def imp(self, a: int, b: int) -> int:
        return pointwise_imp(self.space, a, b) & self.floor

    def leq(self, a: int, b: int) -> bool:
        return a & b == b

    def neg(self, a: int) -> int:
        return self.imp(a, self.top)

    def require(self, a: int) -> int:
        if not (self.space.is_upset(a) and self.leq(self.bottom, a) and self.leq(a, self.top)):
            raise NotInCarrier(f"mask {a:#x} is not an element of {self.name or 'the algebra'}")
        return a

    def interval(self, x: int, y: int) -> "UpsetOps":
        if not self.leq(x, y):
            raise NotComparable("interval bounds are not ordered")
        return UpsetOps(self.space, x, y, self.floor & x, f"{self.name}[..]")

    def world_set(self, a: int) -> list:
        return self.space.members(a)

    def enumerate(self, cap: int = CARRIER_CAP) -> "FiniteBrouwerAlgebra":
        carrier = enumerate_upsets(self.space, within=self.bottom, base=self.top, limit=cap)
        return FiniteBrouwerAlgebra(self.space, self.bottom, self.top, self.floor, self.name,
                                    tuple(carrier))


def lazy_upset_algebra(p: Poset, name: str = "") -> UpsetOps:
    return UpsetOps(p, p.full, 0, p.full, name)


@dataclass(frozen=True, eq=False)
class FiniteBrouwerAlgebra(UpsetOps):
    elements: tuple = ()  # up-set masks in canonical (cardinality, mask) order

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self.index

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def require(self, a: int) -> int:
        if a not in self.index:
            raise NotInCarrier(f"mask {a:#x} is not an element of {self.name or 'the algebra'}")
        return a

    def label(self, a: int) -> str:
        return f"U{self.index[a]}"

    # -- index tables ---------------------------------------------------------
    @cached_property
    def tables(self):
        """``(join, meet, imp, leq)`` as numpy index tables over the carrier."""
        n = len(self.elements)
        if n > TABLE_CAP:
            raise CarrierTooLarge(f"carrier of size {n} exceeds table cap {TABLE_CAP}")
        idx = self.index
        el = self.elements
        J = np.empty((n, n), dtype=np.int32)
        M = np.empty((n, n), dtype=np.int32)
        I = np.empty((n, n), dtype=np.int32)
        for i, a in enumerate(el):
            for j, b in enumerate(el):
                try:
                    J[i, j] = idx[a & b]
                    M[i, j] = idx[a | b]
                    I[i, j] = idx[self.imp(a, b)]
                except KeyError as exc:
                    raise NotInCarrier(
                        f"operation on {self.label(a)}, {self.label(b)} leaves the carrier"
                    ) from exc
        L = J == np.arange(n)[None, :]  # L[a, b]: a <= b iff a ⊕ b = b
        return J, M, I, L

    @property
    def bottom_index(self) -> int:
        return self.index[self.bottom]

    @property
    def top_index(self) -> int:
        return self.index[self.top]


def upset_brouwer_algebra(p: Poset, cap: int = CARRIER_CAP, name: str = "") -> FiniteBrouwerAlgebra:
    carrier = enumerate_upsets(p, limit=cap)
    return FiniteBrouwerAlgebra(p, p.full, 0, p.full, name, tuple(carrier))


def subset_label(s) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


def bn_poset(n: int) -> Poset:
    """Nonempty subsets of {1..n} ordered by X <= Y iff X ⊇ Y."""
    subsets = [
        frozenset(c)
        for r in range(1, n + 1)
        for c in combinations(range(1, n + 1), r)
    ]
    labels = [subset_label(s) for s in subsets]
    by_label = dict(zip(labels, subsets))
    return poset_from_relation(labels, lambda x, y: by_label[x] >= by_label[y])


def build_bn(n: int, cap: int = CARRIER_CAP) -> FiniteBrouwerAlgebra:
    if n < 1:
        raise InvalidN(f"n must be positive, got {n}")
    return upset_brouwer_algebra(bn_poset(n), cap=cap, name=f"bn:{n}")


def with_carrier(alg: FiniteBrouwerAlgebra, carrier, **changes) -> FiniteBrouwerAlgebra:
    carrier = sorted(set(carrier), key=lambda m: (bin(m).count("1"), m))
    return replace(alg, elements=tuple(carrier), **changes)


# -- exhaustive law checks ------------------------------------------------------

def check_brouwer_laws(alg: FiniteBrouwerAlgebra) -> dict[str, bool]:
    """Exhaustively check the bounded distributive lattice laws and the adjunction.

    Returns a mapping law name -> holds.
    """
    J, M, I, L = alg.tables
    n = len(alg)
    r = np.arange(n)
    A = r[:, None, None]
    B = r[None, :, None]
    C = r[None, None, :]
    bot, top = alg.bottom_index, alg.top_index
    R = r[:, None]
    return {
        "join_commutative": bool((J == J.T).all()),
        "meet_commutative": bool((M == M.T).all()),
        "join_idempotent": bool((J[r, r] == r).all()),
        "meet_idempotent": bool((M[r, r] == r).all()),
        "join_associative": bool((J[J[A, B], C] == J[A, J[B, C]]).all()),
        "meet_associative": bool((M[M[A, B], C] == M[A, M[B, C]]).all()),
        "absorption": bool((J[R, M] == R).all() and (M[R, J] == R).all()),
        "distributive": bool((J[A, M[B, C]] == M[J[A, B], J[A, C]]).all()),
        "bounds": bool((J[bot] == r).all() and (M[top] == r).all()),
        "order_is_partial": bool(L[r, r].all() and not (L & L.T & (R != r[None, :])).any()),
        # c >= a -> b  iff  a ⊕ c >= b
        "adjunction": bool((L[I[A, B], C] == L[B, J[A, C]]).all()),
    }

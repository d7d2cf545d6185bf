"""Finite posets and enumeration of their up-sets.

Elements are kept in a fixed order; element ``i`` is bit ``i`` of every
membership mask. ``up[i]`` is the mask of all elements ``>= i`` (including
``i`` itself), which is all the order information most callers need.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import CarrierTooLarge, CyclicOrder, DuplicateElement, InputFormatError, UnknownElement

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Poset:
    elements: tuple
    up: tuple  # up[i] = mask of {j : i <= j}

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise DuplicateElement("poset elements must be distinct")
        if len(self.up) != len(self.elements):
            raise ValueError("up table length does not match elements")

    def __len__(self):
        return len(self.elements)

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def down(self) -> tuple:
        down = [0] * len(self.elements)
        for i, m in enumerate(self.up):
            for j in bits(m):
                down[j] |= 1 << i
        return tuple(down)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def le(self, x: Hashable, y: Hashable) -> bool:
        return bool(self.up[self.index[x]] >> self.index[y] & 1)

    @property
    def leq(self) -> frozenset:
        """The full order relation as a set of ``(x, y)`` pairs with ``x <= y``."""
        return frozenset(
            (self.elements[i], self.elements[j])
            for i, m in enumerate(self.up)
            for j in bits(m)
        )

    def validate(self) -> None:
        """Exhaustive reflexivity / antisymmetry / transitivity check."""
        n = len(self.elements)
        for i in range(n):
            if not self.up[i] >> i & 1:
                raise ValueError(f"not reflexive at {self.elements[i]!r}")
            for j in bits(self.up[i]):
                if j != i and self.up[j] >> i & 1:
                    raise CyclicOrder(
                        f"{self.elements[i]!r} and {self.elements[j]!r} are mutually below"
                    )
                for k in bits(self.up[j]):
                    if not self.up[i] >> k & 1:
                        raise ValueError("not transitive")

    def mask_of(self, members: Iterable[Hashable]) -> int:
        m = 0
        for e in members:
            m |= 1 << self.index[e]
        return m

    def members(self, mask: int) -> list:
        return [self.elements[i] for i in bits(mask)]

    def is_upset(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def is_downset(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in bits(mask))

    def upclosure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def maximal(self, mask: int | None = None) -> list[int]:
        """Indices of maximal elements of the sub-poset on ``mask``."""
        mask = self.full if mask is None else mask
        return [i for i in bits(mask) if self.up[i] & mask == 1 << i]

    def minimal(self, mask: int | None = None) -> list[int]:
        mask = self.full if mask is None else mask
        return [i for i in bits(mask) if self.down[i] & mask == 1 << i]

    def linear_extension(self) -> list[int]:
        """Indices ordered so that every element precedes the elements above it."""
        return sorted(range(len(self.elements)), key=lambda i: -bin(self.up[i]).count("1"))


def poset_from_relation(elements: Sequence, le) -> Poset:
    """Build a poset from a complete order predicate ``le(x, y)`` (not checked)."""
    n = len(elements)
    up = tuple(
        sum(1 << j for j in range(n) if le(elements[i], elements[j])) for i in range(n)
    )
    return Poset(tuple(elements), up)


def poset_from_covers(elements: Sequence, covers: Iterable[tuple]) -> Poset:
    """Reflexive-transitive closure of a cover relation ``(lower, upper)``."""
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        seen = set()
        dup = next(e for e in elements if e in seen or seen.add(e))
        raise DuplicateElement(f"duplicate element {dup!r}")
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    succ = [0] * n
    for lo, hi in covers:
        for e in (lo, hi):
            if e not in index:
                raise UnknownElement(f"unknown element {e!r}")
        succ[index[lo]] |= 1 << index[hi]

    up = [0] * n
    # iterate to a fixed point; n is small for every text-format input
    for i in range(n):
        up[i] = (1 << i) | succ[i]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            m = up[i]
            for j in bits(m & ~(1 << i)):
                m |= up[j]
            if m != up[i]:
                up[i] = m
                changed = True
    for i in range(n):
        for j in bits(up[i] & ~(1 << i)):
            if up[j] >> i & 1:
                raise CyclicOrder(f"{elements[i]!r} and {elements[j]!r} form a cycle")
    return Poset(elements, tuple(up))


def chain(n: int) -> Poset:
    names = [f"c{i}" for i in range(n)]
    return poset_from_covers(names, zip(names, names[1:]))


def antichain(n: int) -> Poset:
    return poset_from_covers([f"t{i}" for i in range(n)], [])


def enumerate_upsets(p: Poset, within: int | None = None, base: int = 0,
                     limit: int | None = None) -> list[int]:
    """All up-set masks of ``p``, sorted by (cardinality, mask).

    With ``within``/``base`` given, enumerates the up-sets ``U`` with
    ``base <= U <= within`` (both must be up-sets themselves). Raises
    :class:`CarrierTooLarge` once more than ``limit`` sets are produced.
    """
    within = p.full if within is None else within
    free = within & ~base
    order = [i for i in p.linear_extension()[::-1] if free >> i & 1]  # maximal first
    out: list[int] = []

    def rec(k: int, mask: int) -> None:
        if k == len(order):
            out.append(mask)
            if limit is not None and len(out) > limit:
                raise CarrierTooLarge(f"more than {limit} up-sets")
            return
        i = order[k]
        # everything strictly above i was decided earlier
        if p.up[i] & ~mask == 1 << i:
            rec(k + 1, mask | (1 << i))
        rec(k + 1, mask)

    rec(0, base)
    out.sort(key=lambda m: (bin(m).count("1"), m))
    return out


def brute_force_upset_count(p: Poset) -> int:
    """Independent count: filter the whole power set for upward closure."""
    n = len(p)
    count = 0
    for mask in range(1 << n):
        ok = True
        for i in range(n):
            if mask >> i & 1:
                for j in range(n):
                    if p.le(p.elements[i], p.elements[j]) and not mask >> j & 1:
                        ok = False
                        break
            if not ok:
                break
        count += ok
    return count


def parse_poset_text(text: str) -> Poset:
    """Parse the line format::

        elements: a b c
        covers: a<b a<c
    """
    elements: list[str] = []
    covers: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise InputFormatError(f"line {lineno}: expected 'key: values'")
        key = key.strip()
        tokens = rest.split()
        if key == "elements":
            for tok in tokens:
                if not IDENT.match(tok):
                    raise InputFormatError(f"line {lineno}: bad identifier {tok!r}")
            elements.extend(tokens)
        elif key == "covers":
            for tok in tokens:
                lo, sep, hi = tok.partition("<")
                if not sep or not IDENT.match(lo) or not IDENT.match(hi):
                    raise InputFormatError(f"line {lineno}: bad cover {tok!r}")
                covers.append((lo, hi))
        else:
            raise InputFormatError(f"line {lineno}: unknown key {key!r}")
    return poset_from_covers(elements, covers)

"""Propositional formulas: syntax trees, parser, printer, positification.

Grammar (``~`` binds tightest, ``->`` is right-associative)::

    formula := imp
    imp     := or ('->' imp)?
    or      := and ('|' and)*
    and     := neg ('&' neg)*
    neg     := '~'* atom
    atom    := identifier | 'F' | '(' formula ')'

``F`` is falsum and ``~e`` is sugar for ``e -> F``; negation is never a node.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Union

from .errors import FormulaSyntaxError, FreshNotFresh


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Bottom, And, Or, Implies]
BOT = Bottom()


def neg(f: Formula) -> Formula:
    return Implies(f, BOT)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(->)|([~&|()])|([A-Za-z][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        tok = m.group(1) or m.group(2) or m.group(3)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("<end>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what: str):
        tok, pos = self.tokens[self.i]
        raise FormulaSyntaxError(f"expected {what}, found {tok!r}", pos)

    def formula(self) -> Formula:
        return self.imp()

    def imp(self) -> Formula:
        left = self.or_()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.imp())
        return left

    def or_(self) -> Formula:
        f = self.and_()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.and_())
        return f

    def and_(self) -> Formula:
        f = self.neg()
        while self.peek() == "&":
            self.take()
            f = And(f, self.neg())
        return f

    def neg(self) -> Formula:
        count = 0
        while self.peek() == "~":
            self.take()
            count += 1
        f = self.atom()
        for _ in range(count):
            f = Implies(f, BOT)
        return f

    def atom(self) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.take()
            f = self.formula()
            if self.peek() != ")":
                self.fail("')'")
            self.take()
            return f
        if tok == "F":
            self.take()
            return BOT
        if tok[0].isalpha() and tok != "<end>":
            self.take()
            return Var(tok)
        self.fail("an atom")


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "<end>":
        p.fail("end of input")
    return f


# -- printing ----------------------------------------------------------------

def to_text(f: Formula, ctx: int = 0) -> str:
    """Render with minimal parentheses; ``parse_formula(to_text(f)) == f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bottom):
        return "F"
    if isinstance(f, Implies) and isinstance(f.right, Bottom):
        return "~" + to_text(f.left, 4)
    if isinstance(f, Implies):
        s, prec = f"{to_text(f.left, 2)} -> {to_text(f.right, 1)}", 1
    elif isinstance(f, Or):
        s, prec = f"{to_text(f.left, 2)} | {to_text(f.right, 3)}", 2
    else:
        s, prec = f"{to_text(f.left, 3)} & {to_text(f.right, 4)}", 3
    return f"({s})" if ctx > prec else s


# -- structural helpers --------------------------------------------------------

def variables(f: Formula) -> list[str]:
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        elif not isinstance(g, Bottom):
            stack.extend((g.left, g.right))
    return sorted(out)


def connectives(f: Formula) -> int:
    if isinstance(f, (Var, Bottom)):
        return 0
    return 1 + connectives(f.left) + connectives(f.right)


def is_positive(f: Formula) -> bool:
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Var):
        return True
    return is_positive(f.left) and is_positive(f.right)


def substitute_bottom(f: Formula, repl: Formula) -> Formula:
    if isinstance(f, Bottom):
        return repl
    if isinstance(f, Var):
        return f
    return type(f)(substitute_bottom(f.left, repl), substitute_bottom(f.right, repl))


def conjunction(fs: Iterable[Formula]) -> Formula:
    return reduce(And, fs)


def positify(phi: Formula, fresh: str = "x_fresh") -> Formula:
    """Replace every ⊥ by the conjunction of all variables of ``phi`` and ``fresh``."""
    vs = variables(phi)
    if fresh in vs:
        raise FreshNotFresh(f"{fresh!r} already occurs in the formula")
    if is_positive(phi):
        return phi
    return substitute_bottom(phi, conjunction(Var(v) for v in [*vs, fresh]))


def fresh_name(phi: Formula, stem: str = "q") -> str:
    used = set(variables(phi))
    if stem not in used:
        return stem
    i = 1
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


# -- random generation ---------------------------------------------------------

BOTTOM_LEAF_PROB = 0.1
CONNECTIVES = (And, Or, Implies)


def sample_formula(seed: int, size: int, vars: list[str], rng: random.Random | None = None) -> Formula:
    """Deterministic random formula with exactly ``size`` binary connectives.

    Connectives are uniform over ∧, ∨, →; the connective budget is split
    uniformly between the two subtrees; a leaf is ⊥ with probability 0.1 and
    otherwise a uniformly chosen variable.
    """
    if not vars:
        raise ValueError("need at least one variable")
    rng = rng or random.Random(seed)

    def gen(budget: int) -> Formula:
        if budget == 0:
            if rng.random() < BOTTOM_LEAF_PROB:
                return BOT
            return Var(rng.choice(vars))
        op = rng.choice(CONNECTIVES)
        left = rng.randint(0, budget - 1)
        return op(gen(left), gen(budget - 1 - left))

    return gen(size)


def sample_positive_formula(seed: int, size: int, vars: list[str]) -> Formula:
    rng = random.Random(seed)
    while True:
        f = sample_formula(seed, size, vars, rng=rng)
        if is_positive(f):
            return f

"""Normal-form word arithmetic in a free product of two factor groups.

A word is an alternating sequence of letters ``(side, element)`` with no
factor-identity letters; the empty word is the group identity.  Every
operation returns words already in normal form.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .groups import CyclicGroup, FactorGroup, FiniteTableGroup, IntegerGroup

__all__ = [
    "A",
    "B",
    "Splitting",
    "Word",
    "IDENTITY",
    "reduce",
    "multiply",
    "invert",
    "power",
    "conjugate",
    "cyclically_reduce",
    "parse_word",
    "format_word",
    "random_word",
    "enumerate_words",
]

A = "A"
B = "B"

Letter = tuple[str, int]


def other_side(side: str) -> str:
    return B if side == A else A


@dataclass(frozen=True)
class Splitting:
    """An ordered pair of non-trivial factor groups."""

    A: FactorGroup
    B: FactorGroup

    def __post_init__(self) -> None:
        for factor in (self.A, self.B):
            if factor.is_finite and factor.size < 2:
                raise ValueError("factors must be non-trivial")

    def factor(self, side: str) -> FactorGroup:
        if side == A:
            return self.A
        if side == B:
            return self.B
        raise ValueError(f"unknown side {side!r}")


@dataclass(frozen=True)
class Word:
    """A reduced word: alternating sides, no identity letters."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)


IDENTITY = Word()


def reduce(s: Splitting, raw: Iterable[Letter]) -> Word:
    """Normal form of a raw letter sequence.

    Adjacent same-side letters merge via factor multiplication and identity
    letters disappear, repeatedly, until the sequence alternates.
    """
    out: list[Letter] = []
    for side, x in raw:
        factor = s.factor(side)
        factor.check(x)
        while True:
            if factor.is_identity(x):
                break
            if out and out[-1][0] == side:
                x = factor.mul(out.pop()[1], x)
                continue
            out.append((side, x))
            break
    return Word(tuple(out))


def validate_word(s: Splitting, g: Word) -> Word:
    """Check the normal-form invariants; return ``g`` unchanged."""
    prev = None
    for side, x in g.letters:
        factor = s.factor(side)
        factor.check(x)
        if factor.is_identity(x):
            raise ValueError("identity letter in word")
        if side == prev:
            raise ValueError("adjacent letters on the same side")
        prev = side
    return g


def multiply(s: Splitting, g: Word, h: Word) -> Word:
    return reduce(s, g.letters + h.letters)


def invert(s: Splitting, g: Word) -> Word:
    letters = tuple((side, s.factor(side).inv(x)) for side, x in reversed(g.letters))
    return Word(letters)


def power(s: Splitting, g: Word, n: int) -> Word:
    """g^n by repeated squaring on reduced words."""
    if n < 0:
        g, n = invert(s, g), -n
    acc, sq = IDENTITY, g
    while n:
        if n & 1:
            acc = multiply(s, acc, sq)
        sq = multiply(s, sq, sq)
        n >>= 1
    return acc


def conjugate(s: Splitting, h: Word, g: Word) -> Word:
    """h g h^-1."""
    return multiply(s, multiply(s, h, g), invert(s, h))


def cyclically_reduce(s: Splitting, g: Word) -> tuple[Word, Word]:
    """Split ``g`` as conjugator * core * conjugator^-1.

    The core either lies in a single factor (at most one letter) or its
    normal form starts and ends in different factors.
    """
    core = g
    stripped: list[Letter] = []
    while len(core) >= 2 and core.letters[0][0] == core.letters[-1][0]:
        first = core.letters[0]
        core = reduce(s, core.letters[1:] + (first,))
        stripped.append(first)
    conjugator = Word(tuple(stripped))
    return core, conjugator


_GEN_TOKEN = re.compile(r"^([ab])(?:\^(-?\d+))?$")
_INDEX_TOKEN = re.compile(r"^([AB])\[(\d+)\](?:\^(-?\d+))?$")


class WordSyntaxError(ValueError):
    """Malformed word text; carries the character position of the bad token."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _letter_from_token(s: Splitting, token: str, position: int) -> Letter:
    m = _GEN_TOKEN.match(token)
    if m:
        side = A if m.group(1) == "a" else B
        factor = s.factor(side)
        if isinstance(factor, FiniteTableGroup):
            raise WordSyntaxError(
                f"factor {side} is a table group; use {side}[i] tokens", position
            )
        k = int(m.group(2)) if m.group(2) is not None else 1
        if isinstance(factor, CyclicGroup):
            return side, k % factor.n
        return side, k
    m = _INDEX_TOKEN.match(token)
    if m:
        side = m.group(1)
        factor = s.factor(side)
        if not isinstance(factor, FiniteTableGroup):
            raise WordSyntaxError(f"factor {side} is not a table group", position)
        index = int(m.group(2))
        if not factor.is_element(index):
            raise WordSyntaxError(f"element index {index} out of range", position)
        k = int(m.group(3)) if m.group(3) is not None else 1
        return side, factor.power(index, k)
    raise WordSyntaxError(f"cannot parse token {token!r}", position)


def parse_word(s: Splitting, text: str) -> Word:
    """Parse whitespace-separated generator tokens; the empty text is the identity.

    Grammar: ``a``, ``b``, ``a^k``, ``b^k`` for integer/cyclic factors, and
    ``A[i]``, ``B[j]`` (optionally with ``^k``) for table-group factors.
    """
    letters = []
    for m in re.finditer(r"\S+", text):
        letters.append(_letter_from_token(s, m.group(0), m.start()))
    return reduce(s, letters)


def _format_letter(s: Splitting, side: str, x: int) -> str:
    factor = s.factor(side)
    if isinstance(factor, FiniteTableGroup):
        return f"{side}[{x}]"
    name = "a" if side == A else "b"
    return name if x == 1 else f"{name}^{x}"


def format_word(s: Splitting, g: Word) -> str:
    """Inverse of parse_word on normal forms; the identity formats as ''."""
    return " ".join(_format_letter(s, side, x) for side, x in g.letters)


def _random_letter(factor: FactorGroup, side: str, exponent_bound: int, rng: random.Random) -> Letter:
    if isinstance(factor, IntegerGroup):
        k = rng.randint(1, exponent_bound)
        return side, k if rng.random() < 0.5 else -k
    choices = [x for x in factor.elements() if not factor.is_identity(x)]
    return side, rng.choice(choices)


def random_word(
    s: Splitting,
    length_bound: int,
    exponent_bound: int,
    rng: random.Random | int,
) -> Word:
    """A uniform-ish random reduced word; deterministic for a fixed seed."""
    if length_bound < 1 or exponent_bound < 1:
        raise ValueError("bounds must be >= 1")
    if isinstance(rng, int):
        rng = random.Random(rng)
    length = rng.randint(0, length_bound)
    side = A if rng.random() < 0.5 else B
    letters = []
    for _ in range(length):
        letters.append(_random_letter(s.factor(side), side, exponent_bound, rng))
        side = other_side(side)
    return Word(tuple(letters))


def _nonzero_elements(factor: FactorGroup, exponent_bound: int) -> list[int]:
    if isinstance(factor, IntegerGroup):
        return [k for k in range(-exponent_bound, exponent_bound + 1) if k]
    return [x for x in factor.elements() if not factor.is_identity(x)]


def enumerate_words(s: Splitting, max_letters: int, exponent_bound: int) -> Iterator[Word]:
    """All reduced words with at most ``max_letters`` normal-form letters.

    Integer-factor exponents range over [-exponent_bound, exponent_bound].
    """
    choices = {side: _nonzero_elements(s.factor(side), exponent_bound) for side in (A, B)}
    yield IDENTITY

    def extend(prefix: tuple[Letter, ...], side: str, remaining: int) -> Iterator[Word]:
        for x in choices[side]:
            word = prefix + ((side, x),)
            yield Word(word)
            if remaining > 1:
                yield from extend(word, other_side(side), remaining - 1)

    if max_letters >= 1:
        yield from extend((), A, max_letters)
        yield from extend((), B, max_letters)

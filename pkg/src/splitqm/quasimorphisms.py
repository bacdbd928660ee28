"""Real-valued split quasimorphisms on a free product.

A factor map decomposes as slope + finite support + periodic part + sign
tail; the split map sums factor values over normal-form letters.  All values
are exact rationals, defects are exact suprema computed by finite
enumeration, and homogenization goes through cyclic reduction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional

from .groups import CyclicGroup, FactorGroup, IntegerGroup
from .words import (
    A,
    B,
    Splitting,
    Word,
    cyclically_reduce,
    multiply,
    other_side,
    random_word,
    validate_word,
)

__all__ = [
    "FactorQM",
    "SplitQM",
    "eval_factor",
    "eval_split",
    "coboundary",
    "factor_defect_exact",
    "factor_defect_witness",
    "split_defect",
    "default_sampler",
    "cached_evaluator",
    "sampled_defect",
    "homogenize_eval",
    "doubling_witness",
    "maximize_doubling_witness",
    "gromov_norm",
    "is_trivial",
    "rademacher",
    "weight_qm",
]

Rational = Fraction


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _sgn(k: int) -> int:
    return (k > 0) - (k < 0)


@dataclass(frozen=True)
class FactorQM:
    """An alternating quasimorphism on one factor group.

    On the integers the value at the k-th generator power is

        slope*k + finite_part(k) + residues[k mod period] + sign_coeff*sgn(k);

    on a finite factor only ``finite_part`` (a table on elements) applies.
    """

    group: FactorGroup
    slope: Fraction = Fraction(0)
    finite_part: Mapping[int, Fraction] = field(default_factory=dict)
    period: Optional[int] = None
    residues: tuple[Fraction, ...] = ()
    sign_coeff: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "slope", _fr(self.slope))
        object.__setattr__(self, "sign_coeff", _fr(self.sign_coeff))
        cleaned = {}
        for x, value in self.finite_part.items():
            self.group.check(x)
            value = _fr(value)
            if value:
                cleaned[x] = value
        object.__setattr__(self, "finite_part", cleaned)
        object.__setattr__(self, "residues", tuple(_fr(v) for v in self.residues))
        integer = isinstance(self.group, IntegerGroup)
        if not integer and (self.slope or self.sign_coeff or self.period is not None):
            raise ValueError("slope/period/sign parts need an integer factor")
        if (self.period is None) != (len(self.residues) == 0):
            raise ValueError("period and residue table must come together")
        if self.period is not None:
            if self.period < 1 or len(self.residues) != self.period:
                raise ValueError("residue table length must equal the period")
        self._validate_alternating()

    # -- validation ------------------------------------------------------

    def _validate_alternating(self) -> None:
        group = self.group
        if self(group.identity):
            raise ValueError("factor map must vanish at the identity")
        if group.is_finite:
            for x in group.elements():
                if self(group.inv(x)) != -self(x):
                    raise ValueError(f"factor map is not alternating at {x}")
        else:
            for k in range(self.alternation_window + 1):
                if self(-k) != -self(k):
                    raise ValueError(f"factor map is not alternating at {k}")

    @property
    def support_radius(self) -> int:
        """Largest |k| (integer factor) carrying a finite-part value."""
        return max((abs(k) for k in self.finite_part), default=0)

    @property
    def period_or_one(self) -> int:
        return self.period if self.period is not None else 1

    @property
    def alternation_window(self) -> int:
        """Checking alternation on [0, M + n + 1] certifies it everywhere:
        past the finite support the map is periodic plus a sign constant."""
        return self.support_radius + self.period_or_one + 1

    @property
    def is_bounded(self) -> bool:
        return self.slope == 0

    @property
    def is_zero(self) -> bool:
        if self.group.is_finite:
            return all(self(x) == 0 for x in self.group.elements())
        window = self.alternation_window
        return self.slope == 0 and all(self(k) == 0 for k in range(1, window + 1))

    # -- evaluation ------------------------------------------------------

    def __call__(self, x: int) -> Fraction:
        self.group.check(x)
        if not isinstance(self.group, IntegerGroup):
            return self.finite_part.get(x, Fraction(0))
        value = self.slope * x + self.finite_part.get(x, Fraction(0))
        if self.period is not None:
            value += self.residues[x % self.period]
        value += self.sign_coeff * _sgn(x)
        return value

    # -- defect ----------------------------------------------------------

    def defect_window(self, scale: int = 1) -> int:
        """Enumeration window certifying the exact defect on the integers.

        Beyond the support radius the map is periodic plus sign/slope terms,
        so the coboundary takes finitely many values, all realized for
        |k|, |l| <= 2*(M + n + 2).  ``scale`` widens the window for
        cross-checks.
        """
        return 2 * (self.support_radius + self.period_or_one + 2) * scale

    def _pairs(self, scale: int = 1) -> Iterator[tuple[int, int]]:
        group = self.group
        if group.is_finite:
            for x in group.elements():
                for y in group.elements():
                    yield x, y
        else:
            window = self.defect_window(scale)
            for x in range(-window, window + 1):
                for y in range(-window, window + 1):
                    yield x, y

    def coboundary(self, x: int, y: int) -> Fraction:
        return self(x) + self(y) - self(self.group.mul(x, y))

    def defect_witness(self, scale: int = 1) -> tuple[Fraction, int, int]:
        """(exact defect, maximizing pair)."""
        best = (Fraction(0), self.group.identity, self.group.identity)
        for x, y in self._pairs(scale):
            value = abs(self.coboundary(x, y))
            if value > best[0]:
                best = (value, x, y)
        return best

    def defect(self, scale: int = 1) -> Fraction:
        return self.defect_witness(scale)[0]


def eval_factor(q: FactorQM, x: int) -> Fraction:
    return q(x)


def factor_defect_exact(d: FactorGroup, q: FactorQM, scale: int = 1) -> Fraction:
    if d != q.group:
        raise ValueError("descriptor does not match the factor map")
    return q.defect(scale)


def factor_defect_witness(d: FactorGroup, q: FactorQM, scale: int = 1) -> tuple[Fraction, int, int]:
    if d != q.group:
        raise ValueError("descriptor does not match the factor map")
    return q.defect_witness(scale)


@dataclass(frozen=True)
class SplitQM:
    """The split quasimorphism assembled from two factor maps."""

    splitting: Splitting
    fA: FactorQM
    fB: FactorQM

    def __post_init__(self) -> None:
        if self.fA.group != self.splitting.A or self.fB.group != self.splitting.B:
            raise ValueError("factor maps do not match the splitting")

    def factor_map(self, side: str) -> FactorQM:
        return self.fA if side == A else self.fB

    def __call__(self, g: Word) -> Fraction:
        return eval_split(self, g)


def eval_split(f: SplitQM, g: Word) -> Fraction:
    """Sum of factor values over the normal-form letters."""
    fA, fB = f.fA, f.fB
    total = Fraction(0)
    for side, x in g.letters:
        total += fA(x) if side == A else fB(x)
    return total


def coboundary(f: SplitQM, g: Word, h: Word) -> Fraction:
    gh = multiply(f.splitting, g, h)
    return eval_split(f, g) + eval_split(f, h) - eval_split(f, gh)


def split_defect(f: SplitQM, scale: int = 1) -> Fraction:
    """Exact defect of the split map: the larger of the two factor defects."""
    return max(f.fA.defect(scale), f.fB.defect(scale))


def default_sampler(
    s: Splitting,
    rng: random.Random,
    length_bound: int = 5,
    exponent_bound: int = 4,
) -> Callable[[], Word]:
    def sample() -> Word:
        return random_word(s, length_bound, exponent_bound, rng)

    return sample


def cached_evaluator(f: SplitQM) -> Callable[[Word], Fraction]:
    """A split evaluator memoizing letter values; sampled words draw letters
    from a small pool, so this keeps large sampling runs fast."""
    cache: dict[tuple[str, int], Fraction] = {}
    fA, fB = f.fA, f.fB

    def evaluate(g: Word) -> Fraction:
        total = Fraction(0)
        for letter in g.letters:
            value = cache.get(letter)
            if value is None:
                side, x = letter
                value = (fA if side == A else fB)(x)
                cache[letter] = value
            total += value
        return total

    return evaluate


def sampled_defect(
    f: SplitQM,
    sampler: Callable[[], Word],
    count: int,
    extra_pairs: Iterable[tuple[Word, Word]] = (),
) -> Fraction:
    """Max |coboundary| over sampled pairs (never exceeds the exact defect).

    ``extra_pairs`` lets callers embed known maximizing factor pairs as
    one-letter words, which makes the sampled value attain the supremum.
    """
    s = f.splitting
    evaluate = cached_evaluator(f)
    best = Fraction(0)
    for _ in range(count):
        g, h = sampler(), sampler()
        value = abs(evaluate(g) + evaluate(h) - evaluate(multiply(s, g, h)))
        if value > best:
            best = value
    for g, h in extra_pairs:
        value = abs(evaluate(g) + evaluate(h) - evaluate(multiply(s, g, h)))
        if value > best:
            best = value
    return best


def homogenize_eval(f: SplitQM, g: Word) -> Fraction:
    """The homogenization: slope terms on single-factor elements, plain
    evaluation on a cyclically reduced conjugate otherwise."""
    if not g:
        return Fraction(0)
    core, _ = cyclically_reduce(f.splitting, g)
    if len(core) == 1:
        side, x = core.letters[0]
        q = f.factor_map(side)
        if isinstance(q.group, IntegerGroup):
            return q.slope * x
        return Fraction(0)
    return eval_split(f, core)


# -- doubling witnesses -------------------------------------------------


@dataclass(frozen=True)
class DoublingWitness:
    """Two words whose homogenized coboundary gap doubles a factor gap."""

    g: Word
    h: Word
    gap: Fraction
    side: str
    pair: tuple[int, int]


def _doubling_words(
    s: Splitting, side: str, x1: int, x2: int, aux_same: int, aux_other: int
) -> tuple[Word, Word]:
    """The witness words, written for junction letters on ``side``.

    With x = x1^-1 and y = x2^-1 the pattern is  g = s t x t y t^-1 s^-1  and
    h = s^-1 t^-1 x t y t s,  where s is the same-side auxiliary and t the
    opposite-side one.
    """
    same = s.factor(side)
    other = s.factor(other_side(side))
    x, y = same.inv(x1), same.inv(x2)
    t, t_inv = aux_other, other.inv(aux_other)
    a, a_inv = aux_same, same.inv(aux_same)
    S, T = side, other_side(side)
    g = Word(((S, a), (T, t), (S, x), (T, t), (S, y), (T, t_inv), (S, a_inv)))
    h = Word(((S, a_inv), (T, t_inv), (S, x), (T, t), (S, y), (T, t), (S, a)))
    return validate_word(s, g), validate_word(s, h)


def doubling_witness(
    f: SplitQM,
    x1: int,
    x2: int,
    aux_same: int,
    aux_other: int,
    side: str = A,
) -> DoublingWitness:
    """Witness words g, h with homogenized gap exactly twice the factor
    coboundary of the junction pair (x1, x2).

    Preconditions: x1, x2 and their product are not the identity, the
    same-side auxiliary squares to a non-identity, and the opposite-side
    auxiliary is not the identity.
    """
    s = f.splitting
    same = s.factor(side)
    other = s.factor(other_side(side))
    for x in (x1, x2):
        if same.is_identity(same.check(x)):
            raise ValueError("junction letters must be non-trivial")
    if same.is_identity(same.mul(x1, x2)):
        raise ValueError("junction pair must have non-trivial product")
    if same.is_identity(same.mul(aux_same, aux_same)):
        raise ValueError("same-side auxiliary must not square to the identity")
    if other.is_identity(other.check(aux_other)):
        raise ValueError("opposite-side auxiliary must be non-trivial")
    g, h = _doubling_words(s, side, x1, x2, aux_same, aux_other)
    gh = multiply(s, g, h)
    gap = homogenize_eval(f, g) + homogenize_eval(f, h) - homogenize_eval(f, gh)
    return DoublingWitness(g=g, h=h, gap=gap, side=side, pair=(x1, x2))


def _aux_same_side(factor: FactorGroup) -> Optional[int]:
    """An element whose square is not the identity, if one exists."""
    if isinstance(factor, IntegerGroup):
        return 1
    for x in factor.elements():
        if not factor.is_identity(factor.mul(x, x)):
            return x
    return None


def _aux_other_side(factor: FactorGroup) -> int:
    if isinstance(factor, IntegerGroup):
        return 1
    return next(x for x in factor.elements() if not factor.is_identity(x))


def _junction_pairs(q: FactorQM) -> Iterator[tuple[int, int]]:
    group = q.group
    for x, y in q._pairs():
        if group.is_identity(x) or group.is_identity(y):
            continue
        if group.is_identity(group.mul(x, y)):
            continue
        yield x, y


def maximize_doubling_witness(f: SplitQM, side: str) -> Optional[DoublingWitness]:
    """The doubling witness over the junction pair maximizing the factor
    coboundary on the enumeration window; None when no gap is positive."""
    q = f.factor_map(side)
    best_pair, best_value = None, Fraction(0)
    for x, y in _junction_pairs(q):
        value = abs(q.coboundary(x, y))
        if value > best_value:
            best_pair, best_value = (x, y), value
    if best_pair is None:
        return None
    aux_same = _aux_same_side(q.group)
    if aux_same is None:
        # Every element squares to the identity, which forces an alternating
        # map to vanish; a positive gap is impossible here.
        raise RuntimeError("positive factor defect on a factor of exponent two")
    aux_other = _aux_other_side(f.splitting.factor(other_side(side)))
    x1, x2 = best_pair
    if q.coboundary(x1, x2) < 0:
        # Flip to the inverse pair so the reported gap is positive.
        x1, x2 = q.group.inv(x2), q.group.inv(x1)
    return doubling_witness(f, x1, x2, aux_same, aux_other, side)


@dataclass(frozen=True)
class GromovNormReport:
    value: Fraction
    witness: Optional[DoublingWitness]

    @property
    def witness_attains(self) -> bool:
        return self.witness is not None and self.witness.gap == 2 * self.value


def gromov_norm(f: SplitQM) -> GromovNormReport:
    """Norm of the class of the split map: equal to the split defect, with a
    doubling witness attaining homogenized gap 2*value when positive."""
    dA, dB = f.fA.defect(), f.fB.defect()
    value = max(dA, dB)
    if value == 0:
        return GromovNormReport(value=value, witness=None)
    side = A if dA >= dB else B
    witness = maximize_doubling_witness(f, side)
    return GromovNormReport(value=value, witness=witness)


def is_trivial(f: SplitQM) -> bool:
    """True exactly when both factor maps are homomorphisms."""
    return split_defect(f) == 0


def rademacher() -> SplitQM:
    """The split quasimorphism on Z/2 * Z/3 spanning its split classes.

    Alternation forces the Z/2 factor map to vanish; the Z/3 factor map
    takes values 1 and -1 on the two non-trivial residues.
    """
    s = Splitting(CyclicGroup(2), CyclicGroup(3))
    fA = FactorQM(s.A)
    fB = FactorQM(s.B, finite_part={1: Fraction(1), 2: Fraction(-1)})
    return SplitQM(s, fA, fB)


def weight_qm(s_table: Mapping[int, Fraction]) -> SplitQM:
    """Split quasimorphism on Z * Z applying one alternating weight table to
    every syllable exponent.

    Keys may be given on positive exponents only; the alternating extension
    is filled in automatically.
    """
    table: dict[int, Fraction] = {}
    for k, value in s_table.items():
        value = _fr(value)
        if k == 0:
            if value:
                raise ValueError("weight table must vanish at exponent 0")
            continue
        for key, val in ((k, value), (-k, -value)):
            if key in table and table[key] != val:
                raise ValueError(f"weight table breaks alternation at {key}")
            table[key] = val
    split = Splitting(IntegerGroup(), IntegerGroup())
    fA = FactorQM(split.A, finite_part=table)
    fB = FactorQM(split.B, finite_part=table)
    return SplitQM(split, fA, fB)

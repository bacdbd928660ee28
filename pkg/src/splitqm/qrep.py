"""Split quasi-representations into groups with bi-invariant metrics.

A factor map sends factor elements into a metric group, is alternating
(mu(x^-1) = mu(x)^-1), and is the identity off a finite support on integer
factors.  The split map multiplies the letter images in normal-form order.
Its defect is the larger of the two factor defects; the nontriviality
witness search certifies the distance-to-homomorphisms lower bound.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .groups import CyclicGroup, FactorGroup, IntegerGroup
from .words import A, B, IDENTITY, Splitting, Word

try:
    import numpy as np
except ImportError:  # pragma: no cover - numpy is a declared dependency
    np = None

__all__ = [
    "MetricGroup",
    "FiniteMetric",
    "Circle",
    "Unitary",
    "FactorQRMap",
    "SplitQRep",
    "eval_qrep",
    "qrep_factor_defect",
    "qrep_factor_defect_witness",
    "qrep_defect",
    "qrep_sampled_defect",
    "sup_norm_qrep",
    "qrep_delta",
    "FactorHom",
    "SplitHom",
    "eval_split_hom",
    "enumerate_factor_homs",
    "enumerate_factor_qr_maps",
    "WitnessReport",
    "nontriviality_witness",
    "SmallSubgroupReport",
    "check_no_small_subgroups",
    "FLOAT_TOL",
]

FLOAT_TOL = 1e-9
TWO_PI = 2.0 * math.pi


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class MetricGroup(ABC):
    """A group carrying a bi-invariant metric."""

    is_exact: bool = False

    @property
    @abstractmethod
    def identity(self): ...

    @abstractmethod
    def mul(self, x, y): ...

    @abstractmethod
    def inv(self, x): ...

    @abstractmethod
    def dist(self, x, y) -> Union[Fraction, float]: ...

    def power(self, x, n: int):
        if n < 0:
            x, n = self.inv(x), -n
        acc = self.identity
        while n:
            if n & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            n >>= 1
        return acc

    def product(self, elements: Iterable):
        acc = self.identity
        for x in elements:
            acc = self.mul(acc, x)
        return acc

    def equal(self, x, y, tol: float = FLOAT_TOL) -> bool:
        d = self.dist(x, y)
        return d == 0 if self.is_exact else d <= tol

    def norm(self, x) -> Union[Fraction, float]:
        return self.dist(x, self.identity)


class FiniteMetric(MetricGroup):
    """A finite group with an explicit rational bi-invariant distance matrix.

    Elements are the underlying group's elements (0..n-1); the matrix is
    indexed accordingly.  Metric axioms and bi-invariance are verified
    exhaustively at construction.
    """

    is_exact = True

    def __init__(self, group: FactorGroup, matrix: Sequence[Sequence]):
        if not group.is_finite:
            raise ValueError("the carrier of a finite metric must be finite")
        self.group = group
        n = group.size
        self.matrix = tuple(tuple(_fr(x) for x in row) for row in matrix)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("distance matrix shape must match the group order")
        elements = list(group.elements())
        for x in elements:
            for y in elements:
                d = self.matrix[x][y]
                if (d == 0) != (x == y):
                    raise ValueError("distance must vanish exactly on the diagonal")
                if d < 0 or d != self.matrix[y][x]:
                    raise ValueError("distance must be symmetric and non-negative")
        for x, y, z in itertools.product(elements, repeat=3):
            if self.matrix[x][z] > self.matrix[x][y] + self.matrix[y][z]:
                raise ValueError(f"triangle inequality fails at ({x}, {y}, {z})")
            left = self.matrix[group.mul(z, x)][group.mul(z, y)]
            right = self.matrix[group.mul(x, z)][group.mul(y, z)]
            if left != self.matrix[x][y] or right != self.matrix[x][y]:
                raise ValueError(f"metric is not bi-invariant at ({x}, {y}, {z})")

    @classmethod
    def from_length_function(cls, group: FactorGroup, lengths: Sequence) -> "FiniteMetric":
        """Build d(x, y) = length(x^-1 y) from a conjugation-invariant,
        symmetric, subadditive length function."""
        ell = tuple(_fr(v) for v in lengths)
        if len(ell) != group.size:
            raise ValueError("length table size must match the group order")
        elements = list(group.elements())
        for x in elements:
            if (ell[x] == 0) != group.is_identity(x):
                raise ValueError("length must vanish exactly at the identity")
            if ell[group.inv(x)] != ell[x]:
                raise ValueError(f"length must be symmetric at {x}")
        for x, y in itertools.product(elements, repeat=2):
            if ell[group.mul(x, y)] > ell[x] + ell[y]:
                raise ValueError(f"length is not subadditive at ({x}, {y})")
            conj = group.mul(group.mul(x, y), group.inv(x))
            if ell[conj] != ell[y]:
                raise ValueError(f"length is not conjugation-invariant at ({x}, {y})")
        matrix = [[ell[group.mul(group.inv(x), y)] for y in elements] for x in elements]
        return cls(group, matrix)

    @property
    def identity(self) -> int:
        return self.group.identity

    def mul(self, x: int, y: int) -> int:
        return self.group.mul(x, y)

    def inv(self, x: int) -> int:
        return self.group.inv(x)

    def power(self, x: int, n: int) -> int:
        return self.group.power(x, n)

    def dist(self, x: int, y: int) -> Fraction:
        return self.matrix[x][y]

    def elements(self) -> Iterator[int]:
        return self.group.elements()


class Circle(MetricGroup):
    """The rotation group with arc-length distance.

    Elements are exact rational turns in [0, 1); the distance between turns
    s and t is 2*pi*min(|s-t| mod 1, 1-(|s-t| mod 1)).  Group operations are
    exact; only the distance is a float.
    """

    @property
    def identity(self) -> Fraction:
        return Fraction(0)

    def turn(self, value) -> Fraction:
        return _fr(value) % 1

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return (x + y) % 1

    def inv(self, x: Fraction) -> Fraction:
        return (-x) % 1

    def power(self, x: Fraction, n: int) -> Fraction:
        return (n * x) % 1

    def arc_turns(self, x: Fraction, y: Fraction) -> Fraction:
        delta = (x - y) % 1
        return min(delta, 1 - delta)

    def dist(self, x: Fraction, y: Fraction) -> float:
        return TWO_PI * float(self.arc_turns(x, y))

    def equal(self, x: Fraction, y: Fraction, tol: float = FLOAT_TOL) -> bool:
        return self.arc_turns(x, y) == 0


# Nontrivial subgroups of the circle all contain a turn in [1/3, 2/3], so the
# open ball of radius 2*pi/3 is the largest one free of them.
CIRCLE_SMALL_SUBGROUP_THRESHOLD_TURNS = Fraction(1, 3)


class Unitary(MetricGroup):
    """The unitary group U(n) with Frobenius distance, in floating point.

    Long products drift, so accumulation re-projects onto the unitary group
    (via QR) every 64 multiplications.
    """

    PROJECT_EVERY = 64

    def __init__(self, n: int):
        if np is None:
            raise RuntimeError("the unitary target needs numpy")
        if n < 1:
            raise ValueError("dimension must be positive")
        self.n = n
        self._identity = np.eye(n, dtype=complex)

    @property
    def identity(self):
        return self._identity

    def matrix(self, rows) -> "np.ndarray":
        m = np.asarray(rows, dtype=complex)
        if m.shape != (self.n, self.n):
            raise ValueError("matrix shape mismatch")
        if self.dist(m @ m.conj().T, self._identity) > 1e-6:
            raise ValueError("matrix is not unitary")
        return m

    def project(self, m):
        q, r = np.linalg.qr(m)
        phases = np.diagonal(r).copy()
        phases /= np.abs(phases)
        return q * phases

    def mul(self, x, y):
        return x @ y

    def inv(self, x):
        return x.conj().T

    def power(self, x, n: int):
        if n < 0:
            x, n = self.inv(x), -n
        acc = self._identity
        count = 0
        while n:
            if n & 1:
                acc = acc @ x
                count += 1
            x = x @ x
            count += 1
            if count % self.PROJECT_EVERY == 0:
                acc, x = self.project(acc), self.project(x)
            n >>= 1
        return acc

    def product(self, elements: Iterable):
        acc = self._identity
        for count, x in enumerate(elements, start=1):
            acc = acc @ x
            if count % self.PROJECT_EVERY == 0:
                acc = self.project(acc)
        return acc

    def dist(self, x, y) -> float:
        return float(np.linalg.norm(x - y, "fro"))

    def random_element(self, rng) -> "np.ndarray":
        gen = np.random.default_rng(rng.getrandbits(64))
        raw = gen.standard_normal((self.n, self.n)) + 1j * gen.standard_normal((self.n, self.n))
        return self.project(raw)


class FactorQRMap:
    """An alternating map from one factor into the target group.

    Missing elements map to the target identity, so integer-factor maps are
    the identity off their finite support.  Inverse values are forced by
    alternation when absent and checked for consistency when explicit.
    """

    def __init__(self, side: str, target: MetricGroup, group: FactorGroup, values: Mapping):
        self.side = side
        self.target = target
        self.group = group
        table = {}
        for x, v in values.items():
            group.check(x)
            if group.is_identity(x):
                if not target.equal(v, target.identity):
                    raise ValueError("the identity must map to the identity")
                continue
            if not target.equal(v, target.identity):
                table[x] = v
        for x in list(table):
            inv_x = group.inv(x)
            forced = target.inv(table[x])
            if inv_x == x:
                if not target.equal(table[x], forced):
                    raise ValueError(f"value at the involution {x} must be its own inverse")
            elif inv_x in table:
                if not target.equal(table[inv_x], forced):
                    raise ValueError(f"map breaks alternation at {x}")
            elif not target.equal(forced, target.identity):
                table[inv_x] = forced
        self.table = table

    def __call__(self, x: int):
        self.group.check(x)
        return self.table.get(x, self.target.identity)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.table))

    @property
    def support_radius(self) -> int:
        return max((abs(x) for x in self.table), default=0)

    def sup_norm(self) -> Union[Fraction, float]:
        e = self.target.identity
        return max((self.target.dist(v, e) for v in self.table.values()), default=Fraction(0))

    def _pairs(self) -> Iterator[tuple[int, int]]:
        if self.group.is_finite:
            for x in self.group.elements():
                for y in self.group.elements():
                    yield x, y
        else:
            window = 2 * (self.support_radius + 2)
            for x in range(-window, window + 1):
                for y in range(-window, window + 1):
                    yield x, y

    def defect_witness(self) -> tuple[Union[Fraction, float], int, int]:
        best = (Fraction(0), self.group.identity, self.group.identity)
        for x, y in self._pairs():
            value = self.target.dist(self(self.group.mul(x, y)), self.target.mul(self(x), self(y)))
            if value > best[0]:
                best = (value, x, y)
        return best

    def defect(self) -> Union[Fraction, float]:
        return self.defect_witness()[0]


@dataclass(frozen=True)
class SplitQRep:
    splitting: Splitting
    target: MetricGroup
    muA: FactorQRMap
    muB: FactorQRMap

    def __post_init__(self) -> None:
        if self.muA.side != A or self.muB.side != B:
            raise ValueError("factor maps must be tagged with their sides")
        for mu, factor in ((self.muA, self.splitting.A), (self.muB, self.splitting.B)):
            if mu.group != factor:
                raise ValueError("factor map group must match the splitting")
            if mu.target is not self.target:
                raise ValueError("factor maps must share the target")

    def factor_map(self, side: str) -> FactorQRMap:
        return self.muA if side == A else self.muB

    def __call__(self, g: Word):
        return eval_qrep(self, g)


def eval_qrep(mu: SplitQRep, g: Word):
    """Ordered product of the letter images."""
    return mu.target.product(mu.factor_map(side)(x) for side, x in g.letters)


def qrep_factor_defect(mu_f: FactorQRMap) -> Union[Fraction, float]:
    """Sup of d(mu(xy), mu(x)mu(y)) over the factor enumeration window."""
    return mu_f.defect()


def qrep_factor_defect_witness(mu_f: FactorQRMap):
    return mu_f.defect_witness()


def qrep_defect(mu: SplitQRep) -> Union[Fraction, float]:
    return max(mu.muA.defect(), mu.muB.defect())


def qrep_sampled_defect(mu: SplitQRep, sampler, count: int) -> Union[Fraction, float]:
    """Max coboundary distance over sampled word pairs plus the junction
    pairs embedding each factor's worst pair; never exceeds qrep_defect."""
    from .words import multiply

    worst = Fraction(0)
    pairs = []
    for _ in range(count):
        pairs.append((sampler(), sampler()))
    for side, mu_f in ((A, mu.muA), (B, mu.muB)):
        _, x, y = mu_f.defect_witness()
        group = mu_f.group
        if not group.is_identity(x) and not group.is_identity(y):
            pairs.append((Word(((side, x),)), Word(((side, y),))))
    for g, h in pairs:
        gh = multiply(mu.splitting, g, h)
        value = mu.target.dist(eval_qrep(mu, gh), mu.target.mul(eval_qrep(mu, g), eval_qrep(mu, h)))
        if value > worst:
            worst = value
    return worst


def sup_norm_qrep(mu_f: FactorQRMap) -> Union[Fraction, float]:
    return mu_f.sup_norm()


def qrep_delta(mu: SplitQRep) -> Union[Fraction, float]:
    """The larger factor sup-norm, the quantity the witness search certifies."""
    return max(mu.muA.sup_norm(), mu.muB.sup_norm())


def _designated_generator(factor: FactorGroup) -> int:
    if isinstance(factor, (IntegerGroup, CyclicGroup)):
        return 1
    return next(x for x in factor.elements() if not factor.is_identity(x))


@dataclass(frozen=True)
class FactorHom:
    """A homomorphism from one factor into the target, given by the image of
    the designated generator (integer and cyclic factors) or a full table."""

    side: str
    group: FactorGroup
    target: MetricGroup
    generator_image: Optional[object] = None
    table: Optional[Mapping] = None

    def __post_init__(self) -> None:
        if (self.generator_image is None) == (self.table is None):
            raise ValueError("give exactly one of generator_image or table")
        if self.generator_image is not None:
            if isinstance(self.group, CyclicGroup):
                order_power = self.target.power(self.generator_image, self.group.n)
                if not self.target.equal(order_power, self.target.identity):
                    raise ValueError("generator image must satisfy the factor relation")
            elif not isinstance(self.group, IntegerGroup):
                raise ValueError("table groups need an explicit table")
        else:
            table = dict(self.table)
            if sorted(table) != sorted(self.group.elements()):
                raise ValueError("table must cover the whole factor")
            for x, y in itertools.product(self.group.elements(), repeat=2):
                left = table[self.group.mul(x, y)]
                right = self.target.mul(table[x], table[y])
                if not self.target.equal(left, right):
                    raise ValueError(f"table is not a homomorphism at ({x}, {y})")
            object.__setattr__(self, "table", table)

    def __call__(self, x: int):
        self.group.check(x)
        if self.table is not None:
            return self.table[x]
        return self.target.power(self.generator_image, x)


@dataclass(frozen=True)
class SplitHom:
    """A genuine homomorphism on the free product, one factor hom per side."""

    splitting: Splitting
    target: MetricGroup
    hA: FactorHom
    hB: FactorHom

    def factor_map(self, side: str) -> FactorHom:
        return self.hA if side == A else self.hB

    def __call__(self, g: Word):
        return eval_split_hom(self, g)


def eval_split_hom(rho: SplitHom, g: Word):
    return rho.target.product(rho.factor_map(side)(x) for side, x in g.letters)


def enumerate_factor_homs(side: str, group: FactorGroup, target: FiniteMetric) -> Iterator[FactorHom]:
    """All homomorphisms from a cyclic factor into a finite metric target."""
    if not isinstance(group, CyclicGroup):
        raise ValueError("homomorphism enumeration needs a cyclic factor")
    for r in target.elements():
        if target.power(r, group.n) == target.identity:
            yield FactorHom(side, group, target, generator_image=r)


def enumerate_factor_qr_maps(
    side: str, group: FactorGroup, target: FiniteMetric, max_norm
) -> Iterator[FactorQRMap]:
    """All alternating factor maps into a finite metric target whose values
    stay within ``max_norm`` of the identity (finite factors only)."""
    if not group.is_finite:
        raise ValueError("exhaustive map enumeration needs a finite factor")
    max_norm = _fr(max_norm)
    e = target.identity
    ball = [v for v in target.elements() if target.dist(v, e) <= max_norm]
    representatives = []
    involutions = []
    seen = set()
    for x in group.elements():
        if group.is_identity(x) or x in seen:
            continue
        inv_x = group.inv(x)
        seen.update({x, inv_x})
        if inv_x == x:
            involutions.append(x)
        else:
            representatives.append(x)
    involution_choices = [v for v in ball if target.mul(v, v) == e]
    spaces = [involution_choices] * len(involutions) + [ball] * len(representatives)
    for assignment in itertools.product(*spaces):
        values = {}
        for x, v in zip(involutions + representatives, assignment):
            values[x] = v
        yield FactorQRMap(side, target, group, values)


@dataclass(frozen=True)
class WitnessReport:
    word: Optional[Word]
    distance: Union[Fraction, float]
    delta: Union[Fraction, float]
    exhausted: bool
    checked: int

    @property
    def succeeded(self) -> bool:
        return not self.exhausted


def _witness_candidates(mu: SplitQRep, depth: int) -> Iterator[Word]:
    """Factor support elements and their powers first, then powers of the
    mixed junction words made from the designated generators."""
    s = mu.splitting
    seen = set()

    def emit(word: Word):
        if word.letters and word.letters not in seen:
            seen.add(word.letters)
            yield word

    for side in (A, B):
        factor = s.factor(side)
        base = set(mu.factor_map(side).support)
        base.add(_designated_generator(factor))
        for x in sorted(base):
            if factor.is_identity(x):
                continue
            for n in range(1, depth + 1):
                power = factor.power(x, n)
                if factor.is_identity(power):
                    break
                yield from emit(Word(((side, power),)))
    gen_a = _designated_generator(s.A)
    gen_b = _designated_generator(s.B)
    for y in (gen_b, s.B.inv(gen_b)):
        if s.B.is_identity(y):
            continue
        for n in range(1, depth + 1):
            yield from emit(Word(((A, gen_a), (B, y)) * n))


def nontriviality_witness(
    mu: SplitQRep, rho: SplitHom, eps, depth: int = 32
) -> WitnessReport:
    """Search for a word where mu and the homomorphism rho differ by at
    least delta (the larger factor sup-norm).

    Requires 2*delta <= eps; the target should be free of eps-small
    subgroups (see check_no_small_subgroups).  Exhaustion of the search
    space is reported, not raised, to distinguish it from refutation.
    """
    delta = qrep_delta(mu)
    eps_value = float(eps)
    if float(delta) > eps_value / 2 + FLOAT_TOL:
        raise ValueError("the witness argument needs 2*delta <= eps")
    if delta == 0:
        return WitnessReport(IDENTITY, Fraction(0), delta, exhausted=False, checked=0)
    tol = 0 if mu.target.is_exact else FLOAT_TOL
    best_word: Optional[Word] = None
    best = Fraction(0)
    checked = 0
    for g in _witness_candidates(mu, depth):
        checked += 1
        d = mu.target.dist(eval_qrep(mu, g), eval_split_hom(rho, g))
        if d > best:
            best, best_word = d, g
        if d >= delta - tol:
            return WitnessReport(g, d, delta, exhausted=False, checked=checked)
    return WitnessReport(best_word, best, delta, exhausted=True, checked=checked)


@dataclass(frozen=True)
class SmallSubgroupReport:
    passed: bool
    certified: bool
    epsilon: float
    witness: Optional[tuple]
    max_power_needed: Optional[int]
    exhausted: tuple


def _cyclic_closure(target: FiniteMetric, g: int) -> tuple[int, ...]:
    elements = [target.identity]
    x = g
    while x != target.identity:
        elements.append(x)
        x = target.mul(x, g)
    return tuple(elements)


def check_no_small_subgroups(
    target: MetricGroup, eps, certificates: Sequence = (), power_bound: int = 4096
) -> SmallSubgroupReport:
    """Decide whether the open eps-ball around the identity contains a
    nontrivial subgroup.

    FiniteMetric: exhaustive over cyclic subgroups (a subgroup lies in the
    ball iff each of its cyclic subgroups does), hence certified.  Circle:
    certified by the exact threshold 2*pi/3 (the subgroup of third turns is
    extremal); supplied certificate angles are additionally power-scanned.
    Unitary: only the certificates are scanned, so a pass is not certified.
    """
    eps_value = float(eps)
    if isinstance(target, FiniteMetric):
        for g in target.elements():
            if g == target.identity:
                continue
            subgroup = _cyclic_closure(target, g)
            if all(float(target.dist(x, target.identity)) < eps_value for x in subgroup):
                return SmallSubgroupReport(False, True, eps_value, subgroup, None, ())
        return SmallSubgroupReport(True, True, eps_value, None, None, ())
    if isinstance(target, Circle):
        # The subgroup {0, 1/3, 2/3} has max distance 2*pi/3 and sits inside
        # any larger open ball; smaller balls exclude every subgroup.
        threshold = TWO_PI * float(CIRCLE_SMALL_SUBGROUP_THRESHOLD_TURNS)
        if eps_value > threshold + FLOAT_TOL:
            witness = (Fraction(0), Fraction(1, 3), Fraction(2, 3))
            return SmallSubgroupReport(False, True, eps_value, witness, None, ())
        max_power = None
        exhausted = []
        for theta in certificates:
            theta = target.turn(theta)
            if theta == 0 or target.dist(theta, target.identity) >= eps_value:
                continue
            bound = max(power_bound, theta.denominator)
            for n in range(1, bound + 1):
                if target.dist(target.power(theta, n), target.identity) >= eps_value:
                    if max_power is None or n > max_power:
                        max_power = n
                    break
            else:
                exhausted.append(theta)
        if exhausted:
            # Rational turns generate finite subgroups, so a full-orbit scan
            # with no escape is a genuine violation.
            theta = exhausted[0]
            subgroup = tuple(sorted({target.power(theta, n) for n in range(theta.denominator)}))
            return SmallSubgroupReport(
                False, True, eps_value, subgroup, max_power, tuple(exhausted)
            )
        return SmallSubgroupReport(True, True, eps_value, None, max_power, ())
    max_power = None
    exhausted = []
    for u in certificates:
        if target.dist(u, target.identity) >= eps_value or target.equal(u, target.identity):
            continue
        for n in range(1, power_bound + 1):
            if target.dist(target.power(u, n), target.identity) >= eps_value:
                if max_power is None or n > max_power:
                    max_power = n
                break
        else:
            exhausted.append(u)
    return SmallSubgroupReport(
        not exhausted, False, eps_value, None, max_power, tuple(exhausted)
    )

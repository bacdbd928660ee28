"""Vector-valued split quasicocycles for isometric module actions.

Two module kinds are supported: finite-dimensional rational representations
(one invertible matrix per factor generator) and the left-regular
representation on finitely supported functions with rational values.  All
vector identities are exact; norms for exponents other than one are floats
over exact coordinates.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .groups import CyclicGroup, FactorGroup, FiniteTableGroup, IntegerGroup
from .words import A, B, IDENTITY, Splitting, Word, invert, multiply, other_side

__all__ = [
    "Matrix",
    "mat_mul",
    "mat_vec",
    "mat_pow",
    "mat_inv",
    "ModuleAction",
    "FiniteDimRep",
    "RegularRep",
    "FactorCocycleMap",
    "SplitQC",
    "act",
    "eval_split_qc",
    "qc_coboundary",
    "split_qc_defect",
    "inner_cocycle",
    "inner_split_eval",
    "GrowthCheckError",
    "ladder_word",
    "power_ladder_cocycle",
    "staircase_word",
    "staircase_cocycle",
]

Rational = Fraction
Matrix = tuple[tuple[Fraction, ...], ...]
DenseVector = tuple[Fraction, ...]
SparseVector = dict  # Word -> Fraction, no zero entries
Vector = Union[DenseVector, SparseVector]


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(_fr(x) for x in row) for row in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def mat_mul(m1: Matrix, m2: Matrix) -> Matrix:
    cols = list(zip(*m2))
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in m1
    )


def mat_vec(m: Matrix, v: DenseVector) -> DenseVector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_inv(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_pow(m: Matrix, k: int) -> Matrix:
    if k < 0:
        m, k = mat_inv(m), -k
    acc = identity_matrix(len(m))
    while k:
        if k & 1:
            acc = mat_mul(acc, m)
        m = mat_mul(m, m)
        k >>= 1
    return acc


class ModuleAction(ABC):
    """A linear isometric action of the free product on a coefficient space."""

    splitting: Splitting

    @abstractmethod
    def zero(self) -> Vector: ...

    @abstractmethod
    def add(self, u: Vector, v: Vector) -> Vector: ...

    @abstractmethod
    def scale(self, c: Fraction, v: Vector) -> Vector: ...

    @abstractmethod
    def act(self, g: Word, v: Vector) -> Vector: ...

    @abstractmethod
    def norm(self, v: Vector) -> Union[Fraction, float]: ...

    @abstractmethod
    def is_zero(self, v: Vector) -> bool: ...

    def neg(self, v: Vector) -> Vector:
        return self.scale(Fraction(-1), v)

    def sub(self, u: Vector, v: Vector) -> Vector:
        return self.add(u, self.neg(v))

    def equal(self, u: Vector, v: Vector) -> bool:
        return self.is_zero(self.sub(u, v))


class FiniteDimRep(ModuleAction):
    """A rational matrix representation, one generator matrix per factor.

    Integer factors may use any invertible matrix; a cyclic factor of order n
    requires its matrix to have order dividing n.  Table-group factors are
    not supported, since they carry no designated generator.
    """

    def __init__(self, splitting: Splitting, mat_a: Sequence[Sequence], mat_b: Sequence[Sequence]):
        self.splitting = splitting
        self.mat = {A: as_matrix(mat_a), B: as_matrix(mat_b)}
        self.dim = len(self.mat[A])
        for side in (A, B):
            m = self.mat[side]
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise ValueError("generator matrices must be square and equal-sized")
            factor = splitting.factor(side)
            if isinstance(factor, FiniteTableGroup):
                raise ValueError("finite table factors have no designated generator")
            mat_inv(m)  # raises when singular
            if isinstance(factor, CyclicGroup):
                if mat_pow(m, factor.n) != identity_matrix(self.dim):
                    raise ValueError(
                        f"matrix for a cyclic factor of order {factor.n} must satisfy m^n = 1"
                    )
        self._inv = {side: mat_inv(self.mat[side]) for side in (A, B)}

    def zero(self) -> DenseVector:
        return tuple(Fraction(0) for _ in range(self.dim))

    def vector(self, coords: Sequence) -> DenseVector:
        v = tuple(_fr(x) for x in coords)
        if len(v) != self.dim:
            raise ValueError("coordinate count does not match the dimension")
        return v

    def add(self, u: DenseVector, v: DenseVector) -> DenseVector:
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, c: Fraction, v: DenseVector) -> DenseVector:
        c = _fr(c)
        return tuple(c * a for a in v)

    def letter_matrix(self, side: str, k: int) -> Matrix:
        return mat_pow(self.mat[side], k)

    def word_matrix(self, g: Word) -> Matrix:
        acc = identity_matrix(self.dim)
        for side, k in g.letters:
            acc = mat_mul(acc, self.letter_matrix(side, k))
        return acc

    def act(self, g: Word, v: DenseVector) -> DenseVector:
        return mat_vec(self.word_matrix(g), v)

    def norm(self, v: DenseVector, which: str = "linf") -> Union[Fraction, float]:
        if which == "linf":
            return max((abs(x) for x in v), default=Fraction(0))
        if which == "l1":
            return sum((abs(x) for x in v), Fraction(0))
        if which == "l2":
            return math.sqrt(float(sum(x * x for x in v)))
        raise ValueError(f"unknown norm {which!r}")

    def is_zero(self, v: DenseVector) -> bool:
        return not any(v)


class RegularRep(ModuleAction):
    """Left translation on finitely supported rational functions on the group.

    Vectors are dicts from words to non-zero rationals; translating by g
    moves the mass at h to g*h, which is an exact isometry for every
    exponent.
    """

    def __init__(self, splitting: Splitting, p: Union[int, float] = 1):
        if p < 1:
            raise ValueError("the exponent must satisfy p >= 1")
        self.splitting = splitting
        self.p = p

    def zero(self) -> SparseVector:
        return {}

    def indicator(self, g: Word, value=Fraction(1)) -> SparseVector:
        value = _fr(value)
        return {g: value} if value else {}

    def vector(self, entries: Mapping[Word, Fraction]) -> SparseVector:
        out = {}
        for g, value in entries.items():
            value = _fr(value)
            if value:
                out[g] = value
        return out

    def add(self, u: SparseVector, v: SparseVector) -> SparseVector:
        out = dict(u)
        for g, value in v.items():
            total = out.get(g, Fraction(0)) + value
            if total:
                out[g] = total
            else:
                out.pop(g, None)
        return out

    def scale(self, c: Fraction, v: SparseVector) -> SparseVector:
        c = _fr(c)
        if not c:
            return {}
        return {g: c * value for g, value in v.items()}

    def act(self, g: Word, v: SparseVector) -> SparseVector:
        s = self.splitting
        return {multiply(s, g, h): value for h, value in v.items()}

    def norm(self, v: SparseVector) -> Union[Fraction, float]:
        if self.p == 1:
            return sum((abs(x) for x in v.values()), Fraction(0))
        if self.p == math.inf:
            return max((abs(x) for x in v.values()), default=Fraction(0))
        return float(sum(abs(x) ** self.p for x in v.values())) ** (1.0 / self.p)

    def is_zero(self, v: SparseVector) -> bool:
        return not v


def act(m: ModuleAction, g: Word, v: Vector) -> Vector:
    return m.act(g, v)


def _one_letter(side: str, x: int) -> Word:
    return Word(((side, x),))


class FactorCocycleMap:
    """A finitely supported alternating cocycle on one factor.

    Values may be given on any set of elements; the inverse of each support
    element receives the forced value -x^-1.f(x), and inconsistent explicit
    pairs are rejected.
    """

    def __init__(
        self,
        side: str,
        action: ModuleAction,
        values: Mapping[int, Vector],
    ):
        self.side = side
        self.action = action
        self.group: FactorGroup = action.splitting.factor(side)
        table: dict[int, Vector] = {}
        for x, v in values.items():
            self.group.check(x)
            if self.group.is_identity(x):
                if not action.is_zero(v):
                    raise ValueError("cocycle must vanish at the identity")
                continue
            if not action.is_zero(v):
                table[x] = v
        for x in list(table):
            inv_x = self.group.inv(x)
            forced = action.neg(action.act(_one_letter(side, inv_x), table[x]))
            if inv_x in table:
                if not action.equal(table[inv_x], forced):
                    raise ValueError(f"cocycle breaks alternation at {x}")
            elif not action.is_zero(forced):
                table[inv_x] = forced
        self.table = table

    def __call__(self, x: int) -> Vector:
        self.group.check(x)
        return self.table.get(x, self.action.zero())

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.table))

    @property
    def support_radius(self) -> int:
        return max((abs(x) for x in self.table), default=0)

    def coboundary(self, x: int, y: int) -> Vector:
        m = self.action
        translated = m.act(_one_letter(self.side, x), self(y))
        return m.sub(m.add(self(x), translated), self(self.group.mul(x, y)))


@dataclass(frozen=True)
class SplitQC:
    """The split quasicocycle built from two factor cocycle maps."""

    splitting: Splitting
    action: ModuleAction
    fA: FactorCocycleMap
    fB: FactorCocycleMap

    def __post_init__(self) -> None:
        if self.fA.side != A or self.fB.side != B:
            raise ValueError("factor maps must be tagged with their sides")
        if self.fA.action is not self.action or self.fB.action is not self.action:
            raise ValueError("factor maps must share the module action")

    def factor_map(self, side: str) -> FactorCocycleMap:
        return self.fA if side == A else self.fB

    def __call__(self, g: Word) -> Vector:
        return eval_split_qc(self, g)


def eval_split_qc(f: SplitQC, g: Word) -> Vector:
    """Prefix-translated sum over the normal-form letters."""
    m = f.action
    total = m.zero()
    for i, (side, x) in enumerate(g.letters):
        value = f.factor_map(side)(x)
        if m.is_zero(value):
            continue
        prefix = Word(g.letters[:i])
        total = m.add(total, m.act(prefix, value))
    return total


def qc_coboundary(f: SplitQC, g: Word, h: Word) -> Vector:
    m = f.action
    gh = multiply(f.splitting, g, h)
    return m.sub(m.add(eval_split_qc(f, g), m.act(g, eval_split_qc(f, h))), eval_split_qc(f, gh))


def _factor_pairs(q: FactorCocycleMap):
    group = q.group
    if group.is_finite:
        for x in group.elements():
            for y in group.elements():
                yield x, y
    else:
        window = 2 * (q.support_radius + 3)
        for x in range(-window, window + 1):
            for y in range(-window, window + 1):
                yield x, y


def split_qc_defect(f: SplitQC) -> Union[Fraction, float]:
    """Max factor coboundary norm over the enumeration windows; equals the
    defect of the split map for an isometric action."""
    worst: Union[Fraction, float] = Fraction(0)
    for q in (f.fA, f.fB):
        for x, y in _factor_pairs(q):
            value = f.action.norm(q.coboundary(x, y))
            if value > worst:
                worst = value
    return worst


def inner_cocycle(m: ModuleAction, v: Vector, g: Word) -> Vector:
    """g.v - v."""
    return m.sub(m.act(g, v), v)


def inner_split_eval(m: ModuleAction, v: Vector, g: Word) -> Vector:
    """Split evaluation of the two factor restrictions of the inner cocycle;
    telescopes to the inner cocycle itself."""
    total = m.zero()
    for i, (side, x) in enumerate(g.letters):
        prefix = Word(g.letters[:i])
        letter_value = inner_cocycle(m, v, _one_letter(side, x))
        total = m.add(total, m.act(prefix, letter_value))
    return total


class GrowthCheckError(RuntimeError):
    """A witness construction failed its exact growth identities."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def ladder_word(s: Splitting, p: int, n: int) -> Word:
    """b a^p b a^(p^2) ... b a^(p^n); the empty word for n = 0."""
    letters = []
    for i in range(1, n + 1):
        letters.extend([(B, 1), (A, p**i)])
    return Word(tuple(letters))


def power_ladder_cocycle(
    m: ModuleAction,
    p: int,
    v: Vector,
    depth: int,
    check_prime: Optional[int] = None,
    convention: str = "prefix",
) -> tuple[FactorCocycleMap, SplitQC]:
    """A factor cocycle supported on the powers a^(p^i), i <= depth, whose
    split evaluation grows linearly along the ladder words of p and vanishes
    along the ladder words of any other prime.

    The value at a^(p^i) is the ladder prefix (ladder(p, i-1) * b) inverted
    and applied to v; this is the unique choice that telescopes.  Setting
    ``convention="literal"`` uses (b * ladder(p, i-1)) inverted instead,
    which breaks the growth identity and exists as a negative control.

    Raises GrowthCheckError when the identities fail at any depth.
    """
    s = m.splitting
    if not isinstance(s.A, IntegerGroup):
        raise ValueError("the ladder construction lives over an integer first factor")
    if not _is_prime(p):
        raise ValueError("the ladder base must be prime")
    if convention not in ("prefix", "literal"):
        raise ValueError(f"unknown convention {convention!r}")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    b = _one_letter(B, 1)
    values = {}
    for i in range(1, depth + 1):
        prefix = ladder_word(s, p, i - 1)
        if convention == "prefix":
            translator = invert(s, multiply(s, prefix, b))
        else:
            translator = invert(s, multiply(s, b, prefix))
        values[p**i] = m.act(translator, v)
    fA = FactorCocycleMap(A, m, values)
    fB = FactorCocycleMap(B, m, {})
    f = SplitQC(s, m, fA, fB)
    for n in range(depth + 1):
        expected = m.scale(Fraction(n), v)
        got = eval_split_qc(f, ladder_word(s, p, n))
        if not m.equal(got, expected):
            raise GrowthCheckError(
                f"ladder evaluation at depth {n} is not {n} times the seed vector"
            )
    if check_prime is not None:
        if not _is_prime(check_prime) or check_prime == p:
            raise ValueError("the control base must be a different prime")
        for n in range(depth + 1):
            got = eval_split_qc(f, ladder_word(s, check_prime, n))
            if not m.is_zero(got):
                raise GrowthCheckError(
                    f"ladder evaluation for the control prime is non-zero at depth {n}"
                )
    return fA, f


def staircase_word(s: Splitting, n: int) -> Word:
    """a b a^2 b a^3 b ... a^(n-1) b a^n; the empty word for n = 0."""
    letters: list[tuple[str, int]] = []
    for k in range(1, n + 1):
        if k > 1:
            letters.append((B, 1))
        letters.append((A, k))
    return Word(tuple(letters))


def staircase_cocycle(
    m: ModuleAction, xi: Vector, depth: int
) -> tuple[FactorCocycleMap, SplitQC]:
    """A factor cocycle supported on a, a^2, ..., a^depth whose split
    evaluation along the staircase words grows linearly: f(w_n) = n * xi.

    The value at a is xi itself; at a^n (n >= 2) it is the staircase prefix
    (staircase(n-1) * b) inverted and applied to xi.
    """
    s = m.splitting
    if not isinstance(s.A, IntegerGroup):
        raise ValueError("the staircase construction lives over an integer first factor")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    b = _one_letter(B, 1)
    values: dict[int, Vector] = {1: xi}
    for n in range(2, depth + 1):
        translator = invert(s, multiply(s, staircase_word(s, n - 1), b))
        values[n] = m.act(translator, xi)
    fA = FactorCocycleMap(A, m, values)
    fB = FactorCocycleMap(B, m, {})
    f = SplitQC(s, m, fA, fB)
    for n in range(depth + 1):
        expected = m.scale(Fraction(n), xi)
        if not m.equal(eval_split_qc(f, staircase_word(s, n)), expected):
            raise GrowthCheckError(
                f"staircase evaluation at depth {n} is not {n} times the seed vector"
            )
    return fA, f

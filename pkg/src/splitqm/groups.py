"""Exact element arithmetic for the factor groups of a two-factor splitting.

Three kinds of factors are supported: the integers, finite cyclic groups,
and arbitrary finite groups given by an explicit multiplication table.
Elements are encoded as plain ``int`` values throughout (an exponent, a
residue, or a table index), so every element is hashable and immutable.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "INFINITE",
    "FactorGroup",
    "IntegerGroup",
    "CyclicGroup",
    "FiniteTableGroup",
]

# Returned by order() for elements of infinite order; compares correctly
# against any integer.
INFINITE = math.inf

Order = Union[int, float]


class FactorGroup(ABC):
    """A group whose elements are encoded as integers."""

    @property
    @abstractmethod
    def identity(self) -> int:
        """The identity element."""

    @abstractmethod
    def is_element(self, x: int) -> bool:
        """Whether ``x`` encodes an element of this group."""

    @abstractmethod
    def mul(self, x: int, y: int) -> int:
        """The product x*y."""

    @abstractmethod
    def inv(self, x: int) -> int:
        """The inverse of x."""

    @abstractmethod
    def order(self, x: int) -> Order:
        """Least n >= 1 with x^n = identity, or INFINITE."""

    @property
    @abstractmethod
    def size(self) -> Order:
        """Number of elements, or INFINITE."""

    def is_identity(self, x: int) -> bool:
        return x == self.identity

    @property
    def is_finite(self) -> bool:
        return self.size != INFINITE

    def check(self, x: int) -> int:
        """Validate that ``x`` is an element; return it unchanged."""
        if not isinstance(x, int) or isinstance(x, bool) or not self.is_element(x):
            raise ValueError(f"{x!r} is not an element of {self}")
        return x

    def elements(self) -> Iterator[int]:
        """All elements, each exactly once.  Finite groups only."""
        if not self.is_finite:
            raise ValueError(f"cannot enumerate the elements of {self}")
        return iter(range(int(self.size)))

    def power(self, x: int, n: int) -> int:
        """x^n for any integer n, by repeated squaring."""
        self.check(x)
        if n < 0:
            x, n = self.inv(x), -n
        acc = self.identity
        while n:
            if n & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            n >>= 1
        return acc


@dataclass(frozen=True)
class IntegerGroup(FactorGroup):
    """The infinite cyclic group; elements are exponents of a fixed generator."""

    @property
    def identity(self) -> int:
        return 0

    def is_element(self, x: int) -> bool:
        return True

    def mul(self, x: int, y: int) -> int:
        return x + y

    def inv(self, x: int) -> int:
        return -x

    def order(self, x: int) -> Order:
        return 1 if x == 0 else INFINITE

    @property
    def size(self) -> Order:
        return INFINITE

    def __str__(self) -> str:
        return "Z"


@dataclass(frozen=True)
class CyclicGroup(FactorGroup):
    """Z/n with elements the residues 0..n-1."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("cyclic factor needs n >= 2")

    @property
    def identity(self) -> int:
        return 0

    def is_element(self, x: int) -> bool:
        return 0 <= x < self.n

    def mul(self, x: int, y: int) -> int:
        return (x + y) % self.n

    def inv(self, x: int) -> int:
        return (-x) % self.n

    def order(self, x: int) -> Order:
        self.check(x)
        return self.n // math.gcd(self.n, x) if x else 1

    @property
    def size(self) -> Order:
        return self.n

    def __str__(self) -> str:
        return f"Z/{self.n}"


@dataclass(frozen=True)
class FiniteTableGroup(FactorGroup):
    """A finite group given by an explicit multiplication table.

    ``table[x][y]`` is the product x*y, ``inverse[x]`` the inverse of x, and
    ``identity_index`` the identity.  The constructor verifies that the table
    is a Latin square, that the identity acts neutrally, that the inverse
    table is consistent, and that multiplication is associative.
    """

    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    identity_index: int = 0

    def __post_init__(self) -> None:
        n = len(self.table)
        if n < 2:
            raise ValueError("finite factor needs at least two elements")
        if any(len(row) != n for row in self.table) or len(self.inverse) != n:
            raise ValueError("multiplication/inverse tables have inconsistent sizes")
        all_elems = set(range(n))
        for i in range(n):
            if set(self.table[i]) != all_elems:
                raise ValueError(f"row {i} is not a permutation")
            if {self.table[j][i] for j in range(n)} != all_elems:
                raise ValueError(f"column {i} is not a permutation")
        e = self.identity_index
        if not 0 <= e < n:
            raise ValueError("identity index out of range")
        for x in range(n):
            if self.table[e][x] != x or self.table[x][e] != x:
                raise ValueError("identity does not act neutrally")
            if self.table[x][self.inverse[x]] != e or self.table[self.inverse[x]][x] != e:
                raise ValueError(f"inverse table wrong at {x}")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if self.table[self.table[x][y]][z] != self.table[x][self.table[y][z]]:
                        raise ValueError(f"multiplication not associative at ({x},{y},{z})")

    @classmethod
    def from_mul(cls, n: int, mul, identity: int = 0) -> "FiniteTableGroup":
        """Build the tables from a multiplication callable on 0..n-1."""
        table = tuple(tuple(mul(x, y) for y in range(n)) for x in range(n))
        inverse = []
        for x in range(n):
            candidates = [y for y in range(n) if table[x][y] == identity]
            if not candidates:
                raise ValueError(f"element {x} has no inverse")
            inverse.append(candidates[0])
        return cls(table, tuple(inverse), identity)

    @property
    def identity(self) -> int:
        return self.identity_index

    def is_element(self, x: int) -> bool:
        return 0 <= x < len(self.table)

    def mul(self, x: int, y: int) -> int:
        self.check(x)
        self.check(y)
        return self.table[x][y]

    def inv(self, x: int) -> int:
        self.check(x)
        return self.inverse[x]

    def order(self, x: int) -> Order:
        self.check(x)
        k, y = 1, x
        while y != self.identity_index:
            y = self.table[y][x]
            k += 1
        return k

    @property
    def size(self) -> Order:
        return len(self.table)

    def __str__(self) -> str:
        return f"TableGroup({len(self.table)})"

"""Exact arithmetic in the algebraic Mukai lattice of a K3 surface.

A coherent sheaf on a K3 surface determines a Mukai vector (r, c, s): the
rank, the first Chern class, and the degree-four component.  With the
Neron-Severi group presented by an integer Gram matrix G, the algebraic
Mukai lattice is Z + NS + Z and the Mukai pairing is

    <(r, c, s), (r', c', s')> = c.G.c' - r*s' - r'*s.

Everything here is exact: components are arbitrary-precision Python
integers, slopes are `fractions.Fraction` values in lowest terms, and no
floating point appears anywhere.  All values are immutable, so every
function in this module is safe to call from concurrent threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "NSGram",
    "MukaiVector",
    "Polarization",
    "pairing",
    "square",
    "dual",
    "euler_characteristic",
    "moduli_dimension",
    "is_primitive",
    "slope",
    "fineness_gcd",
]


@dataclass(frozen=True)
class NSGram:
    """Intersection Gram matrix of the Neron-Severi generators.

    Rank one covers a K3 whose Picard group is generated by a single curve
    class C, with entries ((C^2,),).  Rank two covers the symbolic (D, E)
    lattice of the dual surface.  The diagonal must be even because the
    Neron-Severi lattice of a K3 is an even lattice.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        k = len(entries)
        if k not in (1, 2):
            raise ValueError(f"NS rank must be 1 or 2, got {k}")
        if any(len(row) != k for row in entries):
            raise ValueError("Gram matrix must be square")
        if any(entries[i][j] != entries[j][i] for i in range(k) for j in range(k)):
            raise ValueError("Gram matrix must be symmetric")
        if any(entries[i][i] % 2 for i in range(k)):
            raise ValueError("Gram diagonal must be even (K3 Neron-Severi lattice)")

    @classmethod
    @lru_cache(maxsize=None)
    def rank_one(cls, c_squared: int) -> "NSGram":
        return cls(((c_squared,),))

    @classmethod
    @lru_cache(maxsize=None)
    def rank_two(cls, q11: int, q12: int, q22: int) -> "NSGram":
        return cls(((q11, q12), (q12, q22)))

    @property
    def rank(self) -> int:
        return len(self.entries)

    def dot(self, c1: tuple[int, ...], c2: tuple[int, ...]) -> int:
        """Intersection product c1.G.c2 of two NS coordinate vectors."""
        entries = self.entries
        k = len(entries)
        if len(c1) != k or len(c2) != k:
            raise ValueError("NS coordinate length does not match Gram rank")
        if k == 1:
            return c1[0] * entries[0][0] * c2[0]
        return (
            c1[0] * (entries[0][0] * c2[0] + entries[0][1] * c2[1])
            + c1[1] * (entries[1][0] * c2[0] + entries[1][1] * c2[1])
        )


@dataclass(frozen=True)
class MukaiVector:
    """Element (r, c, s) of the algebraic Mukai lattice.

    `c` holds the NS coordinates (length 1 or 2).  Vectors form a Z-module;
    the operators below keep composite classes like N*a - b + c readable.
    """

    r: int
    c: tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        self._check_rank(other)
        return MukaiVector(
            self.r + other.r,
            tuple(a + b for a, b in zip(self.c, other.c)),
            self.s + other.s,
        )

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        self._check_rank(other)
        return MukaiVector(
            self.r - other.r,
            tuple(a - b for a, b in zip(self.c, other.c)),
            self.s - other.s,
        )

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, tuple(-x for x in self.c), -self.s)

    def __mul__(self, scalar: int) -> "MukaiVector":
        return MukaiVector(
            self.r * scalar, tuple(x * scalar for x in self.c), self.s * scalar
        )

    __rmul__ = __mul__

    def _check_rank(self, other: "MukaiVector") -> None:
        if len(self.c) != len(other.c):
            raise ValueError("NS coordinate lengths differ")

    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0 and not any(self.c)

    def components(self) -> tuple[int, ...]:
        return (self.r, *self.c, self.s)

    def __str__(self) -> str:
        if len(self.c) == 1:
            middle = str(self.c[0])
        else:
            middle = "[" + ", ".join(str(x) for x in self.c) + "]"
        return f"({self.r}, {middle}, {self.s})"


@dataclass(frozen=True)
class Polarization:
    """NS coordinates of the ample class used to measure degrees."""

    h: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(int(x) for x in self.h))

    def is_positive(self, gram: NSGram) -> bool:
        """An honest polarization has positive self-intersection."""
        return gram.dot(self.h, self.h) > 0


def pairing(v: MukaiVector, u: MukaiVector, gram: NSGram) -> int:
    """Mukai pairing <v, u> = c.G.c' - r*s' - r'*s."""
    return gram.dot(v.c, u.c) - v.r * u.s - u.r * v.s


def square(v: MukaiVector, gram: NSGram) -> int:
    """Self-pairing <v, v>; always even when the Gram diagonal is even."""
    return pairing(v, v, gram)


def dual(v: MukaiVector) -> MukaiVector:
    """Mukai vector of the dual sheaf: flips the sign of the NS part."""
    return MukaiVector(v.r, tuple(-x for x in v.c), v.s)


def euler_characteristic(v: MukaiVector, gram: NSGram) -> int:
    """Euler characteristic -<v, (1, 0, 1)>, which works out to r + s."""
    one = MukaiVector(1, (0,) * gram.rank, 1)
    return -pairing(v, one, gram)


def moduli_dimension(v: MukaiVector, gram: NSGram) -> int:
    """Dimension <v, v> + 2 of the moduli space of stable sheaves of class v."""
    return square(v, gram) + 2


def is_primitive(v: MukaiVector) -> bool:
    """True when the components of v have no common factor."""
    if v.is_zero():
        raise ValueError("primitivity is undefined for the zero vector")
    return gcd(*v.components()) == 1


def slope(v: MukaiVector, h: Polarization, gram: NSGram) -> Fraction:
    """Slope deg(v)/rank(v) with respect to h, as an exact rational."""
    if v.r == 0:
        raise ValueError("torsion class: slope is undefined for rank zero")
    return Fraction(gram.dot(v.c, h.h), v.r)


def fineness_gcd(v: MukaiVector, h: Polarization, gram: NSGram) -> int:
    """gcd(rank, degree, chi-component); 1 means a fine moduli space.

    When the gcd exceeds one it is the order of the gerbe obstructing a
    universal sheaf.
    """
    if v.is_zero():
        raise ValueError("fineness gcd is undefined for the zero vector")
    return gcd(v.r, gram.dot(v.c, h.h), v.s)

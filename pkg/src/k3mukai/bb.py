"""Divisor-class arithmetic on the Hilbert scheme of points of a K3.

For X = Hilb^g(S) with Pic(S) generated by a curve class C, the algebraic
part of H^2(X, Z) under the Beauville-Bogomolov quadratic form is spanned
by C and the exceptional half-diagonal class E, with Gram matrix
diag(C^2, -2(g-1)).  A nonzero divisor class of square zero is the
numerical signal of a Lagrangian fibration; finding one amounts to the
Pell-type equation a^2 C^2 = 2(g-1) b^2, which has a nonzero solution
precisely when 2(g-1) C^2 is a perfect square.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .hermite import kernel_of_functional
from .mukai import MukaiVector, NSGram, is_primitive, pairing

__all__ = [
    "BBClass",
    "BBLattice",
    "IsotropicSearch",
    "bb_square",
    "isotropic_exists",
    "find_isotropic",
    "fujiki_degree",
    "perp_basis",
    "vperp_gram",
]


@dataclass(frozen=True)
class BBClass:
    """Divisor class a*C + b*E in (C, E) coordinates."""

    a: int
    b: int

    def __add__(self, other: "BBClass") -> "BBClass":
        return BBClass(self.a + other.a, self.b + other.b)

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"


@dataclass(frozen=True)
class BBLattice:
    """Rank-two Beauville-Bogomolov lattice diag(c2, -2(g-1))."""

    c2: int
    g: int

    def __post_init__(self):
        if self.c2 <= 0 or self.c2 % 2:
            raise ValueError("c2 must be a positive even integer")
        if self.g < 2:
            raise ValueError("g must be at least 2")

    @property
    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.c2, 0), (0, -2 * (self.g - 1)))

    @property
    def determinant(self) -> int:
        return -2 * (self.g - 1) * self.c2


def bb_square(cls: BBClass, lat: BBLattice) -> int:
    """Beauville-Bogomolov square a^2 c2 - 2(g-1) b^2."""
    return cls.a * cls.a * lat.c2 - 2 * (lat.g - 1) * cls.b * cls.b


@dataclass(frozen=True)
class IsotropicSearch:
    """Primitive isotropic classes with 0 < a <= bound, plus the closed-form
    existence verdict for the unbounded problem."""

    classes: tuple[BBClass, ...]
    exists: bool


def isotropic_exists(lat: BBLattice) -> bool:
    """Closed form: a nonzero isotropic class exists iff 2(g-1)c2 is square."""
    target = lat.c2 * 2 * (lat.g - 1)
    root = isqrt(target)
    return root * root == target


def find_isotropic(lat: BBLattice, bound: int) -> IsotropicSearch:
    """Enumerate primitive isotropic classes (a, +-b) with 0 < a <= bound.

    Both signs of the E-coefficient are reported as distinct classes.  The
    accompanying `exists` verdict is computed in closed form and refers to
    the unbounded problem, so a true verdict with an empty list only means
    the bound was too small (the smallest solution has a <= 2(g-1)).
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    e = 2 * (lat.g - 1)
    classes = []
    for a in range(1, bound + 1):
        b2, rem = divmod(a * a * lat.c2, e)
        if rem:
            continue
        b = isqrt(b2)
        if b * b != b2 or gcd(a, b) != 1:
            continue
        classes.append(BBClass(a, b))
        if b:
            classes.append(BBClass(a, -b))
    return IsotropicSearch(tuple(classes), isotropic_exists(lat))


def fujiki_degree(qH: int, qHL: int, qL: int, g: int) -> int:
    """Degree in t of (qH + 2 qHL t + qL t^2)^g.

    The three possible answers 0, g, 2g are the numerical shadow of the
    base-dimension trichotomy for fibrations of a 2g-dimensional
    holomorphic symplectic manifold.
    """
    if g < 1:
        raise ValueError("g must be at least 1")
    if qH == 0 and qHL == 0 and qL == 0:
        raise ValueError("the zero polynomial has no degree")
    if qL != 0:
        return 2 * g
    if qHL != 0:
        return g
    return 0


def perp_basis(v: MukaiVector, gram: NSGram) -> tuple[MukaiVector, MukaiVector]:
    """Canonical basis of the rank-two sublattice orthogonal to v.

    Works in the rank-three algebraic Mukai lattice over a rank-one NS.
    Kernel coordinates are ordered (c, r, s) so that divisor-type
    directions lead the normalized basis; together with the Hermite normal
    form this makes the output deterministic.
    """
    if gram.rank != 1:
        raise ValueError("perpendicular basis requires a rank-one NS lattice")
    if not is_primitive(v):
        raise ValueError("v must be primitive")
    c2 = gram.entries[0][0]
    # <v, .> as a functional in (c, r, s) coordinates
    functional = (v.c[0] * c2, -v.s, -v.r)
    rows = kernel_of_functional(functional)
    vecs = tuple(MukaiVector(r, (c,), s) for (c, r, s) in rows)
    assert len(vecs) == 2
    return vecs


def vperp_gram(v: MukaiVector, gram: NSGram) -> tuple[tuple[int, int], tuple[int, int]]:
    """Gram matrix of v-perp inside the rank-three algebraic Mukai lattice."""
    b1, b2 = perp_basis(v, gram)
    return (
        (pairing(b1, b1, gram), pairing(b1, b2, gram)),
        (pairing(b2, b1, gram), pairing(b2, b2, gram)),
    )

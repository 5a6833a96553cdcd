"""Numerical data of the Mukai-dual K3 surface.

Given g >= 2 and n >= 2, a K3 surface S with Pic(S) = Z.C and
C^2 = 2(g-1)n^2 has a two-dimensional moduli space of stable sheaves with
the primitive isotropic vector w = (n, C, (g-1)n).  That moduli space is
again a K3 surface; its degree-two lattice is the quotient w-perp / w, and
it carries a genus-g curve class D with D^2 = 2g - 2.  This module builds
those numbers, the order of the gerbe obstructing a universal sheaf, and
the integer constraint family satisfied by the cohomological transform
that exchanges the two surfaces.

The transform maps

    w = (n, C, (g-1)n)  ->  (0, 0, 1)
    (1, 0, 1-g)         ->  (0, D, k)
    (0, 0, 1)           ->  (n, -E, l)

for some integers k and l that the lattice data does not pin down.  In the
symbolic rank-two (D, E) lattice the unknowns x = D.E and y = E^2 are then
forced: preserving the pairing of the last two classes gives x + n*k = 1,
and preserving the square of the last one gives y = 2*n*l.  Solutions are
exposed as an explicit family, never as invented single values.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .bb import perp_basis
from .hermite import xgcd
from .mukai import (
    MukaiVector,
    NSGram,
    Polarization,
    fineness_gcd,
    is_primitive,
    pairing,
    square,
)

__all__ = [
    "DualSurfaceReport",
    "QuotientClass",
    "ConstraintSolution",
    "TransformConstraintFamily",
    "FibrationHit",
    "CriterionReport",
    "build_dual",
    "quotient_lattice",
    "solve_transform_constraints",
    "verify_solution",
    "unit_pairing",
    "general_fibration_criterion",
]


@dataclass(frozen=True)
class DualSurfaceReport:
    """Bundle of dual-surface numerics for one (g, n).

    `d_ample_assumed` records a geometric input, not a computation: the
    genus-g curve class is ample because the dual surface has Picard
    number one.  No lattice-level test exists for it here.
    """

    w: MukaiVector
    d_square: int
    gerbe_order: int
    base_dim: int
    fine: bool
    polarization_dual: int
    d_ample_assumed: bool = True


@dataclass(frozen=True)
class QuotientClass:
    """Generator of the rank-one quotient w-perp / Z.w and its square."""

    generator_image: MukaiVector
    square: int
    primitive: bool


def _express_in_basis(
    target: MukaiVector, basis: tuple[MukaiVector, MukaiVector]
) -> tuple[int, int]:
    """Integer coordinates of `target` in a rank-two basis, or ValueError."""
    rows = [b.components() for b in basis]
    t = target.components()
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            det = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
            if det == 0:
                continue
            alpha_num = t[i] * rows[1][j] - t[j] * rows[1][i]
            beta_num = rows[0][i] * t[j] - rows[0][j] * t[i]
            if alpha_num % det or beta_num % det:
                raise ValueError("target is not an integer combination of the basis")
            alpha, beta = alpha_num // det, beta_num // det
            if alpha * basis[0] + beta * basis[1] == target:
                return alpha, beta
            raise ValueError("target lies outside the span of the basis")
    raise ValueError("basis is degenerate")


def quotient_lattice(w: MukaiVector, gram: NSGram) -> QuotientClass:
    """Generator and induced square of the rank-one lattice w-perp / Z.w.

    w must be primitive and isotropic, so that w lies inside its own
    orthogonal complement and the quotient carries a well-defined square
    (shifting a lift by multiples of w does not change it).
    """
    if not is_primitive(w):
        raise ValueError("w must be primitive")
    if square(w, gram) != 0:
        raise ValueError("w must be isotropic")
    basis = perp_basis(w, gram)
    alpha, beta = _express_in_basis(w, basis)
    g0, x, y = xgcd(alpha, beta)
    # [[alpha, beta], [-y, x]] is unimodular when g0 == 1, so the second row
    # maps onto a generator of the quotient
    generator = (-y) * basis[0] + x * basis[1]
    return QuotientClass(generator, square(generator, gram), g0 == 1)


def build_dual(g: int, n: int) -> DualSurfaceReport:
    """Dual-surface report for C^2 = 2(g-1)n^2, valid for g >= 2, n >= 2.

    The n = 1 and n = 0 situations are classical (compactified Jacobian,
    elliptic K3) and are handled by `general_fibration_criterion` instead.
    """
    if g < 2 or n < 2:
        raise ValueError("build_dual requires g >= 2 and n >= 2")
    gram = NSGram.rank_one(2 * (g - 1) * n * n)
    w = MukaiVector(n, (1,), (g - 1) * n)
    assert square(w, gram) == 0 and is_primitive(w)
    gerbe = fineness_gcd(w, Polarization((1,)), gram)
    quotient = quotient_lattice(w, gram)
    # polarization on the dual side: the class C + (C^2/n)(0,0,1) equals
    # w - n*(1,0,1-g), and its image -( (0,0,1) - n*(0,D,k) ) has middle
    # component n*D whatever k is
    image = MukaiVector(0, (0, 0), 1) - n * MukaiVector(0, (1, 0), 0)
    polarization_multiple = -image.c[0]
    assert polarization_multiple == n
    return DualSurfaceReport(
        w=w,
        d_square=quotient.square,
        gerbe_order=gerbe,
        base_dim=quotient.square // 2 + 1,
        fine=gerbe == 1,
        polarization_dual=polarization_multiple,
    )


@dataclass(frozen=True)
class ConstraintSolution:
    """One member of the transform constraint family.

    de is the intersection D.E and e2 the square E^2 in the symbolic
    rank-two lattice of the dual surface.
    """

    k: int
    l: int
    de: int
    e2: int


@dataclass(frozen=True)
class TransformConstraintFamily:
    g: int
    n: int
    equations: tuple[str, ...]
    solutions: tuple[ConstraintSolution, ...]


def _transform_data(g: int, n: int, sol: ConstraintSolution):
    """Source classes, their images, and the two Gram matrices."""
    src = NSGram.rank_one(2 * (g - 1) * n * n)
    dst = NSGram.rank_two(2 * g - 2, sol.de, sol.e2)
    table = (
        (MukaiVector(n, (1,), (g - 1) * n), MukaiVector(0, (0, 0), 1)),
        (MukaiVector(1, (0,), 1 - g), MukaiVector(0, (1, 0), sol.k)),
        (MukaiVector(0, (0,), 1), MukaiVector(n, (0, -1), sol.l)),
    )
    return src, dst, table


def verify_solution(g: int, n: int, sol: ConstraintSolution) -> bool:
    """Re-check a family member against every pairing the isometry preserves."""
    src, dst, table = _transform_data(g, n, sol)
    for i, (a, img_a) in enumerate(table):
        for b, img_b in table[i:]:
            if pairing(a, b, src) != pairing(img_a, img_b, dst):
                return False
    return unit_pairing(g, n, sol) == 1


def unit_pairing(g: int, n: int, sol: ConstraintSolution) -> int:
    """Pairing of the rank-n bundle class (n, E, l) with the curve class
    (0, D, -k), evaluated in the (D, E) lattice.

    The transform matches this against the pairing of (0, 0, 1) with
    -(1, 0, 1-g), so on the constraint family it must equal one.
    """
    dst = NSGram.rank_two(2 * g - 2, sol.de, sol.e2)
    bundle = MukaiVector(n, (0, 1), sol.l)
    curve = MukaiVector(0, (1, 0), -sol.k)
    return pairing(bundle, curve, dst)


def solve_transform_constraints(
    g: int, n: int, k_range: tuple[int, int]
) -> TransformConstraintFamily:
    """Constraint family of the transform: de = 1 - n*k, e2 = 2*n*l.

    Emits one solution per k in k_range and |l| up to the range width; every
    emitted member is re-verified by evaluating all pairings in the
    rank-two (D, E) lattice.  k and l stay free parameters by design.
    """
    if g < 2 or n < 2:
        raise ValueError("constraints require g >= 2 and n >= 2")
    k_min, k_max = k_range
    if k_min > k_max:
        raise ValueError("empty k range")
    width = k_max - k_min
    solutions = []
    for k in range(k_min, k_max + 1):
        for l in range(-width, width + 1):
            sol = ConstraintSolution(k=k, l=l, de=1 - n * k, e2=2 * n * l)
            if not verify_solution(g, n, sol):
                raise AssertionError(f"family member failed re-verification: {sol}")
            solutions.append(sol)
    equations = (
        f"de + {n}*k == 1",
        f"e2 == {2 * n}*l",
    )
    return TransformConstraintFamily(g, n, equations, tuple(solutions))


@dataclass(frozen=True)
class FibrationHit:
    """One primitive isotropic class orthogonal to v.

    Rank zero means the underlying K3 is elliptic and classical results
    apply; positive rank is the dual-surface construction, for which the
    genus-g curve square and the gerbe order are reported.
    """

    w: MukaiVector
    branch: str
    d_square: int | None = None
    gerbe_order: int | None = None


@dataclass(frozen=True)
class CriterionReport:
    v: MukaiVector
    genus: int
    hits: tuple[FibrationHit, ...]


def general_fibration_criterion(
    v: MukaiVector, gram: NSGram, bound: int
) -> CriterionReport:
    """Search for primitive isotropic w orthogonal to v with |entries| <= bound.

    Requires <v, v> = 2g - 2 > 0.  Representatives are normalized to
    non-negative rank; rank-zero hits additionally take the sign making
    (c, s) lexicographically positive.  Output grows monotonically with the
    bound and the enumeration order is fixed, so reports are deterministic.
    """
    if gram.rank != 1:
        raise ValueError("criterion requires a rank-one NS lattice")
    sq = square(v, gram)
    if sq <= 0 or sq % 2:
        raise ValueError("need square(v) = 2g - 2 > 0")
    genus = sq // 2 + 1
    polarization = Polarization((1,))
    hits = []
    for r in range(0, bound + 1):
        for c in range(-bound, bound + 1):
            for s in range(-bound, bound + 1):
                w = MukaiVector(r, (c,), s)
                if w.is_zero():
                    continue
                if r == 0 and (c, s) < (0, 0):
                    continue
                if gcd(r, c, s) != 1:
                    continue
                if square(w, gram) != 0 or pairing(v, w, gram) != 0:
                    continue
                if r == 0:
                    hits.append(FibrationHit(w=w, branch="elliptic"))
                else:
                    hits.append(
                        FibrationHit(
                            w=w,
                            branch="dual-surface",
                            d_square=sq,
                            gerbe_order=fineness_gcd(w, polarization, gram),
                        )
                    )
    return CriterionReport(v=v, genus=genus, hits=tuple(hits))

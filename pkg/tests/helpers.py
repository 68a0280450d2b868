"""Shared generators and worked-example builders for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from diffrad import Exact, FactoredPoly, Poly, factor

GENERATOR_POOL = ("one", "i", 2, 3, 5, 6)

I = Exact.i()
S2 = Exact.sqrt_int(2)
S3 = Exact.sqrt_int(3)
S6 = Exact.sqrt_int(6)
HALF = Fraction(1, 2)


def sharp_quadratic_triple() -> tuple[FactoredPoly, FactoredPoly, FactoredPoly]:
    """z(z-1) - (z-4)(z-5) = 4(2z-5): the sharp case of the 3-term inequality."""
    a = FactoredPoly(1, [(0, 1), (1, 1)])
    b = FactoredPoly(-1, [(4, 1), (5, 1)])
    c = FactoredPoly(8, [(Fraction(5, 2), 1)])
    return a, b, c


def falling_square_triple() -> tuple[FactoredPoly, FactoredPoly, FactoredPoly]:
    """Quadratics with a^2_ + b^2_ = c^2_ over Q(i, sqrt2, sqrt3)."""
    a = Poly([0, 0, 1])
    half_neg_i = I * -HALF
    b = Poly([half_neg_i * (-S2), half_neg_i * 2, half_neg_i * S2])
    c = Poly([HALF * S2, Exact.from_rational(1), -HALF * S2])
    return factor(a), factor(b), factor(c)


def sharp_quintic_tuple() -> list[FactoredPoly]:
    """Two falling quintics plus a falling quartic summing to a quadratic.

    Chain starts -2/5, -3/5, 0; the sum has the two roots 3/2 +- sqrt(1185)/50.
    """
    alpha = Fraction(-2, 5)
    beta = Fraction(-3, 5)
    f1 = FactoredPoly(1, [(alpha + j, 1) for j in range(5)])
    f2 = FactoredPoly(-1, [(beta + j, 1) for j in range(5)])
    f3 = FactoredPoly(1, [(j, 1) for j in range(4)])
    f4 = factor(f1.expand() + f2.expand() + f3.expand())
    return [f1, f2, f3, f4]


def unit_linear_triad() -> list[FactoredPoly]:
    """Linear triple with f1^2_ + f2^2_ + f3^2_ = 1."""
    f1 = Poly([Exact.from_rational(1), S2 * HALF])
    f2 = Poly([(S2 - S6) * HALF, Exact.from_rational(HALF)])
    f3 = Poly([I * (S6 - S2) * HALF, I * S3 * HALF])
    return [factor(p) for p in (f1, f2, f3)]


def unit_quadratic_triad() -> list[FactoredPoly]:
    """Quadratic triple with f1^2_ + f2^2_ + f3^2_ = 1."""
    f1 = Poly([Fraction(c, 48) * S2 for c in (-29, 48, 24)])
    f2 = Poly([Fraction(c, 48) for c in (-61, -48, 24)])
    f3 = Poly([Fraction(c, 48) * I * S3 for c in (3, 16, 24)])
    return [factor(p) for p in (f1, f2, f3)]


def rand_fraction(rng: random.Random, top: int = 9) -> Fraction:
    return Fraction(rng.randint(-top, top), rng.randint(1, top))


def rand_exact(rng: random.Random, max_terms: int = 3, top: int = 9) -> Exact:
    """Random element of Q(i, sqrt(2), sqrt(3), sqrt(5))."""
    value = Exact.from_rational(0)
    for _ in range(rng.randint(1, max_terms)):
        coeff = rand_fraction(rng, top)
        gen = rng.choice(GENERATOR_POOL)
        if gen == "one":
            term = Exact.from_rational(coeff)
        elif gen == "i":
            term = Exact.i() * coeff
        else:
            term = Exact.sqrt_int(gen) * coeff
        value = value + term
    return value


def rand_rational_poly(
    rng: random.Random, max_degree: int = 5, top: int = 6
) -> Poly:
    degree = rng.randint(0, max_degree)
    coeffs = [rand_fraction(rng, top) for _ in range(degree + 1)]
    return Poly(coeffs)


def rand_nonzero_poly(rng: random.Random, max_degree: int = 5) -> Poly:
    while True:
        p = rand_rational_poly(rng, max_degree)
        if p:
            return p


def rand_grid_factored(
    rng: random.Random, max_degree: int = 4, grid: int = 3
) -> FactoredPoly:
    """Factored polynomial with roots on a small integer/half-integer grid."""
    degree = rng.randint(1, max_degree)
    roots = [
        (Fraction(rng.randint(-grid, grid), rng.choice((1, 2))), 1)
        for _ in range(degree)
    ]
    lead = rng.choice((1, -1, 2, Fraction(1, 2)))
    return FactoredPoly(lead, roots)

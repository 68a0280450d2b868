import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffrad import (
    NEG_INF,
    BackendMismatchError,
    Exact,
    ExactDivisionError,
    FactoredPoly,
    Poly,
    RootsUnavailableError,
    classical_rad,
    factor,
    poly_gcd,
)
from helpers import rand_grid_factored, rand_nonzero_poly

Z = Poly.z()
S2 = Exact.sqrt_int(2)
S3 = Exact.sqrt_int(3)
I = Exact.i()


def test_addition_collapse():
    # z(z-1) - (z-4)(z-5) collapses two quadratics to a line
    a = Z * (Z - 1)
    b = -((Z - 4) * (Z - 5))
    assert a + b == 8 * Z - 20
    assert a + Poly.zero() == a
    assert (Z - 1) * (Z + 1) == Z**2 - 1


def test_zero_polynomial_degree():
    assert Poly.zero().degree == NEG_INF
    assert Poly.zero().degree < 0
    assert not Poly.zero()
    assert Poly([0, 0]).degree == NEG_INF


def test_divexact():
    assert (Z**2 * (Z - 1)).divexact(Z * (Z - 1)) == Z
    assert (Z**2 + Z).divexact(Z) == Z + 1
    with pytest.raises(ExactDivisionError) as excinfo:
        (Z**3).divexact(Z - 1)
    assert excinfo.value.remainder == Poly.constant(1)


def test_gcd_examples():
    assert poly_gcd(Z * (Z - 1) * (Z - 2), (Z - 2) * (Z - 3) * (Z - 4)) == Z - 2
    p = 3 * Z**2 + 3 * Z
    assert poly_gcd(p, Poly.zero()) == p.monic()
    assert poly_gcd(Z**2, Z**3) == Z**2
    with pytest.raises(ValueError):
        poly_gcd(Poly.zero(), Poly.zero())


def test_gcd_radical_coefficients():
    p = (Z - S2) * (Z - 1) * (Z + I)
    q = (Z - S2) * (Z + I) * (Z - 5)
    assert poly_gcd(p, q) == (Z - S2) * (Z + I)


def test_expand():
    f = FactoredPoly(1, [(0, 2), (1, 1), (2, 1)])
    assert f.expand() == Z**4 - 3 * Z**3 + 2 * Z**2


def test_factor_quadratic_over_radicals():
    f = factor(Z**2 - 2)
    assert {r for r, _ in f.roots} == {S2, -S2}

    # -(i/2)(sqrt2 z^2 + 2z - sqrt2) has zeros (-sqrt2 +- sqrt6)/2
    half_neg_i = I * Fraction(-1, 2)
    b = Poly([half_neg_i * (-S2), half_neg_i * 2, half_neg_i * S2])
    fb = factor(b)
    expected = {
        (-S2 + S2 * S3) * Fraction(1, 2),
        (-S2 - S2 * S3) * Fraction(1, 2),
    }
    assert {r for r, _ in fb.roots} == expected


def test_factor_rational_roots():
    p = 6 * Z**3 - 11 * Z**2 + 6 * Z - 1
    f = factor(p)
    assert {r for r, _ in f.roots} == {
        Exact.from_rational(1),
        Exact.from_rational(Fraction(1, 2)),
        Exact.from_rational(Fraction(1, 3)),
    }
    assert f.expand() == p


def test_factor_unavailable():
    with pytest.raises(RootsUnavailableError):
        factor(Z**3 - 2)
    # a hint unlocks nothing here (irrational cubic), but hints do get used
    f = factor(Z**3 - 3 * Z**2 + 3 * Z - 1, hints=[Exact.from_rational(1)])
    assert f.roots == ((Exact.from_rational(1), 3),)


def test_classical_rad():
    assert classical_rad(FactoredPoly(1, [(0, 2), (1, 3)])) == Z * (Z - 1)
    assert classical_rad(FactoredPoly(7)) == Poly.constant(1)


def test_classical_rad_distinct_root_count():
    # independent oracle: count distinct roots of the triple product directly
    roots_a = [Fraction(0), Fraction(1)]
    roots_b = [Fraction(4), Fraction(5)]
    roots_c = [Fraction(5, 2)]
    distinct = {*roots_a, *roots_b, *roots_c}
    abc = (
        FactoredPoly(1, [(r, 1) for r in roots_a])
        .times(FactoredPoly(-1, [(r, 1) for r in roots_b]))
        .times(FactoredPoly(8, [(r, 1) for r in roots_c]))
    )
    rad = classical_rad(abc)
    assert rad.degree == len(distinct) == 5
    expected = Poly.constant(1)
    for r in sorted(distinct):
        expected = expected * (Z - r)
    assert rad == expected


def test_eval():
    p = Z * (Z - 1) * (Z - 2)
    assert p(3) == Exact.from_rational(6)
    assert p(0) == p.coeff(0)
    f22 = Z**2 * (Z - 1) ** 3
    assert not f22(1)


def test_degree_multiplicativity_bulk():
    rng = random.Random(11)
    for _ in range(10_000):
        p = rand_nonzero_poly(rng, 5)
        q = rand_nonzero_poly(rng, 5)
        assert (p * q).degree == p.degree + q.degree


def test_gcd_matches_factored_min_multiplicity():
    rng = random.Random(13)
    for _ in range(1000):
        f = rand_grid_factored(rng)
        g = rand_grid_factored(rng)
        # oracle: min multiplicities over common roots
        expected = Poly.constant(1)
        for r, mf in f.roots:
            mg = g.ord_at(r)
            expected = expected * Poly.linear(r) ** min(mf, mg)
        assert poly_gcd(f.expand(), g.expand()) == expected


def test_factor_roundtrip():
    rng = random.Random(17)
    for _ in range(300):
        f = rand_grid_factored(rng)
        p = f.expand()
        assert factor(p).expand() == p


@settings(max_examples=60)
@given(st.data())
def test_divmod_property(data):
    rng = random.Random(data.draw(st.integers(0, 10**9)))
    a = rand_nonzero_poly(rng, 6)
    b = rand_nonzero_poly(rng, 4)
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_backend_mismatch():
    numeric = Poly([1]).embed(128)
    with pytest.raises(BackendMismatchError):
        _ = numeric + Z
    with pytest.raises(BackendMismatchError):
        poly_gcd(numeric * Poly([0, 1]).embed(128), numeric)


def test_json_encoding():
    p = Z**2 * Fraction(1, 2)
    assert p.to_json_dict() == {"coeffs": ["0", "0", "1/2"]}
    f = FactoredPoly(2, [(1, 2), (0, 1)])
    assert f.to_json_dict() == {"lead": "2/1", "roots": [["0", 1], ["1/1", 2]]}


def test_expr_text_edge_cases():
    assert Poly.zero().expr_text() == "0"
    assert (-Z).expr_text() == "-z"
    assert (Z - 1).expr_text() == "z - 1"
    assert Poly.constant(I * -1).expr_text() == "-i"

import random
from fractions import Fraction

import pytest

from diffrad import BackendMismatchError, Exact, Numeric
from helpers import rand_exact

S2 = Exact.sqrt_int(2)
S3 = Exact.sqrt_int(3)
I = Exact.i()


def test_rationalization():
    assert Exact.from_rational(1) / S2 == S2 * Fraction(1, 2)
    assert (Exact.from_rational(1) / S2).text() == "1/2*sqrt(2)"


def test_generator_products():
    assert S2 * S3 == Exact.sqrt_int(6)
    assert I * I == Exact.from_rational(-1)
    assert S2 * S2 == Exact.from_rational(2)
    assert Exact.sqrt_int(8) == S2 * 2
    assert Exact.sqrt_int(-4) == I * 2


def test_canonical_text():
    x = Exact.from_rational(Fraction(-3, 4)) + S2 * Fraction(1, 2) + I * S2 * S3
    assert x.text() == "-3/4 + 1/2*sqrt(2) + 1/1*i*sqrt(6)"
    assert Exact.from_rational(0).text() == "0"
    assert (S2 - S2).text() == "0"


def test_as_integer():
    assert Exact.from_rational(5).as_integer() == 5
    assert Exact.from_rational(Fraction(1, 2)).as_integer() is None
    assert (S2 - S2 + 3).as_integer() == 3
    assert (S2 + 1).as_integer() is None


def test_field_axioms_bulk():
    rng = random.Random(20240901)
    one = Exact.from_rational(1)
    for _ in range(10_000):
        a = rand_exact(rng)
        b = rand_exact(rng)
        c = rand_exact(rng)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == one


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        Exact.from_rational(0).inverse()
    with pytest.raises(ZeroDivisionError):
        Numeric.from_rational(1, 64) / Numeric.from_rational(0, 64)


def test_backend_mixing_rejected():
    with pytest.raises(BackendMismatchError):
        S2 + Numeric.from_rational(1, 64)
    with pytest.raises(BackendMismatchError):
        Numeric.from_rational(1, 64) * S2


def test_embedding_homomorphism():
    rng = random.Random(7)
    for prec in (64, 128, 256):
        bound = 2.0 ** (8 - prec)
        for _ in range(200):
            a = rand_exact(rng, top=1000)
            b = rand_exact(rng, top=1000)
            lhs = (a * b).to_numeric(prec)
            rhs = a.to_numeric(prec) * b.to_numeric(prec)
            assert (lhs - rhs).magnitude() < bound


def test_numeric_precision_floor():
    with pytest.raises(ValueError):
        Numeric.from_rational(1, 32)


def test_numeric_as_integer_tolerance():
    x = Numeric.from_rational(3, 128)
    assert x.as_integer() == 3
    y = x + Numeric.from_rational(Fraction(1, 10**30), 128)
    assert y.as_integer() == 3  # inside default tolerance 2^-64
    z = x + Numeric.from_rational(Fraction(1, 100), 128)
    assert z.as_integer() is None
    assert z.as_integer(tol=Fraction(1, 10)) == 3


def test_numeric_precision_never_downgrades():
    lo = Numeric.from_rational(Fraction(1, 3), 64)
    hi = Numeric.from_rational(Fraction(1, 7), 256)
    assert (lo * hi).prec == 256
    assert (hi - lo).prec == 256


def test_exact_pow_and_negative_pow():
    x = S2 + 1
    assert x**0 == Exact.from_rational(1)
    assert x**3 == x * x * x
    assert x**-2 == (x * x).inverse()


def test_conjugation_eliminates_generator():
    x = S2 * 3 + I * S3 + Fraction(1, 2)
    prod = x * x.conjugate_generator("i")
    assert "i" not in {g for g in prod.generators()}

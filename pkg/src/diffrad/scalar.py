"""Exact and arbitrary-precision scalar arithmetic.

Two interchangeable backends share one operator surface:

* :class:`Exact` — an element of the field Q(i, sqrt(p1), sqrt(p2), ...),
  stored as a sparse map from radical keys to rationals.  A radical key is a
  pair ``(has_i, primes)``: the imaginary unit flag and a frozen set of prime
  radicands.  Every product of generators reduces canonically (i*i = -1,
  sqrt(p)*sqrt(p) = p, sqrt(a)*sqrt(b) = sqrt(ab) with square parts pulled
  into the rational), so structural equality coincides with equality of the
  complex values.  Declared radicands such as sqrt(6) live on the product key
  {2, 3}; products of distinct prime square roots are linearly independent
  over Q, which keeps the representation canonical under any mixing.

* :class:`Numeric` — an arbitrary-precision complex number built on raw
  mpmath mantissa/exponent tuples.  Precision is carried per value (>= 64
  bits) and binary operations run at the larger operand precision, so no
  ambient global precision state is consulted.

Mixing the two backends in one arithmetic operation raises
:class:`BackendMismatchError`; conversion is explicit via
:meth:`Exact.to_numeric`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from mpmath import libmp
from mpmath.libmp import (
    from_int,
    from_rational,
    fzero,
    mpf_add,
    mpf_cmp,
    mpf_mul,
    mpf_sqrt,
    mpf_sub,
    round_nearest,
    to_int,
    to_str,
)

from .errors import BackendMismatchError

RND = round_nearest

# Radical key: (imaginary-unit flag, frozen set of prime radicands).
Key = tuple[bool, frozenset[int]]

_ONE_KEY: Key = (False, frozenset())
_I_KEY: Key = (True, frozenset())

RationalLike = Union[int, Fraction]


def _factor_radicand(n: int) -> tuple[int, frozenset[int]]:
    """Split n >= 1 into (s, primes) with n = s^2 * prod(primes)."""
    if n < 1:
        raise ValueError(f"radicand must be >= 1, got {n}")
    outer = 1
    primes: set[int] = set()
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            outer *= p ** (e // 2)
            if e % 2:
                primes.add(p)
        p += 1 if p == 2 else 2
    if n > 1:
        primes.add(n)
    return outer, frozenset(primes)


def _key_mul(k1: Key, k2: Key) -> tuple[int, Key]:
    """Multiply two radical keys; returns (rational factor, reduced key)."""
    i1, p1 = k1
    i2, p2 = k2
    factor = -1 if (i1 and i2) else 1
    for p in p1 & p2:
        factor *= p
    return factor, (i1 ^ i2, p1 ^ p2)


def _key_sort(key: Key) -> tuple[int, bool]:
    has_i, primes = key
    n = 1
    for p in primes:
        n *= p
    return n, has_i


class Exact:
    """Immutable element of Q(i, sqrt(p), ...) in canonical sparse form."""

    __slots__ = ("_terms",)

    backend = "exact"

    def __init__(self, terms: dict[Key, Fraction] | None = None):
        clean: dict[Key, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    clean[key] = coeff
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Exact values are immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, value: RationalLike) -> Exact:
        fr = Fraction(value)
        return cls({_ONE_KEY: fr}) if fr else cls()

    @classmethod
    def i(cls) -> Exact:
        return cls({_I_KEY: Fraction(1)})

    @classmethod
    def sqrt_int(cls, n: int) -> Exact:
        """Square root of an integer; negative n contributes a factor i."""
        if n == 0:
            return cls()
        key_i = n < 0
        outer, primes = _factor_radicand(abs(n))
        return cls({(key_i, primes): Fraction(outer)})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_rational(self) -> bool:
        return all(key == _ONE_KEY for key in self._terms)

    def as_fraction(self) -> Fraction | None:
        if not self._terms:
            return Fraction(0)
        if self.is_rational:
            return self._terms[_ONE_KEY]
        return None

    def as_integer(self) -> int | None:
        fr = self.as_fraction()
        if fr is not None and fr.denominator == 1:
            return fr.numerator
        return None

    def generators(self) -> set[object]:
        """Generators (the string "i" and/or prime ints) in the support."""
        gens: set[object] = set()
        for has_i, primes in self._terms:
            if has_i:
                gens.add("i")
            gens.update(primes)
        return gens

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Exact | None:
        if isinstance(other, Exact):
            return other
        if isinstance(other, (int, Fraction)):
            return Exact.from_rational(other)
        if isinstance(other, Numeric):
            raise BackendMismatchError(
                "cannot mix exact and numeric scalars; convert explicitly"
            )
        return None

    def __add__(self, other) -> Exact:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self._terms)
        for key, coeff in rhs._terms.items():
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return Exact(terms)

    __radd__ = __add__

    def __neg__(self) -> Exact:
        return Exact({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other) -> Exact:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> Exact:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other) -> Exact:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms: dict[Key, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in rhs._terms.items():
                factor, key = _key_mul(k1, k2)
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2 * factor
        return Exact(terms)

    __rmul__ = __mul__

    def conjugate_generator(self, gen) -> Exact:
        """Negate every term whose key contains gen ("i" or a prime)."""
        terms = {}
        for (has_i, primes), coeff in self._terms.items():
            hit = (gen == "i" and has_i) or (gen != "i" and gen in primes)
            terms[(has_i, primes)] = -coeff if hit else coeff
        return Exact(terms)

    def inverse(self) -> Exact:
        if not self._terms:
            raise ZeroDivisionError("exact scalar division by zero")
        # Multiply by the conjugate over each generator in turn; every step
        # removes that generator from the running denominator, which ends
        # rational because the radical basis is linearly independent.
        numer = Exact.from_rational(1)
        denom = self
        for gen in sorted(self.generators(), key=str):
            conj = denom.conjugate_generator(gen)
            numer = numer * conj
            denom = denom * conj
        fr = denom.as_fraction()
        if fr is None or fr == 0:  # pragma: no cover - independence guarantee
            raise ArithmeticError("norm computation failed")
        return numer * Exact.from_rational(Fraction(1) / fr)

    def __truediv__(self, other) -> Exact:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other) -> Exact:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs * self.inverse()

    def __pow__(self, exponent: int) -> Exact:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = Exact.from_rational(1)
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Exact.from_rational(other)
        if not isinstance(other, Exact):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- conversions -------------------------------------------------------

    def to_numeric(self, prec: int) -> Numeric:
        re = fzero
        im = fzero
        work = prec + 16
        for (has_i, primes), coeff in self._terms.items():
            part = from_rational(coeff.numerator, coeff.denominator, work, RND)
            for p in primes:
                part = mpf_mul(part, mpf_sqrt(from_int(p), work, RND), work, RND)
            if has_i:
                im = mpf_add(im, part, work, RND)
            else:
                re = mpf_add(re, part, work, RND)
        return Numeric(re, im, prec)

    def __complex__(self) -> complex:
        return complex(self.to_numeric(64))

    # -- text --------------------------------------------------------------

    def text(self) -> str:
        """Canonical form: terms sorted by radical key, `p/q[*i][*sqrt(n)]`."""
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for key in sorted(self._terms, key=_key_sort):
            coeff = self._terms[key]
            n, has_i = _key_sort(key)
            body = f"{abs(coeff.numerator)}/{coeff.denominator}"
            if has_i:
                body += "*i"
            if n != 1:
                body += f"*sqrt({n})"
            if not pieces:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Exact({self.text()!r})"


class Numeric:
    """Arbitrary-precision complex scalar with per-value precision.

    Operations run at the larger operand precision plus GUARD_BITS, so chains
    of arithmetic stay accurate to the nominal precision even for operands
    well above unit magnitude; the nominal precision itself never shrinks.
    """

    __slots__ = ("_re", "_im", "prec")

    backend = "numeric"

    MIN_PREC = 64
    GUARD_BITS = 32

    def __init__(self, re, im, prec: int):
        if prec < self.MIN_PREC:
            raise ValueError(f"precision must be >= {self.MIN_PREC} bits")
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("Numeric values are immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, value: RationalLike, prec: int) -> Numeric:
        fr = Fraction(value)
        return cls(from_rational(fr.numerator, fr.denominator, prec, RND), fzero, prec)

    @classmethod
    def from_complex(cls, value: complex, prec: int) -> Numeric:
        return cls(libmp.from_float(value.real), libmp.from_float(value.imag), prec)

    @classmethod
    def from_mpc(cls, value, prec: int) -> Numeric:
        re, im = value._mpc_ if hasattr(value, "_mpc_") else (value._mpf_, fzero)
        return cls(re, im, prec)

    # -- inspection --------------------------------------------------------

    def __bool__(self) -> bool:
        return self._re != fzero or self._im != fzero

    def magnitude(self) -> float:
        return libmp.to_float(libmp.mpc_abs((self._re, self._im), 53))

    def default_tolerance(self) -> Fraction:
        return Fraction(1, 2 ** (self.prec // 2))

    def as_integer(self, tol: Fraction | float | None = None) -> int | None:
        """Nearest integer if within tolerance (default 2**(-prec/2))."""
        if tol is None:
            tol = self.default_tolerance()
        work = self.prec + 16
        nearest = to_int(self._re, RND)
        dist = libmp.mpc_abs(
            (mpf_sub(self._re, from_int(nearest), work, RND), self._im), work
        )
        bound = from_rational(
            Fraction(tol).numerator, Fraction(tol).denominator, work, RND
        )
        return nearest if mpf_cmp(dist, bound) < 0 else None

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Numeric | None:
        if isinstance(other, Numeric):
            return other
        if isinstance(other, (int, Fraction)):
            return Numeric.from_rational(other, self.prec)
        if isinstance(other, Exact):
            raise BackendMismatchError(
                "cannot mix exact and numeric scalars; convert explicitly"
            )
        return None

    def _binary(self, other, fn):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        prec = max(self.prec, rhs.prec)
        re, im = fn(
            (self._re, self._im), (rhs._re, rhs._im), prec + self.GUARD_BITS, RND
        )
        return Numeric(re, im, prec)

    def __add__(self, other):
        return self._binary(other, libmp.mpc_add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, libmp.mpc_sub)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs - self

    def __mul__(self, other):
        return self._binary(other, libmp.mpc_mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not rhs:
            raise ZeroDivisionError("numeric scalar division by zero")
        return self._binary(other, libmp.mpc_div)

    def __rtruediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs / self

    def __neg__(self) -> Numeric:
        re, im = libmp.mpc_neg((self._re, self._im))
        return Numeric(re, im, self.prec)

    def inverse(self) -> Numeric:
        return Numeric.from_rational(1, self.prec) / self

    def __pow__(self, exponent: int) -> Numeric:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = Numeric.from_rational(1, self.prec)
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Numeric.from_rational(other, self.prec)
        if not isinstance(other, Numeric):
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self) -> int:
        return hash((self._re, self._im))

    def distance(self, other: Numeric) -> float:
        diff = self - other
        return diff.magnitude()

    # -- conversions -------------------------------------------------------

    def __complex__(self) -> complex:
        return complex(libmp.to_float(self._re), libmp.to_float(self._im))

    def to_mpc(self):
        import mpmath

        return mpmath.mp.make_mpc((self._re, self._im))

    # -- text --------------------------------------------------------------

    def text(self) -> str:
        dps = max(int(self.prec / 3.33) + 2, 20)
        re = to_str(self._re, dps)
        im = to_str(self._im, dps)
        if self._im == fzero:
            return re
        return f"({re} {'+' if not im.startswith('-') else '-'} {im.lstrip('-')}j)"

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Numeric({self.text()}, prec={self.prec})"


Scalar = Union[Exact, Numeric]


def as_scalar(value, like: Scalar) -> Scalar:
    """Coerce a Python rational into the backend of `like`."""
    if isinstance(value, (Exact, Numeric)):
        if value.backend != like.backend:
            raise BackendMismatchError(
                f"expected {like.backend} scalar, got {value.backend}"
            )
        return value
    if isinstance(like, Exact):
        return Exact.from_rational(value)
    return Numeric.from_rational(value, like.prec)


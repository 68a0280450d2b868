"""Forward-difference calculus on polynomials.

Provides the shift p(z) -> p(z+k), the forward difference
delta p(z) = p(z+1) - p(z) and its iterates, falling/raising factorial
expressions p(z)p(z-1)...  and p(z)p(z+1)..., and conversion to and from
the falling-factorial (Newton) basis around an arbitrary base point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import FactoredPoly, Poly
from .scalar import Exact, Numeric, Scalar, as_scalar


@lru_cache(maxsize=None)
def _pascal_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _pascal_row(n - 1)
    return tuple(
        (prev[k - 1] if k else 0) + (prev[k] if k < n else 0) for k in range(n + 1)
    )


def binomial(n: int, k: int) -> int:
    """C(n, k) by the Pascal recurrence on exact integers."""
    if k < 0 or k > n:
        return 0
    return _pascal_row(n)[k]


def shift(p: Poly, k) -> Poly:
    """p(z + k), exactly, for an integer or scalar step k."""
    if not p:
        return p
    if isinstance(k, (Exact, Numeric)):
        step = k
    else:
        step = as_scalar(Fraction(k), p.lead)
    if not step:
        return p
    if isinstance(step, Exact):
        fast = _shift_rational(p, step)
        if fast is not None:
            return fast
    acc = Poly()
    zk = Poly([step, as_scalar(1, step)])  # z + k
    for c in reversed(p.coeffs):
        acc = acc * zk + Poly.constant(c)
    return acc


def _shift_rational(p: Poly, step: Exact) -> Poly | None:
    """Synthetic Horner shift on plain fractions; None if radicals appear."""
    h = step.as_fraction()
    if h is None:
        return None
    cs: list[Fraction] = []
    for c in p.coeffs:
        f = c.as_fraction()
        if f is None:
            return None
        cs.append(f)
    d = len(cs) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            cs[j] += h * cs[j + 1]
    return Poly([Exact.from_rational(c) for c in cs])


def delta(p: Poly) -> Poly:
    """Forward difference p(z+1) - p(z)."""
    return shift(p, 1) - p


def delta_k(p: Poly, k: int) -> Poly:
    """k-fold forward difference, k >= 0 (k = 0 returns p itself)."""
    if k < 0:
        raise ValueError("difference order must be nonnegative")
    out = p
    for _ in range(k):
        out = delta(out)
    return out


def falling_power(p: Poly, n: int) -> Poly:
    """p(z) p(z-1) ... p(z-n+1); n = 0 gives the constant 1."""
    if n < 0:
        raise ValueError("falling power needs n >= 0")
    out = Poly.constant(as_scalar(1, p.lead) if p else 1)
    for j in range(n):
        out = out * shift(p, -j)
    return out


def raising_power(p: Poly, n: int) -> Poly:
    """p(z) p(z+1) ... p(z+n-1); n = 0 gives the constant 1."""
    if n < 0:
        raise ValueError("raising power needs n >= 0")
    out = Poly.constant(as_scalar(1, p.lead) if p else 1)
    for j in range(n):
        out = out * shift(p, j)
    return out


def falling_power_factored(f: FactoredPoly, n: int) -> FactoredPoly:
    """Factored form of f^(falling n): each root r spawns r, r+1, ..., r+n-1."""
    if n < 1:
        raise ValueError("factored falling power needs n >= 1")
    roots = []
    for r, m in f.roots:
        for j in range(n):
            roots.append((r + as_scalar(j, r), m))
    return FactoredPoly(f.lead**n, roots)


def falling_factorial_linear(root: Scalar, n: int) -> Poly:
    """(z - root) (z - root - 1) ... (z - root - n + 1) as a Poly."""
    out = Poly.constant(as_scalar(1, root))
    for j in range(n):
        out = out * Poly.linear(root + as_scalar(j, root))
    return out


@dataclass(frozen=True)
class NewtonExpansion:
    """P(z) = sum a_j (z - base)^(falling j) in the falling-factorial basis."""

    base: Scalar
    coeffs: tuple[Scalar, ...]

    def to_json_dict(self) -> dict:
        return {
            "base": self.base.text(),
            "coeffs": [c.text() for c in self.coeffs],
        }


def to_newton(p: Poly, z0) -> NewtonExpansion:
    """Expand around z0; coefficient j is delta^j p(z0) / j!."""
    if not isinstance(z0, (Exact, Numeric)):
        z0 = as_scalar(z0, p.lead if p else Exact.from_rational(0))
    coeffs = []
    cur = p
    fact = 1
    j = 0
    while cur:
        coeffs.append(cur(z0) * Fraction(1, fact))
        cur = delta(cur)
        j += 1
        fact *= j
    return NewtonExpansion(z0, tuple(coeffs))


def from_newton(e: NewtonExpansion) -> Poly:
    out = Poly()
    for j, a in enumerate(e.coeffs):
        out = out + falling_factorial_linear(e.base, j) * a
    return out


def binomial_transform_check(p: Poly, z, k: int) -> tuple[bool, bool]:
    """Check the two shift/difference binomial identities at a point.

    First: p(z+k) equals sum_j C(k,j) delta^j p(z).
    Second: delta^k p(z) equals sum_j C(k,j) (-1)^(k-j) p(z+j).
    Both hold identically; this is exposed as a self-test primitive.
    """
    if not isinstance(z, (Exact, Numeric)):
        z = as_scalar(z, p.lead if p else Exact.from_rational(0))
    if k < 0:
        raise ValueError("k must be nonnegative")
    deltas = [p]
    for _ in range(k):
        deltas.append(delta(deltas[-1]))
    zero = as_scalar(0, z)

    lhs1 = p(z + as_scalar(k, z))
    rhs1 = zero
    for j in range(k + 1):
        rhs1 = rhs1 + deltas[j](z) * Fraction(binomial(k, j))
    first = lhs1 == rhs1

    lhs2 = deltas[k](z)
    rhs2 = zero
    for j in range(k + 1):
        sign = 1 if (k - j) % 2 == 0 else -1
        rhs2 = rhs2 + p(z + as_scalar(j, z)) * Fraction(sign * binomial(k, j))
    second = lhs2 == rhs2

    return first, second

"""Shifting zeros, chain decompositions, and difference radicals.

A zero z0 of p has *height* n when p vanishes at z0, z0+1, ..., z0+n-1 but
not at z0+n (equivalently: p and its first n-1 forward differences vanish at
z0 while the n-th does not).  Grouping the root multiset of a polynomial by
integer differences and greedily peeling runs of consecutive zeros yields the
unique chain decomposition

    P(z) = A * prod_j (z - z_j)(z - z_j - 1)...(z - z_j - n_j + 1),

from which the difference radical (product of z - z_j over chain starts), its
truncated variants, and the gcd tower gcd(P, dP, ..., d^n P) all follow in
closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import diffcalc
from .errors import AmbiguousShiftError, BackendMismatchError
from .poly import FactoredPoly, Poly, poly_gcd
from .scalar import Exact, Numeric, Scalar, as_scalar

AMBIGUITY_GUARD = 8


def integer_offset(a: Scalar, b: Scalar, tol=None) -> int | None:
    """Integer k with a - b = k, or None.

    Numeric backend: distances inside [tol, AMBIGUITY_GUARD*tol) of the
    nearest integer are refused with AmbiguousShiftError, naming the pair.
    """
    diff = a - b
    if isinstance(diff, Exact):
        return diff.as_integer()
    if tol is None:
        tol = diff.default_tolerance()
    k = diff.as_integer(tol)
    if k is not None:
        return k
    if diff.as_integer(Fraction(tol) * AMBIGUITY_GUARD) is not None:
        raise AmbiguousShiftError(
            f"cannot classify root difference {diff.text()} as integer or not "
            f"at tolerance {float(tol):g}",
            pair=(a, b),
        )
    return None


@dataclass(frozen=True)
class ShiftClass:
    """Roots pairwise congruent modulo 1, as offsets from a representative.

    The representative is the minimal member (offset 0); all stored offsets
    are nonnegative and map to positive multiplicities.
    """

    representative: Scalar
    members: dict[int, int]

    @property
    def max_offset(self) -> int:
        return max(self.members)

    def run_length(self, start: int) -> int:
        """Consecutive offsets present starting at `start` (its height)."""
        n = 0
        while self.members.get(start + n, 0) > 0:
            n += 1
        return n


def shift_classes(f: FactoredPoly, tol=None) -> list[ShiftClass]:
    """Partition the distinct roots by integer difference.

    Classes come back sorted by the canonical text of their representatives,
    the scan order used everywhere chains are emitted.
    """
    classes: list[tuple[Scalar, dict[int, int]]] = []
    for root, mult in f.roots:
        for idx, (rep, members) in enumerate(classes):
            k = integer_offset(root, rep, tol)
            if k is None:
                continue
            if k < 0:  # new minimal member becomes the representative
                members = {o - k: m for o, m in members.items()}
                members[0] = members.get(0, 0) + mult
                classes[idx] = (root, members)
            else:
                members[k] = members.get(k, 0) + mult
            break
        else:
            classes.append((root, {0: mult}))
    classes.sort(key=lambda c: c[0].text())
    return [ShiftClass(rep, members) for rep, members in classes]


@dataclass(frozen=True)
class ChainDecomposition:
    """lead * prod_j (z - start_j)^(falling length_j), in emission order."""

    lead: Scalar
    chains: tuple[tuple[Scalar, int], ...]

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.chains)

    def expand(self) -> Poly:
        out = Poly.constant(self.lead)
        for start, length in self.chains:
            out = out * diffcalc.falling_factorial_linear(start, length)
        return out

    def to_json_dict(self) -> dict:
        return {
            "lead": self.lead.text(),
            "chains": [[start.text(), n] for start, n in self.chains],
        }


def chain_decomposition(f: FactoredPoly, tol=None) -> ChainDecomposition:
    """Greedy partition of the root multiset into maximal consecutive runs.

    Within each shift class the smallest remaining offset starts a chain that
    extends through consecutive offsets while remaining multiplicity lasts,
    each participating offset giving up one unit.  The resulting multiset of
    chains is the unique one; the emission order (classes by representative
    text, chains greedily within a class) makes the list deterministic.
    """
    chains: list[tuple[Scalar, int]] = []
    for cls in shift_classes(f, tol):
        remaining = dict(cls.members)
        while any(m > 0 for m in remaining.values()):
            start = min(o for o, m in remaining.items() if m > 0)
            length = 0
            while remaining.get(start + length, 0) > 0:
                remaining[start + length] -= 1
                length += 1
            chains.append(
                (cls.representative + as_scalar(start, cls.representative), length)
            )
    return ChainDecomposition(f.lead, tuple(chains))


def shifting_zero_height(p: Poly, z0, tol=None) -> int:
    """Height of z0 as a shifting zero of p (0 when p(z0) != 0).

    Computed as the length of the run of consecutive zeros p(z0), p(z0+1),
    ...; the equivalent definition through vanishing forward differences is
    available as shifting_zero_height_via_delta.
    """
    if not p:
        raise ValueError("height is undefined for the zero polynomial")
    if not isinstance(z0, (Exact, Numeric)):
        z0 = as_scalar(z0, p.lead)
    n = 0
    while _is_zero(p(z0 + as_scalar(n, z0)), tol):
        n += 1
    return n


def shifting_zero_height_via_delta(p: Poly, z0, tol=None) -> int:
    """Height from the definition: least n with delta^n p(z0) nonzero."""
    if not p:
        raise ValueError("height is undefined for the zero polynomial")
    if not isinstance(z0, (Exact, Numeric)):
        z0 = as_scalar(z0, p.lead)
    n = 0
    cur = p
    while _is_zero(cur(z0), tol):
        cur = diffcalc.delta(cur)
        n += 1
    return n


def _is_zero(value: Scalar, tol) -> bool:
    if isinstance(value, Exact):
        return not value
    if tol is None:
        tol = value.default_tolerance()
    return value.magnitude() < float(tol)


def factor_at(p: Poly, z0, tol=None) -> tuple[int, Poly]:
    """Write p = (z - z0)(z - z0 - 1)...(z - z0 - n + 1) * g with n the height.

    The cofactor g satisfies g(z0 + n) != 0.  Raises ValueError when z0 is
    not a zero of p.
    """
    if not isinstance(z0, (Exact, Numeric)):
        z0 = as_scalar(z0, p.lead)
    n = shifting_zero_height(p, z0, tol)
    if n == 0:
        raise ValueError(f"{z0.text()} is not a zero")
    g = p.divexact(diffcalc.falling_factorial_linear(z0, n))
    if _is_zero(g(z0 + as_scalar(n, z0)), tol):  # pragma: no cover
        raise ArithmeticError("cofactor vanishes at z0 + n")
    return n, g


def _monic_product(factors: list[tuple[Scalar, int]], falling: bool) -> Poly:
    """Monic prod (z - w)^m, plain powers or falling factorials of length m."""
    out = None
    one = None
    for w, m in factors:
        one = as_scalar(1, w)
        piece = (
            diffcalc.falling_factorial_linear(w, m)
            if falling
            else Poly.linear(w) ** m
        )
        out = piece if out is None else out * piece
    if out is None:
        return Poly.constant(1)
    return out


def rad_delta(f: FactoredPoly, tol=None) -> Poly:
    """Difference radical: monic product of z - start over all chains."""
    dec = chain_decomposition(f, tol)
    return _monic_product([(start, 1) for start, _ in dec.chains], falling=False)


def rad_kappa(f: FactoredPoly, kappa: int, tol=None) -> Poly:
    """Kappa-difference radical: prod (z-w)^(ord_w - min(ord_w, ord_{w+kappa})).

    Orders at w + kappa are read inside w's shift class (roots in other
    classes cannot differ from w by the integer kappa).
    """
    if kappa == 0:
        raise ValueError("kappa must be a nonzero integer")
    factors: list[tuple[Scalar, int]] = []
    for cls in shift_classes(f, tol):
        for offset in sorted(cls.members):
            ord_w = cls.members[offset]
            ord_shifted = cls.members.get(offset + kappa, 0)
            d = ord_w - min(ord_w, ord_shifted)
            if d > 0:
                factors.append(
                    (cls.representative + as_scalar(offset, cls.representative), d)
                )
    return _monic_product(factors, falling=False)


def rad_delta_q(f: FactoredPoly, q: int, tol=None) -> Poly:
    """Truncated difference radical: chains clamped to length at most q."""
    if q < 1:
        raise ValueError("truncation level q must be >= 1")
    dec = chain_decomposition(f, tol)
    return _monic_product(
        [(start, min(n, q)) for start, n in dec.chains], falling=True
    )


def gcd_tower_euclid(p: Poly, n: int) -> Poly:
    """gcd(p, delta p, ..., delta^n p) by iterated Euclidean gcd (monic)."""
    if not p:
        raise ValueError("gcd tower of the zero polynomial")
    if n < 1:
        raise ValueError("tower height n must be >= 1")
    g = p.monic()
    cur = p
    for _ in range(n):
        cur = diffcalc.delta(cur)
        g = poly_gcd(g, cur) if cur else g
    return g


def gcd_tower_closed(f: FactoredPoly, n: int, tol=None) -> Poly:
    """Closed form prod (z - start)^(falling max(length - n, 0))."""
    if n < 1:
        raise ValueError("tower height n must be >= 1")
    dec = chain_decomposition(f, tol)
    return _monic_product(
        [(start, length - n) for start, length in dec.chains if length > n],
        falling=True,
    )


def gcd_tower(p: Poly | FactoredPoly, n: int, tol=None) -> Poly:
    """gcd(p, delta p, ..., delta^n p), monic.

    Factored input computes the chain closed form and cross-checks it against
    the Euclidean route; plain exact polynomials go through Euclid alone.
    """
    if isinstance(p, FactoredPoly):
        closed = gcd_tower_closed(p, n, tol)
        if p.backend == "exact":
            euclid = gcd_tower_euclid(p.expand(), n)
            if closed != euclid:  # pragma: no cover - identity guard
                raise ArithmeticError("gcd tower routes disagree")
        return closed
    if p and p.backend == "numeric":
        raise BackendMismatchError(
            "numeric gcd tower needs factored input for the closed form"
        )
    return gcd_tower_euclid(p, n)


def common_shifting_divisors(
    f: FactoredPoly, g: FactoredPoly, tol=None
) -> list[Scalar]:
    """Base points z0 of the common shifting divisors of f and g.

    z0 is reported when some zero chain of one polynomial continues into a
    zero of the other: a zero z0 of f qualifies when g(z0 + m) = 0 for some
    1 <= m <= height of z0 in f, and symmetrically with f and g swapped.
    Sorted by canonical text; an empty list means f and g are shifting prime.
    """
    if f.backend != g.backend:
        raise BackendMismatchError("factored polynomials mix backends")
    merged = FactoredPoly(
        as_scalar(1, f.lead),
        [(r, m) for r, m in f.roots] + [(r, m) for r, m in g.roots],
    )
    # Classify the union once, then read each side's membership off it.
    found: list[Scalar] = []
    for cls in shift_classes(merged, tol):
        offsets_f: dict[int, int] = {}
        offsets_g: dict[int, int] = {}
        for side, poly in ((offsets_f, f), (offsets_g, g)):
            for root, mult in poly.roots:
                k = integer_offset(root, cls.representative, tol)
                if k is not None:
                    side[k] = side.get(k, 0) + mult
        for a_side, b_side in ((offsets_f, offsets_g), (offsets_g, offsets_f)):
            for o in a_side:
                height = 0
                while a_side.get(o + height, 0) > 0:
                    height += 1
                if any(b_side.get(o + m, 0) > 0 for m in range(1, height + 1)):
                    z0 = cls.representative + as_scalar(o, cls.representative)
                    if all(z0 != seen for seen in found):
                        found.append(z0)
    found.sort(key=lambda s: s.text())
    return found


def is_shifting_prime(f: FactoredPoly, g: FactoredPoly, tol=None) -> bool:
    """True when f and g have no common shifting divisor."""
    return not common_shifting_divisors(f, g, tol)


def pairwise_shifting_prime(
    fs: list[FactoredPoly], tol=None
) -> tuple[bool, tuple[int, int, Scalar] | None]:
    """All-pairs check; on failure returns (i, j, divisor base) as witness."""
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            divisors = common_shifting_divisors(fs[i], fs[j], tol)
            if divisors:
                return False, (i, j, divisors[0])
    return True, None

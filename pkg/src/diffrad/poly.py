"""Dense univariate polynomials over exact or numeric scalars.

A :class:`Poly` stores coefficients ascending in the power of z, trimmed so
the leading coefficient is nonzero; the zero polynomial has no coefficients
and degree ``NEG_INF`` (a genuine minus-infinity marker, so degree identities
like deg(p*q) = deg(p) + deg(q) never hit -1 arithmetic).

A :class:`FactoredPoly` is a leading coefficient plus a multiset of
(root, multiplicity) pairs; it is the primary ingestion form for anything
that needs root data (chain decompositions, radicals, shifting-prime tests).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BackendMismatchError,
    ExactDivisionError,
    RootsUnavailableError,
)
from .scalar import Exact, Numeric, Scalar, as_scalar

NEG_INF = float("-inf")


def _as_coeff_list(values: Iterable) -> list[Scalar]:
    out: list[Scalar] = []
    for v in values:
        if isinstance(v, (Exact, Numeric)):
            out.append(v)
        else:
            out.append(Exact.from_rational(v))
    return out


class Poly:
    """Immutable dense univariate polynomial."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = _as_coeff_list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly values are immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> Poly:
        return cls()

    @classmethod
    def constant(cls, value) -> Poly:
        return cls([value])

    @classmethod
    def z(cls) -> Poly:
        """The exact-backend monomial z."""
        return cls([0, 1])

    @classmethod
    def linear(cls, root: Scalar) -> Poly:
        """Monic z - root in the root's backend."""
        return cls([-root, as_scalar(1, root)])

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Scalar, ...]:
        return self._coeffs

    @property
    def degree(self) -> int | float:
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    @property
    def backend(self) -> str | None:
        """Backend name, or None for the (backend-neutral) zero polynomial."""
        return self._coeffs[-1].backend if self._coeffs else None

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def lead(self) -> Scalar:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def coeff(self, k: int) -> Scalar:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        if self._coeffs:
            return as_scalar(0, self._coeffs[-1])
        return Exact()

    def _one(self) -> Scalar:
        anchor = self._coeffs[-1] if self._coeffs else Exact.from_rational(1)
        return as_scalar(1, anchor)

    def _check_backend(self, other: Poly) -> None:
        if self and other and self.backend != other.backend:
            raise BackendMismatchError("polynomials use different scalar backends")

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, Exact, Numeric)):
            return Poly([other])
        return None

    def __add__(self, other) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        self._check_backend(rhs)
        if not self._coeffs:
            return rhs
        if not rhs._coeffs:
            return self
        n = max(len(self._coeffs), len(rhs._coeffs))
        return Poly([self.coeff(k) + rhs.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly([-c for c in self._coeffs])

    def __sub__(self, other) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction, Exact, Numeric)):
            scale = other if isinstance(other, (Exact, Numeric)) else Fraction(other)
            return Poly([c * scale for c in self._coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_backend(other)
        if not self or not other:
            return Poly()
        zero = self._coeffs[0] - self._coeffs[0]
        out = [zero] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = Poly.constant(self._one()) if self else Poly.constant(1)
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if not isinstance(other, Poly):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        self._check_backend(other)
        if self.degree < other.degree:
            return Poly(), self
        lead_inv = other.lead.inverse()
        rem = list(self._coeffs)
        dq = len(self._coeffs) - len(other._coeffs)
        quot = [None] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other._coeffs) - 1] * lead_inv
            quot[k] = c
            if c:
                for j, b in enumerate(other._coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quot), Poly(rem[: len(other._coeffs) - 1])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def divexact(self, other: Poly) -> Poly:
        """Exact quotient; raises ExactDivisionError if a remainder is left."""
        q, r = divmod(self, other)
        if r:
            raise ExactDivisionError(
                f"inexact division: remainder of degree {r.degree}", remainder=r
            )
        return q

    def __eq__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._coeffs == rhs._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    # -- evaluation & maps -------------------------------------------------

    def __call__(self, x) -> Scalar:
        anchor = self._coeffs[-1] if self._coeffs else Exact.from_rational(0)
        if not isinstance(x, (Exact, Numeric)):
            x = as_scalar(x, anchor)
        elif self and x.backend != anchor.backend:
            raise BackendMismatchError("evaluation point uses the other backend")
        acc = as_scalar(0, x)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> Poly:
        if not self:
            return self
        inv = self.lead.inverse()
        return Poly([c * inv for c in self._coeffs])

    def embed(self, prec: int) -> Poly:
        """Exact polynomial to the numeric backend at the given precision."""
        return Poly(
            [
                c.to_numeric(prec) if isinstance(c, Exact) else c
                for c in self._coeffs
            ]
        )

    def coeff_sup(self) -> float:
        """Sup of coefficient magnitudes (numeric measure of smallness)."""
        sup = 0.0
        for c in self._coeffs:
            mag = c.magnitude() if isinstance(c, Numeric) else abs(complex(c))
            sup = max(sup, mag)
        return sup

    # -- text & JSON -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"coeffs": [c.text() for c in self._coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def expr_text(self) -> str:
        """Render in the expression grammar; reparsing yields an equal Poly."""
        if not self._coeffs:
            return "0"
        pieces: list[str] = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if not c:
                continue
            pieces.append(_term_text(c, k))
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __str__(self) -> str:
        return self.expr_text()

    def __repr__(self) -> str:
        return f"Poly({self.expr_text()!r})"


def _scalar_expr(c: Scalar) -> tuple[str, bool]:
    """Expression text for a scalar plus a flag: is it a single product term."""
    if isinstance(c, Numeric):
        return c.text(), True
    parts: list[str] = []
    from .scalar import _key_sort  # canonical term order

    for key in sorted(c.terms, key=_key_sort):
        coeff = c.terms[key]
        n, has_i = _key_sort(key)
        factors = []
        if abs(coeff) != 1 or (not has_i and n == 1):
            body = str(abs(coeff.numerator))
            if coeff.denominator != 1:
                body += f"/{coeff.denominator}"
            factors.append(body)
        if has_i:
            factors.append("i")
        if n != 1:
            factors.append(f"sqrt({n})")
        parts.append(("-" if coeff < 0 else "+") + "*".join(factors))
    if not parts:
        return "0", True
    text = parts[0][1:] if parts[0][0] == "+" else parts[0]
    for p in parts[1:]:
        text += f" {p[0]} {p[1:]}"
    return text, len(parts) == 1


def _term_text(c: Scalar, k: int) -> str:
    power = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
    if not power:
        text, _ = _scalar_expr(c)
        return text
    if isinstance(c, Exact):
        if c == 1:
            return power
        if c == -1:
            return "-" + power
    text, single = _scalar_expr(c)
    if not single:
        return f"({text})*{power}"
    return f"{text}*{power}"


class FactoredPoly:
    """Leading coefficient plus multiset of (root, multiplicity)."""

    __slots__ = ("_lead", "_roots")

    def __init__(self, lead, roots: Iterable[tuple[Scalar, int]] = ()):
        if not isinstance(lead, (Exact, Numeric)):
            lead = Exact.from_rational(lead)
        if not lead:
            raise ValueError("factored polynomial needs a nonzero lead")
        merged: list[tuple[Scalar, int]] = []
        for root, mult in roots:
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")
            if not isinstance(root, (Exact, Numeric)):
                root = as_scalar(root, lead)
            if root.backend != lead.backend:
                raise BackendMismatchError("root/lead backend mismatch")
            for idx, (r, m) in enumerate(merged):
                if r == root:
                    merged[idx] = (r, m + mult)
                    break
            else:
                merged.append((root, mult))
        merged.sort(key=lambda rm: rm[0].text())
        object.__setattr__(self, "_lead", lead)
        object.__setattr__(self, "_roots", tuple(merged))

    def __setattr__(self, name, value):
        raise AttributeError("FactoredPoly values are immutable")

    @property
    def lead(self) -> Scalar:
        return self._lead

    @property
    def roots(self) -> tuple[tuple[Scalar, int], ...]:
        return self._roots

    @property
    def backend(self) -> str:
        return self._lead.backend

    @property
    def degree(self) -> int:
        return sum(m for _, m in self._roots)

    def distinct_roots(self) -> list[Scalar]:
        return [r for r, _ in self._roots]

    def ord_at(self, w: Scalar) -> int:
        """Multiplicity of the zero at w (0 when w is not a root)."""
        for r, m in self._roots:
            if r == w:
                return m
        return 0

    def expand(self) -> Poly:
        out = Poly.constant(self._lead)
        for root, mult in self._roots:
            lin = Poly.linear(root)
            for _ in range(mult):
                out = out * lin
        return out

    def scale(self, factor) -> FactoredPoly:
        return FactoredPoly(self._lead * factor, self._roots)

    def times(self, other: FactoredPoly) -> FactoredPoly:
        if self.backend != other.backend:
            raise BackendMismatchError("factored polynomials mix backends")
        return FactoredPoly(
            self._lead * other._lead, list(self._roots) + list(other._roots)
        )

    def shift_roots(self, offset) -> FactoredPoly:
        """Factored form of p(z - offset): every root moves by +offset."""
        return FactoredPoly(
            self._lead,
            [(r + as_scalar(offset, r), m) for r, m in self._roots],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredPoly):
            return NotImplemented
        return self._lead == other._lead and self._roots == other._roots

    def __hash__(self) -> int:
        return hash((self._lead, self._roots))

    def to_json_dict(self) -> dict:
        return {
            "lead": self._lead.text(),
            "roots": [[r.text(), m] for r, m in self._roots],
        }

    def __repr__(self) -> str:
        inner = ", ".join(f"({r.text()}):{m}" for r, m in self._roots)
        return f"FactoredPoly(lead={self._lead.text()}, roots=[{inner}])"


def classical_rad(f: FactoredPoly) -> Poly:
    """Monic product of z - r over the distinct roots of f."""
    out = Poly.constant(as_scalar(1, f.lead))
    for r in f.distinct_roots():
        out = out * Poly.linear(r)
    return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm.

    Inputs with purely rational coefficients run on an integer primitive
    pseudo-remainder sequence, which avoids the fraction blowup of the plain
    remainder sequence; radical coefficients fall back to generic division.
    """
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    if (p and p.backend == "numeric") or (q and q.backend == "numeric"):
        raise BackendMismatchError("polynomial gcd requires the exact backend")
    rationals = _rational_coeff_lists(p, q)
    if rationals is not None:
        return _gcd_rational(*rationals)
    a, b = p, q
    while b:
        r = a % b
        a, b = b, r.monic() if r else r
    return a.monic()


def _rational_coeff_lists(
    p: Poly, q: Poly
) -> tuple[list[Fraction], list[Fraction]] | None:
    lists = []
    for poly in (p, q):
        fracs = []
        for c in poly.coeffs:
            f = c.as_fraction() if isinstance(c, Exact) else None
            if f is None:
                return None
            fracs.append(f)
        lists.append(fracs)
    return lists[0], lists[1]


def _int_content(cs: list[int]) -> int:
    g = 0
    for c in cs:
        g = _gcd_int(g, c)
        if g == 1:
            break
    return g or 1


def _to_int_list(fracs: list[Fraction]) -> list[int]:
    den = 1
    for f in fracs:
        den = den * f.denominator // _gcd_int(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = _int_content(ints)
    return [c // g for c in ints]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a modulo b, over Z."""
    r = a[:]
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        shift_amt = len(r) - 1 - db
        top = r[-1]
        r = [c * lb for c in r]
        for j, bc in enumerate(b):
            r[shift_amt + j] -= top * bc
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def _gcd_rational(pa: list[Fraction], pb: list[Fraction]) -> Poly:
    a = _to_int_list(pa)
    b = _to_int_list(pb)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        g = _int_content(r)
        a, b = b, [c // g for c in r]
    lead = Fraction(a[-1])
    return Poly([Fraction(c) / lead for c in a])


def exact_sqrt(d: Exact) -> Exact | None:
    """Square root of an exact scalar when it stays in a radical field.

    Handles rational d (negative values pick up a factor i) and purely
    imaginary rational d; returns None otherwise.
    """
    if not d:
        return Exact()
    fr = d.as_fraction()
    if fr is not None:
        p, q = fr.numerator, fr.denominator
        root = Exact.sqrt_int(abs(p) * q) * Fraction(1, q)
        return root * Exact.i() if p < 0 else root
    terms = d.terms
    if len(terms) == 1:
        (key, coeff), = terms.items()
        if key == (True, frozenset()):
            # sqrt(a*i) = (1 +/- i) * sqrt(|a|/2)
            half = exact_sqrt(Exact.from_rational(abs(coeff) / 2))
            unit = Exact.from_rational(1) + (
                Exact.i() if coeff > 0 else -Exact.i()
            )
            return unit * half
    return None


def _factor_exact(p: Poly, hints: Sequence[Scalar]) -> FactoredPoly:
    lead = p.lead
    roots: list[tuple[Scalar, int]] = []
    rem = p.monic()

    def peel(root: Exact) -> int:
        nonlocal rem
        count = 0
        lin = Poly.linear(root)
        while rem.degree >= 1 and not rem(root):
            rem = rem.divexact(lin)
            count += 1
        return count

    for h in hints:
        if not isinstance(h, Exact):
            h = Exact.from_rational(h)
        m = peel(h)
        if m:
            roots.append((h, m))

    # Rational-root search applies when every remaining coefficient is
    # rational; clear denominators and test the classical candidate set.
    changed = True
    while changed and rem.degree >= 1:
        changed = False
        fracs = [c.as_fraction() for c in rem.coeffs]
        if any(f is None for f in fracs):
            break
        den_lcm = 1
        for f in fracs:
            den_lcm = den_lcm * f.denominator // _gcd_int(den_lcm, f.denominator)
        ints = [int(f * den_lcm) for f in fracs]
        if ints[0] == 0:
            m = peel(Exact.from_rational(0))
            roots.append((Exact.from_rational(0), m))
            changed = True
            continue
        a0, an = abs(ints[0]), abs(ints[-1])
        for pnum in _divisors(a0):
            for qden in _divisors(an):
                cand = Fraction(pnum, qden)
                for val in (cand, -cand):
                    root = Exact.from_rational(val)
                    if not rem(root):
                        m = peel(root)
                        roots.append((root, m))
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break

    if rem.degree == 1:
        roots.append((-rem.coeff(0), 1))
        rem = Poly.constant(1)
    elif rem.degree == 2:
        b, a = rem.coeff(1), rem.coeff(2)
        c0 = rem.coeff(0)
        disc = b * b - 4 * a * c0
        sq = exact_sqrt(disc)
        if sq is None:
            raise RootsUnavailableError(
                "quadratic discriminant is outside the radical field; "
                "pass the roots explicitly"
            )
        inv2a = (a * 2).inverse()
        r1 = (-b + sq) * inv2a
        r2 = (-b - sq) * inv2a
        if r1 == r2:
            roots.append((r1, 2))
        else:
            roots.append((r1, 1))
            roots.append((r2, 1))
        rem = Poly.constant(1)

    if rem.degree >= 1:
        raise RootsUnavailableError(
            f"roots unavailable for exact factor of degree {rem.degree}; "
            "pass known roots as hints or supply factored input"
        )
    out = FactoredPoly(lead, roots)
    if out.expand() != p:  # pragma: no cover - internal consistency guard
        raise ArithmeticError("factorization verification failed")
    return out


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _factor_numeric(p: Poly, tol: float | None) -> FactoredPoly:
    import mpmath

    prec = max(c.prec for c in p.coeffs)
    if tol is None:
        tol = 2.0 ** (-(prec // 2))
    with mpmath.mp.workprec(prec + 32):
        coeffs = [c.to_mpc() for c in reversed(p.coeffs)]
        found = mpmath.polyroots(coeffs, maxsteps=200, extraprec=prec)
    numeric_roots = [Numeric.from_mpc(r, prec) for r in found]
    clusters: list[list[Numeric]] = []
    for r in numeric_roots:
        for cluster in clusters:
            if cluster[0].distance(r) < tol:
                cluster.append(r)
                break
        else:
            clusters.append([r])
    roots = [(cluster[0], len(cluster)) for cluster in clusters]
    return FactoredPoly(p.lead, roots)


def factor(
    p: Poly,
    hints: Sequence[Scalar] = (),
    tol: float | None = None,
) -> FactoredPoly:
    """Factor into (lead, root multiset).

    Exact backend: verified hints, rational-root search, then the quadratic
    formula over the radical field; degree >= 3 leftovers raise
    RootsUnavailableError.  Numeric backend: polished companion-style root
    finding with cluster merging at tolerance tol.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return FactoredPoly(p.lead)
    if p.backend == "numeric":
        return _factor_numeric(p, tol)
    return _factor_exact(p, hints)

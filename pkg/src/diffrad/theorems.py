"""Inequality and functional-equation checkers.

Each checker verifies its hypotheses mechanically, evaluates both sides of
the relevant degree inequality, and returns a structured report; hypothesis
failures never abort, they only flag the report, so callers can explain why
a statement does not apply.  A negative slack with all hypotheses satisfied
would contradict the underlying theorem and is surfaced loudly through the
``counterexample`` flag.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import casorati, diffcalc, shiftcalc
from .errors import SamplingBudgetError
from .poly import FactoredPoly, Poly, classical_rad, factor, poly_gcd
from .errors import RootsUnavailableError
from .scalar import Exact, Scalar, as_scalar


@dataclass(frozen=True)
class Hypothesis:
    name: str
    ok: bool
    witness: str = ""

    def to_json_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "witness": self.witness}


@dataclass(frozen=True)
class MasonReport:
    kind: str
    equation_holds: bool
    hypotheses: tuple[Hypothesis, ...]
    lhs: int
    rhs: int
    slack: int
    sharp: bool
    counterexample: bool
    extra: dict = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return self.equation_holds and all(h.ok for h in self.hypotheses)

    @property
    def ok(self) -> bool:
        return self.applicable and not self.counterexample

    def to_json_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "equation_holds": self.equation_holds,
            "hypotheses": [h.to_json_dict() for h in self.hypotheses],
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "sharp": self.sharp,
            "counterexample": self.counterexample,
            "applicable": self.applicable,
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class FermatReport:
    identity_residual: Poly
    equation_holds: bool
    residual_sup: float
    n: int
    m: int
    bound: Fraction
    within_bound: bool
    hypotheses: tuple[Hypothesis, ...]

    @property
    def ok(self) -> bool:
        return (
            self.equation_holds
            and self.within_bound
            and all(h.ok for h in self.hypotheses)
        )

    def to_json_dict(self) -> dict:
        return {
            "equation_holds": self.equation_holds,
            "residual_sup": self.residual_sup,
            "n": self.n,
            "m": self.m,
            "bound": f"{self.bound.numerator}/{self.bound.denominator}",
            "within_bound": self.within_bound,
            "hypotheses": [h.to_json_dict() for h in self.hypotheses],
            "hypotheses_ok": all(h.ok for h in self.hypotheses),
        }


def _max_degree(fs: Sequence[FactoredPoly]) -> int:
    return max(f.degree for f in fs)


def _identity_report(residual: Poly, tol) -> tuple[bool, float]:
    """(holds, coefficient sup): structural zero exactly, sup < tol numerically."""
    if not residual:
        return True, 0.0
    if residual.backend == "exact":
        return False, residual.coeff_sup()
    sup = residual.coeff_sup()
    if tol is None:
        tol = 2.0 ** -(max(c.prec for c in residual.coeffs) // 2)
    return sup < float(tol), sup


def _sum_equation_holds(parts: Sequence[Poly], total: Poly, tol) -> bool:
    residual = Poly()
    for p in parts:
        residual = residual + p
    holds, _ = _identity_report(residual - total, tol)
    return holds


def _independent(polys: Sequence[Poly], tol) -> bool:
    det = casorati.casoratian(list(polys))
    if not det or det.backend == "exact":
        return bool(det)
    if tol is None:
        prec = max(c.prec for p in polys if p for c in p.coeffs)
        tol = 2.0 ** -(prec // 2)
    return det.coeff_sup() > float(tol)


def _shifting_prime_hypothesis(
    fs: Sequence[FactoredPoly], tol=None
) -> Hypothesis:
    ok, witness = shiftcalc.pairwise_shifting_prime(list(fs), tol)
    text = ""
    if not ok:
        i, j, z0 = witness
        text = f"inputs {i} and {j} share the shifting divisor z - ({z0.text()})"
    return Hypothesis("pairwise_shifting_prime", ok, text)


def _relatively_prime_hypothesis(
    fs: Sequence[FactoredPoly], tol
) -> Hypothesis:
    """Pairwise coprimality: Euclidean gcd exactly, root proximity numerically."""
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if fs[i].backend == "exact":
                g = poly_gcd(fs[i].expand(), fs[j].expand())
                if g.degree >= 1:
                    return Hypothesis(
                        "relatively_prime",
                        False,
                        f"inputs {i} and {j} share the factor {g.expr_text()}",
                    )
            else:
                bound = tol if tol is not None else 2.0 ** -(fs[i].lead.prec // 2)
                for r, _ in fs[i].roots:
                    for s, _ in fs[j].roots:
                        if r.distance(s) < float(bound):
                            return Hypothesis(
                                "relatively_prime",
                                False,
                                f"inputs {i} and {j} share the root {r.text()}",
                            )
    return Hypothesis("relatively_prime", True, "")


def mason_classical(
    a: FactoredPoly, b: FactoredPoly, c: FactoredPoly, tol=None
) -> MasonReport:
    """Classical degree inequality for relatively prime a + b = c."""
    pa, pb, pc = a.expand(), b.expand(), c.expand()
    equation = _sum_equation_holds([pa, pb], pc, tol)

    hyps = [_relatively_prime_hypothesis([a, b, c], tol)]
    hyps.append(
        Hypothesis("not_all_constant", _max_degree([a, b, c]) >= 1)
    )

    lhs = _max_degree([a, b, c])
    rhs = classical_rad(a.times(b).times(c)).degree - 1
    slack = rhs - lhs
    applicable = equation and all(h.ok for h in hyps)
    return MasonReport(
        kind="classical",
        equation_holds=equation,
        hypotheses=tuple(hyps),
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        sharp=slack == 0,
        counterexample=applicable and slack < 0,
    )


def mason_delta(
    a: FactoredPoly, b: FactoredPoly, c: FactoredPoly, tol=None
) -> MasonReport:
    """Difference-radical analogue for shifting-prime a + b = c."""
    equation = _sum_equation_holds([a.expand(), b.expand()], c.expand(), tol)
    hyps = [
        _shifting_prime_hypothesis([a, b, c], tol),
        Hypothesis("not_all_constant", _max_degree([a, b, c]) >= 1),
    ]
    product = a.times(b).times(c)
    lhs = _max_degree([a, b, c])
    rhs = shiftcalc.rad_delta(product, tol).degree - 1
    rhs_kappa = shiftcalc.rad_kappa(product, 1, tol).degree - 1
    if rhs != rhs_kappa:  # pragma: no cover - degree identity guard
        raise ArithmeticError("radical degree routes disagree")
    slack = rhs - lhs
    applicable = equation and all(h.ok for h in hyps)
    return MasonReport(
        kind="delta",
        equation_holds=equation,
        hypotheses=tuple(hyps),
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        sharp=slack == 0,
        counterexample=applicable and slack < 0,
        extra={"rhs_kappa": rhs_kappa},
    )


def mason_delta_ext(fs: Sequence[FactoredPoly], tol=None) -> MasonReport:
    """Extended inequality for f_1 + ... + f_m = f_{m+1}, m >= 2.

    The strong side uses the truncated radical at level m-1; the weaker
    closed form (m-1) * deg rad of the product is reported alongside it.
    """
    if len(fs) < 3:
        raise ValueError("need at least three polynomials (m >= 2)")
    m = len(fs) - 1
    equation = _sum_equation_holds(
        [f.expand() for f in fs[:-1]], fs[-1].expand(), tol
    )

    min_deg = min(f.degree for f in fs)
    indep = _independent([f.expand() for f in fs[:-1]], tol)
    hyps = [
        _shifting_prime_hypothesis(fs, tol),
        Hypothesis(
            "min_degree",
            min_deg >= m - 1,
            "" if min_deg >= m - 1 else f"min degree {min_deg} < {m - 1}",
        ),
        Hypothesis("linear_independence", indep),
    ]

    product = fs[0]
    for f in fs[1:]:
        product = product.times(f)
    lhs = _max_degree(fs)
    penalty = m * (m - 1) // 2
    rhs = shiftcalc.rad_delta_q(product, m - 1, tol).degree - penalty
    rhs_weak = (m - 1) * shiftcalc.rad_delta(product, tol).degree - penalty
    if rhs > rhs_weak:  # pragma: no cover - truncation bound guard
        raise ArithmeticError("truncated radical exceeded its bound")
    slack = rhs - lhs
    applicable = equation and all(h.ok for h in hyps)
    return MasonReport(
        kind="delta_ext",
        equation_holds=equation,
        hypotheses=tuple(hyps),
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        sharp=slack == 0,
        counterexample=applicable and slack < 0,
        extra={"rhs_weak": rhs_weak, "slack_weak": rhs_weak - lhs},
    )


def fermat_check(
    a: FactoredPoly, b: FactoredPoly, c: FactoredPoly, n: int, tol=None
) -> FermatReport:
    """Check a^(falling n) + b^(falling n) = c^(falling n) and the n-bound.

    The exponent bound is 2, dropping to 1 when any of a, b, c is constant.
    Shifting primality of the falling powers is reported per pair, so both
    the pairwise and the joint readings of the hypothesis are inspectable.
    """
    if n < 1:
        raise ValueError("exponent n must be >= 1")
    powers = [diffcalc.falling_power(f.expand(), n) for f in (a, b, c)]
    residual = powers[0] + powers[1] - powers[2]
    equation, sup = _identity_report(residual, tol)

    power_factored = [
        diffcalc.falling_power_factored(f, n) if f.roots else f
        for f in (a, b, c)
    ]
    hyps = [Hypothesis("not_all_constant", _max_degree([a, b, c]) >= 1)]
    labels = ["a", "b", "c"]
    for i in range(3):
        for j in range(i + 1, 3):
            divisors = shiftcalc.common_shifting_divisors(
                power_factored[i], power_factored[j], tol
            )
            hyps.append(
                Hypothesis(
                    f"shifting_prime_{labels[i]}{labels[j]}",
                    not divisors,
                    ""
                    if not divisors
                    else f"common shifting divisor z - ({divisors[0].text()})",
                )
            )

    bound = Fraction(2) if min(f.degree for f in (a, b, c)) >= 1 else Fraction(1)
    return FermatReport(
        identity_residual=residual,
        equation_holds=equation,
        residual_sup=sup,
        n=n,
        m=2,
        bound=bound,
        within_bound=Fraction(n) <= bound,
        hypotheses=tuple(hyps),
    )


def fermat_multi_check(
    fs: Sequence[FactoredPoly],
    n: int,
    rhs_one: bool = False,
    tol=None,
) -> FermatReport:
    """Check sum of falling n-th powers against f_{m+1}^(falling n) or 1.

    With rhs_one the last entry of fs is still a left-hand term and the
    right side is the constant 1; the exponent bound becomes the integer
    m^2 - m - 1, otherwise the exact rational m^2 - 1 - m(m-1)/(2 max deg).
    """
    if n < 1:
        raise ValueError("exponent n must be >= 1")
    m = len(fs) if rhs_one else len(fs) - 1
    if m < 2:
        raise ValueError("need m >= 2 terms")

    powers = [diffcalc.falling_power(f.expand(), n) for f in fs]
    residual = Poly()
    left = powers if rhs_one else powers[:-1]
    for p in left:
        residual = residual + p
    one = Poly.constant(as_scalar(1, fs[0].lead))
    residual = residual - (one if rhs_one else powers[-1])
    equation, sup = _identity_report(residual, tol)

    power_factored = [
        diffcalc.falling_power_factored(f, n) if f.roots else f for f in fs
    ]
    hyps = [
        Hypothesis(
            "nonconstant",
            min(f.degree for f in fs) >= 1,
            "",
        ),
        _shifting_prime_hypothesis(power_factored, tol),
    ]
    indep_powers = powers if rhs_one else powers[:-1]
    hyps.append(
        Hypothesis("linear_independence", _independent(indep_powers, tol))
    )

    maxdeg = _max_degree(fs)
    if rhs_one:
        bound = Fraction(m * m - m - 1)
    else:
        bound = Fraction(m * m - 1) - Fraction(m * (m - 1), 2 * max(maxdeg, 1))
    return FermatReport(
        identity_residual=residual,
        equation_holds=equation,
        residual_sup=sup,
        n=n,
        m=m,
        bound=bound,
        within_bound=Fraction(n) <= bound,
        hypotheses=tuple(hyps),
    )


# -- constructed instances ----------------------------------------------------

# Resolvent whose roots s parameterize degree-3 solutions of the three-term
# unit equation f1^(falling 3) + f2^(falling 3) + f3^(falling 3) = 1.
UNIT_CUBIC_RESOLVENT = (1, 0, 0, 0, 0, 0, -144, 0, 0, 108)


def unit_cubic_resolvent_roots(prec: int = 256) -> list:
    """All nine roots of the degree-9 resolvent, as numeric scalars."""
    import mpmath

    from .scalar import Numeric

    with mpmath.mp.workprec(prec + 64):
        found = mpmath.polyroots(
            list(UNIT_CUBIC_RESOLVENT), maxsteps=200, extraprec=prec
        )
    return [Numeric.from_mpc(r, prec) for r in found]


def unit_cubic_triad(s, t=1) -> list[FactoredPoly]:
    """Two cubics and a quadratic summing (in falling cubes) to 1.

    s must be a root of UNIT_CUBIC_RESOLVENT and t any nonzero scalar; the
    returned factored polynomials feed fermat_multi_check(..., n=3,
    rhs_one=True) on the numeric backend.
    """
    from .scalar import Numeric

    if not isinstance(s, Numeric):
        raise ValueError("s must be a numeric scalar (a resolvent root)")
    if not isinstance(t, Numeric):
        t = Numeric.from_rational(Fraction(t), s.prec)
    if not t:
        raise ValueError("t must be nonzero")
    one = as_scalar(1, s)
    a2 = -(t * 3) / (s * 2)
    a1 = (s * s * 4 - t * t) * 3 / (s * s * 4)
    a0 = (t * t * t * 3 - s * s * t * 36 - (s ** 6) * 4) / ((s ** 3) * 24)
    p1 = Poly([a0, -a1, -a2, one])
    p2 = Poly([-((a0 * 3 + s ** 3) / 3), a1, a2, -one])
    p3 = Poly([(t * t - s * s * 4) / (s * 4), t, s])
    return [factor(p) for p in (p1, p2, p3)]


# -- random instance generation ---------------------------------------------

DEFAULT_GRID_NUMERATORS = tuple(range(-4, 5))
DEFAULT_GRID_DENOMINATORS = (1, 2)
DEFAULT_LEADS = (1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 2))


def gen_chain_poly(
    rng: random.Random,
    max_chains: int = 6,
    max_length: int = 5,
    numerators: Sequence[int] = DEFAULT_GRID_NUMERATORS,
    denominators: Sequence[int] = DEFAULT_GRID_DENOMINATORS,
    leads: Sequence = DEFAULT_LEADS,
) -> FactoredPoly:
    """Random product of falling-factorial chains with grid-rational starts."""
    count = rng.randint(1, max_chains)
    roots: list[tuple[Scalar, int]] = []
    for _ in range(count):
        start = Fraction(rng.choice(numerators), rng.choice(denominators))
        length = rng.randint(1, max_length)
        for j in range(length):
            roots.append((Exact.from_rational(start + j), 1))
    return FactoredPoly(Exact.from_rational(rng.choice(leads)), roots)


def gen_factored_poly(
    rng: random.Random,
    min_degree: int,
    max_degree: int,
    numerators: Sequence[int] = DEFAULT_GRID_NUMERATORS,
    denominators: Sequence[int] = DEFAULT_GRID_DENOMINATORS,
    leads: Sequence = DEFAULT_LEADS,
) -> FactoredPoly:
    degree = rng.randint(min_degree, max_degree)
    roots = [
        (
            Exact.from_rational(
                Fraction(rng.choice(numerators), rng.choice(denominators))
            ),
            1,
        )
        for _ in range(degree)
    ]
    return FactoredPoly(Exact.from_rational(rng.choice(leads)), roots)


def gen_mason_instance(
    m: int,
    seed: int,
    max_degree: int = 3,
    numerators: Sequence[int] = DEFAULT_GRID_NUMERATORS,
    denominators: Sequence[int] = DEFAULT_GRID_DENOMINATORS,
    leads: Sequence = DEFAULT_LEADS,
    max_attempts: int = 5000,
) -> list[FactoredPoly]:
    """Rejection-sample [f_1, ..., f_m, f_{m+1}] with f_1+...+f_m = f_{m+1}.

    Every returned tuple satisfies the hypotheses of the matching degree
    inequality (shifting primality, and for m >= 3 the minimum-degree and
    linear-independence conditions); deterministic for a fixed seed.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    rng = random.Random(seed)
    min_deg = max(1, m - 1)
    for attempt in range(1, max_attempts + 1):
        parts = [
            gen_factored_poly(
                rng, min_deg, max(max_degree, min_deg), numerators, denominators, leads
            )
            for _ in range(m)
        ]
        total = Poly()
        for f in parts:
            total = total + f.expand()
        if not total or total.degree < min_deg:
            continue
        try:
            rhs = factor(total)
        except RootsUnavailableError:
            continue
        fs = parts + [rhs]
        ok, _ = shiftcalc.pairwise_shifting_prime(fs)
        if not ok:
            continue
        if m >= 3 and not casorati.linearly_independent(
            [f.expand() for f in parts]
        ):
            continue
        return fs
    raise SamplingBudgetError(
        f"no valid instance found in {max_attempts} attempts", max_attempts
    )

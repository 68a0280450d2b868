"""Command-line interface and bundled verification-suite runner.

Every subcommand reads polynomials through the expression grammar, prints a
human-readable line by default, and emits one JSON document with --json.
Exit codes: 0 success, 1 a checker reported an unsatisfied claim or
counterexample, 2 usage or parse error, 3 verification-suite mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import casorati, diffcalc, shiftcalc, theorems
from .errors import DiffradError, ParseError, RootsUnavailableError
from .parser import parse_factored, parse_poly
from .poly import FactoredPoly, Poly, classical_rad
from .scalar import Exact

FIXTURE_ROOT = Path(__file__).parent / "fixtures"


class Options:
    """Resolved global options shared by CLI calls and fixture runs."""

    def __init__(self, backend="exact", precision=256, tolerance=None, seed=0):
        self.backend = backend
        self.precision = precision
        self.tolerance = tolerance
        self.seed = seed

    def poly(self, src: str) -> Poly:
        p = parse_poly(src)
        return p.embed(self.precision) if self.backend == "numeric" else p

    def factored(self, src: str) -> FactoredPoly:
        f = parse_factored(src)
        if self.backend == "numeric":
            f = FactoredPoly(
                f.lead.to_numeric(self.precision),
                [(r.to_numeric(self.precision), m) for r, m in f.roots],
            )
        return f

    def scalar(self, src: str):
        p = parse_poly(src)
        if p.degree >= 1:
            raise ParseError("expected a scalar expression", 0)
        value = p.coeff(0)
        return value.to_numeric(self.precision) if self.backend == "numeric" else value


def _poly_result(p: Poly) -> dict:
    deg = p.degree
    return {
        "text": p.expr_text(),
        "poly": p.to_json_dict(),
        "degree": deg if isinstance(deg, int) else None,
    }


# -- command handlers -------------------------------------------------------
# Each handler: (inputs, opts: dict, options: Options) -> result dict


def cmd_delta(inputs, opts, options: Options) -> dict:
    p = options.poly(inputs[0])
    return _poly_result(diffcalc.delta_k(p, opts.get("k", 1)))


def cmd_newton(inputs, opts, options: Options) -> dict:
    p = options.poly(inputs[0])
    at = options.scalar(opts.get("at", "0"))
    return diffcalc.to_newton(p, at).to_json_dict()


def cmd_height(inputs, opts, options: Options) -> dict:
    p = options.poly(inputs[0])
    at = options.scalar(opts.get("at", "0"))
    n = shiftcalc.shifting_zero_height(p, at, options.tolerance)
    return {"at": at.text(), "height": n}


def cmd_chains(inputs, opts, options: Options) -> dict:
    f = options.factored(inputs[0])
    return shiftcalc.chain_decomposition(f, options.tolerance).to_json_dict()


def cmd_rad(inputs, opts, options: Options) -> dict:
    return _poly_result(classical_rad(options.factored(inputs[0])))


def cmd_rad_delta(inputs, opts, options: Options) -> dict:
    f = options.factored(inputs[0])
    return _poly_result(shiftcalc.rad_delta(f, options.tolerance))


def cmd_rad_kappa(inputs, opts, options: Options) -> dict:
    f = options.factored(inputs[0])
    return _poly_result(
        shiftcalc.rad_kappa(f, opts.get("kappa", 1), options.tolerance)
    )


def cmd_rad_q(inputs, opts, options: Options) -> dict:
    f = options.factored(inputs[0])
    return _poly_result(shiftcalc.rad_delta_q(f, opts.get("q", 1), options.tolerance))


def cmd_gcd_tower(inputs, opts, options: Options) -> dict:
    n = opts.get("n", 1)
    try:
        f = options.factored(inputs[0])
        return _poly_result(shiftcalc.gcd_tower(f, n, options.tolerance))
    except RootsUnavailableError:
        return _poly_result(shiftcalc.gcd_tower(options.poly(inputs[0]), n))


def cmd_shifting_prime(inputs, opts, options: Options) -> dict:
    f = options.factored(inputs[0])
    g = options.factored(inputs[1])
    divisors = shiftcalc.common_shifting_divisors(f, g, options.tolerance)
    return {
        "shifting_prime": not divisors,
        "divisors": [d.text() for d in divisors],
    }


def cmd_casoratian(inputs, opts, options: Options) -> dict:
    fs = [options.poly(src) for src in inputs]
    det = casorati.casoratian(fs, opts.get("form", "delta"))
    return {**_poly_result(det), "independent": bool(det)}


def cmd_mason(inputs, opts, options: Options) -> dict:
    fs = [options.factored(src) for src in inputs]
    if opts.get("classical"):
        report = theorems.mason_classical(*fs, tol=options.tolerance)
    else:
        report = theorems.mason_delta(*fs, tol=options.tolerance)
    return report.to_json_dict()


def cmd_mason_ext(inputs, opts, options: Options) -> dict:
    fs = [options.factored(src) for src in inputs]
    return theorems.mason_delta_ext(fs, tol=options.tolerance).to_json_dict()


def cmd_fermat(inputs, opts, options: Options) -> dict:
    fs = [options.factored(src) for src in inputs]
    report = theorems.fermat_check(*fs, n=opts["n"], tol=options.tolerance)
    return report.to_json_dict()


def cmd_fermat_multi(inputs, opts, options: Options) -> dict:
    if opts.get("builder") == "unit_cubic_triad":
        roots = theorems.unit_cubic_resolvent_roots(options.precision)
        s = roots[opts.get("root_index", 0)]
        fs = theorems.unit_cubic_triad(s, Fraction(opts.get("t", 1)))
    else:
        fs = [options.factored(src) for src in inputs]
    report = theorems.fermat_multi_check(
        fs, n=opts["n"], rhs_one=bool(opts.get("rhs_one")), tol=options.tolerance
    )
    return report.to_json_dict()


HANDLERS = {
    "delta": cmd_delta,
    "newton": cmd_newton,
    "height": cmd_height,
    "chains": cmd_chains,
    "rad": cmd_rad,
    "rad-delta": cmd_rad_delta,
    "rad-kappa": cmd_rad_kappa,
    "rad-q": cmd_rad_q,
    "gcd-tower": cmd_gcd_tower,
    "shifting-prime": cmd_shifting_prime,
    "casoratian": cmd_casoratian,
    "mason": cmd_mason,
    "mason-ext": cmd_mason_ext,
    "fermat": cmd_fermat,
    "fermat-multi": cmd_fermat_multi,
}

REPORT_COMMANDS = {"mason", "mason-ext", "fermat", "fermat-multi"}


# -- verification fixtures ---------------------------------------------------


def _subset_match(expected, actual) -> bool:
    """Expected is a fragment: dict keys must exist and match recursively.

    {"max": x} / {"min": x} compare the actual value numerically instead of
    by equality (used for residual bounds).
    """
    if isinstance(expected, dict):
        if set(expected) == {"max"}:
            return isinstance(actual, (int, float)) and actual <= expected["max"]
        if set(expected) == {"min"}:
            return isinstance(actual, (int, float)) and actual >= expected["min"]
        if not isinstance(actual, dict):
            return False
        return all(
            key in actual and _subset_match(value, actual[key])
            for key, value in expected.items()
        )
    if isinstance(expected, list):
        return (
            isinstance(actual, list)
            and len(expected) == len(actual)
            and all(_subset_match(e, a) for e, a in zip(expected, actual))
        )
    return expected == actual


def load_fixtures(filter_text: str | None = None) -> list[dict]:
    cases = []
    for path in sorted(FIXTURE_ROOT.rglob("*.json")):
        case = json.loads(path.read_text())
        if filter_text and filter_text not in case["name"]:
            continue
        cases.append(case)
    cases.sort(key=lambda c: c["name"])
    return cases


def run_fixture(case: dict) -> tuple[bool, dict]:
    options = Options(
        backend=case.get("backend", "exact"),
        precision=case.get("precision", 256),
        tolerance=case.get("tolerance"),
    )
    handler = HANDLERS[case["command"]]
    result = handler(case.get("inputs", []), case.get("args", {}), options)
    return _subset_match(case["expected"], result), result


def cmd_verify_paper(filter_text: str | None, as_json: bool) -> int:
    cases = load_fixtures(filter_text)
    if not cases:
        print("no fixtures matched", file=sys.stderr)
        return 3
    failures = []
    rows = []
    for case in cases:
        try:
            ok, result = run_fixture(case)
        except DiffradError as exc:
            ok, result = False, {"error": str(exc)}
        rows.append(
            {"name": case["name"], "source": case.get("source", ""), "pass": ok}
        )
        if not ok:
            failures.append({"name": case["name"], "got": result})
    if as_json:
        doc = {
            "total": len(rows),
            "passed": sum(r["pass"] for r in rows),
            "cases": rows,
            "failures": failures,
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        width = max(len(r["name"]) for r in rows)
        for r in rows:
            mark = "PASS" if r["pass"] else "FAIL"
            print(f"[{mark}] {r['name']:<{width}}  {r['source']}")
        print(f"{sum(r['pass'] for r in rows)}/{len(rows)} fixtures passed")
        for f in failures:
            print(f"  mismatch in {f['name']}: got {json.dumps(f['got'], sort_keys=True)}")
    return 0 if not failures else 3


# -- argument parsing ---------------------------------------------------------


def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--backend", choices=("exact", "numeric"), default="exact",
        help="scalar backend (default: exact)",
    )
    common.add_argument(
        "--precision", type=int, default=256,
        help="bits of precision for the numeric backend (default: 256)",
    )
    common.add_argument(
        "--tolerance", type=float, default=None,
        help="numeric comparison tolerance (default: 2^(-precision/2))",
    )
    common.add_argument(
        "--seed", type=int, default=0,
        help="seed for sampling subcommands (reserved)",
    )
    common.add_argument("--json", action="store_true", help="emit JSON output")

    top = argparse.ArgumentParser(
        prog="diffrad",
        description="Exact finite-difference polynomial calculus toolkit.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, nargs_inputs, help_text, **extra_args):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if nargs_inputs:
            p.add_argument("inputs", nargs=nargs_inputs, metavar="expr")
        for flag, kwargs in extra_args.items():
            p.add_argument(f"--{flag}", **kwargs)
        return p

    add("delta", 1, "k-fold forward difference",
        k=dict(type=int, default=1, help="difference order (default 1)"))
    add("newton", 1, "falling-factorial expansion around a base point",
        at=dict(default="0", help="base point (scalar expression)"))
    add("height", 1, "shifting-zero height at a point",
        at=dict(default="0", help="evaluation point (scalar expression)"))
    add("chains", 1, "chain decomposition of a factored polynomial")
    add("rad", 1, "classical radical (distinct linear factors)")
    add("rad-delta", 1, "difference radical")
    add("rad-kappa", 1, "kappa-difference radical",
        kappa=dict(type=int, default=1, help="shift distance (default 1)"))
    add("rad-q", 1, "truncated difference radical",
        q=dict(type=int, default=1, help="truncation level (default 1)"))
    add("gcd-tower", 1, "gcd of the polynomial and its first n differences",
        n=dict(type=int, default=1, help="tower height (default 1)"))
    add("shifting-prime", 2, "common shifting divisors of two polynomials")
    add("casoratian", "+", "Casorati determinant of the tuple",
        form=dict(choices=("delta", "shift"), default="delta"))
    add("mason", 3, "degree inequality for a + b = c",
        classical=dict(action="store_true", help="use the classical radical"))
    add("mason-ext", "+", "extended inequality for f1 + ... + fm = fm+1")
    add("fermat", 3, "falling-power equation a^n_ + b^n_ = c^n_",
        n=dict(type=int, required=True, help="exponent"))
    p = add("fermat-multi", "+", "multi-term falling-power equation",
            n=dict(type=int, required=True, help="exponent"))
    p.add_argument("--rhs-one", action="store_true",
                   help="right-hand side is the constant 1")
    vp = sub.add_parser("verify-paper", parents=[common],
                        help="run the bundled verification fixtures")
    vp.add_argument("--filter", default=None, help="substring filter on names")
    return top


def _human_lines(command: str, result: dict) -> str:
    if command in REPORT_COMMANDS:
        lines = []
        if "lhs" in result:
            lines.append(
                f"equation holds: {result['equation_holds']} | "
                f"lhs {result['lhs']} <= rhs {result['rhs']} | "
                f"slack {result['slack']}"
                + (" (sharp)" if result.get("sharp") else "")
            )
        else:
            lines.append(
                f"equation holds: {result['equation_holds']} | "
                f"n = {result['n']} vs bound {result['bound']} | "
                f"within bound: {result['within_bound']} | "
                f"residual sup {result['residual_sup']:.3g}"
            )
        for h in result["hypotheses"]:
            mark = "ok" if h["ok"] else "FAILED"
            suffix = f" ({h['witness']})" if h["witness"] else ""
            lines.append(f"  hypothesis {h['name']}: {mark}{suffix}")
        if result.get("counterexample"):
            lines.append("  COUNTEREXAMPLE: hypotheses hold but slack < 0")
        return "\n".join(lines)
    if "text" in result:
        extra = ""
        if "independent" in result:
            extra = f"  (independent: {result['independent']})"
        return result["text"] + extra
    if "height" in result:
        return f"height at {result['at']}: {result['height']}"
    if "chains" in result:
        chains = ", ".join(f"({start}, {n})" for start, n in result["chains"])
        return f"lead {result['lead']}; chains: {chains if chains else '(none)'}"
    if "shifting_prime" in result:
        if result["shifting_prime"]:
            return "shifting prime: yes"
        return "shifting prime: no; divisor base points: " + ", ".join(
            result["divisors"]
        )
    if "base" in result:
        return f"base {result['base']}; coeffs: " + ", ".join(result["coeffs"])
    return json.dumps(result, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    top = build_arg_parser()
    args = top.parse_args(argv)

    if args.command == "verify-paper":
        return cmd_verify_paper(args.filter, args.json)

    options = Options(
        backend=args.backend,
        precision=args.precision,
        tolerance=args.tolerance,
        seed=args.seed,
    )
    opts = {
        key: value
        for key, value in vars(args).items()
        if key not in (
            "command", "inputs", "backend", "precision", "tolerance",
            "seed", "json",
        )
    }
    inputs = getattr(args, "inputs", [])
    if isinstance(inputs, str):
        inputs = [inputs]
    try:
        result = HANDLERS[args.command](inputs, opts, options)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (RootsUnavailableError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DiffradError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.json:
        print(json.dumps(result, sort_keys=True))
    else:
        print(_human_lines(args.command, result))

    if args.command in REPORT_COMMANDS:
        hyps_ok = all(h["ok"] for h in result["hypotheses"])
        claim_ok = result["equation_holds"] and hyps_ok
        if "slack" in result:
            claim_ok = claim_ok and result["slack"] >= 0
        else:
            claim_ok = claim_ok and result["within_bound"]
        return 0 if claim_ok else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

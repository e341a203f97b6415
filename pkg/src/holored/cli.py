"""Command-line interface.

Every command builds a list of JSON-serializable records.  ``--json``
prints them one per line; otherwise a plain-text rendering is printed.
Exit status: 0 on success, 1 on a mathematical failure (counterexample,
no solution, failed check), 2 on a usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .congruence import check_claim, derive_family, known_fact_checks, shipped_claims
from .files import load_claims, load_operator, load_seed
from .identity import DegenerateOperatorError, NoSolutionError, generate, normalize_identity
from .operators import InapplicableError, adjoint_apply, degree_data, shift_coprime_check
from .poly import PolySyntaxError, UniPoly, format_poly, poly_parse
from .reduction import WindowNormalizationError, normalize_window, reduce, telescoped_sum
from .sequences import get_sequence, guess_recurrence, seq_terms
from .verify import PrecisionContext, verify_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DIGITS_ENV = "HOLORED_DIGITS"


class UsageError(Exception):
    pass


def _default_digits() -> int:
    raw = os.environ.get(DIGITS_ENV)
    if raw is None:
        return 100
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{DIGITS_ENV} must be an integer, got {raw!r}") from None


def _range(text: str) -> tuple:
    """'a:b' or 'a..b' (inclusive) -> (a, b)."""
    for sep in (":", ".."):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    else:
        raise argparse.ArgumentTypeError(f"range must look like LO:HI, got {text!r}")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range bounds must be integers: {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


@dataclass
class RunConfig:
    command: str
    digits: int = 100
    n_range: tuple | None = None
    prime_range: tuple | None = None
    output: str | None = None
    exhaustive: bool = False
    accelerate: bool = False
    json: bool = False
    inputs: list = field(default_factory=list)

    def __post_init__(self):
        if self.digits < 20:
            raise UsageError("precision must be at least 20 digits")
        for r in (self.n_range, self.prime_range):
            if r is not None and r[1] < r[0]:
                raise UsageError("ranges must be nonempty")


# -- commands ---------------------------------------------------------------
# Each returns (records, text_lines, ok).

def _poly_arg(text: str, var: str) -> UniPoly:
    return poly_parse(text, var)


def cmd_adjoint(args, cfg):
    L = load_operator(args.operator)
    p = _poly_arg(args.poly, L.var)
    q = adjoint_apply(L, p)
    rec = {"operator": L.to_json(), "p": format_poly(p, L.var), "adjoint": format_poly(q, L.var)}
    return [rec], [f"L*({format_poly(p, L.var)}) = {format_poly(q, L.var)}"], True


def cmd_analyze(args, cfg):
    L = load_operator(args.operator)
    dd = degree_data(L)
    rec = {"operator": L.to_json(), **dd.to_json(L.var)}
    lines = [f"operator: {L}", f"d={dd.d}",
             "R_L=" + ("∅" if not dd.roots else "{" + ", ".join(map(str, sorted(dd.roots))) + "}"),
             f"f(s)={format_poly(dd.f_poly, 's')}"]
    try:
        ok, bad = shift_coprime_check(L)
        rec["coprime_check"] = ok
        rec["dispersion"] = sorted(bad)
        lines.append("coprime-check: " + ("pass" if ok else f"fail (shifts {sorted(bad)})"))
    except InapplicableError as exc:
        rec["coprime_check"] = None
        lines.append(f"coprime-check: not applicable ({exc})")
    if dd.degenerated:
        lines.append("operator is degenerated")
    return [rec], lines, True


def cmd_reduce(args, cfg):
    L = load_operator(args.operator)
    Q = _poly_arg(args.poly, L.var)
    r = reduce(L, Q)
    rec = {"Q": format_poly(Q, L.var), "d": r.d, **r.to_json(L.var)}
    cs = ", ".join(f"{s}: {c}" for s, c in sorted(r.cs.items(), reverse=True))
    lines = [f"cs={{{cs}}}"]
    if r.kept:
        kept = ", ".join(f"{s}: {c}" for s, c in sorted(r.kept.items(), reverse=True))
        lines.append(f"kept={{{kept}}}")
    lines.append(f"residual {format_poly(r.residual, L.var)}")
    return [rec], lines, True


def cmd_telescope(args, cfg):
    L = load_operator(args.operator)
    p = _poly_arg(args.poly, L.var) if args.poly else None
    seq = get_sequence(args.sequence)
    upto = args.check
    F = seq_terms(seq, max(upto, L.order) + 1)
    form = telescoped_sum(L, p, F[:L.order])
    if args.normalize:
        form = normalize_window(form)
    ok = True
    bad = None
    polys = [p] if p is not None else [UniPoly.constant(1), poly_parse(L.var, L.var),
                                        poly_parse(f"{L.var}^2", L.var)]
    for q in polys:
        w = adjoint_apply(L, q)
        prefix = [Fraction(0)]
        for k in range(upto):
            prefix.append(prefix[-1] + w(k) * F[k])
        bad_n = next((n for n in range(form.valid_from, upto + 1)
                      if prefix[n] != form.rhs(F, n, q)), None)
        if bad_n is not None:
            ok, bad = False, (format_poly(q, L.var), bad_n)
            break
    rec = {"rendering": form.render(), "valid_from": form.valid_from, "checked_upto": upto,
           "pass": ok}
    lines = [f"sum_{{k<n}} L*(p)(k) F(k) = {form.render()}   (n >= {form.valid_from})",
             f"checked exactly for n <= {upto}: " + ("pass" if ok else f"FAIL at {bad}")]
    return [rec], lines, ok


def cmd_generate(args, cfg):
    seed = load_seed(args.seed)
    P = _poly_arg(args.poly, seed.operator.var)
    ident = generate(seed, P, args.qdeg)
    if not args.raw:
        ident = normalize_identity(ident)
    member = ident.verify_membership()
    rec = {**ident.to_json(), "membership": member}
    lines = [ident.render(), f"Q = {format_poly(ident.Q, seed.operator.var)}, c = {ident.c}",
             "cs = {" + ", ".join(f"{s}: {v}" for s, v in sorted(ident.cs.items())) + "}",
             f"nullity {ident.nullity}; membership check: {'pass' if member else 'FAIL'}"]
    if ident.nullity > 1:
        lines.append("note: solution space has dimension > 1; the smallest solution is shown")
    return [rec], lines, member


def cmd_guess(args, cfg):
    seq = get_sequence(args.sequence)
    needed = (args.order + 1) * (args.degree + 1) + args.order + 8
    N = max(args.terms or 0, needed + 8)
    L = guess_recurrence(seq_terms(seq, N), args.order, args.degree)
    if L is None:
        rec = {"sequence": seq.name, "operator": None}
        return [rec], [f"no recurrence of order {args.order}, degree {args.degree} found"], False
    L = type(L)(L.coeffs, seq_terms_var(seq))
    rec = {"sequence": seq.name, "operator": L.to_json(), "terms_used": N + 1}
    return [rec], [str(L)], True


def seq_terms_var(seq) -> str:
    return seq.operator.var if seq.operator is not None else "n"


def cmd_seq(args, cfg):
    seq = get_sequence(args.name)
    terms = seq_terms(seq, args.count - 1)
    recs = [{"n": n, "value": str(v)} for n, v in enumerate(terms)]
    return recs, [str(v) for v in terms], True


def cmd_verify_series(args, cfg):
    seed = load_seed(args.seed)
    ident = seed
    if args.poly:
        ident = normalize_identity(generate(seed, _poly_arg(args.poly, seed.operator.var)))
    if seed.sequence is None:
        raise UsageError("seed has no catalog sequence to sum against")
    ctx = PrecisionContext(cfg.digits)
    rep = verify_series(ident, get_sequence(seed.sequence), args.terms, ctx,
                        accelerate=cfg.accelerate, tol=args.tol)
    rec = rep.to_json()
    lines = [f"target {rep.target}", f"terms {rep.partial_terms}",
             f"|S - target| = {rec['abs_residual']} (tolerance {rec['tolerance']}): "
             + ("pass" if rep.passed else "FAIL")]
    if rep.error_estimate is not None:
        lines.append(f"error estimate {rec['error_estimate']}")
    lines.extend(f"note: {n}" for n in rep.notes)
    return [rec], lines, rep.passed


def cmd_verify_congruence(args, cfg):
    recs, lines, ok = [], [], True
    if args.known_facts:
        lo, hi = cfg.prime_range or (5, 97)
        for r in known_fact_checks(lo, hi):
            recs.append({"check": "known facts", **r})
            ok &= r["f_p_pass"] and r["f_pm1_pass"]
        lines.append(f"known facts for primes in [{lo}, {hi}]: " + ("pass" if ok else "FAIL"))
    if args.family:
        L = load_operator(args.operator)
        seq = get_sequence(args.sequence)
        rng = random.Random(args.seed)
        polys = [_poly_arg(args.poly, L.var)] if args.poly else [
            UniPoly([Fraction(rng.randint(-20, 20)) for _ in range(rng.randint(1, 4))] +
                    [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))])
            for _ in range(args.random)
        ]
        lo, hi = cfg.n_range or (1, 100)
        for p in polys:
            fam = derive_family(L, seq, p)
            rep = check_claim(fam.claim, lo, hi, exhaustive=cfg.exhaustive)
            ok &= rep.passed
            recs.append({"check": "family", "p": format_poly(p, L.var),
                         "modulus": format_poly(fam.claim.modulus_poly, "n"),
                         "rhs": str(fam.claim.rhs.const), "pass": rep.passed,
                         "counterexample": rep.counterexample})
            lines.append(f"p = {format_poly(p, L.var)}: {fam.claim.describe()}  "
                         + ("pass" if rep.passed else f"FAIL at n = {rep.counterexample}"))
    claims = []
    if args.claims:
        claims = load_claims(args.claims)
    elif not (args.known_facts or args.family):
        claims = shipped_claims()
    for claim in claims:
        if claim.primes_only:
            lo, hi = cfg.prime_range or claim.default_range
        else:
            lo, hi = cfg.n_range or claim.default_range
        rep = check_claim(claim, lo, hi, exhaustive=cfg.exhaustive)
        ok &= rep.passed
        for r in rep.records:
            recs.append({"claim": claim.name, **r})
        npts = len(rep.records)
        status = "pass" if rep.passed else f"FAIL, first counterexample at {rep.counterexample}"
        lines.append(f"[{claim.name}] {claim.describe()}: {npts} points, {status}")
    return recs, lines, ok


def cmd_selftest(args, cfg):
    from .selftest import run_selftest

    recs, lines, ok = [], [], True
    for name, passed, detail in run_selftest():
        ok &= passed
        recs.append({"case": name, "pass": passed, "detail": detail})
        lines.append(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
    lines.append(f"{sum(r['pass'] for r in recs)}/{len(recs)} golden cases pass")
    return recs, lines, ok


# -- parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="line-delimited JSON output")
    common.add_argument("--output", "-o", help="write the report to this file")
    common.add_argument("--digits", type=int, default=None,
                        help=f"working precision (default ${DIGITS_ENV} or 100)")

    ap = _Parser(prog="holored", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    op_help = "operator JSON file or shipped name (e.g. franel, domb_m-32)"
    p = add("adjoint", cmd_adjoint, "apply the adjoint L* to a polynomial")
    p.add_argument("--operator", required=True, help=op_help)
    p.add_argument("--poly", required=True)

    p = add("analyze", cmd_analyze, "degree data, indicial roots and coprimality")
    p.add_argument("--operator", required=True, help=op_help)

    p = add("reduce", cmd_reduce, "reduce a polynomial modulo the image of L*")
    p.add_argument("--operator", required=True, help=op_help)
    p.add_argument("--poly", required=True)

    p = add("telescope", cmd_telescope, "closed form of sum L*(p)(k) F(k)")
    p.add_argument("--operator", required=True, help=op_help)
    p.add_argument("--sequence", required=True, help="catalog sequence giving F")
    p.add_argument("--poly", help="concrete p (default: symbolic in p)")
    p.add_argument("--normalize", action="store_true",
                   help="order 2 only: rewrite using F(n-1), F(n)")
    p.add_argument("--check", type=int, default=50, help="verify exactly for n up to this")

    p = add("generate", cmd_generate, "new series identity from a seed")
    p.add_argument("--seed", required=True, help="seed JSON file or shipped name")
    p.add_argument("--poly", required=True, help="the multiplier polynomial P")
    p.add_argument("--qdeg", type=int, default=None)
    p.add_argument("--raw", action="store_true", help="skip the final normalization")

    p = add("guess", cmd_guess, "guess a recurrence from sequence terms")
    p.add_argument("--sequence", required=True)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--terms", type=int, default=None)

    p = add("seq", cmd_seq, "print sequence terms, one per line")
    p.add_argument("name")
    p.add_argument("--count", "-n", type=int, default=20)

    p = add("verify-series", cmd_verify_series, "numeric check of a pi-series")
    p.add_argument("--seed", required=True)
    p.add_argument("--poly", help="check the identity generated with this P instead")
    p.add_argument("--terms", "-N", type=int, default=200)
    p.add_argument("--tol", default="1e-30")
    p.add_argument("--accelerate", action="store_true")

    p = add("verify-congruence", cmd_verify_congruence, "test congruence claims")
    p.add_argument("--claims", help="claims JSON file (default: the shipped claims)")
    p.add_argument("--n-range", type=_range)
    p.add_argument("--prime-range", type=_range)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--known-facts", action="store_true")
    p.add_argument("--family", action="store_true",
                   help="derive and test families from telescoped closed forms")
    p.add_argument("--operator", default="franel", help=op_help)
    p.add_argument("--sequence", default="franel_signed")
    p.add_argument("--poly")
    p.add_argument("--random", type=int, default=20, help="number of random p for --family")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for --family")

    add("selftest", cmd_selftest, "run the golden suite")
    return ap


def _emit(records, lines, cfg, stream):
    if cfg.json:
        for r in records:
            stream.write(json.dumps(r, sort_keys=True) + "\n")
    else:
        for line in lines:
            stream.write(line + "\n")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "seq" and args.count < 1:
            raise UsageError("--count must be positive")
        cfg = RunConfig(
            command=args.command,
            digits=args.digits if args.digits is not None else _default_digits(),
            n_range=getattr(args, "n_range", None),
            prime_range=getattr(args, "prime_range", None),
            output=args.output,
            exhaustive=getattr(args, "exhaustive", False),
            accelerate=getattr(args, "accelerate", False),
            json=args.json,
        )
        records, lines, ok = args.func(args, cfg)
    except UsageError as exc:
        print(f"holored: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, PolySyntaxError, KeyError, json.JSONDecodeError) as exc:
        print(f"holored: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoSolutionError, DegenerateOperatorError, WindowNormalizationError,
            InapplicableError, ArithmeticError) as exc:
        print(f"holored: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"holored: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output:
        with open(cfg.output, "w") as fh:
            _emit(records, lines, cfg, fh)
    else:
        _emit(records, lines, cfg, sys.stdout)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

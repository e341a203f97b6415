"""Acceptance criteria 1-9.

Each test prints one line "criterion N: PASS|FAIL ..." with the measured
time.  Run standalone (python3 tests/test_acceptance.py) for just the
summary lines.
"""

import random
import time
from fractions import Fraction
from timeit import repeat

import pytest

from holored.congruence import check_claim, shipped_claims
from holored.files import load_operator, load_seed
from holored.identity import generate, normalize_identity
from holored.operators import (RecOperator, adjoint_apply, certificate, degree_data,
                               scale_operator)
from holored.poly import N, ONE, UniPoly, dispersion, poly_gcd, poly_parse
from holored.reduction import normalize_window, reduce, telescoped_sum
from holored.sequences import get_sequence, guess_recurrence, seq_terms, seq_terms_rec
from holored.verify import PrecisionContext, verify_series

CATALOG_OPERATORS = ["franel", "franel_unsigned", "delannoy", "domb", "domb_m-32", "domb_m64",
                     "franel4", "franel4_m5776", "central_franel"]


def report(n, ok, detail, capsys=None):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


def rpoly(rng, deg, lo=-9, hi=9):
    return UniPoly([Fraction(rng.randint(lo, hi)) for _ in range(deg)]
                   + [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))])


# -- 1 ----------------------------------------------------------------------

def check_1():
    fr, domb = load_operator("franel"), load_operator("domb_m-32")
    ok = adjoint_apply(fr, ONE) == poly_parse("-3*(3*k+2)", "k")
    lhs = poly_parse("n^2*(n-1)*(9*n+1)", "n")
    rhs = poly_parse("3*n+1", "n").scale(Fraction(2, 3)) + adjoint_apply(domb, N).scale(
        Fraction(1, 3))
    ok &= lhs == rhs
    t1 = min(repeat(lambda: adjoint_apply(fr, ONE), number=1, repeat=50))
    t2 = min(repeat(lambda: adjoint_apply(domb, N), number=1, repeat=50))
    ok &= max(t1, t2) < 1e-3
    return ok, f"L*(1) = -3(3k+2); n^2(n-1)(9n+1) = 2/3(3n+1) + 1/3 L*(n)  " \
               f"[{t1 * 1e6:.0f} us, {t2 * 1e6:.0f} us; limit 1 ms each]"


# -- 2 ----------------------------------------------------------------------

def check_2():
    raw = load_operator("domb")
    bad = []
    for m in [-32, -1, 2, 3, 5, 8, 64, 256, 4, 16]:
        dd = degree_data(scale_operator(raw, Fraction(1, m)))
        want = 2 if m in (4, 16) else 3
        if dd.d != want or dd.roots:
            bad.append(m)
    dd = degree_data(load_operator("franel"))
    ok = not bad and dd.d == 1 and not dd.roots
    return ok, f"Domb/m^n d=3 (m not in {{4,16}}), d=2 (m in {{4,16}}), R_L empty; " \
               f"Franel d={dd.d}, R_L={sorted(dd.roots)}" + (f"; wrong for m={bad}" if bad else "")


# -- 3 ----------------------------------------------------------------------

REDUCTIONS = [
    ("k", {0: Fraction(-1, 9)}, Fraction(-2, 3)),
    ("k^2", {1: Fraction(-1, 18), 0: Fraction(13, 162)}, Fraction(10, 27)),
    ("27*k^2*(3*k+1)", {2: -3, 0: -1}, 0),
    ("9*(9*k^3-15*k^2-10*k)", {2: -3, 1: 9, 0: -4}, 0),
]


def check_3():
    L = load_operator("franel")
    bad = []
    for text, cs, res in REDUCTIONS:
        r = reduce(L, poly_parse(text, "k"))
        if r.cs != cs or r.residual != UniPoly.constant(res) or r.kept:
            bad.append(text)
    return not bad, "4 Franel decompositions exact" if not bad else f"mismatch: {bad}"


# -- 4 ----------------------------------------------------------------------

def check_4():
    seed, seed4 = load_seed("domb_m-32"), load_seed("franel4_m5776")
    times, ok = [], True
    t = time.perf_counter()
    raw = generate(seed, N ** 2)
    a = normalize_identity(raw)
    times.append(time.perf_counter() - t)
    ok &= raw.cs[0] == 0 and raw.cs[1] == raw.c / 2
    ok &= a.weight == poly_parse("9*n^4-8*n^3-n^2", "n") and a.target() == "4/(3*pi)"
    t = time.perf_counter()
    b = normalize_identity(generate(seed, poly_parse("n^2+n+1", "n")))
    times.append(time.perf_counter() - t)
    ok &= b.weight == poly_parse("(n^2+n+1)*(126*n^2+41*n+5)", "n")
    ok &= b.target() == "-100/(3*pi)"
    t = time.perf_counter()
    c = normalize_identity(generate(seed4, N ** 3))
    times.append(time.perf_counter() - t)
    ok &= c.weight.coeffs[-1] == 47808294003072
    ok &= all(x.verify_membership() for x in (a, b, c))
    ok &= max(times) < 1.0
    return ok, "Domb P=n^2, P=n^2+n+1 and Franel4 P=n^3 identities  " \
               f"[max {max(times) * 1e3:.1f} ms per run; limit 1 s]"


# -- 5 ----------------------------------------------------------------------

CLOSED = [
    ("franel_signed", {0: {2: "-k^2"}, -1: {1: "-8*k^2"}}),
    ("delannoy", {0: {2: "-k"}, -1: {1: "k"}}),
]


def check_5():
    t = time.perf_counter()
    rng = random.Random(5)
    ok = True
    for name, boundary in CLOSED:
        seq = get_sequence(name)
        L = seq.operator
        F = seq_terms(seq, 201)
        form = normalize_window(telescoped_sum(L, None, F[:2]))
        want = {o: {j: poly_parse(c, "k") for j, c in row.items()} for o, row in boundary.items()}
        ok &= form.boundary == want and not form.constant
        for p in (ONE, poly_parse("k", "k"), poly_parse("k^2", "k"), rpoly(rng, 4)):
            q = adjoint_apply(L, p)
            acc = Fraction(0)
            for n in range(1, 201):
                acc += q(n - 1) * F[n - 1]
                ok &= acc == form.rhs(F, n, p)
    dt = time.perf_counter() - t
    ok &= dt < 10
    return ok, f"Franel and Delannoy closed forms exact for n <= 200, 4 p each  " \
               f"[{dt:.2f} s; limit 10 s]"


# -- 6 ----------------------------------------------------------------------

def check_6():
    t = time.perf_counter()
    ok = True
    names = []
    for claim in shipped_claims():
        rep = check_claim(claim)
        ok &= rep.passed
        names.append(claim.name)
    seq = get_sequence("delannoy")
    F = seq_terms(seq, 300)
    rng = random.Random(6)
    for _ in range(20):
        w = adjoint_apply(seq.operator, rpoly(rng, rng.randint(0, 4)))
        acc = 0
        for n in range(1, 301):
            acc += int(w(n - 1)) * F[n - 1]
            ok &= acc % n == 0
    dt = time.perf_counter() - t
    ok &= dt < 60
    return ok, f"{len(names)} shipped claims + Delannoy mod n (20 random p, n <= 300)  " \
               f"[{dt:.2f} s; limit 60 s]"


# -- 7 ----------------------------------------------------------------------

def _lagrange(rng):
    done = 0
    while done < 100:
        J = rng.randint(1, 3)
        cs = [rpoly(rng, rng.randint(0, 3)) for _ in range(J + 1)]
        L = RecOperator(tuple(cs))
        try:
            F = seq_terms_rec(L, [Fraction(rng.randint(-9, 9)) for _ in range(J)], 40 + J)
        except ArithmeticError:
            continue
        p = rpoly(rng, rng.randint(0, 4))
        q, cert = adjoint_apply(L, p), certificate(L, p)
        c0, acc = cert.boundary(F, 0), Fraction(0)
        for n in range(1, 41):
            acc += q(n - 1) * F[n - 1]
            if acc != c0 - cert.boundary(F, n):
                return False
        done += 1
    return True


def _reconstruction(rng):
    for name in CATALOG_OPERATORS:
        L = load_operator(name)
        for _ in range(200):
            Q = UniPoly([Fraction(rng.randint(-99, 99), rng.randint(1, 9))
                         for _ in range(rng.randint(1, 9))])
            if reduce(L, Q).reconstruct(L) != Q:
                return False
    return True


def _degree_lemma(rng):
    sigma = RecOperator((UniPoly.constant(-1), ONE))
    dd = degree_data(sigma)
    if (dd.d, dd.roots) != (-1, frozenset({0})):
        return False
    ops = [load_operator(n) for n in CATALOG_OPERATORS] + [sigma]
    ops += [RecOperator((poly_parse(f"-(n-{c})", "n"), N)) for c in (1, 2, 3, 4)]
    for L in ops:
        dd = degree_data(L)
        for s in range(7):
            q = adjoint_apply(L, rpoly(rng, s))
            if (q.degree >= dd.d + s) if s in dd.roots else (q.degree != dd.d + s):
                return False
    return True


def _dispersion(rng):
    for _ in range(100):
        a = UniPoly.constant(rng.choice([-2, 1, 3]))
        b = UniPoly.constant(rng.choice([-1, 1, 5]))
        for _ in range(rng.randint(1, 3)):
            a = a * (N - rng.randint(-15, 15))
        for _ in range(rng.randint(1, 3)):
            b = b * (N - rng.randint(-15, 15))
        brute = {i for i in range(80) if poly_gcd(a, b.shift(i)).degree > 0}
        if dispersion(a, b) != brute:
            return False
    return True


def check_7():
    rng = random.Random(7)
    parts = {"Lagrange x100": _lagrange(rng), "reconstruction 200/operator":
             _reconstruction(rng), "degree lemma incl. sigma-1": _degree_lemma(rng),
             "dispersion vs brute force": _dispersion(rng)}
    return all(parts.values()), ", ".join(f"{k} {'ok' if v else 'FAILED'}"
                                          for k, v in parts.items())


# -- 8 ----------------------------------------------------------------------

def check_8():
    t = time.perf_counter()
    ctx = PrecisionContext(100)
    r1 = verify_series(load_seed("domb_m64"), get_sequence("domb_m64"), 200, ctx, tol="1e-30")
    r2 = verify_series(load_seed("franel4_m5776"), get_sequence("franel4_m5776"), 60, ctx,
                       tol="1e-30")
    ident = normalize_identity(generate(load_seed("domb_m-32"), N ** 2))
    r3 = verify_series(ident, get_sequence("domb_m-32"), 60, ctx, accelerate=True, tol="1e-8")
    dt = time.perf_counter() - t
    ok = r1.passed and r2.passed and r3.passed and dt < 30
    return ok, f"residuals {r1.abs_residual:.1e}, {r2.abs_residual:.1e}, " \
               f"{r3.abs_residual:.1e} (accelerated)  [{dt:.2f} s; limit 30 s]"


# -- 9 ----------------------------------------------------------------------

def check_9():
    want = {
        "franel_signed": (2, 2, ["-8*(k+1)^2", "7*k^2+21*k+16", "(k+2)^2"]),
        "delannoy": (2, 1, ["k+1", "-6*k-9", "k+2"]),
        "domb": (2, 3, ["64*(n+1)^3", "-2*(2*n+3)*(5*n^2+15*n+12)", "(n+2)^3"]),
    }
    bad = []
    for name, (J, D, coeffs) in want.items():
        var = "k" if "k" in coeffs[0] else "n"
        L = guess_recurrence(seq_terms(get_sequence(name), 40), J, D)
        if L != RecOperator(tuple(poly_parse(c, var) for c in coeffs)):
            bad.append(name)
    return not bad, "signed Franel, Delannoy, raw Domb guessed exactly" if not bad \
        else f"mismatch: {bad}"


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9]


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, capsys):
    ok, detail = CHECKS[n - 1]()
    report(n, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    for i, check in enumerate(CHECKS, 1):
        report(i, *check())

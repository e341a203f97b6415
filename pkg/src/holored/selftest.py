"""Golden suite: every worked identity shipped in data/goldens.json, once each."""

from __future__ import annotations

from fractions import Fraction

from .congruence import check_claim, known_fact_checks, shipped_claims
from .files import goldens, load_operator, load_seed
from .identity import generate, normalize_identity
from .operators import adjoint_apply, degree_data, scale_operator, shift_coprime_check
from .poly import poly_parse
from .reduction import normalize_window, reduce, telescoped_sum
from .sequences import get_sequence, guess_recurrence, seq_terms
from .verify import PrecisionContext, verify_series


def _adjoint(case):
    L = load_operator(case["operator"])
    got = adjoint_apply(L, poly_parse(case["poly"], L.var))
    return got == poly_parse(case["expect"], L.var), str(got)


def _degree(case):
    if "family" in case:
        raw = get_sequence(case["family"]).operator
        ops = [(m, scale_operator(raw, Fraction(1, m))) for m in case["m"]]
    else:
        ops = [(None, load_operator(case["operator"]))]
    for m, L in ops:
        dd = degree_data(L)
        if dd.d != case["d"] or sorted(dd.roots) != case["R_L"]:
            return False, f"m={m}: d={dd.d}, R_L={sorted(dd.roots)}"
        if "f" in case and dd.f_poly != poly_parse(case["f"], "s"):
            return False, f"f={dd.f_poly}"
        if not shift_coprime_check(L)[0]:
            return False, "shift-coprimality fails"
    return True, f"d={case['d']}, R_L={case['R_L']}"


def _reduce(case):
    L = load_operator(case["operator"])
    r = reduce(L, poly_parse(case["poly"], L.var))
    cs = {str(s): str(c) for s, c in r.cs.items()}
    ok = cs == case["cs"] and r.residual == poly_parse(case["residual"], L.var) and not r.kept
    return ok, str(r.to_json(L.var))


def _generate(case):
    seed = load_seed(case["seed"])
    P = poly_parse(case["P"], seed.operator.var)
    raw = generate(seed, P)
    ok = raw.verify_membership()
    if "raw" in case:
        exp = case["raw"]
        ok &= raw.c == Fraction(exp["c"])
        ok &= all(raw.cs.get(int(s), 0) == Fraction(v) for s, v in exp["cs"].items())
        ok &= raw.Q == poly_parse(exp["Q"], seed.operator.var)
    if "scaled" in case:
        exp = case["scaled"]
        by = Fraction(exp["by"])
        ok &= all(raw.cs[int(s)] * by == Fraction(v) for s, v in exp["cs"].items())
        ok &= raw.Q.scale(by) == poly_parse(exp["Q"], seed.operator.var)
    norm = normalize_identity(raw)
    ok &= norm.weight == poly_parse(case["weight"], seed.operator.var)
    ok &= norm.target() == case["constant"]
    return ok, norm.render()


def _closed_form(case):
    L = load_operator(case["operator"])
    seq = get_sequence(case["sequence"])
    upto = case["upto"]
    F = seq_terms(seq, upto + 1)
    form = normalize_window(telescoped_sum(L, None, F[:2]))
    want = {int(o): {int(j): poly_parse(c, L.var) for j, c in row.items()}
            for o, row in case["boundary"].items()}
    if form.boundary != want or form.constant:
        return False, form.render()
    for p in (poly_parse("1", L.var), poly_parse(L.var, L.var), poly_parse(f"{L.var}^2", L.var)):
        q = adjoint_apply(L, p)
        acc = Fraction(0)
        for n in range(1, upto + 1):
            acc += q(n - 1) * F[n - 1]
            if acc != form.rhs(F, n, p):
                return False, f"mismatch at n={n} for p={p}"
    return True, form.render()


def _guess(case):
    seq = get_sequence(case["sequence"])
    L = guess_recurrence(seq_terms(seq, 40), case["order"], case["degree"])
    return L == load_operator(case["operator"]), str(L)


def _series(case):
    seed = load_seed(case["seed"])
    ident = seed
    if "P" in case:
        ident = normalize_identity(generate(seed, poly_parse(case["P"], seed.operator.var)))
    ctx = PrecisionContext(case["digits"])
    rep = verify_series(ident, get_sequence(seed.sequence), case["terms"], ctx,
                        accelerate=case["accelerate"], tol=case["tol"])
    return rep.passed, f"{rep.target}: |residual| = {rep.abs_residual:.2e}"


_RUNNERS = {
    "adjoint": _adjoint, "degree": _degree, "reduce": _reduce, "generate": _generate,
    "closed_forms": _closed_form, "guess": _guess, "series": _series,
}


def run_selftest():
    """Yield (name, passed, detail) for every golden case."""
    data = goldens()
    for section, runner in _RUNNERS.items():
        for i, case in enumerate(data.get(section, [])):
            label = case.get("poly") or case.get("P") or case.get("operator") or case.get(
                "sequence") or case.get("seed") or case.get("family")
            try:
                ok, detail = runner(case)
            except Exception as exc:  # report and keep going
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            yield f"{section}[{i}] {label}", bool(ok), detail
    for claim in shipped_claims():
        rep = check_claim(claim)
        detail = "all points pass" if rep.passed else f"counterexample at {rep.counterexample}"
        yield f"congruence {claim.name}", rep.passed, detail
    facts = known_fact_checks()
    ok = all(r["f_p_pass"] and r["f_pm1_pass"] for r in facts)
    yield "known facts f_p, f_(p-1) mod p^3", ok, f"{len(facts)} primes"

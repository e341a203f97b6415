from fractions import Fraction
from math import comb

import pytest

from holored.sequences import (RecurrenceSingularity, SequenceDef, binomial, catalog,
                               get_sequence, guess_recurrence, parse_rule, seq_terms,
                               seq_terms_rec)

from test_operators import SIGMA_MINUS_1, op


def oracle(name, N):
    """Direct double-loop evaluation with math.comb, independent of the rule parser."""
    C = comb
    rules = {
        "domb": lambda n, k: C(n, k) ** 2 * C(2 * k, k) * C(2 * n - 2 * k, n - k),
        "franel": lambda n, k: C(n, k) ** 3,
        "franel4": lambda n, k: C(n, k) ** 4,
        "delannoy": lambda n, k: C(n, k) * C(n + k, k),
    }
    return [sum(rules[name](n, k) for k in range(n + 1)) for n in range(N + 1)]


def test_binomial():
    assert binomial(4, 2) == 6
    assert binomial(6, 3) == 20
    assert binomial(52, 26) == 495918532948104
    assert binomial(3, 5) == 0 and binomial(3, -1) == 0
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_pascal():
    for n in range(1, 60):
        for k in range(1, 60):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


@pytest.mark.parametrize("name,terms", [
    ("domb", [1, 4, 28, 256, 2716]),
    ("franel", [1, 2, 10, 56, 346]),
    ("delannoy", [1, 3, 13, 63, 321]),
    ("franel4", [1, 2, 18, 164, 1810]),
])
def test_terms(name, terms):
    assert seq_terms(get_sequence(name), 4) == terms


@pytest.mark.parametrize("name", ["domb", "franel", "franel4", "delannoy"])
def test_oracle_agreement(name):
    got = seq_terms(get_sequence(name), 120)
    assert got == oracle(name, 120)
    assert all(isinstance(x, int) for x in got)


def test_signed_and_geometric():
    f = oracle("franel", 20)
    assert seq_terms(get_sequence("franel_signed"), 20) == [(-1) ** n * x for n, x in enumerate(f)]
    d = oracle("domb", 20)
    assert seq_terms(get_sequence("domb_m-32"), 20) == [Fraction(x, (-32) ** n) for n, x in
                                                        enumerate(d)]
    cf = seq_terms(get_sequence("central_franel"), 10)
    assert cf == [comb(2 * n, n) * x for n, x in enumerate(oracle("franel", 10))]


@pytest.mark.parametrize("name", sorted(catalog()))
def test_catalog_operators_annihilate(name):
    seq = catalog()[name]
    F = seq_terms(seq, 40)
    assert all(seq.operator.apply(F, n) == 0 for n in range(40 - seq.operator.order + 1))


@pytest.mark.parametrize("name", sorted(catalog()))
def test_recurrence_vs_oracle(name):
    seq = catalog()[name]
    J = seq.operator.order
    F = seq_terms(seq, 200)
    assert seq_terms_rec(seq.operator, F[:J], 200, check=seq) == F


def test_rec_examples():
    assert seq_terms_rec(get_sequence("franel_signed").operator, [1, -2], 50) == \
        seq_terms(get_sequence("franel_signed"), 50)
    assert seq_terms_rec(get_sequence("delannoy").operator, [1, 3], 4) == [1, 3, 13, 63, 321]
    assert seq_terms_rec(SIGMA_MINUS_1, [5], 10) == [5] * 11
    with pytest.raises(RecurrenceSingularity):
        seq_terms_rec(op("1", "n-3"), [1], 10)
    with pytest.raises(ValueError):
        seq_terms_rec(SIGMA_MINUS_1, [1, 2], 10)


@pytest.mark.parametrize("name,J,D,expect", [
    ("franel_signed", 2, 2, ["-8*(k+1)^2", "7*k^2+21*k+16", "(k+2)^2"]),
    ("delannoy", 2, 1, ["k+1", "-6*k-9", "k+2"]),
    ("domb", 2, 3, ["64*(n+1)^3", "-2*(2*n+3)*(5*n^2+15*n+12)", "(n+2)^3"]),
])
def test_guess(name, J, D, expect):
    L = guess_recurrence(seq_terms(get_sequence(name), 40), J, D)
    assert L == op(*expect, var="k" if "k" in expect[0] else "n")
    assert L == get_sequence(name).operator


def test_guess_then_scale():
    from holored.operators import scale_operator

    raw = guess_recurrence(seq_terms(get_sequence("domb"), 40), 2, 3)
    assert scale_operator(raw, Fraction(-1, 32)) == get_sequence("domb_m-32").operator
    raw4 = guess_recurrence(seq_terms(get_sequence("franel4"), 40), 2, 3)
    assert scale_operator(raw4, Fraction(1, 5776)) == get_sequence("franel4_m5776").operator


def test_guess_rejects():
    # 2^n + 3^n + n! has no order-1 recurrence of degree 1
    from math import factorial
    terms = [2 ** n + 3 ** n + factorial(n) for n in range(40)]
    assert guess_recurrence(terms, 1, 1) is None
    with pytest.raises(ValueError):
        guess_recurrence(terms[:5], 2, 2)


def test_central_franel_operator_is_guessed():
    seq = get_sequence("central_franel")
    L = guess_recurrence(seq_terms(seq, 60), 2, 3)
    assert L == seq.operator


def test_parse_rule():
    assert parse_rule("C(n,k)^2*C(2k,k)*C(2n-2k,n-k)") == (
        (1, 0, 0, 0, 1, 0, 2), (0, 2, 0, 0, 1, 0, 1), (2, -2, 0, 1, -1, 0, 1))
    with pytest.raises(ValueError):
        parse_rule("C(n,k")
    with pytest.raises(ValueError):
        SequenceDef("bad", "C(n,k)", prefactor="C(n,k)")

"""Binomial-sum sequences, recurrence-based term generation and guessing."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb

from .kernels import binomial_sum_terms
from .linalg import nullspace
from .operators import RecOperator
from .poly import UniPoly, poly_gcd


class RecurrenceSingularity(ArithmeticError):
    """The leading coefficient a_J(n) vanished while extending terms."""

    def __init__(self, n: int):
        super().__init__(f"leading coefficient vanishes at n = {n}")
        self.n = n


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("binomial() needs n >= 0")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


_FACTOR = re.compile(r"C\(([^,()]+),([^,()]+)\)(?:\^(\d+))?")
_LINTERM = re.compile(r"([+-]?)(\d*)([nk]?)")


def _linear_form(text: str):
    """'2n-2k+1' -> (2, -2, 1)."""
    coef = {"n": 0, "k": 0, "": 0}
    s = text.replace(" ", "")
    pos = 0
    while pos < len(s):
        m = _LINTERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad linear form {text!r}")
        sign, digits, var = m.groups()
        if not digits and not var:
            raise ValueError(f"bad linear form {text!r}")
        value = int(digits) if digits else 1
        coef[var] += -value if sign == "-" else value
        pos = m.end()
    return coef["n"], coef["k"], coef[""]


def parse_rule(text: str):
    """Parse 'C(n,k)^2*C(2k,k)' into kernel factor tuples."""
    text = text.replace(" ", "")
    if not text:
        return ()
    factors = []
    pos = 0
    while pos < len(text):
        m = _FACTOR.match(text, pos)
        if not m:
            raise ValueError(f"bad binomial rule {text!r} at position {pos}")
        top, bottom = _linear_form(m.group(1)), _linear_form(m.group(2))
        factors.append(top + bottom + (int(m.group(3) or 1),))
        pos = m.end()
        if pos < len(text):
            if text[pos] != "*":
                raise ValueError(f"expected '*' at position {pos} in {text!r}")
            pos += 1
    return tuple(factors)


@dataclass(frozen=True)
class SequenceDef:
    """F(n) = sign^n * r^n * prefactor(n) * sum_{k=0}^{n} rule(n, k)."""

    name: str
    rule: str
    prefactor: str = ""
    sign: bool = False
    geom: Fraction | None = None
    operator: RecOperator | None = None
    label: str = ""

    def __post_init__(self):
        pre = parse_rule(self.prefactor)
        if any(f[1] or f[4] for f in pre):
            raise ValueError("prefactor binomials may not involve k")
        parse_rule(self.rule)
        if self.geom is not None:
            object.__setattr__(self, "geom", Fraction(self.geom))

    def with_geom(self, r, name=None, operator=None, label="") -> "SequenceDef":
        from .operators import scale_operator

        r = Fraction(r)
        base = self.geom if self.geom is not None else Fraction(1)
        op = operator
        if op is None and self.operator is not None:
            op = scale_operator(self.operator, r)
        return SequenceDef(name or f"{self.name}*({r})^n", self.rule, self.prefactor,
                           self.sign, base * r, op, label)


@lru_cache(maxsize=64)
def _integer_terms(rule: str, prefactor: str, count: int):
    return tuple(binomial_sum_terms(count, parse_rule(rule), parse_rule(prefactor)))


def seq_terms(seq: SequenceDef, N: int) -> list:
    """Exact F(0..N): ints unless a geometric factor makes them rational."""
    if N < 0:
        return []
    base = _integer_terms(seq.rule, seq.prefactor, N + 1)
    out = []
    g = seq.geom
    weight = Fraction(1)
    for n, t in enumerate(base):
        v = -t if seq.sign and n % 2 else t
        if g is not None:
            v = weight * v
            weight *= g
            if v.denominator == 1:
                v = v.numerator
        out.append(v)
    return out


def seq_terms_rec(L: RecOperator, initial, N: int, check: SequenceDef | None = None) -> list:
    """Extend F(0..J-1) to F(0..N) with the recurrence, in exact arithmetic."""
    J = L.order
    if len(initial) != J:
        raise ValueError(f"need exactly {J} initial values, got {len(initial)}")
    vals = [Fraction(x) for x in initial]
    lead = L.coeffs[-1]
    for n in range(0, N - J + 1):
        a = lead(n)
        if a == 0:
            raise RecurrenceSingularity(n)
        s = sum((L.coeffs[i](n) * vals[n + i] for i in range(J)), Fraction(0))
        vals.append(-s / a)
    vals = vals[: N + 1]
    out = [v.numerator if v.denominator == 1 else v for v in vals]
    if check is not None:
        ref = seq_terms(check, N)
        if ref != out:
            bad = next(i for i, (x, y) in enumerate(zip(ref, out)) if x != y)
            raise AssertionError(f"recurrence and binomial sum disagree at n = {bad}")
    return out


def guess_recurrence(terms, J: int, D: int, margin: int = 8) -> RecOperator | None:
    """Find sum_{i<=J} a_i(n) t_{n+i} = 0 with deg a_i <= D, or None.

    The system is fitted on a window of rows and the candidate is then
    checked on every remaining term, which rejects fits that only hold on
    the window.
    """
    unknowns = (J + 1) * (D + 1)
    if len(terms) < unknowns + J + margin:
        raise ValueError(
            f"need at least {unknowns + J + margin} terms for J={J}, D={D}; got {len(terms)}"
        )
    t = [Fraction(x) for x in terms]
    n_rows = len(t) - J
    fit = min(n_rows, unknowns + margin // 2)

    def row(n):
        return [n ** d * t[n + i] for i in range(J + 1) for d in range(D + 1)]

    basis = nullspace([row(n) for n in range(fit)], unknowns)
    if not basis:
        return None
    v = basis[0]
    coeffs = [UniPoly(v[i * (D + 1):(i + 1) * (D + 1)]) for i in range(J + 1)]
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) < 2:
        return None
    g = None
    for c in coeffs:
        if not c.is_zero():
            g = c if g is None else poly_gcd(g, c)
    if g.degree > 0:
        coeffs = [c.exact_div(g) for c in coeffs]
    L = RecOperator(tuple(coeffs))
    for n in range(len(t) - L.order):
        if L.apply(t, n) != 0:
            return None
    return L


# -- catalog ----------------------------------------------------------------

def _load_catalog():
    data = json.loads(resources.files("holored").joinpath("data/catalog.json").read_text())
    out = {}
    for name, entry in data.items():
        op = RecOperator.from_json(entry["operator"]) if "operator" in entry else None
        base = SequenceDef(
            name=name,
            rule=entry["rule"],
            prefactor=entry.get("prefactor", ""),
            sign=entry.get("sign", False),
            geom=Fraction(entry["geom"]) if "geom" in entry else None,
            operator=op,
            label=entry.get("label", name),
        )
        out[name] = base
    return out


_CATALOG = None


def catalog() -> dict:
    """Name -> SequenceDef for the shipped sequences."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _load_catalog()
    return dict(_CATALOG)


def get_sequence(name: str) -> SequenceDef:
    cat = catalog()
    if name not in cat:
        raise KeyError(f"unknown sequence {name!r}; known: {', '.join(sorted(cat))}")
    return cat[name]

"""Congruence and divisibility statements for weighted partial sums.

A claim reads

    multiplier * sum_{k=0}^{n-1 (or n)} weight(k) F(k) == rhs  (mod M),

where M is either an integer polynomial in n or a power p^e of a prime p
(the tested point).  The right-hand side is closed-world: a rational
constant optionally times a Legendre symbol (p/q), a power of 2^p - 1 and a
power of p.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import gcd

from .operators import RecOperator, adjoint_apply
from .poly import UniPoly, format_poly, poly_parse
from .reduction import SumClosedForm, normalize_window, telescoped_sum
from .sequences import SequenceDef, get_sequence, seq_terms


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _mod(x: Fraction, m: int) -> int:
    """x mod m for a rational x whose denominator is invertible mod m."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator % m
    try:
        inv = pow(x.denominator, -1, m)
    except ValueError:
        raise ArithmeticError(f"denominator of {x} is not invertible modulo {m}") from None
    return x.numerator * inv % m


@dataclass(frozen=True)
class RhsSpec:
    const: Fraction = Fraction(0)
    legendre: int | None = None
    mersenne_power: int = 0
    p_power: int = 0

    def value(self, n: int) -> Fraction:
        v = Fraction(self.const)
        if v == 0:
            return v
        if self.legendre is not None:
            v *= legendre(n, self.legendre)
        if self.mersenne_power:
            v *= (2 ** n - 1) ** self.mersenne_power
        if self.p_power:
            v *= n ** self.p_power
        return v

    def render(self, var: str = "p") -> str:
        parts = [str(self.const)]
        if self.legendre is not None:
            parts.append(f"({var}/{self.legendre})")
        if self.mersenne_power:
            parts.append(f"(2^{var}-1)^{self.mersenne_power}")
        if self.p_power:
            parts.append(f"{var}^{self.p_power}")
        return "*".join(parts)


@dataclass(frozen=True)
class CongruenceClaim:
    name: str
    sequence: str
    weight: UniPoly
    modulus_poly: UniPoly | None = None
    prime_power: int | None = None
    rhs: RhsSpec = field(default_factory=RhsSpec)
    multiplier: Fraction = Fraction(1)
    inclusive: bool = False
    var: str = "k"
    default_range: tuple = (1, 100)
    primes_only: bool = False

    def __post_init__(self):
        if (self.modulus_poly is None) == (self.prime_power is None):
            raise ValueError("give exactly one of modulus_poly and prime_power")
        if self.prime_power is not None and self.prime_power < 1:
            raise ValueError("prime power exponent must be positive")

    def modulus(self, n: int) -> int:
        if self.prime_power is not None:
            return n ** self.prime_power
        m = self.modulus_poly(n)
        if m.denominator != 1:
            raise ArithmeticError(f"modulus is not an integer at n = {n}")
        if m == 0:
            raise ArithmeticError(f"modulus vanishes at n = {n}")
        return abs(m.numerator)

    def describe(self) -> str:
        upper = "n" if self.inclusive else "n-1"
        mult = "" if self.multiplier == 1 else f"{self.multiplier}*"
        seq = re.sub(r"(?<![A-Za-z])n(?![A-Za-z])", self.var, get_sequence(self.sequence).label)
        mod = (f"p^{self.prime_power}" if self.prime_power is not None
               else format_poly(self.modulus_poly, "n"))
        point = "p" if self.prime_power is not None else "n"
        upper = upper.replace("n", point)
        return (f"{mult}sum_{{{self.var}=0}}^{{{upper}}} ({format_poly(self.weight, self.var)})"
                f"*{seq} == {self.rhs.render(point)} (mod {mod})")

    @classmethod
    def from_json(cls, data) -> "CongruenceClaim":
        if isinstance(data, str):
            data = json.loads(data)
        var = data.get("var", "k")
        mod = data["modulus"]
        rhs = data.get("rhs", {})
        mod_poly = None
        if "poly" in mod:
            mod_poly = poly_parse(str(mod["poly"]), "n").scale(int(mod.get("const", 1)))
        return cls(
            name=data["name"],
            sequence=data["sequence"],
            weight=poly_parse(str(data["weight"]), var),
            modulus_poly=mod_poly,
            prime_power=mod.get("prime_power"),
            rhs=RhsSpec(Fraction(str(rhs.get("const", "0"))), rhs.get("legendre"),
                        int(rhs.get("mersenne_power", 0)), int(rhs.get("p_power", 0))),
            multiplier=Fraction(str(data.get("multiplier", "1"))),
            inclusive=data.get("upper", "n-1") == "n",
            var=var,
            default_range=tuple(data.get("range", (1, 100))),
            primes_only=bool(data.get("primes_only", mod.get("prime_power") is not None)),
        )

    def to_json(self) -> dict:
        mod = ({"prime_power": self.prime_power} if self.prime_power is not None
               else {"poly": format_poly(self.modulus_poly, "n")})
        rhs = {"const": str(self.rhs.const)}
        if self.rhs.legendre is not None:
            rhs["legendre"] = self.rhs.legendre
        if self.rhs.mersenne_power:
            rhs["mersenne_power"] = self.rhs.mersenne_power
        if self.rhs.p_power:
            rhs["p_power"] = self.rhs.p_power
        return {
            "name": self.name, "sequence": self.sequence, "var": self.var,
            "weight": format_poly(self.weight, self.var), "multiplier": str(self.multiplier),
            "upper": "n" if self.inclusive else "n-1", "modulus": mod, "rhs": rhs,
            "range": list(self.default_range), "primes_only": self.primes_only,
        }


@dataclass
class ClaimReport:
    claim: CongruenceClaim
    records: list
    passed: bool
    counterexample: int | None = None

    def lines(self):
        for r in self.records:
            yield json.dumps(r)


def check_claim(claim: CongruenceClaim, lo: int | None = None, hi: int | None = None,
                primes_only: bool | None = None, exhaustive: bool = False) -> ClaimReport:
    """Test the claim at every n (or prime p) in [lo, hi].

    Stops at the first failure unless ``exhaustive``.
    """
    lo = claim.default_range[0] if lo is None else lo
    hi = claim.default_range[1] if hi is None else hi
    if hi < lo:
        raise ValueError("empty range")
    primes_only = claim.primes_only if primes_only is None else primes_only
    points = [n for n in range(lo, hi + 1) if not primes_only or is_prime(n)]
    seq = get_sequence(claim.sequence)
    last = hi + (1 if claim.inclusive else 0)
    F = seq_terms(seq, max(last, 0))
    prefix = [Fraction(0)]
    for k in range(last):
        prefix.append(prefix[-1] + claim.weight(k) * F[k])
    records = []
    ok = True
    bad = None
    for n in points:
        top = n + 1 if claim.inclusive else n
        m = claim.modulus(n)
        lhs = _mod(claim.multiplier * prefix[top], m)
        rhs = _mod(claim.rhs.value(n), m)
        good = lhs == rhs
        records.append({"n": n, "lhs_mod": str(lhs), "rhs_mod": str(rhs), "pass": good})
        if not good:
            ok = False
            if bad is None:
                bad = n
            if not exhaustive:
                break
    return ClaimReport(claim, records, ok, bad)


def shipped_claims() -> list:
    raw = json.loads(resources.files("holored").joinpath("data/claims.json").read_text())
    return [CongruenceClaim.from_json(c) for c in raw]


# -- families from telescoped closed forms ----------------------------------

@dataclass
class Family:
    weight: UniPoly
    form: SumClosedForm
    factor: UniPoly
    extra: int
    claim: CongruenceClaim
    notes: list


def derive_family(L: RecOperator, seq: SequenceDef, p: UniPoly, check_upto: int = 60) -> Family:
    """Weight L*(p), its normalized closed form and the implied divisibility.

    The closed form is g(n) * sum_j (...) p(n-j) F(n+o).  The modulus is g
    (integral, primitive) times the gcd of the bracketed per-shift values
    over n = 1..check_upto; that gcd is an empirical fact (e.g. parity of
    Franel numbers) and is only as good as the range it was computed on.
    """
    if L.order != 2:
        raise ValueError("families are derived for order-2 operators")
    weight = adjoint_apply(L, p)
    initial = seq_terms(seq, 1)[:2]
    form = normalize_window(telescoped_sum(L, p, initial))
    g = form.common_factor()
    _, g_int = g.primitive()
    notes = []
    F = seq_terms(seq, check_upto + 1)
    extra = 0
    integral = True
    for o, row in form.boundary.items():
        for j, c in row.items():
            inner = c.exact_div(g_int)
            if any(x.denominator != 1 for x in inner.coeffs):
                integral = False
    if integral:
        for j in sorted({j for row in form.boundary.values() for j in row}):
            for n in range(1, check_upto + 1):
                v = sum((form.boundary[o][j].exact_div(g_int)(n) * F[n + o]
                         for o in form.boundary if j in form.boundary[o]), Fraction(0))
                if v.denominator != 1:
                    integral = False
                    break
                extra = gcd(extra, v.numerator)
    if not integral or extra == 0:
        extra = 1
        notes.append("bracketed terms not integral; no extra factor")
    else:
        notes.append(f"extra factor {extra} is a numerical gcd over n = 1..{check_upto}")
    c0 = form.constant_value(p)
    claim = CongruenceClaim(
        name=f"family L*({format_poly(p, L.var)})",
        sequence=seq.name,
        weight=weight,
        modulus_poly=g_int.scale(extra),
        rhs=RhsSpec(c0),
        var=L.var,
        default_range=(1, 100),
    )
    return Family(weight, form, g_int, extra, claim, notes)


def known_fact_checks(lo: int = 5, hi: int = 97) -> list:
    """f_p == 2 (mod p^3) and f_{p-1} == 1 + 3(2^{p-1}-1) + 3(2^{p-1}-1)^2 (mod p^3)."""
    f = seq_terms(get_sequence("franel"), hi)
    out = []
    for p in range(lo, hi + 1):
        if not is_prime(p):
            continue
        m = p ** 3
        q = 2 ** (p - 1) - 1
        out.append({
            "p": p,
            "f_p_mod_p3": f[p] % m,
            "f_p_pass": f[p] % m == 2 % m,
            "f_pm1_pass": (f[p - 1] - (1 + 3 * q + 3 * q * q)) % m == 0,
        })
    return out

"""High-precision numeric checks of pi-series.

Partial sums are exact Fractions; the only rounding happens when they are
converted to scaled integers at the working precision.  pi is computed
from arctangent series in integer arithmetic and cross-checked against a
second Machin-like formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt

from .identity import NewIdentity, SeedIdentity, format_constant
from .sequences import SequenceDef, seq_terms

GUARD = 12  # extra decimal digits carried internally


def _arctan_inv(x: int, scale: int) -> int:
    """arctan(1/x) * scale, truncated; error below the number of terms."""
    total = term = scale // x
    x2 = x * x
    k = 1
    while term:
        term //= x2
        total += -(term // (2 * k + 1)) if k % 2 else term // (2 * k + 1)
        k += 1
    return total


def pi_machin(digits: int) -> int:
    """floor-ish(pi * 10^digits) via 16 atan(1/5) - 4 atan(1/239)."""
    scale = 10 ** (digits + GUARD)
    v = 16 * _arctan_inv(5, scale) - 4 * _arctan_inv(239, scale)
    return v // 10 ** GUARD


def pi_stormer(digits: int) -> int:
    """pi * 10^digits via 44 atan(1/57) + 7 atan(1/239) - 12 atan(1/682) + 24 atan(1/12943)."""
    scale = 10 ** (digits + GUARD)
    v = (44 * _arctan_inv(57, scale) + 7 * _arctan_inv(239, scale)
         - 12 * _arctan_inv(682, scale) + 24 * _arctan_inv(12943, scale))
    return 4 * v // 10 ** GUARD


class PrecisionContext:
    """Immutable bundle of pi and square roots at a fixed number of digits."""

    def __init__(self, digits: int = 100):
        if digits < 20:
            raise ValueError("precision must be at least 20 digits")
        self.digits = digits
        work = digits + GUARD
        self._pi = pi_machin(work)
        check = pi_stormer(work)
        if abs(self._pi - check) > 10:
            raise ArithmeticError("pi self-check failed: the two arctangent formulas disagree")
        self._work = work
        self._sqrt = {}

    @property
    def pi_value(self) -> str:
        s = str(self._pi // 10 ** GUARD)
        return s[0] + "." + s[1:]

    def sqrt_scaled(self, alpha: int) -> int:
        """floor(sqrt(alpha) * 10^work)."""
        if alpha not in self._sqrt:
            self._sqrt[alpha] = isqrt(alpha * 10 ** (2 * self._work))
        return self._sqrt[alpha]

    def scaled(self, x: Fraction) -> int:
        """round(x * 10^work)."""
        num = x.numerator * 10 ** self._work
        q, r = divmod(num, x.denominator)
        return q + (1 if 2 * r >= x.denominator else 0)

    def target_scaled(self, value: Fraction, alpha: int, kind: str) -> int:
        """value * kappa * 10^work, rounded."""
        one = 10 ** self._work
        if kind == "rational_constant":
            return self.scaled(value)
        num = value.numerator * one * one
        if kind == "sqrt_alpha_over_pi":
            num = value.numerator * self.sqrt_scaled(alpha) * one
        elif kind != "rational_over_pi":
            raise ValueError(f"unknown constant kind {kind!r}")
        den = value.denominator * self._pi
        q, r = divmod(num, den)
        return q + (1 if 2 * r >= den else 0)

    def to_decimal(self, scaled: int) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = self._work + 10
            return Decimal(scaled).scaleb(-self._work)


def _sci(x: Decimal, places: int = 3) -> str:
    return "0" if x == 0 else f"{x:.{places}e}"


@dataclass
class SeriesReport:
    target: str
    partial_terms: int
    abs_residual: Decimal
    tolerance: Decimal
    passed: bool
    accelerated: bool = False
    error_estimate: Decimal | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "target": self.target,
            "partial_terms": self.partial_terms,
            "abs_residual": _sci(self.abs_residual),
            "tolerance": f"{self.tolerance:.1e}",
            "accelerated": self.accelerated,
            "pass": self.passed,
        }
        if self.error_estimate is not None:
            out["error_estimate"] = _sci(self.error_estimate)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _identity_parts(identity):
    if isinstance(identity, NewIdentity):
        return identity.weight, identity.constant, identity.seed.alpha, identity.seed.kind
    if isinstance(identity, SeedIdentity):
        return identity.weight, identity.lam, identity.alpha, identity.kind
    raise TypeError("expected a SeedIdentity or NewIdentity")


def series_terms(weight, seq: SequenceDef, N: int):
    F = seq_terms(seq, N)
    return [weight(n) * F[n] for n in range(N + 1)]


def crvz_sum(a, ctx: PrecisionContext) -> int:
    """Cohen-Rodriguez Villegas-Zagier sum of sum_k (-1)^k a_k, scaled.

    ``a`` are the first n magnitudes as Fractions; the result is
    round(S * 10^work).  All operations except the final rounding are
    exact except (3+sqrt 8)^n, which is carried in scaled integers.
    """
    n = len(a)
    one = 10 ** ctx._work
    s8 = isqrt(8 * one * one)
    d_scaled = (3 * one + s8) ** n // one ** (n - 1)
    d_scaled = (d_scaled + one * one // d_scaled) // 2
    b = Fraction(-1)
    c = Fraction(-d_scaled, one)
    s = Fraction(0)
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = b * (k + n) * (k - n) / ((k + Fraction(1, 2)) * (k + 1))
    return ctx.scaled(s * one / d_scaled)


def verify_series(identity, seq: SequenceDef, N: int, ctx: PrecisionContext,
                  accelerate: bool = False, tol="1e-30") -> SeriesReport:
    """Compare sum_{n<=N} W(n) F(n) against the identity's constant."""
    if N < 1:
        raise ValueError("need at least two terms (N >= 1)")
    tol = Decimal(str(tol))
    weight, value, alpha, kind = _identity_parts(identity)
    target_name = format_constant(value, alpha, kind)
    target = ctx.target_scaled(value, alpha, kind)
    terms = series_terms(weight, seq, N)
    notes = []
    if accelerate:
        mags = [t if k % 2 == 0 else -t for k, t in enumerate(terms)]
        got = crvz_sum(mags, ctx)
        half = crvz_sum(mags[: max(2, (N + 1) // 2)], ctx)
        est = ctx.to_decimal(abs(got - half))
        notes.append("alternating-series acceleration (Cohen-Rodriguez Villegas-Zagier)")
    else:
        got = ctx.scaled(sum(terms, Fraction(0)))
        est = None
        last, prev = abs(terms[-1]), abs(terms[-2])
        if prev != 0 and last != 0:
            ratio = last / prev
            if ratio < 1:
                est = ctx.to_decimal(ctx.scaled(last * ratio / (1 - ratio)))
            else:
                notes.append("terms not yet decreasing; tail not estimated")
        elif last == 0 and prev == 0:
            est = Decimal(0)
    residual = ctx.to_decimal(abs(got - target))
    passed = residual <= tol
    if est is not None and est > tol and not accelerate:
        notes.append(f"N = {N} is too small for tolerance {tol}: tail estimate {est:.2e}")
        passed = False
    floor = Decimal(10) ** (-ctx.digits)
    if tol < floor:
        notes.append(f"tolerance below the conversion floor 1e-{ctx.digits}")
    return SeriesReport(target_name, N + 1, residual, tol, passed, accelerate, est, notes)

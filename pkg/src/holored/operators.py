"""Linear recurrence operators L = sum_i a_i(n) sigma^i and their adjoints."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm

from .poly import UniPoly, dispersion, format_poly, integer_roots, poly_parse


class InapplicableError(ValueError):
    """Raised when a check's hypothesis (e.g. a_0 != 0) is not met."""


@dataclass(frozen=True)
class RecOperator:
    """Recurrence operator with polynomial coefficients a_0..a_J.

    Coefficients are normalized on construction: integral, coprime as a
    whole, and the leading coefficient of a_J positive.  Two operators that
    differ by a nonzero constant factor therefore compare equal.
    """

    coeffs: tuple
    var: str = field(default="n", compare=False)

    def __post_init__(self):
        cs = tuple(c if isinstance(c, UniPoly) else UniPoly(c) for c in self.coeffs)
        if not cs:
            raise ValueError("an operator needs at least one coefficient")
        if cs[-1].is_zero():
            raise ValueError("leading coefficient a_J must be nonzero")
        den = 1
        for c in cs:
            for x in c.coeffs:
                den = lcm(den, x.denominator)
        g = 0
        for c in cs:
            for x in c.coeffs:
                g = gcd(g, int(x * den))
        scale = Fraction(den, g)
        if cs[-1].lc < 0:
            scale = -scale
        if scale != 1:
            cs = tuple(c.scale(scale) for c in cs)
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i) -> UniPoly:
        return self.coeffs[i]

    def apply(self, values, n: int) -> Fraction:
        """(L F)(n) for a sequence given by indexable ``values``."""
        return sum((a(n) * values[n + i] for i, a in enumerate(self.coeffs)), Fraction(0))

    def to_json(self) -> dict:
        return {"var": self.var, "coeffs": [format_poly(c, self.var) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "RecOperator":
        if isinstance(data, str):
            data = json.loads(data)
        var = data.get("var", "n")
        return cls(tuple(poly_parse(str(c), var) for c in data["coeffs"]), var)

    def __str__(self):
        parts = []
        for i in range(self.order, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            sig = "" if i == 0 else ("σ" if i == 1 else f"σ^{i}")
            parts.append(f"({format_poly(c, self.var)}){sig}")
        return " + ".join(parts)


def _require_analysis_order(L: RecOperator):
    if L.order < 1:
        raise ValueError("analysis needs an operator of order J >= 1")


def adjoint_apply(L: RecOperator, p: UniPoly) -> UniPoly:
    """L*(p)(n) = sum_i a_i(n-i) p(n-i)."""
    out = UniPoly()
    if p.is_zero():
        return out
    for i, a in enumerate(L.coeffs):
        if not a.is_zero():
            out = out + (a * p).shift(-i)
    return out


def certificate_shifts(L: RecOperator):
    """Symbolic certificate: u_i(n) = sum_j c_ij(n) p(n-j).

    Returns a list indexed by i of dicts {j: c_ij} with c_ij = a_{i+j}(n-j),
    so the certificate can be instantiated for any p.
    """
    J = L.order
    out = []
    for i in range(J):
        terms = {}
        for j in range(1, J - i + 1):
            c = L.coeffs[i + j].shift(-j)
            if not c.is_zero():
                terms[j] = c
        out.append(terms)
    return out


@dataclass(frozen=True)
class Certificate:
    u: tuple

    def boundary(self, values, n: int) -> Fraction:
        """sum_i u_i(n) F(n+i)."""
        return sum((ui(n) * values[n + i] for i, ui in enumerate(self.u)), Fraction(0))


def certificate(L: RecOperator, p: UniPoly) -> Certificate:
    """u_i(n) = sum_{j=1}^{J-i} a_{i+j}(n-j) p(n-j), expanded."""
    u = []
    for terms in certificate_shifts(L):
        acc = UniPoly()
        for j, c in terms.items():
            acc = acc + c * p.shift(-j)
        u.append(acc)
    return Certificate(tuple(u))


def falling_factorial(k: int) -> UniPoly:
    """s(s-1)...(s-k+1) as a polynomial in s."""
    out = UniPoly.constant(1)
    for t in range(k):
        out = out * UniPoly((-t, 1))
    return out


@dataclass(frozen=True)
class DegreeData:
    b: tuple
    d: int
    f_poly: UniPoly
    roots: frozenset = field(default_factory=frozenset)

    @property
    def degenerated(self) -> bool:
        return bool(self.roots)

    def to_json(self, var="n") -> dict:
        return {
            "b": [format_poly(bk, var) for bk in self.b],
            "d": self.d,
            "f": format_poly(self.f_poly, "s"),
            "R_L": sorted(self.roots),
            "degenerated": self.degenerated,
        }


def degree_data(L: RecOperator) -> DegreeData:
    """b_k, d, the indicial polynomial f(s) and its nonnegative integer roots."""
    _require_analysis_order(L)
    J = L.order
    b = []
    for k in range(J + 1):
        acc = UniPoly()
        for j in range(k, J + 1):
            a = L.coeffs[J - j]
            if not a.is_zero():
                acc = acc + a.shift(j - J).scale(comb(j, k))
        b.append(acc)
    d = max(bk.degree - k for k, bk in enumerate(b) if not bk.is_zero())
    f = UniPoly()
    for k, bk in enumerate(b):
        if d + k >= 0 and bk[d + k] != 0:
            f = f + falling_factorial(k).scale(bk[d + k])
    roots = frozenset(s for s in integer_roots(f) if s >= 0)
    return DegreeData(tuple(b), d, f, roots)


def shift_coprime_check(L: RecOperator):
    """Return (ok, shifts): ok iff gcd(a_0(n), a_J(n+i)) = 1 for all i >= 0."""
    _require_analysis_order(L)
    if L.coeffs[0].is_zero():
        raise InapplicableError("a_0 = 0: the shift-coprimality condition does not apply")
    bad = dispersion(L.coeffs[0], L.coeffs[-1])
    return not bad, frozenset(bad)


def scale_operator(L: RecOperator, r) -> RecOperator:
    """Annihilator of A(n) r^n given L annihilating A(n).

    sum a_i(n) A(n+i) = 0 becomes sum a_i(n) r^(J-i) B(n+i) = 0 for
    B(n) = A(n) r^n; clearing r = u/v gives a_i * u^(J-i) * v^i.
    """
    r = Fraction(r)
    if r == 0:
        raise ValueError("scaling factor must be nonzero")
    J = L.order
    u, v = r.numerator, r.denominator
    return RecOperator(
        tuple(a.scale(u ** (J - i) * v ** i) for i, a in enumerate(L.coeffs)), L.var
    )

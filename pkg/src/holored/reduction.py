"""Polynomial reduction modulo the image of L* and telescoped partial sums."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .operators import RecOperator, adjoint_apply, certificate_shifts, degree_data
from .poly import UniPoly, format_poly, poly_gcd


@dataclass(frozen=True)
class ReductionResult:
    """Q = sum cs[s] L*(n^s) + sum kept[s] n^(d+s) + residual."""

    cs: dict
    kept: dict
    residual: UniPoly
    d: int

    def reconstruct(self, L: RecOperator) -> UniPoly:
        out = self.residual
        for s, c in self.cs.items():
            out = out + adjoint_apply(L, UniPoly.monomial(s)).scale(c)
        for s, c in self.kept.items():
            out = out + UniPoly.monomial(self.d + s, c)
        return out

    def to_json(self, var: str = "n") -> dict:
        return {
            "cs": {str(s): str(c) for s, c in sorted(self.cs.items(), reverse=True)},
            "kept": {str(s): str(c) for s, c in sorted(self.kept.items(), reverse=True)},
            "residual": format_poly(self.residual, var),
        }


def reduce(L: RecOperator, Q: UniPoly) -> ReductionResult:
    """Top-down elimination of Q against q_s = L*(n^s).

    For s in R_L the monomial n^(d+s) is kept as is (there is no q_s of
    that degree); slots with d + s < 0 do not exist in a polynomial and are
    skipped.  Zero coefficients are omitted from ``cs`` and ``kept``.
    """
    dd = degree_data(L)
    d = dd.d
    cs, kept = {}, {}
    rem = Q
    if not Q.is_zero():
        for s in range(Q.degree - d, -1, -1):
            target = d + s
            if target < 0:
                continue
            c = rem[target]
            if c == 0:
                continue
            if s in dd.roots:
                kept[s] = c
                rem = rem - UniPoly.monomial(target, c)
            else:
                qs = adjoint_apply(L, UniPoly.monomial(s))
                coef = c / qs.lc
                cs[s] = coef
                rem = rem - qs.scale(coef)
    return ReductionResult(cs, kept, rem, d)


# -- telescoped sums --------------------------------------------------------

def _add_term(table, offset, shift, poly):
    if poly.is_zero():
        return
    row = table.setdefault(offset, {})
    acc = row.get(shift, UniPoly()) + poly
    if acc.is_zero():
        row.pop(shift, None)
        if not row:
            table.pop(offset)
    else:
        row[shift] = acc


@dataclass(frozen=True)
class SumClosedForm:
    """sum_{k=0}^{n-1} L*(p)(k) F(k) = C0 + sum_o sum_j c_oj(n) p(n-j) F(n+o).

    ``boundary`` maps an offset o to {shift j: c_oj}; ``constant`` maps a
    shift j to the coefficient of p(-j) in C0.  The form is symbolic in p;
    ``p`` records a concrete polynomial when one was supplied.  The identity
    holds for n >= ``valid_from``.
    """

    operator: RecOperator
    boundary: dict
    constant: dict
    p: UniPoly | None = None
    valid_from: int = 0
    normalized: bool = False
    notes: tuple = field(default=())

    def _p(self, p):
        p = p if p is not None else self.p
        if p is None:
            raise ValueError("no polynomial p given and the form is symbolic")
        return p

    def constant_value(self, p=None) -> Fraction:
        p = self._p(p)
        return sum((c * p(-j) for j, c in self.constant.items()), Fraction(0))

    def instantiate(self, p=None) -> dict:
        """Offset -> polynomial coefficient of F(n + offset) for concrete p."""
        p = self._p(p)
        out = {}
        for o, row in self.boundary.items():
            acc = UniPoly()
            for j, c in row.items():
                acc = acc + c * p.shift(-j)
            out[o] = acc
        return out

    def rhs(self, values, n: int, p=None) -> Fraction:
        """Right-hand side at n, reading F from indexable ``values``."""
        p = self._p(p)
        total = self.constant_value(p)
        for o, row in self.boundary.items():
            for j, c in row.items():
                total += c(n) * p(n - j) * values[n + o]
        return total

    def lhs(self, values, n: int, p=None) -> Fraction:
        p = self._p(p)
        q = adjoint_apply(self.operator, p)
        return sum((q(k) * values[k] for k in range(n)), Fraction(0))

    def common_factor(self) -> UniPoly:
        """Monic gcd of all boundary coefficients (1 if there are none)."""
        g = None
        for row in self.boundary.values():
            for c in row.values():
                g = c.monic() if g is None else poly_gcd(g, c)
        return g if g is not None else UniPoly.constant(1)

    def render(self, pname: str = "p", fname: str = "F") -> str:
        var = self.operator.var
        g = self.common_factor()
        terms = []
        for o in sorted(self.boundary):
            for j in sorted(self.boundary[o]):
                inner = self.boundary[o][j].exact_div(g)
                shift = _fmt_arg(var, -j)
                farg = _fmt_arg(var, o)
                terms.append((inner, f"{pname}({shift})*{fname}({farg})"))
        # pull the sign of the first term out with the common factor
        if terms and terms[0][0].lc < 0:
            g = -g
            terms = [(-c, t) for c, t in terms]
        body = ""
        for c, t in terms:
            if c.degree == 0:
                a = c.coeffs[0]
                piece = t if abs(a) == 1 else f"{abs(a)}*{t}"
                sign = "-" if a < 0 else "+"
            else:
                piece = f"({format_poly(c, var)})*{t}"
                sign = "+"
            body += (sign if body or sign == "-" else "") + piece
        c0 = self.constant
        if g == UniPoly.constant(1):
            head = body or "0"
        elif g == UniPoly.constant(-1):
            head = f"-({body})"
        else:
            gs = format_poly(g, var)
            if g.degree > 0 and len([x for x in g.coeffs if x]) > 1:
                gs = f"({gs})" if not gs.startswith("-") else f"-({format_poly(-g, var)})"
            head = f"{gs}*({body})"
        if c0:
            consts = ""
            for j, c in sorted(c0.items()):
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                sign = "-" if c < 0 else ("+" if consts else "")
                consts += f"{sign}{mag}{pname}({-j})"
            if head != "0":
                head = consts + (head if head.startswith("-") else "+" + head)
            else:
                head = consts
        return head


def _fmt_arg(var, o):
    if o == 0:
        return var
    return f"{var}{'+' if o > 0 else '-'}{abs(o)}"


def telescoped_sum(L: RecOperator, p: UniPoly | None, initial) -> SumClosedForm:
    """Closed form of sum_{k<n} L*(p)(k) F(k) from the certificate of L.

    ``initial`` holds F(0..J-1); the constant C0 = sum_i u_i(0) F(i) is
    stored as a linear form in p(-1), ..., p(-J) so the result stays valid
    for every p.
    """
    J = L.order
    if len(initial) < J:
        raise ValueError(f"need F(0..{J - 1}): {J} initial values, got {len(initial)}")
    shifts = certificate_shifts(L)
    boundary, constant = {}, {}
    for i, row in enumerate(shifts):
        for j, c in row.items():
            _add_term(boundary, i, j, -c)
            v = c(0) * Fraction(initial[i])
            if v != 0:
                constant[j] = constant.get(j, Fraction(0)) + v
    constant = {j: c for j, c in constant.items() if c != 0}
    return SumClosedForm(L, boundary, constant, p)


class WindowNormalizationError(ArithmeticError):
    """Substitution left a non-polynomial coefficient; ``form`` is unchanged."""

    def __init__(self, message, form):
        super().__init__(message)
        self.form = form


def normalize_window(form: SumClosedForm, L: RecOperator | None = None) -> SumClosedForm:
    """Rewrite F(n+1) through the recurrence so only F(n-1), F(n) remain.

    Uses a_0(n-1)F(n-1) + a_1(n-1)F(n) + a_2(n-1)F(n+1) = 0, valid for
    n >= 1.  Order-2 operators only.
    """
    L = L or form.operator
    if L.order != 2:
        raise ValueError("window normalization is implemented for order-2 operators only")
    a0, a1, a2 = (c.shift(-1) for c in L.coeffs)
    boundary = {o: dict(row) for o, row in form.boundary.items()}
    top = boundary.pop(1, {})
    for j, c in top.items():
        num0, num1 = -c * a0, -c * a1
        q0, r0 = divmod(num0, a2)
        q1, r1 = divmod(num1, a2)
        if r0 or r1:
            raise WindowNormalizationError(
                f"coefficient of p(n-{j}) is not polynomial after substitution", form)
        _add_term(boundary, -1, j, q0)
        _add_term(boundary, 0, j, q1)
    return SumClosedForm(form.operator, boundary, dict(form.constant), form.p,
                         max(form.valid_from, 1), True, form.notes)

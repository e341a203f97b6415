"""Generating new series identities from a seed identity.

A seed says sum_n W(n) F(n) = lambda * kappa.  For a polynomial P we look
for Q and c with P*Q - c*W in the span of L*(n^0), ..., L*(n^deg P); every
such element sums to zero against F, so sum P Q F = c * lambda * kappa.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .linalg import nullspace
from .operators import RecOperator, adjoint_apply, degree_data
from .poly import UniPoly, format_poly, poly_parse
from .reduction import reduce

KINDS = ("rational_over_pi", "sqrt_alpha_over_pi", "rational_constant")

# attached to every generated identity
NOTES = (
    "the finite-n identity is exact; the limit n -> infinity is checked numerically only",
    "minimality of the operator order is assumed, not checked",
)


class DegenerateOperatorError(ValueError):
    """Generation is only defined for operators with R_L empty."""


class NoSolutionError(ArithmeticError):
    """The linear system has no solution with Q nonzero."""


def format_constant(value: Fraction, alpha: int = 1, kind: str = "rational_over_pi") -> str:
    """Render value*kappa, e.g. 4/(3*pi) or -122626206796*sqrt(95)/(625*pi)."""
    value = Fraction(value)
    if kind == "rational_constant":
        return str(value)
    if kind not in KINDS:
        raise ValueError(f"unknown constant kind {kind!r}")
    num, den = value.numerator, value.denominator
    if num == 0:
        return "0"
    if kind == "sqrt_alpha_over_pi":
        root = f"sqrt({alpha})"
        top = root if abs(num) == 1 else f"{abs(num)}*{root}"
    else:
        top = str(abs(num))
    sign = "-" if num < 0 else ""
    bottom = "pi" if den == 1 else f"({den}*pi)"
    return f"{sign}{top}/{bottom}"


@dataclass(frozen=True)
class SeedIdentity:
    operator: RecOperator
    weight: UniPoly
    lam: Fraction
    alpha: int = 1
    kind: str = "rational_over_pi"
    sequence: str | None = None
    label: str = "F(n)"

    def __post_init__(self):
        if self.weight.is_zero():
            raise ValueError("seed weight must be nonzero")
        if self.kind not in KINDS:
            raise ValueError(f"unknown constant kind {self.kind!r}")
        if self.alpha < 1:
            raise ValueError("alpha must be a positive integer")
        if self.kind != "sqrt_alpha_over_pi" and self.alpha != 1:
            raise ValueError(f"kind {self.kind!r} requires alpha = 1")
        object.__setattr__(self, "lam", Fraction(self.lam))

    def target(self) -> str:
        return format_constant(self.lam, self.alpha, self.kind)

    @classmethod
    def from_json(cls, data) -> "SeedIdentity":
        from .sequences import get_sequence

        if isinstance(data, str):
            data = json.loads(data)
        seq_name = data.get("sequence")
        op = data.get("operator")
        if isinstance(op, dict):
            operator = RecOperator.from_json(op)
        elif seq_name is not None:
            operator = get_sequence(seq_name).operator
        else:
            raise ValueError("seed needs an operator or a catalog sequence")
        label = data.get("label") or (get_sequence(seq_name).label if seq_name else "F(n)")
        return cls(
            operator=operator,
            weight=poly_parse(str(data["weight"]), operator.var),
            lam=Fraction(str(data["lambda"])),
            alpha=int(data.get("alpha", 1)),
            kind=data.get("kind", "rational_over_pi"),
            sequence=seq_name,
            label=label,
        )

    def to_json(self) -> dict:
        out = {
            "operator": self.operator.to_json(),
            "weight": format_poly(self.weight, self.operator.var),
            "lambda": str(self.lam),
            "alpha": self.alpha,
            "kind": self.kind,
        }
        if self.sequence:
            out["sequence"] = self.sequence
        return out


@dataclass(frozen=True)
class NewIdentity:
    """sum P(n) Q(n) F(n) = c * (seed constant).

    ``cs[s]`` is the coefficient of L*(n^s) in P*Q - c*W.
    """

    P: UniPoly
    Q: UniPoly
    c: Fraction
    cs: dict
    seed: SeedIdentity
    nullity: int = 1
    notes: tuple = field(default=())

    @property
    def weight(self) -> UniPoly:
        return self.P * self.Q

    @property
    def normalized_weight(self) -> UniPoly:
        return self.weight.primitive()[1]

    @property
    def constant(self) -> Fraction:
        return self.c * self.seed.lam

    def target(self) -> str:
        return format_constant(self.constant, self.seed.alpha, self.seed.kind)

    def verify_membership(self) -> bool:
        """P*Q - c*W reduces to zero against L, independently of the solver."""
        r = reduce(self.seed.operator, self.weight - self.seed.weight.scale(self.c))
        return r.residual.is_zero() and not r.kept

    def render(self) -> str:
        var = self.seed.operator.var
        w = format_poly(self.weight, var, compact=True)
        return f"sum_{{{var}>=0}} ({w}) * {self.seed.label} = {self.target()}"

    def to_json(self) -> dict:
        var = self.seed.operator.var
        return {
            "P": format_poly(self.P, var),
            "Q": format_poly(self.Q, var),
            "c": str(self.c),
            "cs": {str(s): str(v) for s, v in sorted(self.cs.items())},
            "weight": format_poly(self.weight, var),
            "constant": self.target(),
            "nullity": self.nullity,
            "rendering": self.render(),
            "notes": list(self.notes),
        }


def _bitsize(vec):
    return sum(x.numerator.bit_length() + x.denominator.bit_length() for x in vec)


def identity_system(seed: SeedIdentity, P: UniPoly, qdeg: int):
    """Coefficient rows of P*Q - c*W - sum_s c_s L*(n^s) = 0.

    Unknowns are ordered (e_0..e_qdeg, c, c_0..c_l); returns (rows, ncols).
    """
    L = seed.operator
    ell = P.degree
    qs = [adjoint_apply(L, UniPoly.monomial(s)) for s in range(ell + 1)]
    W = seed.weight
    top = max([ell + qdeg, W.degree] + [q.degree for q in qs if not q.is_zero()])
    ne = qdeg + 1
    rows = []
    for k in range(top + 1):
        row = [P[k - i] if k - i >= 0 else Fraction(0) for i in range(ne)]
        row.append(-W[k])
        row.extend(-q[k] for q in qs)
        rows.append(row)
    return rows, ne + 1 + ell + 1


def generate(seed: SeedIdentity, P: UniPoly, qdeg: int | None = None) -> NewIdentity:
    """Solve P*Q = c*W + sum_{s<=deg P} c_s L*(n^s) for (Q, c, c_s).

    ``qdeg`` defaults to d - 1 from the degree analysis of the seed's
    operator.  The solution is scaled so that c = 1 whenever c can be
    nonzero.
    """
    L = seed.operator
    if P.degree < 1:
        raise ValueError("P must be nonconstant")
    dd = degree_data(L)
    if dd.degenerated:
        raise DegenerateOperatorError(
            f"operator is degenerated (R_L = {sorted(dd.roots)}); generation is not supported")
    ell = P.degree
    if qdeg is None:
        qdeg = max(dd.d - 1, 0)
    ne = qdeg + 1
    rows, nunk = identity_system(seed, P, qdeg)
    basis = nullspace(rows, nunk)
    cands = [v for v in basis if any(v[:ne])]
    if not cands:
        raise NoSolutionError(f"no solution with nonzero Q for P = {format_poly(P, L.var)}")

    def key(v):
        scaled = _normalized_vector(v, ne)
        return (v[ne] == 0, _bitsize(scaled))

    best = min(cands, key=key)
    if best[ne] == 0:
        for w in basis:
            if w[ne] != 0:
                best = [x + y for x, y in zip(best, w)]
                break
    if best[ne] != 0:
        inv = 1 / best[ne]
        best = [x * inv for x in best]
    Q = UniPoly(best[:ne])
    c = best[ne]
    cs = {s: best[ne + 1 + s] for s in range(ell + 1)}
    return NewIdentity(P, Q, c, cs, seed, nullity=len(basis), notes=NOTES)


def _normalized_vector(v, ne):
    Q = UniPoly(v[:ne])
    content, _ = Q.primitive()
    return [x / content for x in v]


def normalize_identity(ident: NewIdentity) -> NewIdentity:
    """Scale so that P*Q is integral, primitive, with positive leading coefficient."""
    content, _ = ident.weight.primitive()
    if content == 1:
        return ident
    t = 1 / content
    return replace(
        ident,
        Q=ident.Q.scale(t),
        c=ident.c * t,
        cs={s: v * t for s, v in ident.cs.items()},
    )

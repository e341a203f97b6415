"""Exact rationals and dense univariate polynomials over Q.

Rationals are ``fractions.Fraction`` (exported as ``Rational``); they already
keep numerator and denominator coprime with a positive denominator.
``UniPoly`` stores its coefficients lowest degree first and never keeps
trailing zeros, so the zero polynomial is the empty tuple and its degree is
``NEG_INF``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt, lcm
from numbers import Rational as _RationalABC

from .kernels import int_poly_mul, int_taylor_shift

Rational = Fraction

#: degree of the zero polynomial; compares below every integer
NEG_INF = float("-inf")


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class UniPoly:
    """Immutable dense polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs):
        # coeffs: list of Fraction, may carry trailing zeros
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        if k < 0:
            raise ValueError("monomial exponent must be nonnegative")
        return cls([0] * k + [c])

    @classmethod
    def from_ints(cls, nums, den=1) -> "UniPoly":
        return cls._raw([Fraction(x, den) for x in nums])

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- integer views used by the kernels ----------------------------------

    def integer_form(self):
        """Return (nums, den) with self == nums/den and nums integral."""
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        return [c.numerator * (den // c.denominator) for c in self.coeffs], den

    def primitive(self):
        """Return (content, prim) with prim integral, primitive, positive lc."""
        if not self.coeffs:
            return Fraction(0), self
        nums, den = self.integer_form()
        g = 0
        for x in nums:
            g = gcd(g, x)
        if nums[-1] < 0:
            g = -g
        return Fraction(g, den), UniPoly.from_ints([x // g for x in nums])

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "UniPoly":
        c = to_rational(c)
        if c == 0:
            return UniPoly()
        return UniPoly._raw([c * x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        if len(self.coeffs) == 1:
            return other.scale(self.coeffs[0])
        if len(other.coeffs) == 1:
            return self.scale(other.coeffs[0])
        na, da = self.integer_form()
        nb, db = other.integer_form()
        return UniPoly.from_ints(int_poly_mul(na, nb), da * db)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = UniPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, a: int) -> "UniPoly":
        """p(n + a) for an integer a."""
        if not isinstance(a, int):
            raise TypeError("shift amount must be an integer")
        if a == 0 or len(self.coeffs) < 2:
            return self
        nums, den = self.integer_form()
        return UniPoly.from_ints(int_taylor_shift(nums, a), den)

    def __call__(self, x):
        acc = Fraction(0)
        x = to_rational(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv = 1 / other.coeffs[-1]
        if len(rem) - 1 < db:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            q = rem[i] * inv
            if q == 0:
                continue
            quot[i - db] = q
            for j, c in enumerate(other.coeffs):
                rem[i - db + j] -= q * c
        return UniPoly._raw(quot), UniPoly._raw(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self.scale(1 / self.coeffs[-1])


N = UniPoly((0, 1))
ONE = UniPoly((1,))
ZERO = UniPoly()


# -- formatting -------------------------------------------------------------

def format_poly(p: UniPoly, var: str = "n", compact: bool = False) -> str:
    """Render in parse-compatible syntax, highest power first.

    ``compact`` drops the ``*`` between a coefficient and the variable.
    """
    if not p.coeffs:
        return "0"
    star = "" if compact else "*"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if a == 1:
                body = mono
            elif a.denominator == 1 or not compact:
                body = f"{a}{star}{mono}"
            else:
                body = f"({a}){mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


# -- parsing ----------------------------------------------------------------

class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "" and m.end() == len(text):
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, var):
        self.text = text
        self.var = var
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(message, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op[0] == "*":
                p = p * q
            else:
                if q.degree != 0:
                    self.fail("division only by a nonzero constant", op)
                p = p.scale(1 / q.coeffs[0])
        return p

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                self.fail("negative exponent")
            if tok[0] != "int":
                self.fail("exponent must be a nonnegative integer literal")
            self.take()
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind = tok[0]
        if kind == "int":
            return UniPoly.constant(tok[1])
        if kind == "ident":
            if tok[1] != self.var:
                self.fail(f"unknown variable {tok[1]!r} (expected {self.var!r})", tok)
            return N
        if kind == "(":
            p = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
            return p
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {tok[1]!r}", tok)


def poly_parse(text: str, var: str = "n") -> UniPoly:
    """Parse integer/rational polynomial text in one variable and expand it.

    >>> poly_parse("(n+1)^3").coeffs == (1, 3, 3, 1)
    True
    """
    return _Parser(text, var).parse()


# -- gcd, roots, resultants -------------------------------------------------

def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd; raises ValueError when both inputs are zero."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def _ceil_root(c, lead, k):
    """Smallest integer t >= 0 with t**k * lead >= c."""
    lo, hi = 0, 1 << (c.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k * lead >= c:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _root_bound(nums):
    """Fujiwara bound on |root| for an integer coefficient list."""
    lead = abs(nums[-1])
    m = len(nums) - 1
    best = 0
    for k in range(1, m + 1):
        c = abs(nums[m - k])
        if c:
            best = max(best, _ceil_root(c, lead, k))
    return 2 * best


def _divisors_up_to(c, bound):
    c = abs(c)
    out = set()
    if bound <= isqrt(c):
        for d in range(1, bound + 1):
            if c % d == 0:
                out.add(d)
        return out
    for d in range(1, isqrt(c) + 1):
        if c % d == 0:
            if d <= bound:
                out.add(d)
            if c // d <= bound:
                out.add(c // d)
    return out


def integer_roots(p: UniPoly) -> set:
    """All integer roots of a nonzero polynomial (multiplicity ignored)."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    nums, _ = p.integer_form()
    roots = set()
    low = 0
    while nums[low] == 0:
        low += 1
    if low:
        roots.add(0)
    nums = nums[low:]
    if len(nums) == 1:
        return roots
    bound = _root_bound(nums)
    for d in _divisors_up_to(nums[0], bound):
        for r in (d, -d):
            acc = 0
            for c in reversed(nums):
                acc = acc * r + c
            if acc == 0:
                roots.add(r)
    return roots


def _shifted_coeffs_in_i(b: UniPoly):
    """Coefficients (as polynomials in i) of b(n+i) viewed in n."""
    from math import comb

    deg = len(b.coeffs) - 1
    out = []
    for t in range(deg + 1):
        cs = [Fraction(0)] * (deg - t + 1)
        for j in range(t, deg + 1):
            cs[j - t] += b.coeffs[j] * comb(j, t)
        out.append(UniPoly._raw(cs))
    return out


def bareiss_det(matrix):
    """Fraction-free determinant of a square matrix of UniPoly entries."""
    m = [list(row) for row in matrix]
    size = len(m)
    if size == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(size - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, size):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = m[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = ZERO
        prev = pivot
    det = m[size - 1][size - 1]
    return -det if sign < 0 else det


def shift_resultant(a: UniPoly, b: UniPoly) -> UniPoly:
    """R(i) = Res_n(a(n), b(n+i)) as a polynomial in i."""
    da, db = a.degree, b.degree
    a_desc = [UniPoly.constant(c) for c in reversed(a.coeffs)]
    b_desc = list(reversed(_shifted_coeffs_in_i(b)))
    size = da + db
    rows = []
    for r in range(db):
        rows.append([ZERO] * r + a_desc + [ZERO] * (size - r - da - 1))
    for r in range(da):
        rows.append([ZERO] * r + b_desc + [ZERO] * (size - r - db - 1))
    return bareiss_det(rows)


def dispersion(a: UniPoly, b: UniPoly) -> set:
    """Nonnegative integers i with gcd(a(n), b(n+i)) nonconstant."""
    if a.is_zero() or b.is_zero():
        raise ValueError("dispersion needs nonzero polynomials")
    if a.degree == 0 or b.degree == 0:
        return set()
    res = shift_resultant(a, b)
    return {i for i in integer_roots(res) if i >= 0}

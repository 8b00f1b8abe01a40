"""Exact arithmetic in K = Q(sqrt3)(d).

``d`` is a formal unit (transcendental over Q(sqrt3)) and the star-involution
sends ``d -> 1/d`` while fixing Q(sqrt3).  Three layers:

* :class:`QSqrt3` -- ``(a + b*sqrt3)/c`` with integers, lowest terms, ``c > 0``.
* :class:`LaurentPoly` -- finitely supported ``{exponent: QSqrt3}``.
* :class:`Scalar` -- reduced fraction of Laurent polynomials.

Everything is immutable.  The canonical form of a :class:`Scalar` makes
equality syntactic: the denominator has minimal exponent 0 and is monic, and
``gcd(num, den) = 1``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

SQRT3 = math.sqrt(3.0)


class QSqrt3:
    """Element ``(a + b*sqrt3)/c`` of Q(sqrt3)."""

    __slots__ = ("a", "b", "c", "_hash")

    def __init__(self, a: int = 0, b: int = 0, c: int = 1, _normalized: bool = False):
        if not _normalized:
            if c == 0:
                raise ZeroDivisionError("QSqrt3 with zero denominator")
            if c < 0:
                a, b, c = -a, -b, -c
            g = math.gcd(math.gcd(a, b), c)
            if g > 1:
                a //= g
                b //= g
                c //= g
            if a == 0 and b == 0:
                c = 1
        self.a = a
        self.b = b
        self.c = c
        self._hash = None

    @classmethod
    def from_rational(cls, q) -> "QSqrt3":
        q = Fraction(q)
        return cls(q.numerator, 0, q.denominator, _normalized=True)

    @property
    def rational(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def surd(self) -> Fraction:
        return Fraction(self.b, self.c)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0 and self.c == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, QSqrt3):
            return self.a == other.a and self.b == other.b and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and Fraction(self.a, self.c) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.a, self.b, self.c))
        return self._hash

    def __neg__(self) -> "QSqrt3":
        return QSqrt3(-self.a, -self.b, self.c, _normalized=True)

    def __add__(self, other: "QSqrt3") -> "QSqrt3":
        if self.c == 1 and other.c == 1:
            return QSqrt3(self.a + other.a, self.b + other.b, 1, _normalized=True)
        c1, c2 = self.c, other.c
        return QSqrt3(self.a * c2 + other.a * c1, self.b * c2 + other.b * c1, c1 * c2)

    def __sub__(self, other: "QSqrt3") -> "QSqrt3":
        if self.c == 1 and other.c == 1:
            return QSqrt3(self.a - other.a, self.b - other.b, 1, _normalized=True)
        return self + (-other)

    def __mul__(self, other: "QSqrt3") -> "QSqrt3":
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        if b1 == 0 and b2 == 0:
            a, b = a1 * a2, 0
        else:
            a, b = a1 * a2 + 3 * b1 * b2, a1 * b2 + a2 * b1
        c = self.c * other.c
        if c == 1:
            return QSqrt3(a, b, 1, _normalized=True)
        return QSqrt3(a, b, c)

    def inverse(self) -> "QSqrt3":
        norm = self.a * self.a - 3 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt3)")
        return QSqrt3(self.c * self.a, -self.c * self.b, norm)

    def __truediv__(self, other: "QSqrt3") -> "QSqrt3":
        return self * other.inverse()

    def sign_key(self) -> Tuple[int, int]:
        """Signs of the rational and surd parts, used for normalization."""
        return ((self.a > 0) - (self.a < 0), (self.b > 0) - (self.b < 0))

    def __complex__(self) -> complex:
        return complex(self.to_float())

    def to_float(self) -> float:
        return (self.a + self.b * SQRT3) / self.c

    def __repr__(self) -> str:
        return f"QSqrt3({format_qsqrt3(self)})"


QZERO = QSqrt3(0, 0, 1, _normalized=True)
QONE = QSqrt3(1, 0, 1, _normalized=True)
QSQRT3 = QSqrt3(0, 1, 1, _normalized=True)


def _q(value) -> QSqrt3:
    if isinstance(value, QSqrt3):
        return value
    if isinstance(value, int):
        return QSqrt3(value, 0, 1, _normalized=True)
    return QSqrt3.from_rational(value)


class LaurentPoly:
    """Laurent polynomial in ``d`` with Q(sqrt3) coefficients.

    ``terms`` must not be mutated after construction; zero coefficients are
    never stored.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, QSqrt3] | None = None, _clean: bool = False):
        if terms is None:
            terms = {}
        elif not _clean:
            terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.terms: Dict[int, QSqrt3] = terms
        self._hash = None

    @classmethod
    def monomial(cls, coeff, exp: int = 0) -> "LaurentPoly":
        c = _q(coeff)
        if c.is_zero():
            return cls({}, _clean=True)
        return cls({exp: c}, _clean=True)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and 0 in self.terms and self.terms[0].is_one()

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def leading(self) -> QSqrt3:
        return self.terms[self.max_exp()]

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()}, _clean=True)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return LaurentPoly(out, _clean=True)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = -c
            else:
                s = prev - c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return LaurentPoly(out, _clean=True)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms or not other.terms:
            return LaurentPoly({}, _clean=True)
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            if c2.is_one():
                return self.shift(e2)
            return LaurentPoly({e + e2: c * c2 for e, c in self.terms.items()}, _clean=True)
        if len(self.terms) == 1:
            return other * self
        out: Dict[int, QSqrt3] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                p = c1 * c2
                prev = out.get(e)
                out[e] = p if prev is None else prev + p
        return LaurentPoly(out)

    def scale(self, c: QSqrt3) -> "LaurentPoly":
        if c.is_zero():
            return LaurentPoly({}, _clean=True)
        if c.is_one():
            return self
        return LaurentPoly({e: x * c for e, x in self.terms.items()}, _clean=True)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``d**k``."""
        if k == 0:
            return self
        return LaurentPoly({e + k: c for e, c in self.terms.items()}, _clean=True)

    def conj(self) -> "LaurentPoly":
        return LaurentPoly({-e: c for e, c in self.terms.items()}, _clean=True)

    def dense(self) -> Tuple[int, List[QSqrt3]]:
        """Return ``(min_exp, coeffs)`` with ``coeffs[i]`` the coefficient of ``d**(min_exp+i)``."""
        lo, hi = self.min_exp(), self.max_exp()
        return lo, [self.terms.get(e, QZERO) for e in range(lo, hi + 1)]

    @classmethod
    def from_dense(cls, lo: int, coeffs: Iterable[QSqrt3]) -> "LaurentPoly":
        return cls({lo + i: c for i, c in enumerate(coeffs)})

    def evaluate(self, z: complex, powers=None) -> complex:
        total = 0j
        for e, c in self.terms.items():
            zp = powers(e) if powers is not None else z ** e
            total += c.to_float() * zp
        return total

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)})"


def _poly_divmod(num: List[QSqrt3], den: List[QSqrt3]) -> Tuple[List[QSqrt3], List[QSqrt3]]:
    # dense, low-to-high, den has nonzero leading coefficient
    num = list(num)
    dn = len(den) - 1
    inv_lead = den[-1].inverse()
    if len(num) - 1 < dn:
        return [], num
    quot = [QZERO] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c.is_zero():
            continue
        f = c * inv_lead
        quot[i - dn] = f
        for j in range(dn + 1):
            num[i - dn + j] = num[i - dn + j] - f * den[j]
    rem = num[:dn]
    while rem and rem[-1].is_zero():
        rem.pop()
    return quot, rem


def _strip(p: List[QSqrt3]) -> List[QSqrt3]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _poly_gcd(a: List[QSqrt3], b: List[QSqrt3]) -> List[QSqrt3]:
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    inv = a[-1].inverse()
    return [c * inv for c in a]


def poly_gcd(x: LaurentPoly, y: LaurentPoly) -> LaurentPoly:
    """Monic gcd with minimal exponent 0 (d-powers are units)."""
    if x.is_zero():
        return y
    if y.is_zero():
        return x
    _, dx = x.dense()
    _, dy = y.dense()
    return LaurentPoly.from_dense(0, _poly_gcd(dx, dy))


def exact_divide(x: LaurentPoly, y: LaurentPoly) -> LaurentPoly:
    """Quotient ``x / y`` in the Laurent ring; raises if it is not exact."""
    if y.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if x.is_zero():
        return x
    if len(y.terms) == 1:
        (e, c), = y.terms.items()
        inv = c.inverse()
        return LaurentPoly({k - e: v * inv for k, v in x.terms.items()}, _clean=True)
    lx, dx = x.dense()
    ly, dy = y.dense()
    q, r = _poly_divmod(dx, dy)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return LaurentPoly.from_dense(lx - ly, q)


PZERO = LaurentPoly({}, _clean=True)
PONE = LaurentPoly({0: QONE}, _clean=True)


class Scalar:
    """Element of K as a canonical reduced fraction ``num / den``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = PONE, _canonical: bool = False):
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def of(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, LaurentPoly):
            return cls(value, PONE, _canonical=True)
        return cls(LaurentPoly.monomial(_q(value), 0), PONE, _canonical=True)

    @classmethod
    def d_power(cls, k: int, coeff=1) -> "Scalar":
        return cls(LaurentPoly.monomial(_q(coeff), k), PONE, _canonical=True)

    @classmethod
    def sqrt3(cls) -> "Scalar":
        return cls(LaurentPoly({0: QSQRT3}, _clean=True), PONE, _canonical=True)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction, QSqrt3, LaurentPoly)):
                other = Scalar.of(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def complexity(self) -> int:
        """Number of Laurent terms; used as the pivot-selection cost."""
        return len(self.num.terms) + len(self.den.terms)

    # arithmetic ---------------------------------------------------------
    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den, _canonical=True)

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num + other.num, PONE, _canonical=True)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num - other.num, PONE, _canonical=True)
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return _coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num.terms or not other.num.terms:
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num * other.num, PONE, _canonical=True)
        if other.den.is_one() and other.num.is_monomial():
            (e, c), = other.num.terms.items()
            if c.is_one():
                return self.shift(e)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        if self.is_zero():
            return ZERO
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "Scalar":
        return _coerce(other) / self

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "Scalar":
        """Multiply by ``d**k`` (cheap, stays canonical)."""
        if k == 0 or not self.num.terms:
            return self
        return Scalar(self.num.shift(k), self.den, _canonical=True)

    def conj(self) -> "Scalar":
        """Star-involution: ``d -> 1/d``, fixes Q(sqrt3)."""
        if self.den.is_one():
            return Scalar(self.num.conj(), PONE, _canonical=True)
        return Scalar(self.num.conj(), self.den.conj())

    # numerics -----------------------------------------------------------
    def eval_numeric(self, theta: float) -> complex:
        return eval_numeric(self, theta)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)})"

    def __str__(self) -> str:
        return format_scalar(self)


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, QSqrt3, LaurentPoly)):
        return Scalar.of(value)
    return NotImplemented


def _canonicalize(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("Scalar with zero denominator")
    if num.is_zero():
        return PZERO, PONE
    if len(den.terms) > 1:
        if len(num.terms) > 1:
            g = poly_gcd(num, den)
            if len(g.terms) > 1:
                num = exact_divide(num, g)
                den = exact_divide(den, g)
    if len(den.terms) == 1:
        (e, c), = den.terms.items()
        return LaurentPoly({k - e: v / c for k, v in num.terms.items()}, _clean=True), PONE
    lo = den.min_exp()
    inv = den.leading().inverse()
    num = LaurentPoly({k - lo: v * inv for k, v in num.terms.items()}, _clean=True)
    den = LaurentPoly({k - lo: v * inv for k, v in den.terms.items()}, _clean=True)
    return num, den


ZERO = Scalar(PZERO, PONE, _canonical=True)
ONE = Scalar(PONE, PONE, _canonical=True)
D = Scalar.d_power(1)
SQRT3_SCALAR = Scalar.sqrt3()


def field_op(op: str, x: Scalar, y: Scalar) -> Scalar:
    """Single entry point for ``add``/``sub``/``mul``/``div``."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown field operation {op!r}")


def conj(x: Scalar) -> Scalar:
    return x.conj()


# numeric evaluation -------------------------------------------------------

class PoleError(ZeroDivisionError):
    """Raised when a denominator vanishes at the requested ``theta``."""


def d_numeric(theta: float, k: int = 1) -> complex:
    return cmath.exp(2j * math.pi * theta * k)


def eval_numeric(x: Scalar, theta: float, pole_tol: float = 1e-12) -> complex:
    """Substitute ``d = exp(2*pi*i*theta)`` and ``sqrt3 = 1.7320508...``.

    ``theta`` is assumed irrational; that is not checked.
    """
    def powers(e: int) -> complex:
        return d_numeric(theta, e)

    den = x.den.evaluate(0j, powers)
    scale = sum(abs(c.to_float()) for c in x.den.terms.values())
    if abs(den) <= pole_tol * max(scale, 1.0):
        raise PoleError(f"denominator vanishes at theta={theta!r}")
    return x.num.evaluate(0j, powers) / den


# text form ------------------------------------------------------------------

def _fmt_frac(n: int, c: int) -> str:
    return str(n) if c == 1 else f"{n}/{c}"


def format_qsqrt3(q: QSqrt3) -> str:
    if q.b == 0:
        return _fmt_frac(q.a, q.c)
    if q.a == 0:
        return f"{_fmt_frac(q.b, q.c)}*s3"
    g1, g2 = math.gcd(q.a, q.c), math.gcd(q.b, q.c)
    r = _fmt_frac(q.a // g1, q.c // g1)
    s = _fmt_frac(abs(q.b) // g2, q.c // g2)
    sign = "+" if q.b > 0 else "-"
    return f"({r} {sign} {s}*s3)"


def _fmt_term(c: QSqrt3, e: int) -> Tuple[str, str]:
    """Return ``(sign, body)`` for one Laurent term."""
    dpart = "" if e == 0 else ("d" if e == 1 else f"d^{e}")
    neg = False
    if c.b == 0 and c.a < 0:
        neg, c = True, -c
    elif c.a == 0 and c.b < 0:
        neg, c = True, -c
    if not dpart:
        body = format_qsqrt3(c)
        # a bare surd-only coefficient, e.g. "1/2*s3", reads fine unparenthesized
    elif c.is_one():
        body = dpart
    else:
        body = f"{format_qsqrt3(c)}*{dpart}"
    return ("-" if neg else "+"), body


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, e in enumerate(sorted(p.terms, reverse=True)):
        sign, body = _fmt_term(p.terms[e], e)
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def format_scalar(x: Scalar) -> str:
    if x.den.is_one():
        return format_poly(x.num)
    return f"({format_poly(x.num)}) / ({format_poly(x.den)})"


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`format_scalar` (accepts any expression over ``d`` and ``s3``)."""
    from .literals import parse_scalar_expr

    return parse_scalar_expr(text)

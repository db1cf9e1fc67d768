"""Exact rational functions in t: quotients of integer Laurent polynomials.

Canonical form makes equality structural: the denominator is an ordinary
polynomial with nonzero positive constant term, numerator and denominator
have no common polynomial factor, and the pair is content-normalized.  The
whole t-power of the value is carried by the numerator.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ZeroDenominator
from .polynomial import LaurentPolynomial, poly_gcd
from .series import RAT, TruncatedSeries, series_invert


def _as_poly(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial((x,))
    return None


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if num is None or den is None:
            raise TypeError("numerator/denominator must be integers or Laurent polynomials")
        if den.is_zero:
            raise ZeroDenominator("denominator is zero")
        if num.is_zero:
            self.num = LaurentPolynomial.zero()
            self.den = LaurentPolynomial.one()
            return
        # carry the whole t-power on the numerator
        num = num.shift(-den.val)
        den = den.shift(-den.val)
        w = num.val
        n0 = num.shift(-w)
        g = poly_gcd(n0, den)
        if g != 1:
            n0 = n0.divexact(g)
            den = den.divexact(g)
        c = gcd(n0.content(), den.content())
        if c > 1:
            n0 = LaurentPolynomial(tuple(x // c for x in n0.coeffs), n0.min_deg)
            den = LaurentPolynomial(tuple(x // c for x in den.coeffs), den.min_deg)
        if den.c(0) < 0:
            n0 = -n0
            den = -den
        self.num = n0.shift(w)
        self.den = den

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def one(cls):
        return cls(1)

    @classmethod
    def t(cls):
        return cls(LaurentPolynomial.t())

    @classmethod
    def from_fraction(cls, q: Fraction):
        return cls(q.numerator, q.denominator)

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def val(self):
        """Order of vanishing at t = 0; None for zero."""
        return None if self.is_zero else self.num.val

    def lowest_coeff(self) -> Fraction:
        """Leading coefficient of the expansion at t = 0."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.num.coeffs[0], self.den.c(0))

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, LaurentPolynomial)):
            return RationalFunction(other)
        if isinstance(other, Fraction):
            return RationalFunction(other.numerator, other.denominator)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        return out

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

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDenominator("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self):
        if self.is_zero:
            raise ZeroDenominator("zero rational function has no inverse")
        return RationalFunction(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def to_rf(x) -> RationalFunction:
    """Coerce an exact scalar or polynomial into the rational function field."""
    out = RationalFunction._coerce(x)
    if out is None:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return out


def rf_expand(r: RationalFunction, order: int) -> TruncatedSeries:
    """Laurent expansion of r at t = 0 mod t^order, over Q.

    The expansion starts at degree val(num) - val(den); the denominator is
    inverted as a power series, which is exact over Q.
    """
    if r.is_zero:
        return TruncatedSeries.zero(RAT, order)
    w = r.num.val
    if w >= order:
        return TruncatedSeries.zero(RAT, order)
    num = TruncatedSeries.from_polynomial(r.num.shift(-w), RAT).truncate(order - w)
    den = TruncatedSeries.from_polynomial(r.den, RAT).truncate(order - w)
    body = num * series_invert(den)
    return body.shift(w).truncate(order)

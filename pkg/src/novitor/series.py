"""Truncated Laurent series with exact coefficients over Z or Q.

A TruncatedSeries carries its own truncation order N: coefficients are known
exactly for every degree < N and unknown from t^N on.  Binary operations
propagate the weakest truncation: for a sum that is min(Na, Nb); for a
product it also accounts for the operands' valuations, since a factor of
valuation v pushes the other operand's unknown tail v degrees up.  Values
embedded from polynomials are exactly known and carry a sentinel order.

Negative degrees are allowed (Laurent range); contexts that need honest
power series (Witt vectors, formal exp/log) check the valuation themselves.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import (
    ConstantTermNotOne,
    NonzeroConstantTerm,
    NotAUnit,
    NotExactDivision,
    RingMismatch,
    ZeroSeries,
)
from .polynomial import LaurentPolynomial

INT = "Z"
RAT = "Q"

DEFAULT_ORDER = 16
# Sentinel order for values that are exactly known (embedded polynomials).
EXACT_ORDER = 1 << 60
_EXACT_FLOOR = EXACT_ORDER >> 1


def _clamp(order):
    return EXACT_ORDER if order >= _EXACT_FLOOR else order


def _check_coeff(ring, c):
    if ring == INT:
        if isinstance(c, int) and not isinstance(c, bool):
            return c
        if isinstance(c, Fraction) and c.denominator == 1:
            return int(c)
        raise RingMismatch(f"integer series cannot hold coefficient {c!r}")
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    raise RingMismatch(f"rational series cannot hold coefficient {c!r}")


class TruncatedSeries:
    __slots__ = ("ring", "min_deg", "coeffs", "order")

    def __init__(self, ring, coeffs=(), min_deg=0, order=DEFAULT_ORDER):
        if ring not in (INT, RAT):
            raise RingMismatch(f"unknown coefficient ring {ring!r}")
        order = _clamp(order)
        coeffs = [_check_coeff(ring, c) for c in coeffs]
        if min_deg >= order:
            coeffs = []
        elif min_deg + len(coeffs) > order:
            coeffs = coeffs[: order - min_deg]
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        self.ring = ring
        self.order = order
        if lo == hi:
            self.coeffs = ()
            self.min_deg = order
        else:
            self.coeffs = tuple(coeffs[lo:hi])
            self.min_deg = min_deg + lo

    @classmethod
    def zero(cls, ring=INT, order=DEFAULT_ORDER):
        return cls(ring, (), 0, order)

    @classmethod
    def one(cls, ring=INT, order=DEFAULT_ORDER):
        return cls(ring, (1,), 0, order)

    @classmethod
    def monomial(cls, c, d, ring=INT, order=DEFAULT_ORDER):
        return cls(ring, (c,), d, order)

    @classmethod
    def from_polynomial(cls, p: LaurentPolynomial, ring=INT, order=EXACT_ORDER):
        return cls(ring, p.coeffs, p.min_deg, order)

    @property
    def is_zero(self):
        """Zero modulo the truncation order."""
        return not self.coeffs

    @property
    def is_exact(self):
        return self.order >= _EXACT_FLOOR

    @property
    def val(self):
        """Valuation; for a series that is zero mod t^N this is N."""
        return self.min_deg

    @property
    def top_deg(self):
        """Degree just past the last stored coefficient."""
        return self.min_deg + len(self.coeffs)

    def c(self, d):
        """Coefficient at degree d (must be below the truncation order)."""
        if d >= self.order:
            raise ValueError(f"degree {d} is beyond the truncation O(t^{self.order})")
        i = d - self.min_deg
        if self.is_zero or i < 0 or i >= len(self.coeffs):
            return 0 if self.ring == INT else Fraction(0)
        return self.coeffs[i]

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.min_deg + i, c

    def truncate(self, n):
        """Reduce modulo t^n (cannot manufacture knowledge beyond the order)."""
        return TruncatedSeries(self.ring, self.coeffs, self.min_deg, min(n, self.order))

    def shift(self, k):
        """Multiply by t^k (exact; shifts the truncation window too)."""
        order = EXACT_ORDER if self.is_exact else self.order + k
        return TruncatedSeries(self.ring, self.coeffs, self.min_deg + k, order)

    def to_rat(self):
        if self.ring == RAT:
            return self
        return TruncatedSeries(RAT, self.coeffs, self.min_deg, self.order)

    def to_int(self):
        if self.ring == INT:
            return self
        if not is_integral(self):
            raise RingMismatch(f"series {self} has non-integer coefficients")
        return TruncatedSeries(INT, self.coeffs, self.min_deg, self.order)

    def to_polynomial(self) -> LaurentPolynomial:
        """The known coefficients as an exact Laurent polynomial."""
        return LaurentPolynomial(self.coeffs, self.min_deg)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.ring != self.ring:
                raise RingMismatch(f"series over {self.ring} mixed with series over {other.ring}")
            return other
        if isinstance(other, int) or (self.ring == RAT and isinstance(other, Fraction)):
            return TruncatedSeries(self.ring, (other,), 0, EXACT_ORDER)
        if isinstance(other, LaurentPolynomial):
            return TruncatedSeries.from_polynomial(other, self.ring)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        hi = min(order, max(self.top_deg, other.top_deg))
        lo = min(self.min_deg, other.min_deg, hi)
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            if self.min_deg + i < hi:
                out[self.min_deg - lo + i] += c
        for i, c in enumerate(other.coeffs):
            if other.min_deg + i < hi:
                out[other.min_deg - lo + i] += c
        return TruncatedSeries(self.ring, out, lo, order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, tuple(-c for c in self.coeffs), self.min_deg, self.order)

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
        order = _clamp(min(self.order + other.val, other.order + self.val))
        if self.is_zero or other.is_zero:
            return TruncatedSeries(self.ring, (), 0, order)
        lo = self.min_deg + other.min_deg
        width = len(self.coeffs) + len(other.coeffs) - 1
        if lo + width > order:
            width = order - lo
        out = [0] * width
        for i, a in enumerate(self.coeffs):
            if a and i < width:
                for j, b in enumerate(other.coeffs):
                    if i + j >= width:
                        break
                    if b:
                        out[i + j] += a * b
        return TruncatedSeries(self.ring, out, lo, order)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return series_invert(self ** (-n))
        out = TruncatedSeries.one(self.ring, EXACT_ORDER)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        """Equal iff every coefficient on the common known range agrees.

        Comparison is by value, so an integer series can equal a rational
        one; arithmetic, by contrast, refuses to mix the two rings.
        """
        if isinstance(other, TruncatedSeries) and other.ring != self.ring:
            other = other.to_rat()
            return other == self.to_rat()
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        hi = min(order, max(self.top_deg, other.top_deg))
        lo = min(self.min_deg, other.min_deg, hi)
        for d in range(lo, hi):
            if self.c(d) != other.c(d):
                return False
        return True

    __hash__ = None

    def __str__(self):
        parts = []
        for d, c in self.items():
            if d == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}t" if d == 1 else f"{mag}t^{d}"
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        tail = f"O(t^{self.order})" if not self.is_exact else ""
        if not parts:
            return tail if tail else "0"
        body = " ".join(parts)
        return f"{body} + {tail}" if tail else body

    def __repr__(self):
        return f"TruncatedSeries({self})"


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Exact sum, truncated at the weaker of the two orders."""
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Exact product mod t^min(Na + val b, Nb + val a)."""
    return a * b


def series_neg(a: TruncatedSeries) -> TruncatedSeries:
    return -a


def series_invert(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse mod the propagated truncation.

    The lowest coefficient must be a unit: +-1 over Z, any nonzero rational
    over Q.  For valuation v the result is known mod t^(N - 2v), so that
    s * result == 1 holds mod t^(N - v).
    """
    if s.is_zero:
        raise ZeroSeries("cannot invert a series that is zero mod its truncation")
    v = s.min_deg
    u = s.coeffs[0]
    if s.ring == INT and u not in (1, -1):
        raise NotAUnit(f"lowest coefficient {u} is not a unit of Z")
    if s.is_exact:
        if len(s.coeffs) == 1:
            inv0 = u if s.ring == INT else 1 / Fraction(u)
            return TruncatedSeries(s.ring, (inv0,), -v, EXACT_ORDER)
        raise ZeroSeries("truncate an exact polynomial before inverting it")
    n_known = s.order - v
    g = list(s.coeffs) + [0] * (n_known - len(s.coeffs))
    inv0 = u if s.ring == INT else 1 / Fraction(u)
    h = [inv0]
    for n in range(1, n_known):
        acc = 0
        for i in range(1, n + 1):
            gi = g[i] if i < len(g) else 0
            if gi:
                acc += gi * h[n - i]
        h.append(-inv0 * acc)
    return TruncatedSeries(s.ring, h, -v, s.order - 2 * v)


def series_divexact(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """a / b when the quotient stays in the coefficient ring.

    Used by fraction-free elimination.  Raises NotExactDivision when the
    quotient would need fractional coefficients or a lower valuation than
    the dividend supports.
    """
    if b.is_zero:
        raise NotExactDivision("division by a series that is zero mod its truncation")
    if a.ring != b.ring:
        raise RingMismatch("series rings differ in division")
    if a.is_exact and b.is_exact:
        return TruncatedSeries.from_polynomial(
            a.to_polynomial().divexact(b.to_polynomial()), a.ring
        )
    if a.is_zero:
        return TruncatedSeries(a.ring, (), 0, min(a.order, b.order) - b.val)
    if a.val < b.val:
        raise NotExactDivision("quotient would have lower valuation than the dividend allows")
    if b.ring == RAT or b.coeffs[0] in (1, -1):
        return a * series_invert(b.truncate(min(a.order, b.order)) if b.is_exact else b)
    va, vb = a.val, b.val
    n_known = min(a.order - va, b.order - vb)
    ga = [a.c(va + i) if va + i < a.order else 0 for i in range(n_known)]
    gb = [b.c(vb + i) if vb + i < b.order else 0 for i in range(n_known)]
    b0 = gb[0]
    q = []
    for n in range(n_known):
        acc = ga[n]
        for i in range(1, n + 1):
            if gb[i]:
                acc -= gb[i] * q[n - i]
        if acc % b0:
            raise NotExactDivision("quotient leaves Z[[t]]")
        q.append(acc // b0)
    return TruncatedSeries(a.ring, q, va - vb, va - vb + n_known)


def exp_eta(eta: TruncatedSeries, order=None) -> TruncatedSeries:
    """Formal exponential of a series with zero constant term.

    Single O(N^2) pass via e' = eta' * e, i.e.
    n*e_n = sum over 1 <= k <= n of k*eta_k*e_{n-k}.
    """
    eta = eta.to_rat()
    n = eta.order if order is None else min(order, eta.order)
    if n >= _EXACT_FLOOR:
        raise ValueError("specify a truncation order for the exponential")
    if not eta.is_zero and eta.min_deg < 1:
        raise NonzeroConstantTerm(f"exponential needs valuation >= 1, got valuation {eta.min_deg}")
    g = [Fraction(0)] * n
    for d, c in eta.items():
        if d < n:
            g[d] = c
    e = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for m in range(1, n):
        acc = Fraction(0)
        for k in range(1, m + 1):
            if g[k]:
                acc += k * g[k] * e[m - k]
        e[m] = acc / m
    return TruncatedSeries(RAT, e, 0, n)


def log_series(w: TruncatedSeries, order=None) -> TruncatedSeries:
    """Formal logarithm of a series with constant term 1.

    Single O(N^2) pass via w * (log w)' = w', i.e.
    n*l_n = n*c_n - sum over 1 <= k < n of k*l_k*c_{n-k}.
    """
    w = w.to_rat()
    n = w.order if order is None else min(order, w.order)
    if n >= _EXACT_FLOOR:
        raise ValueError("specify a truncation order for the logarithm")
    if w.is_zero or w.min_deg != 0 or w.coeffs[0] != 1:
        raise ConstantTermNotOne(f"logarithm needs constant term 1, got {w}")
    c = [Fraction(0)] * n
    for d, coeff in w.items():
        if d < n:
            c[d] = coeff
    l = [Fraction(0)] * n
    for m in range(1, n):
        acc = m * c[m]
        for k in range(1, m):
            if l[k] and c[m - k]:
                acc -= k * l[k] * c[m - k]
        l[m] = acc / m
    return TruncatedSeries(RAT, l, 0, n)


def is_integral(s: TruncatedSeries) -> bool:
    """True iff every known coefficient has denominator 1."""
    if s.ring == INT:
        return True
    return all(Fraction(c).denominator == 1 for c in s.coeffs)


class WittVector:
    """Integer power series with constant term 1, under multiplication.

    The multiplicative group where normalized torsion values live.
    """

    __slots__ = ("series",)

    def __init__(self, series: TruncatedSeries):
        series = series.to_int()
        if series.is_zero or series.min_deg != 0 or series.coeffs[0] != 1:
            raise ConstantTermNotOne(f"not a constant-term-1 integer series: {series}")
        self.series = series

    @classmethod
    def one(cls, order=DEFAULT_ORDER):
        return cls(TruncatedSeries.one(INT, order))

    @property
    def order(self):
        return self.series.order

    def __mul__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return WittVector(self.series * other.series)

    def inverse(self):
        return WittVector(series_invert(self.series))

    def __eq__(self, other):
        if isinstance(other, WittVector):
            return self.series == other.series
        if isinstance(other, (TruncatedSeries, int)):
            return self.series == other
        return NotImplemented

    __hash__ = None

    def __str__(self):
        return str(self.series)

    def __repr__(self):
        return f"WittVector({self.series})"

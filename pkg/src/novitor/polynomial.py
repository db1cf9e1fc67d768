"""Laurent polynomials in one variable t with integer coefficients.

This is the ring Z[t, t^-1] (and its subring Z[t] when the valuation is
nonnegative).  Values are immutable and normalized: no zero coefficients at
either end, and the zero polynomial is the empty coefficient tuple.
"""
from __future__ import annotations

from math import gcd

from .errors import NotExactDivision


class LaurentPolynomial:
    __slots__ = ("min_deg", "coeffs")

    def __init__(self, coeffs=(), min_deg=0):
        coeffs = [int(c) for c in coeffs]
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.coeffs = ()
            self.min_deg = 0
        else:
            self.coeffs = tuple(coeffs[lo:hi])
            self.min_deg = min_deg + lo

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def t(cls):
        return cls((1,), 1)

    @classmethod
    def monomial(cls, c, d):
        return cls((c,), d)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def val(self):
        """Lowest degree with nonzero coefficient; None for zero."""
        return None if self.is_zero else self.min_deg

    @property
    def degree(self):
        """Highest degree with nonzero coefficient; None for zero."""
        return None if self.is_zero else self.min_deg + len(self.coeffs) - 1

    def c(self, d):
        """Coefficient at degree d."""
        i = d - self.min_deg
        if self.is_zero or i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.min_deg + i, c

    def shift(self, k):
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return LaurentPolynomial(self.coeffs, self.min_deg + k)

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial((other,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.min_deg, other.min_deg)
        hi = max(self.min_deg + len(self.coeffs), other.min_deg + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.min_deg - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_deg - lo + i] += c
        return LaurentPolynomial(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(tuple(-c for c in self.coeffs), self.min_deg)

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
        if self.is_zero or other.is_zero:
            return LaurentPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPolynomial(out, self.min_deg + other.min_deg)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use RationalFunction")
        out = LaurentPolynomial.one()
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
        return self.coeffs == other.coeffs and self.min_deg == other.min_deg

    def __hash__(self):
        return hash((self.coeffs, self.min_deg))

    def content(self):
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def primitive(self):
        """Divide out the content; zero stays zero."""
        g = self.content()
        if g <= 1:
            return self
        return LaurentPolynomial(tuple(c // g for c in self.coeffs), self.min_deg)

    def divexact(self, other):
        """Exact division; raises NotExactDivision if the quotient leaves the ring."""
        other = self._coerce(other)
        if other is None or other.is_zero:
            raise NotExactDivision("division by zero polynomial")
        if self.is_zero:
            return self
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lq = len(rem) - 1 - db
        if lq < 0:
            raise NotExactDivision(f"({self}) not divisible by ({other})")
        lead = other.coeffs[-1]
        quot = [0] * (lq + 1)
        for i in range(lq, -1, -1):
            top = rem[i + db]
            if top % lead:
                raise NotExactDivision(f"({self}) not divisible by ({other})")
            q = top // lead
            quot[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        if any(rem):
            raise NotExactDivision(f"({self}) not divisible by ({other})")
        return LaurentPolynomial(quot, self.min_deg - other.min_deg)

    def __str__(self):
        if self.is_zero:
            return "0"
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
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self})"


def as_poly(x) -> LaurentPolynomial:
    """Coerce an integer, polynomial or truncated-series value to a polynomial."""
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial((x,))
    to_poly = getattr(x, "to_polynomial", None)
    if to_poly is not None:
        return to_poly()
    raise TypeError(f"expected a polynomial-like entry, got {type(x).__name__}")


def _prem_list(a, b):
    """Pseudo-remainder of ascending coefficient lists: lc(b)^(da-db+1)*a mod b."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return list(a)
    lead = b[-1]
    rem = list(a)
    for i in range(da - db, -1, -1):
        top = rem[i + db]
        rem = [lead * c for c in rem]
        if top:
            for j in range(db + 1):
                rem[i + j] -= top * b[j]
        rem[i + db] = 0
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


def _primitive_list(coeffs):
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    if g <= 1:
        return list(coeffs)
    return [c // g for c in coeffs]


def _pos_lead(p: LaurentPolynomial) -> LaurentPolynomial:
    if not p.is_zero and p.coeffs[-1] < 0:
        return -p
    return p


def poly_gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """gcd in Z[t] of two ordinary polynomials (val >= 0), primitive-PRS Euclid.

    Result has positive leading coefficient and includes the integer content.
    """
    if a.is_zero:
        return _pos_lead(b)
    if b.is_zero:
        return _pos_lead(a)
    if a.min_deg < 0 or b.min_deg < 0:
        raise ValueError("poly_gcd needs ordinary polynomials (val >= 0)")
    cont = gcd(a.content(), b.content())
    tshift = min(a.val, b.val)
    pa = list(a.primitive().shift(-a.val).coeffs)
    pb = list(b.primitive().shift(-b.val).coeffs)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = _primitive_list(_prem_list(pa, pb))
        pa, pb = pb, r
    g = _pos_lead(LaurentPolynomial(pa, 0)) * cont
    return g.shift(tshift)

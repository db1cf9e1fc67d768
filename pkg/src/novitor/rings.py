"""Coefficient-ring descriptors for complexes and instance files.

A Ring names the ring a complex lives over and knows how to coerce raw
entries (parsed rational expressions, integers, polynomials) into it.
Series rings carry their truncation order; "laurent" marks rings where t
is a unit (negative powers allowed).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import RingMismatch, UnsupportedChange
from .polynomial import LaurentPolynomial
from .rational import RationalFunction
from .series import DEFAULT_ORDER, INT, RAT, TruncatedSeries, is_integral
from .rational import rf_expand

_SERIES_TAG = re.compile(r"^(Z|Q)\[\[t\]\](\[t\^-1\])?(?:/t\^(\d+))?$")


@dataclass(frozen=True)
class Ring:
    tag: str
    kind: str  # 'int' | 'rat' | 'poly' | 'ratfunc' | 'series'
    coeff: str = INT  # for series rings
    order: int | None = None  # for series rings
    laurent: bool = False  # negative t-powers allowed

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        if self.kind == "int":
            return int(n)
        if self.kind == "rat":
            return Fraction(n)
        if self.kind == "poly":
            return LaurentPolynomial((n,))
        if self.kind == "ratfunc":
            return RationalFunction(n)
        return TruncatedSeries(self.coeff, (n,), 0, self.order)

    @property
    def is_field(self):
        return self.kind in ("rat", "ratfunc")

    def coerce(self, x):
        """Bring an exact value into this ring, or raise RingMismatch."""
        if isinstance(x, bool):
            raise RingMismatch("booleans are not ring elements")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            if self.kind == "rat":
                return x
            if self.kind == "ratfunc":
                return RationalFunction(x.numerator, x.denominator)
            if self.kind == "series" and self.coeff == RAT:
                return TruncatedSeries(RAT, (x,), 0, self.order)
            if x.denominator == 1:
                return self.from_int(x.numerator)
            raise RingMismatch(f"{x} is not an element of {self.tag}")
        if isinstance(x, LaurentPolynomial):
            if self.kind == "poly":
                if not self.laurent and not x.is_zero and x.val < 0:
                    raise RingMismatch(f"negative powers of t are not in {self.tag}")
                return x
            if self.kind == "ratfunc":
                return RationalFunction(x)
            if self.kind == "series":
                if not self.laurent and not x.is_zero and x.val < 0:
                    raise RingMismatch(f"negative powers of t are not in {self.tag}")
                return TruncatedSeries.from_polynomial(x, self.coeff).truncate(self.order)
            if self.kind in ("int", "rat") and (x.is_zero or x.degree == 0 == x.val):
                return self.from_int(x.c(0))
            raise RingMismatch(f"polynomial {x} is not an element of {self.tag}")
        if isinstance(x, RationalFunction):
            if self.kind == "ratfunc":
                return x
            if x.den == 1:
                return self.coerce(x.num)
            if self.kind == "series":
                s = rf_expand(x, self.order)
                if not self.laurent and not s.is_zero and s.val < 0:
                    raise RingMismatch(f"negative powers of t are not in {self.tag}")
                if self.coeff == INT:
                    if not is_integral(s):
                        raise RingMismatch(f"{x} does not expand integrally")
                    return s.to_int()
                return s
            raise RingMismatch(f"{x} is not an element of {self.tag}")
        if isinstance(x, TruncatedSeries):
            if self.kind != "series":
                raise RingMismatch(f"truncated series cannot live in {self.tag}")
            if not self.laurent and not x.is_zero and x.val < 0:
                raise RingMismatch(f"negative powers of t are not in {self.tag}")
            if x.order < self.order:
                raise RingMismatch(
                    f"series known only mod t^{x.order} cannot enter {self.tag}"
                )
            x = x.truncate(self.order)
            if self.coeff == INT:
                return x.to_int()
            return x.to_rat()
        raise RingMismatch(f"cannot interpret {x!r} as an element of {self.tag}")


ZZ = Ring("Z", "int")
QQ = Ring("Q", "rat")
ZT = Ring("Z[t]", "poly")
ZT_LAURENT = Ring("Z[t,t^-1]", "poly", laurent=True)
QT = Ring("Q(t)", "ratfunc")


def series_ring(coeff=INT, order=DEFAULT_ORDER, laurent=False) -> Ring:
    base = f"{coeff}[[t]]"
    tag = f"{base}[t^-1]/t^{order}" if laurent else f"{base}/t^{order}"
    return Ring(tag, "series", coeff, order, laurent)


def ring_from_tag(tag: str) -> Ring:
    tag = tag.strip()
    fixed = {
        "Z": ZZ,
        "Q": QQ,
        "Z[t]": ZT,
        "Z[t,t^-1]": ZT_LAURENT,
        "Z[t,t^{-1}]": ZT_LAURENT,
        "Q(t)": QT,
    }
    if tag in fixed:
        return fixed[tag]
    m = _SERIES_TAG.match(tag)
    if m:
        coeff = INT if m.group(1) == "Z" else RAT
        laurent = m.group(2) is not None
        order = int(m.group(3)) if m.group(3) else DEFAULT_ORDER
        return series_ring(coeff, order, laurent)
    raise UnsupportedChange(f"unknown coefficient ring tag {tag!r}")

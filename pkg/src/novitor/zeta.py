"""Lefschetz eta and zeta functions of gradient flows, four ways.

Routes: summing Fuller-index contributions of closed orbits; the product
over prime orbits; the alternating determinant product over homology
monodromy matrices; and the alternating determinant product over
homological-gradient-descent matrices.  A literal lattice-point oracle for
hyperbolic toral maps bridges the fixed-point definition to the homological
formula in tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InsufficientOrbitOrder,
    NonHyperbolic,
    NotAUnit,
    ShapeMismatch,
)
from .matrices import Matrix, det_poly, require_positive_valuation
from .polynomial import LaurentPolynomial, as_poly
from .series import (
    DEFAULT_ORDER,
    INT,
    RAT,
    TruncatedSeries,
    exp_eta,
    series_invert,
)


@dataclass(frozen=True)
class ClosedOrbit:
    """One closed orbit: winding number, covering multiplicity, index."""

    winding: int
    multiplicity: int
    index: int

    def __post_init__(self):
        if self.winding < 1:
            raise ShapeMismatch("closed orbits wind at least once")
        if self.multiplicity < 1:
            raise ShapeMismatch("multiplicity is a positive integer")
        if self.index not in (1, -1):
            raise ShapeMismatch("orbit index must be +1 or -1")


@dataclass(frozen=True)
class PrimeOrbit:
    """A prime closed orbit contributing the factor (1 + e1*t^n)^e2."""

    winding: int
    e1: int
    e2: int

    def __post_init__(self):
        if self.winding < 1:
            raise ShapeMismatch("prime orbits wind at least once")
        if self.e1 not in (1, -1) or self.e2 not in (1, -1):
            raise ShapeMismatch("e1 and e2 must be +1 or -1")


@dataclass(frozen=True)
class OrbitSet:
    """Closed orbits, complete for every winding below n_orb."""

    orbits: tuple
    n_orb: int

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))
        if self.n_orb < 1:
            raise InsufficientOrbitOrder("completeness order must be at least 1")


def eta_from_orbits(s: OrbitSet, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Sum of index/multiplicity * t^winding over orbits winding below order."""
    if order > s.n_orb:
        raise InsufficientOrbitOrder(
            f"order {order} exceeds the declared completeness order {s.n_orb}"
        )
    coeffs = [Fraction(0)] * order
    for orb in s.orbits:
        if orb.winding < order:
            coeffs[orb.winding] += Fraction(orb.index, orb.multiplicity)
    return TruncatedSeries(RAT, coeffs, 0, order)


def zeta_from_orbits(s: OrbitSet, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """exp of the eta series; integral whenever the orbit set is honest."""
    return exp_eta(eta_from_orbits(s, order), order)


def zeta_from_primes(primes, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Product of (1 + e1*t^n)^e2 over prime orbits, always integral."""
    out = TruncatedSeries.one(INT, order)
    for p in primes:
        if p.winding >= order:
            continue
        factor = TruncatedSeries(INT, (1,) + (0,) * (p.winding - 1) + (p.e1,), 0, order)
        out = out * factor if p.e2 == 1 else out * series_invert(factor)
    return out


def expand_prime_orbit(p: PrimeOrbit, order: int = DEFAULT_ORDER):
    """All iterates of a prime orbit with winding below order.

    The k-th iterate has winding n*k, multiplicity k and index
    -e2*(-e1)^k: the unique index law under which summing the iterates'
    Fuller contributions recovers log((1 + e1*t^n)^e2) term by term.
    """
    out = []
    k = 1
    while p.winding * k < order:
        index = -p.e2 * (-p.e1) ** k
        out.append(ClosedOrbit(p.winding * k, k, index))
        k += 1
    return out


def orbit_set_from_primes(primes, order: int = DEFAULT_ORDER) -> OrbitSet:
    orbits = []
    for p in primes:
        orbits.extend(expand_prime_orbit(p, order))
    return OrbitSet(tuple(orbits), order)


def zeta_from_homology(h_list, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Alternating product of det(I - t*h_i)^((-1)^(i+1)) over the degrees."""
    t = LaurentPolynomial.t()
    out = TruncatedSeries.one(INT, order)
    for i, h in enumerate(h_list):
        if h is None:
            continue
        if not isinstance(h, Matrix):
            h = Matrix(h)
        if not h.is_square:
            raise ShapeMismatch(f"h_{i} must be square, got {h.shape}")
        if h.nrows == 0:
            continue
        n = h.nrows
        block = Matrix(
            [
                [
                    (LaurentPolynomial((1,)) if r == c else LaurentPolynomial()) - t * h.data[r][c]
                    for c in range(n)
                ]
                for r in range(n)
            ],
            ncols=n,
        )
        d = TruncatedSeries.from_polynomial(det_poly(block), INT).truncate(order)
        out = out * d if i % 2 == 1 else out * series_invert(d)
    return out


def eta_from_lefschetz_numbers(l_values, order=None) -> TruncatedSeries:
    """Sum of L_k * t^k / k from algebraic fixed-point counts L_1, L_2, ..."""
    n = len(l_values) + 1 if order is None else order
    if n > len(l_values) + 1:
        raise InsufficientOrbitOrder(
            f"order {n} needs {n - 1} fixed-point counts, got {len(l_values)}"
        )
    coeffs = [Fraction(0)] + [Fraction(l_values[k - 1], k) for k in range(1, n)]
    return TruncatedSeries(RAT, coeffs, 0, n)


def zeta_from_descent(h_list, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Alternating product of det(1 - H_k)^((-1)^(k+1)).

    Every entry of every H_k must have positive t-valuation (the descent
    map crosses at least one fundamental domain), which makes each
    determinant a constant-term-1 polynomial.
    """
    out = TruncatedSeries.one(INT, order)
    for k, h in enumerate(h_list):
        if h is None:
            continue
        if not isinstance(h, Matrix):
            h = Matrix([[as_poly(x) for x in row] for row in h])
        if not h.is_square:
            raise ShapeMismatch(f"H_{k} must be square, got {h.shape}")
        if h.nrows == 0:
            continue
        require_positive_valuation(h, f"H_{k}")
        n = h.nrows
        block = Matrix(
            [
                [
                    (LaurentPolynomial((1,)) if r == c else LaurentPolynomial())
                    - as_poly(h.data[r][c])
                    for c in range(n)
                ]
                for r in range(n)
            ],
            ncols=n,
        )
        d = TruncatedSeries.from_polynomial(det_poly(block), INT).truncate(order)
        out = out * d if k % 2 == 1 else out * series_invert(d)
    return out


def zeta_v(z: TruncatedSeries) -> TruncatedSeries:
    """The inverse zeta series; needs constant term +-1."""
    if z.is_zero or z.min_deg != 0 or z.c(0) not in (1, -1):
        raise NotAUnit("zeta series must have constant term +1 or -1")
    return series_invert(z)


def _m_interval(a, lo, hi):
    """Integers m with lo <= a*m <= hi; None encodes 'all of Z' when a = 0."""
    if a == 0:
        return None if lo <= 0 <= hi else range(0)
    if a > 0:
        return range(-((-lo) // a), hi // a + 1)
    return range(-((-hi) // a), lo // a + 1)


def cat_map_oracle(a, k_max: int):
    """Algebraic fixed-point counts of a hyperbolic toral map, by enumeration.

    For each k <= k_max the fixed points of x -> A^k x on the torus are the
    solutions of (A^k - I) x in Z^2 with x in [0,1)^2.  The oracle walks the
    candidate lattice cell by cell: it scans every attainable first integer
    coordinate m1 of m = (A^k - I) x, derives the exact integer window of m2
    from the two membership conditions, verifies each candidate point with
    integer arithmetic, cross-checks the count against |det(A^k - I)|, and
    weights it by the common fixed point index sign(det(I - A^k)).
    """
    if not isinstance(a, Matrix):
        a = Matrix(a)
    if a.shape != (2, 2):
        raise ShapeMismatch("the toral map oracle expects a 2x2 integer matrix")
    out = []
    power = Matrix.identity(2, 1)
    for k in range(1, k_max + 1):
        power = power * a
        b11, b12 = power.data[0][0] - 1, power.data[0][1]
        b21, b22 = power.data[1][0], power.data[1][1] - 1
        det = b11 * b22 - b12 * b21
        if det == 0:
            raise NonHyperbolic(k)
        # x = B^{-1} m: x1 = (b22*m1 - b12*m2)/det, x2 = (-b21*m1 + b11*m2)/det
        if det > 0:
            d_lo, d_hi = 0, det - 1
        else:
            d_lo, d_hi = det + 1, 0
        count = 0
        lo1 = min(0, b11) + min(0, b12)
        hi1 = max(0, b11) + max(0, b12)
        for m1 in range(lo1, hi1 + 1):
            # d_lo <= b22*m1 - b12*m2 <= d_hi  and  d_lo <= -b21*m1 + b11*m2 <= d_hi
            w1 = _m_interval(-b12, d_lo - b22 * m1, d_hi - b22 * m1)
            w2 = _m_interval(b11, d_lo + b21 * m1, d_hi + b21 * m1)
            if w1 is None and w2 is None:
                raise NonHyperbolic(k, "degenerate row")
            if w1 is None:
                window = w2
            elif w2 is None:
                window = w1
            else:
                window = range(max(w1.start, w2.start), min(w1.stop, w2.stop))
            for m2 in window:
                n1 = b22 * m1 - b12 * m2
                n2 = -b21 * m1 + b11 * m2
                if d_lo <= n1 <= d_hi and d_lo <= n2 <= d_hi:
                    count += 1
        if count != abs(det):
            raise NonHyperbolic(
                k, f"enumeration found {count} points, determinant says {abs(det)}"
            )
        sign = 1 if det > 0 else -1
        out.append(sign * count)
    return out

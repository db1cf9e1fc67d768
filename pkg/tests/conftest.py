"""Shared random generators for the test suite.

Everything is seeded: the suite is deterministic run to run.
"""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from novitor import BasedChainComplex, DescentSystem
from novitor.complexes import zero_complex
from novitor.matrices import Matrix
from novitor.polynomial import LaurentPolynomial
from novitor.rational import RationalFunction
from novitor.series import INT, TruncatedSeries


@pytest.fixture
def rng():
    return random.Random(20240811)


def rnd_poly(rng, max_deg=2, lo=-3, hi=3, min_deg=0, nonzero=False):
    while True:
        coeffs = [rng.randint(lo, hi) for _ in range(max_deg + 1)]
        p = LaurentPolynomial(coeffs, min_deg)
        if not nonzero or not p.is_zero:
            return p


def rnd_series(rng, ring=INT, order=8, min_deg=0, max_terms=5):
    coeffs = []
    for _ in range(max_terms):
        if ring == INT:
            coeffs.append(rng.randint(-4, 4))
        else:
            coeffs.append(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return TruncatedSeries(ring, coeffs, min_deg, order)


def rnd_rf(rng, max_deg=2):
    num = rnd_poly(rng, max_deg)
    den = rnd_poly(rng, max_deg, nonzero=True)
    return RationalFunction(num, den)


def _unit_pool(rng, mixing):
    t = LaurentPolynomial.t()
    if mixing == "constant":
        return [LaurentPolynomial((1,)), LaurentPolynomial((-1,))]
    return [LaurentPolynomial((1,)), LaurentPolynomial((-1,)), t, -t, 1 + t]


def _apply_elementary_ops(rng, bases, bnd, n_ops, coeff_pool):
    """Random based changes e_i -> e_i + c*e_j; preserves d^2 = 0 exactly."""
    mats = {k: [list(row) for row in m.data] for k, m in bnd.items()}
    for _ in range(n_ops):
        k = rng.randrange(len(bases))
        n = len(bases[k])
        if n < 2:
            continue
        i, j = rng.sample(range(n), 2)
        c = rng.choice(coeff_pool)
        if k in mats:
            for r in range(len(mats[k])):
                mats[k][r][i] = mats[k][r][i] + c * mats[k][r][j]
        if k + 1 in mats and mats[k + 1]:
            for s in range(len(mats[k + 1][0])):
                mats[k + 1][j][s] = mats[k + 1][j][s] - c * mats[k + 1][i][s]
    return {k: Matrix(rows, ncols=len(bases[k])) for k, rows in mats.items() if rows}


def _sum_of_pieces(rng, degrees, pieces, lone, mixing, n_ops, nonzero_maps, unit_pieces=False):
    t = LaurentPolynomial.t()
    ranks = [0] * (degrees + 1)
    spots = []
    for _ in range(pieces):
        k = rng.randint(1, degrees)
        if unit_pieces:
            p = rng.choice([LaurentPolynomial((1,)), LaurentPolynomial((-1,)), 1 - t, 1 + t])
        else:
            p = rnd_poly(rng, 1, -2, 2, nonzero=nonzero_maps or rng.random() < 0.7)
        spots.append((k, p))
        ranks[k] += 1
        ranks[k - 1] += 1
    for _ in range(lone):
        ranks[rng.randint(0, degrees)] += 1
    bases = [tuple(f"g{k}.{i}" for i in range(ranks[k])) for k in range(degrees + 1)]
    data = {
        k: [[LaurentPolynomial() for _ in range(ranks[k])] for _ in range(ranks[k - 1])]
        for k in range(1, degrees + 1)
        if ranks[k] and ranks[k - 1]
    }
    cursor = {k: 0 for k in range(degrees + 1)}
    for k, p in spots:
        i = cursor[k]
        j = cursor[k - 1]
        cursor[k] += 1
        cursor[k - 1] += 1
        data[k][j][i] = p
    bnd = {k: Matrix(rows, ncols=ranks[k]) for k, rows in data.items()}
    bnd = _apply_elementary_ops(rng, bases, bnd, n_ops, _unit_pool(rng, mixing))
    return BasedChainComplex("Z[t]", bases, bnd)


def random_zt_complex(rng, degrees=3, max_pieces=3, n_ops=6, mixing="unit"):
    """Random based complex over Z[t]: sum of two-term pieces, then mixing."""
    return _sum_of_pieces(
        rng,
        degrees,
        pieces=rng.randint(1, max_pieces),
        lone=rng.randint(0, 2),
        mixing=mixing,
        n_ops=n_ops,
        nonzero_maps=False,
    )


def random_acyclic_complex(rng, degrees=3, pieces=2, n_ops=6, mixing="unit", unit_pieces=False):
    """Acyclic over Q(t): sum of two-term pieces with nonzero maps, mixed."""
    return _sum_of_pieces(
        rng,
        degrees,
        pieces=pieces,
        lone=0,
        mixing=mixing,
        n_ops=n_ops,
        nonzero_maps=True,
        unit_pieces=unit_pieces,
    )


def _as_poly(x):
    if isinstance(x, LaurentPolynomial):
        return x
    return LaurentPolynomial((x,))


def random_chain_self_map(rng, c, max_q_deg=1):
    """Positive-valuation chain self-map of c: t*(q(t)*id + ds + sd)."""
    t = LaurentPolynomial.t()
    q = rnd_poly(rng, max_q_deg, -2, 2)
    s = {}
    for k in range(c.top_degree):
        if c.rank(k) and c.rank(k + 1):
            s[k] = Matrix(
                [[rng.randint(-1, 1) for _ in range(c.rank(k))] for _ in range(c.rank(k + 1))],
                ncols=c.rank(k),
            )
    h = {}
    for k in range(c.top_degree + 1):
        n = c.rank(k)
        if n == 0:
            continue
        m = Matrix([[q if i == j else LaurentPolynomial() for j in range(n)] for i in range(n)])
        if k in s:
            m = m + c.boundary(k + 1).map(_as_poly) * s[k]
        if k - 1 in s:
            m = m + s[k - 1] * c.boundary(k).map(_as_poly)
        h[k] = m.map(lambda p: t * _as_poly(p))
    return h


def chain_self_map_descent(rng, degrees=3, max_pieces=3, n_ops=4) -> DescentSystem:
    """DescentSystem from the chain-self-map recipe: stars 0, no Novikov part.

    Mixing uses constant coefficients so every H entry has degree at most 2.
    """
    r = random_zt_complex(rng, degrees, max_pieces, n_ops, mixing="constant")
    h = random_chain_self_map(rng, r)
    return DescentSystem(
        r_complex=r,
        nv_complex=zero_complex("Z[t]"),
        h_maps=h,
        sigma1={},
        n_data=32,
    )


def star_family_descent(rng, r0=3, r1=2):
    """Descent system with a Novikov part and genuinely free star blocks.

    R has zero boundary, H is diagonal with positive-valuation entries,
    sigma1 sends the degree-1 Novikov generator into the first R_0
    coordinate (times t), and the degree-1 star2 block may hit every other
    R_0 coordinate freely: the consistency conditions hold for any choice.
    """
    t = LaurentPolynomial.t()
    r = BasedChainComplex(
        "Z[t]",
        [tuple(f"e{i}" for i in range(r0)), tuple(f"f{i}" for i in range(r1))],
        {},
    )
    nv = BasedChainComplex("Z[t]", [("q",), ("p",)], {})
    h0 = Matrix(
        [
            [t * rnd_poly(rng, 1, -2, 2, nonzero=True) if i == j else LaurentPolynomial() for j in range(r0)]
            for i in range(r0)
        ]
    )
    h1 = Matrix(
        [
            [t * rnd_poly(rng, 1, -2, 2, nonzero=True) if i == j else LaurentPolynomial() for j in range(r1)]
            for i in range(r1)
        ]
    )
    sigma = {1: Matrix([[t]] + [[LaurentPolynomial()] for _ in range(r0 - 1)], ncols=1)}

    def with_stars(star_row):
        star2 = {1: Matrix([[LaurentPolynomial((0,))] + list(star_row)], ncols=r0)}
        return DescentSystem(
            r_complex=r,
            nv_complex=nv,
            h_maps={0: h0, 1: h1},
            sigma1=dict(sigma),
            star2=star2,
            n_data=32,
        )

    return with_stars, r0 - 1

import random

import pytest

from novitor.complexes import (
    BasedChainComplex,
    ChainMap,
    algebraic_mapping_torus,
    base_change,
    direct_sum,
    torsion,
    torsion_of_map,
)
from novitor.errors import NormalizationImpossible, NotAcyclic, NotAnEquivalence, ShapeMismatch
from novitor.matrices import Matrix
from novitor.polynomial import LaurentPolynomial
from novitor.rational import RationalFunction, rf_expand
from novitor.series import INT, TruncatedSeries, series_invert

from conftest import random_acyclic_complex

t = LaurentPolynomial.t()


def two_term(p):
    return BasedChainComplex("Z[t]", [("y",), ("x",)], {1: Matrix([[p]])})


class TestTorsionAnchors:
    def test_fibration_anchor(self):
        # the convention is pinned here: raw torsion of [C1 --(1-t)--> C0]
        # is 1-t itself, matching the mapping-torus of the identity
        res = torsion(two_term(1 - t), 8)
        assert res.raw == RationalFunction(1 - t)
        assert res.witt.series == TruncatedSeries(INT, (1, -1), 0, 8)
        torus = algebraic_mapping_torus([Matrix([[1]])])
        assert torsion(torus, 8).witt.series == res.witt.series

    def test_contractible_identity(self):
        res = torsion(two_term(LaurentPolynomial.one()), 8)
        assert res.raw == RationalFunction.one()
        assert res.witt == res.witt.one(8)

    def test_direct_sum_multiplies(self):
        rng = random.Random(3)
        for _ in range(20):
            p = None
            while p is None or p.is_zero:
                from conftest import rnd_poly

                p = rnd_poly(rng, 1, -2, 2)
            q = None
            while q is None or q.is_zero:
                from conftest import rnd_poly

                q = rnd_poly(rng, 1, -2, 2)
            a, b = two_term(p), two_term(q)
            try:
                ta = torsion(a, 12)
                tb = torsion(b, 12)
                ts = torsion(direct_sum(a, b), 12)
            except NormalizationImpossible:
                continue
            assert ts.witt.series == (ta.witt * tb.witt).series

    def test_t_power_stripped(self):
        res = torsion(two_term(t * (1 - t)), 8)
        assert res.power == 1
        assert res.witt.series == TruncatedSeries(INT, (1, -1), 0, 7)

    def test_normalization_impossible_for_non_unit(self):
        with pytest.raises(NormalizationImpossible):
            torsion(two_term(LaurentPolynomial((2,))), 8)

    def test_not_acyclic(self):
        c = BasedChainComplex("Z[t]", [("y",), ("x",)], {})
        with pytest.raises(NotAcyclic):
            torsion(c, 8)


class TestContractionIndependence:
    def test_two_strategies_agree(self):
        rng = random.Random(5)
        for _ in range(40):
            c = random_acyclic_complex(rng, degrees=3, pieces=2)
            try:
                first = torsion(c, 12, strategy="first")
                last = torsion(c, 12, strategy="last")
            except NormalizationImpossible:
                continue
            assert first.witt.series == last.witt.series

    def test_series_route_agrees_with_field_route(self):
        rng = random.Random(7)
        for _ in range(40):
            c = random_acyclic_complex(rng, degrees=3, pieces=2, unit_pieces=True)
            f = torsion(c, 12)
            s = torsion(base_change(c, "mod", order=12), 12)
            assert f.witt.series == s.witt.series


class TestMappingTorus:
    def test_rank_two_identityless(self):
        # h = 0 on a rank-2 degree: boundary is the identity, torsion 1
        torus = algebraic_mapping_torus([Matrix([[0, 0], [0, 0]])])
        res = torsion(torus, 8)
        assert res.witt == res.witt.one(8)

    def test_cat_map_value(self):
        a = Matrix([[2, 1], [1, 1]])
        torus = algebraic_mapping_torus([Matrix([[1]]), a, Matrix([[1]])])
        res = torsion(torus, 10)
        expected = rf_expand(RationalFunction((1 - t) ** 2, 1 - 3 * t + t ** 2), 10)
        assert res.witt.series == expected

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            algebraic_mapping_torus([Matrix.zeros(1, 2)])

    def test_milnor_identity_sample(self):
        rng = random.Random(11)
        for _ in range(10):
            hs = []
            for k in range(3):
                n = rng.randint(0, 2)
                hs.append(Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]))
            torus = algebraic_mapping_torus(hs)
            if torus.total_rank == 0:
                continue
            res = torsion(base_change(torus, "mod", order=12), 12)
            expected = TruncatedSeries.one(INT, 12)
            for k, h in enumerate(hs):
                if h.nrows == 0:
                    continue
                block = Matrix(
                    [
                        [(1 if i == j else 0) - t * h.data[i][j] for j in range(h.nrows)]
                        for i in range(h.nrows)
                    ]
                )
                from novitor.matrices import det_bareiss

                d = TruncatedSeries.from_polynomial(
                    det_bareiss(block, LaurentPolynomial.one()), INT
                ).truncate(12)
                expected = expected * d if k % 2 == 0 else expected * series_invert(d)
            assert res.witt.series == expected


class TestTorsionOfMap:
    def test_identity_map(self):
        c = two_term(1 - t)
        assert torsion_of_map(ChainMap.identity(c), 8).witt == torsion(c, 8).witt.one(8)

    def test_circle_comparison(self):
        nov = two_term(1 - t)
        simp = BasedChainComplex("Z[t]", [("v",), ("e",)], {1: Matrix([[1 - t]])})
        one = LaurentPolynomial.one()
        f = ChainMap(nov, simp, {0: Matrix([[one]]), 1: Matrix([[one]])})
        res = torsion_of_map(f, 8)
        assert res.witt == res.witt.one(8)

    def test_multiplication_by_unit(self):
        # rank-1 acyclic pair: the cone of (1+t) on a single degree-0 generator
        c = BasedChainComplex("Z[t]", [("x",)], {})
        f = ChainMap(c, c, {0: Matrix([[1 + t]])})
        res = torsion_of_map(f, 8)
        assert res.raw == RationalFunction(1 + t)
        assert res.witt.series == TruncatedSeries(INT, (1, 1), 0, 8)

    def test_unit_multiple_of_identity_on_two_degrees_cancels(self):
        # across two adjacent degrees the alternating exponents cancel
        c = two_term(LaurentPolynomial.one())
        f = ChainMap(c, c, {0: Matrix([[1 + t]]), 1: Matrix([[1 + t]])})
        assert torsion_of_map(f, 8).raw == RationalFunction.one()

    def test_iso_each_degree_alternating_product(self):
        # single degree k: torsion of the cone is det(f)^((-1)^k)
        for k, expected in ((0, TruncatedSeries(INT, (1, 1), 0, 8)),):
            c = BasedChainComplex("Z[t]", [()] * k + [("x",)], {})
            f = ChainMap(c, c, {k: Matrix([[1 + t]])})
            assert torsion_of_map(f, 8).witt.series == expected
        c1 = BasedChainComplex("Z[t]", [(), ("x",)], {})
        f1 = ChainMap(c1, c1, {1: Matrix([[1 + t]])})
        inv = series_invert(TruncatedSeries(INT, (1, 1), 0, 9))
        assert torsion_of_map(f1, 8).witt.series == inv

    def test_cone_multiplicativity_for_composites(self):
        rng = random.Random(13)
        for _ in range(30):
            k = rng.randint(0, 2)
            c = BasedChainComplex("Z[t]", [()] * k + [("x",)], {})
            u1 = 1 + rng.randint(-1, 1) * t
            u2 = 1 + rng.randint(-1, 1) * t + rng.randint(-1, 1) * t * t
            f = ChainMap(c, c, {k: Matrix([[u1]])})
            g = ChainMap(c, c, {k: Matrix([[u2]])})
            gf = g.compose(f)
            tf = torsion_of_map(f, 12).witt
            tg = torsion_of_map(g, 12).witt
            tgf = torsion_of_map(gf, 12).witt
            assert tgf.series == (tf * tg).series

    def test_not_an_equivalence(self):
        c = BasedChainComplex("Z[t]", [("y",), ("x",)], {})
        f = ChainMap(c, c, {})
        with pytest.raises(NotAnEquivalence):
            torsion_of_map(f, 8)

    def test_zero_map_between_acyclic_complexes(self):
        # cone is acyclic and its torsion is tau(target) * tau(source)^(-1);
        # and any other chain map between the two gives the same torsion
        src = two_term(1 - t)
        tgt = two_term(1 + t)
        zero = ChainMap(src, tgt, {})
        res = torsion_of_map(zero, 12)
        expected = torsion(tgt, 12).witt * torsion(src, 12).witt.inverse()
        assert res.witt.series == expected.series
        one = LaurentPolynomial.one()
        other = ChainMap(src, tgt, {0: Matrix([[(1 + t) * one]]), 1: Matrix([[1 - t]])})
        assert torsion_of_map(other, 12).witt.series == expected.series

    def test_multiplicativity_on_random_based_complexes(self):
        rng = random.Random(17)
        for _ in range(25):
            a = random_acyclic_complex(rng, degrees=2, pieces=2, unit_pieces=True)
            b = random_acyclic_complex(rng, degrees=2, pieces=2, unit_pieces=True)
            c = random_acyclic_complex(rng, degrees=2, pieces=2, unit_pieces=True)
            f = ChainMap(a, b, {})
            g = ChainMap(b, c, {})
            tf = torsion_of_map(f, 16).witt
            tg = torsion_of_map(g, 16).witt
            tgf = torsion_of_map(g.compose(f), 16).witt
            assert tgf.series == (tg * tf).series

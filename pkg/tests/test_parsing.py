import pytest

from novitor.errors import InputError,  ZeroDenominator
from novitor.parsing import parse_entry, parse_rational, render_series
from novitor.polynomial import LaurentPolynomial
from novitor.rational import RationalFunction, rf_expand
from novitor.rings import QT, ZT, ZZ, series_ring
from novitor.series import INT, TruncatedSeries

t = LaurentPolynomial.t()


class TestParse:
    def test_polynomials(self):
        assert parse_rational("1-t") == RationalFunction(1 - t)
        assert parse_rational("1 - 3*t + t^2") == RationalFunction(1 - 3 * t + t ** 2)
        assert parse_rational("-t") == RationalFunction(-t)
        assert parse_rational(7) == RationalFunction(7)

    def test_rational_coefficients(self):
        half = parse_rational("1/2")
        assert half + half == RationalFunction.one()

    def test_quotients_and_powers(self):
        r = parse_rational("(1-3*t+t^2)/(1-t)^2")
        assert r == RationalFunction(1 - 3 * t + t ** 2, (1 - t) ** 2)
        assert parse_rational("t^-1") == RationalFunction(1, t)
        assert parse_rational("(1+t)^0") == RationalFunction.one()

    def test_nested(self):
        assert parse_rational("((1-t)*(1+t))/(1-t)") == RationalFunction(1 + t)

    def test_errors(self):
        with pytest.raises(InputError):
            parse_rational("1 +")
        with pytest.raises(InputError):
            parse_rational("x + 1")
        with pytest.raises(InputError):
            parse_rational("(1")
        with pytest.raises(ZeroDenominator):
            parse_rational("1/(0)")
        with pytest.raises(ZeroDenominator):
            parse_rational("(t-t)^-1")


class TestCoerce:
    def test_into_polynomial_ring(self):
        assert parse_entry("1-t", ZT) == 1 - t
        with pytest.raises(InputError):
            parse_entry("1/(1-t)", ZT)
        with pytest.raises(InputError):
            parse_entry("t^-1", ZT)
        with pytest.raises(InputError):
            parse_entry("1/2", ZT)

    def test_into_integers(self):
        assert parse_entry("3", ZZ) == 3
        with pytest.raises(InputError):
            parse_entry("t", ZZ)

    def test_into_series_ring(self):
        ring = series_ring(INT, 6)
        assert parse_entry("1/(1-t)", ring) == TruncatedSeries(INT, [1] * 6, 0, 6)
        with pytest.raises(InputError):
            parse_entry("1/2", ring)

    def test_into_field(self):
        assert parse_entry("(1+t)/(1-t)", QT) == RationalFunction(1 + t, 1 - t)


class TestRender:
    def test_series_rendering(self):
        s = rf_expand(RationalFunction(1, 1 - t), 4)
        assert render_series(s) == "1 + t + t^2 + t^3 + O(t^4)"

    def test_signs_and_magnitudes(self):
        s = TruncatedSeries(INT, (1, -1, -2), 0, 6)
        assert render_series(s) == "1 - t - 2*t^2 + O(t^6)"

    def test_laurent_part(self):
        s = TruncatedSeries(INT, (1, 1), -1, 3)
        assert render_series(s) == "t^-1 + 1 + O(t^3)"

    def test_round_trip_through_parser(self):
        ring = series_ring(INT, 8)
        s = parse_entry("(1-3*t+t^2)/(1-t)", ring)
        body = render_series(s).rsplit(" + O", 1)[0]
        assert parse_entry(body.replace(" ", ""), ring) == s

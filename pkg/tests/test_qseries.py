from fractions import Fraction

import pytest

from periodlab.errors import ValidationError
from periodlab.qseries import (
    QSeries,
    bernoulli,
    eisenstein_normalized,
    sigma_series,
)


class TestConstruction:
    def test_leading_zeros_stripped(self):
        s = QSeries.from_coeffs(0, (0, 0, 3, 1), order=4)
        assert s.low == 2
        assert s.coefficient(2) == 3

    def test_unknown_coefficient_refused(self):
        s = QSeries.from_coeffs(0, (1, 2), order=2)
        assert s.coefficient(1) == 2
        with pytest.raises(ValidationError):
            s.coefficient(2)

    def test_known_zero_padding(self):
        one = QSeries.one(8)
        assert one.coefficient(0) == 1
        assert one.coefficient(7) == 0

    def test_fraction_normalization(self):
        s = QSeries.from_coeffs(0, (Fraction(4, 2), Fraction(1, 3)), order=2)
        assert s.coefficient(0) == 2
        assert isinstance(s.coefficient(0), int)
        assert s.coefficient(1) == Fraction(1, 3)


class TestArithmetic:
    def test_add_and_mul(self):
        a = QSeries.from_coeffs(-1, (1, 0, 3), order=2)
        b = QSeries.from_coeffs(0, (2, 5), order=2)
        s = a + b
        assert s.coefficient(-1) == 1
        assert s.coefficient(0) == 2
        assert s.coefficient(1) == 8
        p = a * b
        assert p.low == -1
        assert p.coefficient(-1) == 2
        assert p.coefficient(0) == 5

    def test_mul_order_propagation(self):
        a = QSeries.from_coeffs(0, (1, 1), order=2)
        b = QSeries.from_coeffs(1, (1,), order=5)
        assert (a * b).order == 3  # limited by a's knowledge

    def test_geometric_inverse(self):
        # (1 - q)^(-1) = 1 + q + q^2 + ...
        a = QSeries.from_coeffs(0, (1, -1), order=8)
        inv = a.inverse()
        for n in range(6):
            assert inv.coefficient(n) == 1

    def test_division_round_trip(self):
        a = QSeries.from_coeffs(-1, (2, 3, 5, 7, 11), order=4)
        b = QSeries.from_coeffs(1, (1, -4, 6), order=4)
        q = a / b
        back = q * b
        for n in range(-1, min(back.order, 4)):
            assert back.coefficient(n) == a.coefficient(n)

    def test_pow(self):
        a = QSeries.from_coeffs(0, (1, 1), order=6)
        cube = a ** 3
        assert [cube.coefficient(n) for n in range(4)] == [1, 3, 3, 1]

    def test_evaluate(self):
        a = QSeries.from_coeffs(-1, (1, 744), order=1)
        assert a.evaluate(0.5) == pytest.approx(2.0 + 744.0)


class TestNumberTheory:
    def test_bernoulli(self):
        assert bernoulli(0) == 1
        assert bernoulli(1) == Fraction(1, 2)  # the B-plus convention
        assert bernoulli(4) == Fraction(-1, 30)
        assert bernoulli(8) == Fraction(-1, 30)
        assert bernoulli(12) == Fraction(-691, 2730)
        assert bernoulli(3) == 0

    def test_sigma_series(self):
        s3 = sigma_series(3, 6)
        assert [s3.coefficient(n) for n in range(1, 6)] == [1, 9, 28, 73, 126]

    def test_eisenstein_normalized_coefficients(self):
        e4 = eisenstein_normalized(4, 5)
        assert [e4.coefficient(n) for n in range(4)] == [1, 240, 2160, 6720]
        e6 = eisenstein_normalized(6, 5)
        assert [e6.coefficient(n) for n in range(4)] == [1, -504, -16632,
                                                         -122976]

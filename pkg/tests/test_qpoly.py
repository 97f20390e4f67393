from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kjparts.qpoly import QPoly, falling_binomial


small_polys = st.builds(
    QPoly,
    st.lists(st.fractions(max_denominator=12, min_value=-9, max_value=9), max_size=5),
)


def test_construction_strips_trailing_zeros():
    assert QPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert QPoly((0,)).is_zero()
    assert QPoly(()).degree == -1


def test_basic_arithmetic():
    b = QPoly.x()
    p = (1 - b) * (1 - b * Fraction(1, 4))
    assert p == QPoly((1, Fraction(-5, 4), Fraction(1, 4)))
    assert p.evaluate(1) == 0
    assert (p - p).is_zero()
    assert (b + 1) ** 2 == QPoly((1, 2, 1))


@given(small_polys, small_polys, small_polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


def test_divmod_exact():
    b = QPoly.x()
    num = (1 - b) * (b ** 2) * QPoly((Fraction(3, 2),)) + QPoly((0, 0, 0, 0, 1))
    q, r = divmod(num, (1 - b) * b ** 2)
    assert q * ((1 - b) * b ** 2) + r == num
    assert num.evaluate(1) == 1  # nonzero at b=1, so (1-b) cannot divide it
    assert num.divisible_by(1 - b) is False
    exact = (1 - b) * b ** 2 * QPoly((2, 3))
    assert exact.divisible_by((1 - b) * b ** 2)
    with pytest.raises(ZeroDivisionError):
        divmod(num, QPoly.zero())


@given(small_polys, small_polys)
def test_divmod_reconstructs(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree or r.is_zero()


def test_evaluate_horner():
    p = QPoly((2, Fraction(-5, 2), Fraction(1, 2)))
    assert p.evaluate(0) == 2
    assert p.evaluate(2) == 2 - 5 + 2
    assert p.evaluate(Fraction(1, 2)) == Fraction(2) - Fraction(5, 4) + Fraction(1, 8)


def test_string_form_descending_with_fractions():
    p = QPoly((2, Fraction(-5, 2), Fraction(1, 2)))
    assert str(p) == "1/2*b^2 - 5/2*b + 2"
    assert str(QPoly.zero()) == "0"
    assert str(QPoly((0, 1), var="u")) == "u"


def test_falling_binomial():
    alpha = QPoly((0, 1))  # b
    assert falling_binomial(alpha, 0) == QPoly.one()
    assert falling_binomial(alpha, 1) == alpha
    # C(b, 2) = b(b-1)/2
    assert falling_binomial(alpha, 2) == QPoly((0, Fraction(-1, 2), Fraction(1, 2)))
    # integer sanity: C(5, 3) = 10
    assert falling_binomial(QPoly((5,)), 3).evaluate(0) == 10


def test_degree_of_product_adds():
    a = QPoly((1, 0, 3))
    b = QPoly((0, 2))
    assert (a * b).degree == a.degree + b.degree

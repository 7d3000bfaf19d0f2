"""Field axioms and exactness of the Gaussian rationals."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pmc_verify.gaussian import GaussianRational, I, ONE, ZERO, gr

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)
gaussians = st.builds(GaussianRational, rationals, rationals)


def test_constants():
    assert (I * I) == GaussianRational(-1)
    assert ONE * I == I
    assert ZERO.is_zero()
    assert not ONE.is_zero()


def test_division_exact():
    a = gr("3/2", "-5/7")
    b = gr("-2/9", "4/3")
    assert (a / b) * b == a


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_conjugate():
    a = gr(2, 3)
    assert a.conjugate() == gr(2, -3)
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).is_real()


def test_pow():
    assert I ** 4 == ONE
    assert I ** -1 == -I
    assert gr(2) ** 10 == gr(1024)


def test_denominators_positive_lowest_terms():
    g = GaussianRational(Fraction(4, -6), Fraction(-10, 4))
    assert g.re == Fraction(-2, 3) and g.re.denominator == 3
    assert g.im == Fraction(-5, 2) and g.im.denominator == 2


@given(gaussians, gaussians, gaussians)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(gaussians, gaussians)
def test_conj_multiplicative(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@given(gaussians)
def test_division_inverts(x):
    if not x.is_zero():
        assert ((ONE / x) * x) == ONE

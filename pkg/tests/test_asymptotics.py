from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mathieu_bounds.asymptotics import (
    X,
    LaurentSeries,
    alpha_coefficients,
    alpha_series,
    nested_approximant,
    s_series,
    series_arith,
)
from mathieu_bounds.errors import DomainError
from mathieu_bounds.mathieu import alpha, eval_s

KNOWN = [Fraction(13, 30), Fraction(104, 525), Fraction(592, 2625), Fraction(404032, 1010625)]


def sympy_alpha_coefficients(n: int) -> list[Fraction]:
    """Independent route: sympy series of the alpha map applied to the Bernoulli expansion."""
    x = sympy.Symbol("x")
    k = n + 2
    s = x - sum(abs(sympy.bernoulli(2 * i)) * x ** (i + 1) for i in range(1, k + 1))
    expr = ((12 / x**2 + 2 / x - 1) * s - 12 / x) / (12 - (12 / x + 6) * s)
    ser = sympy.series(expr, x, 0, n).removeO()
    return [Fraction(str(ser.coeff(x, i))) for i in range(n)]


def test_known_coefficients_exact():
    assert alpha_coefficients(4) == KNOWN
    assert alpha_coefficients(1) == KNOWN[:1]


def test_coefficients_match_sympy():
    assert alpha_coefficients(7) == sympy_alpha_coefficients(7)


def test_coefficients_stable_when_more_terms_used():
    a = alpha_series(8)
    b = alpha_series(10)
    for p in range(a.order):
        assert a.coefficient(p) == b.coefficient(p)


def test_alpha_series_order_bookkeeping():
    s = alpha_series(5)
    assert s.valuation == 0 and s.order == 4
    with pytest.raises(ValueError):
        s.coefficient(4)
    with pytest.raises(DomainError):
        alpha_series(2)


def test_s_series_uses_bernoulli_numbers():
    s = s_series(3)
    assert [s.coefficient(p) for p in range(1, 5)] == [1, Fraction(-1, 6), Fraction(-1, 30), Fraction(-1, 42)]
    assert s.order == 5
    with pytest.raises(DomainError):
        s_series(0)


def test_s_series_approximates_s_at_large_r():
    r = Fraction(50)
    approx = s_series(6).evaluate(1 / (r * r))
    assert abs(approx - eval_s(r).enclosure.mid) < Fraction(1, 10**30)


def test_truncated_alpha_series_matches_alpha_at_large_r():
    r = Fraction(100)
    a = alpha(r, alpha_width=Fraction(1, 10**14)).enclosure
    approx = alpha_series(8).evaluate(1 / (r * r))
    # next omitted coefficient is about 1e1, times x^7 = 1e-28
    assert abs(a.mid - approx) < Fraction(1, 10**12)


small = st.fractions(min_value=-20, max_value=20, max_denominator=20)
series = st.builds(lambda cs, v: LaurentSeries.exact(cs, v), st.lists(small, min_size=1, max_size=5), st.integers(-2, 2))


@given(series, series)
def test_exact_arithmetic_ring_laws(a, b):
    assert (a + b) - b == a
    assert a * b == b * a
    assert series_arith(a, b, "add") == a + b


@given(series, series)
def test_division_inverts_multiplication_to_known_order(a, b):
    if b.is_zero or a.is_zero:
        return
    q = (a * b).truncate((a * b).valuation + 6) / b
    for p in range(q.valuation, q.order):
        assert q.coefficient(p) == a.coefficient(p)


def test_geometric_series_division():
    one = LaurentSeries.exact([1])
    q = one / (one - X).truncate(5)
    assert list(q.coeffs) == [1, 1, 1, 1, 1] and q.order == 5


def test_exact_division_requires_truncation():
    with pytest.raises(ValueError):
        LaurentSeries.exact([1]) / LaurentSeries.exact([1, 1])


def test_truncated_product_order():
    a = LaurentSeries((1, 2), 0, 3)  # 1 + 2x + O(x^3)
    b = LaurentSeries((1,), 1, 4)  # x + O(x^4)
    c = a * b
    assert c.order == 4 and c.valuation == 1
    assert c.coefficient(2) == 2


def test_nested_approximant_converges_as_terms_grow():
    r = Fraction(3)
    s = eval_s(r).enclosure.mid
    errors = [abs(nested_approximant(alpha_series(k), r) - s) for k in (4, 6, 8)]
    assert errors[0] > errors[1] > errors[2]
    # at r = 10 the omitted alpha terms are O(1e-10), damped by dS/dalpha ~ 3e-6
    big = Fraction(10)
    assert abs(nested_approximant(alpha_series(6), big) - eval_s(big).enclosure.mid) < Fraction(1, 10**15)
    with pytest.raises(DomainError):
        nested_approximant(alpha_series(6), 0)


def test_constant_term_approximant_is_the_upper_bound():
    import random

    from mathieu_bounds.mathieu import hoorfar_qi_bound

    rng = random.Random(20)
    zero_term = LaurentSeries.exact([Fraction(13, 30)])
    for _ in range(20):
        r = Fraction(rng.randint(1, 10**4), rng.randint(1, 100))
        assert nested_approximant(zero_term, r) == hoorfar_qi_bound(r, Fraction(13, 30)).lo


@pytest.mark.parametrize("r", [5, 10, 20])
def test_s_series_inside_bernoulli_enclosure(r):
    from mathieu_bounds.mathieu import eval_russell, russell_remainder_bound

    r = Fraction(r)
    for k in (2, 4, 6):
        val = s_series(k).evaluate(1 / (r * r))
        enc = eval_russell(r, k).enclosure
        assert enc.lo <= val <= enc.hi
        assert abs(val - enc.mid) <= russell_remainder_bound(r, k)

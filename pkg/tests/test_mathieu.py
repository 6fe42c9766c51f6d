from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mathieu_bounds.errors import DomainError, MethodInapplicable, PrecisionInsufficient
from mathieu_bounds.exact import Interval, enclosure_matches_digits, zeta_enclosure
from mathieu_bounds.mathieu import (
    Method,
    MethodConfig,
    alpha,
    alpha_image,
    alpha_map,
    alpha_threshold,
    alzer_bound,
    companion_cube_sum,
    companion_direct,
    companion_zeta_series,
    eval_direct,
    eval_lampret,
    eval_russell,
    eval_s,
    eval_zeta_series,
    hoorfar_qi_bound,
    lampret_remainder_bound,
    russell_expansion,
    russell_remainder_bound,
    t_from_values,
    t_function,
)

from conftest import mathieu_oracle, mp_contains, to_mpf

W20 = Fraction(1, 10**20)


def companion_oracle(r: Fraction):
    rr = to_mpf(r)
    return mpmath.nsum(lambda n: 2 * n / (n * n + rr * rr) ** 3, [1, mpmath.inf], method="e")


def t_oracle(r: Fraction):
    rr = to_mpf(r)
    s, c = mathieu_oracle(r), companion_oracle(r)
    return (3 * rr**4 + 3 * rr**2 + mpmath.mpf(1) / 2) * s**2 - (6 * rr**2 + 2) * s - (2 * rr**2 + mpmath.mpf(1) / 2) * c + 3


def alpha_oracle(r: Fraction):
    rr, s = to_mpf(r), mathieu_oracle(r)
    return ((12 * rr**4 + 2 * rr**2 - 1) * s - 12 * rr**2) / (12 - (12 * rr**2 + 6) * s)


def test_direct_sum_contains_exact_partial_sum_plus_tail():
    r = Fraction(1)
    cv = eval_direct(r, 50)
    head = sum(Fraction(2 * n, (n * n + 1) ** 2) for n in range(1, 51))
    assert cv.lo <= head <= cv.hi
    assert cv.hi - head >= Fraction(1, 50**2 + 1) - Fraction(1, 10**20)
    assert mp_contains(cv.enclosure, mathieu_oracle(r))


def test_direct_two_sided_is_narrower_and_sound():
    r = Fraction(3, 2)
    one, two = eval_direct(r, 200), eval_direct(r, 200, two_sided=True)
    assert two.width < one.width
    assert mp_contains(two.enclosure, mathieu_oracle(r))


def test_direct_rejects_bad_arguments():
    with pytest.raises(DomainError):
        eval_direct(Fraction(5), 3)
    with pytest.raises(DomainError):
        eval_direct(Fraction(-1), 10)


@pytest.mark.parametrize("r", [Fraction(257, 100), Fraction(5), Fraction(10), Fraction(100)])
def test_russell_contains_oracle(r):
    cv = eval_russell(r, 6)
    assert mp_contains(cv.enclosure, mathieu_oracle(r))


@pytest.mark.parametrize("r,k", [(Fraction(3), 2), (Fraction(3), 6), (Fraction(10), 4), (Fraction(257, 100), 3)])
def test_russell_remainder_bound_dominates_true_error(r, k):
    err = abs(mathieu_oracle(r) - to_mpf(russell_expansion(r, k)))
    assert err <= to_mpf(russell_remainder_bound(r, k))


@pytest.mark.parametrize("r", [Fraction(1, 100), Fraction(1, 10), Fraction(3, 10)])
def test_zeta_series_contains_oracle(r):
    cv = eval_zeta_series(r, 10, Fraction(1, 10**30))
    assert mp_contains(cv.enclosure, mathieu_oracle(r))
    c = companion_zeta_series(r, 10, Fraction(1, 10**30))
    assert mp_contains(c.enclosure, companion_oracle(r))


def test_zeta_series_small_r_near_two_zeta3():
    cv = eval_zeta_series(Fraction(1, 10**4), 4)
    assert cv.enclosure.intersects(2 * zeta_enclosure(3)) or abs(cv.enclosure.mid - 2 * zeta_enclosure(3).mid) < Fraction(1, 10**6)


def test_zeta_series_one_term_brackets_between_partial_sums():
    # one summed term: [2 zeta(3) - 4 zeta(5) r^2, 2 zeta(3)]
    r = Fraction(1, 10)
    cv = eval_zeta_series(r, 1, Fraction(1, 10**30))
    z3, z5 = zeta_enclosure(3, Fraction(1, 10**30)), zeta_enclosure(5, Fraction(1, 10**30))
    assert cv.hi >= (2 * z3).lo
    assert cv.lo <= (2 * z3 - 4 * z5 * r * r).hi


def test_zeta_series_outside_regime():
    with pytest.raises(MethodInapplicable):
        eval_zeta_series(Fraction(31, 100), 4)


@pytest.mark.parametrize("r", [Fraction(31, 100), Fraction(1), Fraction(2), Fraction(257, 100)])
@pytest.mark.parametrize("m", [4, 5, 20])
def test_lampret_contains_oracle(r, m):
    cv = eval_lampret(r, m)
    assert mp_contains(cv.enclosure, mathieu_oracle(r))
    assert cv.width == 2 * lampret_remainder_bound(r, m)


@pytest.mark.parametrize("r", [Fraction(1, 100), Fraction(1, 10), Fraction(3, 10), Fraction(1, 2), Fraction(1),
                               Fraction(2), Fraction(257, 100), Fraction(5), Fraction(10), Fraction(100)])
def test_combined_meets_width_and_contains_oracle(r):
    cv = eval_s(r, MethodConfig(width=W20))
    assert cv.width <= W20
    assert cv.method is Method.COMBINED
    assert mp_contains(cv.enclosure, mathieu_oracle(r))


def test_method_config_validation():
    with pytest.raises(DomainError):
        MethodConfig(width=0)
    with pytest.raises(DomainError):
        MethodConfig(k=0)
    assert MethodConfig("lampret").method is Method.LAMPRET


@settings(max_examples=15)
@given(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=100).filter(lambda q: q > 0))
def test_methods_agree(r):
    width = Fraction(1, 10**8)
    encs = [eval_s(r, MethodConfig(m, width=width)).enclosure
            for m in (Method.COMBINED, Method.LAMPRET, Method.RUSSELL)]
    encs.append(eval_direct(r, 2000).enclosure)
    if r <= Fraction(3, 10):
        encs.append(eval_s(r, MethodConfig(Method.ZETA_SERIES, width=width)).enclosure)
    for a in encs:
        for b in encs:
            assert a.intersects(b)


def test_companion_routes_agree():
    r = Fraction(1, 5)
    z = companion_zeta_series(r, 12)
    d = companion_direct(r, 3000, two_sided=True)
    assert z.enclosure.intersects(d.enclosure)
    c = companion_cube_sum(Fraction(2), MethodConfig(width=Fraction(1, 10**15)))
    assert c.width <= Fraction(1, 10**15)
    assert mp_contains(c.enclosure, companion_oracle(Fraction(2)))


def test_alpha_map_reverses_order_above_threshold():
    r = Fraction(2)
    t = alpha_threshold(r)
    a, b = t + Fraction(1, 1000), t + Fraction(1, 100)
    assert alpha_map(b, r) < alpha_map(a, r)


def test_alpha_image_requires_enclosure_above_threshold():
    r = Fraction(1)
    t = alpha_threshold(r)
    with pytest.raises(PrecisionInsufficient):
        alpha_image(Interval(t - Fraction(1, 10), t + Fraction(1, 10)), r)


def test_alpha_at_lemma_boundary():
    cv = alpha(Fraction(257, 100), MethodConfig(width=W20))
    assert cv.width <= Fraction(1, 10**10)
    assert enclosure_matches_digits(cv.enclosure, "0.4709258826")
    assert mp_contains(cv.enclosure, alpha_oracle(Fraction(257, 100)))


@pytest.mark.parametrize("r", [Fraction(3, 10), Fraction(1), Fraction(5)])
def test_alpha_contains_oracle_and_sits_between_constants(r):
    cv = alpha(r, MethodConfig(width=W20))
    assert mp_contains(cv.enclosure, alpha_oracle(r))
    z3 = zeta_enclosure(3)
    a_star_hi = z3.lo / (6 * z3.lo - 6)
    assert Fraction(13, 30) < cv.lo and cv.hi < a_star_hi


def test_alpha_width_request_is_met():
    cv = alpha(Fraction(50), alpha_width=Fraction(1, 10**12))
    assert cv.width <= Fraction(1, 10**12)


@pytest.mark.parametrize("r", [Fraction(1, 5), Fraction(1), Fraction(258, 100), Fraction(50), Fraction(100)])
def test_t_function_contains_oracle_and_is_positive(r):
    tv = t_function(r, MethodConfig(width=W20))
    assert tv.lo > 0
    assert mp_contains(tv.enclosure, t_oracle(r))


def test_t_from_exact_values_is_a_point():
    assert t_from_values(Fraction(1), Fraction(1), Fraction(1)).is_point


@pytest.mark.parametrize("r,c", [(Fraction(1), Fraction(13, 30)), (Fraction(1, 10), Fraction(1, 2)), (Fraction(5), Fraction(1))])
def test_hoorfar_qi_bound_formula(r, c):
    rr, cc = to_mpf(r), to_mpf(c)
    expected = 1 / (rr**2 + mpmath.mpf(1) / 2 - (4 * rr**2 + 1) / (12 * (rr**2 + cc)))
    b = hoorfar_qi_bound(r, c)
    assert b.is_point and to_mpf(b.lo) == pytest.approx(expected, rel=1e-50)


def test_hoorfar_qi_bound_is_decreasing_in_constant():
    r = Fraction(1)
    assert hoorfar_qi_bound(r, Fraction(1)).hi < hoorfar_qi_bound(r, Fraction(13, 30)).lo
    iv = hoorfar_qi_bound(r, Interval(Fraction(1, 2), Fraction(1)))
    assert iv.lo == hoorfar_qi_bound(r, 1).lo and iv.hi == hoorfar_qi_bound(r, Fraction(1, 2)).hi


def test_alzer_bound():
    assert alzer_bound(Fraction(2), Fraction(1, 6)) == Fraction(6, 25)
    iv = alzer_bound(Fraction(1), Interval(Fraction(1, 6), Fraction(1, 2)))
    assert iv == Interval(Fraction(2, 3), Fraction(6, 7))


def test_direct_single_term():
    assert eval_direct(Fraction(1), 1).enclosure == Interval(Fraction(1, 2), Fraction(1))
    assert companion_direct(Fraction(1), 1).enclosure == Interval(Fraction(1, 4), Fraction(3, 8))


def test_direct_million_terms():
    cv = eval_direct(Fraction(1), 10**6)
    assert cv.width <= Fraction(1, 10**12)
    assert mp_contains(cv.enclosure, mathieu_oracle(Fraction(1)))


def test_direct_small_r_contains_two_zeta3():
    cv = eval_direct(Fraction(1, 10**6), 1000)
    assert mp_contains(cv.enclosure, 2 * mpmath.zeta(3))


def test_direct_width_shrinks_with_n():
    widths = [eval_direct(Fraction(2), n).width for n in (10, 100, 1000)]
    assert widths[0] > widths[1] > widths[2]


def test_russell_displayed_expansion():
    r = Fraction(10)
    displayed = (Fraction(1, 100) - Fraction(1, 6 * 10**4) - Fraction(1, 30 * 10**6)
                 - Fraction(1, 42 * 10**8) - Fraction(1, 30 * 10**10))
    assert russell_expansion(r, 4) == displayed
    assert eval_russell(Fraction(5), 4).enclosure.intersects(eval_direct(Fraction(5), 10**5).enclosure)


def test_russell_bound_decreases_with_r():
    bounds = [russell_remainder_bound(Fraction(r), 6) for r in (3, 5, 10, 100)]
    assert bounds == sorted(bounds, reverse=True)


def test_zeta_series_against_direct_at_quarter():
    z = eval_zeta_series(Fraction(1, 4), 20, Fraction(1, 10**25))
    d = eval_direct(Fraction(1, 4), 10**4)
    assert z.width <= Fraction(1, 10**8) and d.width <= Fraction(1, 10**8)
    assert z.enclosure.intersects(d.enclosure)


def test_lampret_against_direct_at_one():
    assert eval_lampret(Fraction(1), 5).enclosure.intersects(eval_direct(Fraction(1), 10**6).enclosure)


def test_companion_below_known_cap():
    c = companion_direct(Fraction(2), 10**5)
    assert c.hi < Fraction(1, 32)


def test_companion_small_r_below_two_zeta5():
    c = companion_zeta_series(Fraction(1, 10**3), 3)
    assert c.hi <= (2 * zeta_enclosure(5)).hi


@pytest.mark.parametrize("r", [Fraction(1, 20), Fraction(1, 2), Fraction(2), Fraction(30)])
def test_enclosures_are_positive(r):
    assert eval_s(r).lo > 0
    assert companion_cube_sum(r, MethodConfig(width=Fraction(1, 10**15))).lo > 0


@pytest.mark.parametrize("r", [Fraction(1, 20), Fraction(1), Fraction(30)])
def test_alpha_denominator_excludes_zero(r):
    s = eval_s(r).enclosure
    assert s.lo > alpha_threshold(r)
    den = 12 - (12 * r * r + 6) * s
    assert not den.contains_zero()


@pytest.mark.parametrize("r", [Fraction(1, 10), Fraction(1), Fraction(7)])
def test_alzer_sandwich(r):
    s = eval_s(r).enclosure
    z3 = zeta_enclosure(3)
    assert alzer_bound(r, 1 / (2 * z3)).hi < s.lo
    assert s.hi < alzer_bound(r, Fraction(1, 6))


@pytest.mark.parametrize("r", [Fraction(1, 2), Fraction(3, 2)])
def test_companion_matches_derivative_of_s(r):
    # non-rigorous diagnostic: central difference of S against -4r times the companion sum
    h = Fraction(1, 10**6)
    cfg = MethodConfig(width=Fraction(1, 10**20))
    deriv = (eval_s(r + h, cfg).enclosure.mid - eval_s(r - h, cfg).enclosure.mid) / (2 * h)
    c = companion_cube_sum(r, MethodConfig(width=Fraction(1, 10**15))).enclosure.mid
    assert abs(-deriv / (4 * r) - c) < Fraction(1, 10**9)


def test_t_at_three_and_one_fifth():
    assert t_function(Fraction(3)).lo > 0
    assert t_function(Fraction(1, 5)).lo > 0

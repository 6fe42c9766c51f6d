"""One test per acceptance criterion, each at its stated tolerance."""

import random
import time
from fractions import Fraction

from mathieu_bounds.asymptotics import alpha_series
from mathieu_bounds.exact import Interval, decimal_string, enclosure_matches_digits, truncates_to
from mathieu_bounds.mathieu import Method, MethodConfig, alpha, eval_direct, eval_s
from mathieu_bounds.polyalg import Polynomial, Sign, reciprocal_transform, sign_certificate, taylor_shift
from mathieu_bounds.verify import (
    UPPER_TRANSFORM_FORM,
    LOWER_TRANSFORM_FORM,
    LARGE_R_POLY_COEFFS,
    Status,
    VerifyConfig,
    alpha_transform,
    best_constants,
    lampret_function,
    order_reversal_check,
    small_r_t_polynomial,
    truncated_bernoulli_bound,
    verify_lemma3,
    verify_theorem,
)

GRID = [Fraction(s) for s in ("0.01", "0.1", "0.5", "1", "2", "2.57", "5", "10", "100")]


def test_criterion_1_best_constants(acceptance):
    t0 = time.perf_counter()
    bc = best_constants()
    elapsed = time.perf_counter() - t0
    ok = (enclosure_matches_digits(bc.a_star, "0.9915168156") and bc.a_star.width <= Fraction(1, 10**12)
          and decimal_string(bc.b_star, 10, "trunc") == "0.4333333333" and elapsed < 10)
    assert acceptance(1, "best constants", ok,
                      f"a* in [{decimal_string(bc.a_star.lo, 15, 'floor')}, {decimal_string(bc.a_star.hi, 15, 'ceil')}], "
                      f"width {float(bc.a_star.width):.1e}, b* = {bc.b_star}, {elapsed:.2f}s")


def test_criterion_2_alpha_endpoint(acceptance):
    cv = alpha(Fraction(257, 100), MethodConfig(width=Fraction(1, 10**20)))
    ok = cv.width <= Fraction(1, 10**10) and enclosure_matches_digits(cv.enclosure, "0.4709258826")
    assert acceptance(2, "alpha(2.57) endpoint", ok,
                      f"[{decimal_string(cv.lo, 15, 'floor')}, {decimal_string(cv.hi, 15, 'ceil')}]")


def test_criterion_3_lemma3_endpoint_rationals(acceptance):
    v1 = alpha_transform(lampret_function(5, -1))(Fraction(3, 10))
    v2 = alpha_transform(lampret_function(4, +1))(Fraction(257, 100))
    ok = (isinstance(v1, Fraction) and isinstance(v2, Fraction)
          and truncates_to(v1, "0.9596637512") and truncates_to(v2, "0.4360975104"))
    assert acceptance(3, "endpoint rationals", ok,
                      f"{decimal_string(v1, 12, 'trunc')}, {decimal_string(v2, 12, 'trunc')}")


def test_criterion_4_displayed_simplifications(acceptance):
    g = alpha_transform(truncated_bernoulli_bound(Fraction(-53, 500)))
    k = alpha_transform(truncated_bernoulli_bound(Fraction(3, 50)))
    cg, ck = g.proportional_to(UPPER_TRANSFORM_FORM), k.proportional_to(LOWER_TRANSFORM_FORM)
    ratios = [f.numerator.leading / f.denominator.leading for f in (g, k)]
    ok = cg is not None and ck is not None and ratios == [Fraction(13, 30)] * 2
    assert acceptance(4, "transformed truncated bounds", ok, f"factors {cg}, {ck}; limits {ratios[0]}, {ratios[1]}")


def test_criterion_5_certificates(acceptance):
    t0 = time.perf_counter()
    shifted = taylor_shift(Polynomial(LARGE_R_POLY_COEFFS), Fraction(257, 100))
    p_ok = (sign_certificate(shifted).verdict is Sign.ALL_POSITIVE
            and shifted[7] == Fraction(53456, 39375)
            and shifted[0] == Fraction(5236655690345652768413, 1970718750000000000000))
    q = small_r_t_polynomial(Fraction(1, 10**20))
    q_ok = sign_certificate(reciprocal_transform(q, Fraction(10, 3))).verdict is Sign.ALL_POSITIVE
    rep = verify_lemma3(VerifyConfig())
    phi_ok = all(rep.check(n).status is Status.VERIFIED for n in ("upper-transform-decreasing", "lower-transform-decreasing"))
    elapsed = time.perf_counter() - t0
    ok = p_ok and q_ok and phi_ok and elapsed < 300
    assert acceptance(5, "certificate replication", ok,
                      f"large-r shift {'ok' if p_ok else 'FAIL'}, small-r transform {'ok' if q_ok else 'FAIL'}, "
                      f"derivative numerators {'ok' if phi_ok else 'FAIL'}, {elapsed:.2f}s")


def test_criterion_6_asymptotic_coefficients(acceptance):
    s = alpha_series(5)
    got = [s.coefficient(i) for i in range(4)]
    expected = [Fraction(13, 30), Fraction(104, 525), Fraction(592, 2625), Fraction(404032, 1010625)]
    assert acceptance(6, "alpha expansion coefficients", got == expected, ", ".join(map(str, got)))


def test_criterion_7_theorem_grid(acceptance):
    rep = verify_theorem(GRID)
    brackets = [c for c in rep.checks if c.name.startswith(("bracket", "classical"))]
    ok = len(brackets) == 2 * len(GRID) and all(c.status is Status.VERIFIED for c in brackets)
    failed = [c.name for c in brackets if c.status is not Status.VERIFIED]
    assert acceptance(7, "theorem grid", ok, f"{len(brackets)} strict brackets checked" + (f", failed {failed}" if failed else ""))


def test_criterion_8_property_suite(acceptance):
    rng = random.Random(8)
    width = Fraction(1, 10**12)
    disagreements = []
    for _ in range(50):
        r = Fraction(rng.randint(1, 10**6), 10**4)
        encs = {m.value: eval_s(r, MethodConfig(m, width=width)).enclosure
                for m in (Method.COMBINED, Method.LAMPRET, Method.RUSSELL)}
        encs["direct"] = eval_direct(r, max(2000, int(r) + 1)).enclosure
        if r <= Fraction(3, 10):
            encs["zeta"] = eval_s(r, MethodConfig(Method.ZETA_SERIES, width=width)).enclosure
        names = sorted(encs)
        disagreements += [(r, a, b) for i, a in enumerate(names) for b in names[i + 1:]
                          if not encs[a].intersects(encs[b])]
    reversal = order_reversal_check(1000)
    unsound = 0
    for _ in range(1000):
        a = sorted(Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 100)) for _ in range(2))
        b = sorted(Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 100)) for _ in range(2))
        A, B = Interval(*a), Interval(*b)
        x = A.lo + (A.hi - A.lo) * Fraction(rng.randint(0, 1000), 1000)
        y = B.lo + (B.hi - B.lo) * Fraction(rng.randint(0, 1000), 1000)
        checks = [x + y in A + B, x - y in A - B, x * y in A * B]
        if not B.contains_zero():
            checks.append(x / y in A / B)
        unsound += not all(checks)
    ok = not disagreements and reversal.status is Status.VERIFIED and unsound == 0
    assert acceptance(8, "cross-method and property suite", ok,
                      f"50 r values, {len(disagreements)} disjoint pairs; order reversal {reversal.status.value}; "
                      f"{unsound} interval soundness failures in 1000 samples (seed 8)")

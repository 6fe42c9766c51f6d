"""Machine-checkable reports for the three range lemmas on alpha and the sharp bound theorem.

Each lemma report is a list of independent :class:`CheckResult` objects.
Checks backed by a coefficient-sign certificate or an exact identity are
labelled ``proved``; checks that evaluate at finitely many points are
labelled ``spot``, since a grid can never establish a statement for all r.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from .errors import DegenerateTransform, MathieuBoundsError
from .exact import (
    Interval,
    as_interval,
    bernoulli,
    decimal_string,
    enclosure_matches_digits,
    half_integer_binomial,
    pi_enclosure,
    to_rational,
    truncates_to,
    zeta_enclosure,
)
from .mathieu import (
    MethodConfig,
    alpha,
    alpha_map,
    alpha_threshold,
    alzer_bound,
    eval_lampret,
    eval_s,
    hoorfar_qi_bound,
    t_function,
)
from .polyalg import (
    Polynomial,
    Positivity,
    RationalFunction,
    certify_on_band,
    certify_on_ray,
    derivative_numerator,
    positivity_on_interval,
    reciprocal_transform,
    sign_certificate,
)

R = Polynomial.x()
R2 = R * R
B_STAR = Fraction(13, 30)
LEMMA1_START = Fraction(257, 100)
LEMMA2_END = Fraction(3, 10)
DEFAULT_THEOREM_GRID = tuple(
    Fraction(s) for s in ("0.01", "0.1", "0.5", "1", "2", "2.57", "5", "10", "100")
)
DEFAULT_T_GRID = tuple(Fraction(s) for s in ("2.6", "3", "5", "10", "50"))

# printed reference decimals
A_STAR_DIGITS = "0.9915168156"
ALPHA_257_DIGITS = "0.4709258826"
UPPER_TRANSFORM_AT_03_DIGITS = "0.9596637512"
LOWER_TRANSFORM_AT_257_DIGITS = "0.4360975104"

# coefficients of the degree-8 polynomial whose positivity on (2.57, oo) gives T > 0 there
LARGE_R_POLY_COEFFS = (
    Fraction(-11997107, 4204200),
    Fraction(-1051, 800),
    Fraction(-16728577, 1576575),
    Fraction(-1051, 200),
    Fraction(23171, 80850),
    Fraction(0),
    Fraction(164, 1575),
    Fraction(0),
    Fraction(104, 1575),
)
LARGE_R_SHIFTED_DEG7 = Fraction(53456, 39375)
LARGE_R_SHIFTED_CONST = Fraction(5236655690345652768413, 1970718750000000000000)

# alpha images of the truncated Bernoulli bounds, in lowest displayed form
UPPER_TRANSFORM_FORM = RationalFunction(Polynomial([-159, 0, 268, 0, 1758, 0, 2600]),
                                  Polynomial([-954, 0, -2208, 0, -2100, 0, 6000]))
LOWER_TRANSFORM_FORM = RationalFunction(Polynomial([9, 0, -23, 0, -123, 0, 260]),
                                Polynomial([54, 0, 78, 0, -210, 0, 600]))


class Status(enum.Enum):
    VERIFIED = "VERIFIED"
    FALSIFIED = "FALSIFIED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: Status
    witness: Any = None
    detail: str = ""
    kind: str = "proved"

    def __post_init__(self):
        if self.status is Status.FALSIFIED and self.witness is None:
            raise ValueError(f"FALSIFIED check {self.name!r} must carry a witness")


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    checks: tuple

    @property
    def overall(self) -> Status:
        statuses = [c.status for c in self.checks]
        if Status.FALSIFIED in statuses:
            return Status.FALSIFIED
        if not statuses or Status.INCONCLUSIVE in statuses:
            return Status.INCONCLUSIVE
        return Status.VERIFIED

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)


@dataclass(frozen=True)
class BestConstants:
    a_star: Interval
    b_star: Fraction = B_STAR


@dataclass(frozen=True)
class VerifyConfig:
    zeta_width: Fraction = Fraction(1, 10**25)
    pi_width: Fraction = Fraction(1, 10**30)
    s_width: Fraction = Fraction(1, 10**20)
    max_depth: int = 60

    def __post_init__(self):
        for name in ("zeta_width", "pi_width", "s_width"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))


def best_constants(zeta_width=Fraction(1, 10**25)) -> BestConstants:
    """a* = zeta(3)/(6 zeta(3) - 6) as an interval; b* = 13/30 exactly."""
    z3 = zeta_enclosure(3, zeta_width)
    # z/(6z - 6) = 1/(6 - 6/z) is decreasing in z > 1
    f = lambda z: z / (6 * z - 6)
    return BestConstants(Interval(f(z3.hi), f(z3.lo)))


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _strict_lt(name: str, x, y, detail: str = "", witness=None, kind: str = "proved") -> CheckResult:
    """x < y with exact interval separation."""
    xi, yi = as_interval(x), as_interval(y)
    if xi.hi < yi.lo:
        return CheckResult(name, Status.VERIFIED, None, detail, kind)
    if xi.lo >= yi.hi:
        return CheckResult(name, Status.FALSIFIED, witness if witness is not None else (xi, yi), detail, kind)
    return CheckResult(name, Status.INCONCLUSIVE, witness, detail + " (enclosures overlap)", kind)


def _combine(name: str, parts: Sequence[CheckResult], detail: str = "", kind: str = "proved") -> CheckResult:
    for st in (Status.FALSIFIED, Status.INCONCLUSIVE):
        bad = [p for p in parts if p.status is st]
        if bad:
            d = "; ".join(f"{p.name}: {p.detail}" for p in bad)
            return CheckResult(name, st, bad[0].witness, d, kind)
    return CheckResult(name, Status.VERIFIED, None, detail or "; ".join(p.detail for p in parts if p.detail), kind)


def _positivity_check(name: str, p: Polynomial, lo, hi=None, max_depth: int = 60) -> CheckResult:
    res = positivity_on_interval(p, lo, hi, max_depth)
    rng = f"({lo}, {'oo' if hi is None else hi})"
    if res.verdict is Positivity.PROVED_POSITIVE:
        return CheckResult(name, Status.VERIFIED, None, f"positive on {rng}: {res.detail}")
    if res.verdict is Positivity.NEGATIVE_SOMEWHERE:
        return CheckResult(name, Status.FALSIFIED, res.witness, f"negative at {res.witness} in {rng}")
    return CheckResult(name, Status.INCONCLUSIVE, res.witness, f"undecided on {rng}: {res.detail}")


def _rf_sign_check(name: str, f: RationalFunction, lo, hi=None, max_depth: int = 60) -> CheckResult:
    """f > 0 on (lo, hi): certify the denominator's sign first, then the matching numerator sign."""
    den = f.denominator
    pos = positivity_on_interval(den, lo, hi, max_depth)
    if pos.proved:
        sign = 1
    else:
        neg = positivity_on_interval(-den, lo, hi, max_depth)
        if not neg.proved:
            return CheckResult(name, Status.INCONCLUSIVE, None, "denominator sign not certified")
        sign = -1
    res = _positivity_check(name, f.numerator.scale(sign), lo, hi, max_depth)
    prefix = f"denominator {'positive' if sign > 0 else 'negative'}; "
    return CheckResult(res.name, res.status, res.witness, prefix + res.detail, res.kind)


def _certificate_check(name: str, cert, want: str, what: str) -> CheckResult:
    ok = cert.positive if want == "positive" else cert.negative
    if ok:
        return CheckResult(name, Status.VERIFIED, None,
                           f"{what}: all {len(cert.transformed)} coefficients {want}")
    return CheckResult(name, Status.INCONCLUSIVE, cert.witness_index,
                       f"{what}: coefficient {cert.witness_index} has the wrong sign")


def alpha_transform(f: RationalFunction, normalize: bool = False) -> RationalFunction:
    """((12r^4 + 2r^2 - 1) f - 12r^2) / (12 - (12r^2 + 6) f) as an exact rational function.

    No cancellation is attempted; ``normalize`` only rescales numerator and
    denominator together so the denominator is monic.
    """
    n, d = f.numerator, f.denominator
    num = (12 * R2 * R2 + 2 * R2 - 1) * n - 12 * R2 * d
    den = 12 * d - (12 * R2 + 6) * n
    if den.is_zero:
        raise DegenerateTransform("alpha transform denominator vanishes identically")
    if normalize:
        c = 1 / den.leading
        num, den = num.scale(c), den.scale(c)
    return RationalFunction(num, den)


def _inverse_power_sum(terms: dict[int, Fraction]) -> RationalFunction:
    """sum c_j / r^j as a rational function over r^max_j."""
    top = max(terms)
    num = Polynomial([terms.get(top - i, 0) for i in range(top + 1)])
    return RationalFunction(num, Polynomial.monomial(top))


def truncated_bernoulli_bound(last_coeff: Fraction) -> RationalFunction:
    """1/r^2 - 1/(6r^4) - 1/(30r^6) + last_coeff/r^8."""
    return _inverse_power_sum({2: Fraction(1), 4: -bernoulli(1), 6: -bernoulli(2), 8: last_coeff})


def lampret_function(m: int, sign: int) -> RationalFunction:
    """Euler-Maclaurin closed form at index m with the remainder bound added (sign=+1) or subtracted."""
    total = RationalFunction.from_poly(Polynomial())
    for n in range(1, m):
        total = total + RationalFunction(Polynomial([2 * n]), (R2 + n * n) ** 2)
    d = R2 + m * m
    total = total + RationalFunction(Polynomial([1]), d)
    total = total + RationalFunction(Polynomial([m]), d**2)
    total = total + RationalFunction(3 * m * m - R2, 6 * d**3)
    rem = RationalFunction(5 * m**4 + 15 * m * m * R2 + 6 * R2 * R2, 16 * d**5)
    return total + rem if sign > 0 else total - rem


def small_r_t_polynomial(zeta_width) -> Polynomial:
    """Lower bound for T on (0, 0.3] from Leibniz-truncated zeta series, with interval coefficients."""
    z = {s: zeta_enclosure(s, zeta_width) for s in (3, 5, 7, 9)}
    s_lo = 2 * z[3] + (-4 * z[5]) * R2 + (6 * z[7]) * R2**2 + (-8 * z[9]) * R2**3
    s_hi = 2 * z[3] + (-4 * z[5]) * R2 + (6 * z[7]) * R2**2
    c_hi = 2 * z[5] + (-6 * z[7]) * R2 + (12 * z[9]) * R2**2
    a = 3 * R2 * R2 + 3 * R2 + Fraction(1, 2)
    return a * s_lo * s_lo - (6 * R2 + 2) * s_hi - (2 * R2 + Fraction(1, 2)) * c_hi + 3


def small_r_s_lower_polynomial(zeta_width) -> Polynomial:
    z = {s: zeta_enclosure(s, zeta_width) for s in (3, 5, 7, 9)}
    return 2 * z[3] + (-4 * z[5]) * R2 + (6 * z[7]) * R2**2 + (-8 * z[9]) * R2**3


def _fmt(x, digits: int = 12) -> str:
    if isinstance(x, Interval):
        return f"[{decimal_string(x.lo, digits, 'floor')}, {decimal_string(x.hi, digits, 'ceil')}]"
    return decimal_string(x, digits, "trunc")


# ---------------------------------------------------------------------------
# alpha on r > 2.57
# ---------------------------------------------------------------------------


def verify_lemma1(cfg: Optional[VerifyConfig] = None, *, upper_remainder_constant=Fraction(53, 500),
                  lower_remainder_constant=Fraction(3, 50), t_grid: Sequence = DEFAULT_T_GRID) -> LemmaReport:
    cfg = cfg or VerifyConfig()
    upper_remainder_constant, lower_remainder_constant = to_rational(upper_remainder_constant), to_rational(lower_remainder_constant)
    checks = []
    consts = best_constants(cfg.zeta_width)
    a_star = consts.a_star

    # (1) coarsened remainder constants
    pi = pi_enclosure(cfg.pi_width)
    rem3 = pi / 2 * half_integer_binomial(3) * bernoulli(3)
    lower_lhs = bernoulli(3) + rem3
    upper_lhs = rem3 - bernoulli(3)
    checks.append(_combine("constants", [
        _strict_lt("1/42 + (pi/2)C(7/2,3)/42 < g", lower_lhs, upper_remainder_constant,
                   f"{_fmt(lower_lhs)} < {upper_remainder_constant}", witness=lower_lhs),
        _strict_lt("(pi/2)C(7/2,3)/42 - 1/42 < k", upper_lhs, lower_remainder_constant,
                   f"{_fmt(upper_lhs)} < {lower_remainder_constant}", witness=upper_lhs),
    ]))

    g = truncated_bernoulli_bound(-upper_remainder_constant)
    k = truncated_bernoulli_bound(lower_remainder_constant)
    threshold = RationalFunction(Polynomial([1]), R2 + Fraction(1, 2))

    # (2) upper truncation > 1/(r^2 + 1/2) on (1, oo)
    checks.append(_rf_sign_check("upper-truncation-above-threshold", g - threshold, 1, None, cfg.max_depth))

    # (3) transformed upper truncation < a* on (1.3, oo)
    try:
        tg = alpha_transform(g)
        den_sign = positivity_on_interval(tg.denominator, Fraction(13, 10), None, cfg.max_depth)
        sign = 1 if den_sign.proved else -1
        if sign < 0 and not positivity_on_interval(-tg.denominator, Fraction(13, 10), None, cfg.max_depth).proved:
            checks.append(CheckResult("upper-transform-below-a-star", Status.INCONCLUSIVE, None, "denominator sign not certified"))
        else:
            # N/D < a*  <=>  sign * (a* D - N) > 0
            diff = (tg.denominator * a_star - tg.numerator).scale(sign)
            res = _positivity_check("upper-transform-below-a-star", diff, Fraction(13, 10), None, cfg.max_depth)
            checks.append(CheckResult(res.name, res.status, res.witness,
                                      f"denominator {'positive' if sign > 0 else 'negative'}; " + res.detail))
    except DegenerateTransform as exc:
        checks.append(CheckResult("upper-transform-below-a-star", Status.INCONCLUSIVE, None, str(exc)))
        tg = None

    # (4) limits at infinity, and agreement with the displayed lowest forms
    tk = alpha_transform(k)
    parts = []
    for label, tf, form in (("upper", tg, UPPER_TRANSFORM_FORM), ("lower", tk, LOWER_TRANSFORM_FORM)):
        if tf is None:
            parts.append(CheckResult(label, Status.INCONCLUSIVE, None, "transform unavailable"))
            continue
        ratio = tf.numerator.leading / tf.denominator.leading if len(tf.numerator) == len(tf.denominator) else None
        factor = tf.proportional_to(form)
        ok = ratio == B_STAR
        parts.append(CheckResult(label, Status.VERIFIED if ok else Status.FALSIFIED,
                                 None if ok else (label, ratio),
                                 f"{label}: limit {ratio}, displayed form {'matches, factor ' + str(factor) if factor is not None else 'differs'}"))
    checks.append(_combine("limits", parts))

    # (5) the large-r lower polynomial, shifted by 2.57, has only positive coefficients
    p = Polynomial(LARGE_R_POLY_COEFFS)
    cert = certify_on_ray(p, LEMMA1_START)
    shifted = cert.transformed
    match = shifted[7] == LARGE_R_SHIFTED_DEG7 and shifted[0] == LARGE_R_SHIFTED_CONST
    res = _certificate_check("large-r-polynomial-certificate", cert, "positive", "p(r + 2.57)")
    checks.append(CheckResult(res.name, res.status, res.witness,
                              res.detail + f"; displayed coefficients {'reproduced' if match else 'NOT reproduced'}"))

    # (6) T > 0 on a grid (spot)
    parts = []
    for r in t_grid:
        try:
            tv = t_function(r, MethodConfig(width=cfg.s_width))
            parts.append(_strict_lt(f"T({r})", 0, tv.enclosure, f"T({r}) in {_fmt(tv.enclosure, 20)}",
                                    witness=r, kind="spot"))
        except MathieuBoundsError as exc:
            parts.append(CheckResult(f"T({r})", Status.INCONCLUSIVE, r, str(exc), "spot"))
    checks.append(_combine("t-positive-grid", parts, kind="spot"))

    # (7) alpha(2.57) strictly inside (13/30, a*)
    try:
        av = alpha(LEMMA1_START, MethodConfig(width=cfg.s_width), alpha_width=Fraction(1, 10**15))
        enc = av.enclosure
        digits_ok = enclosure_matches_digits(enc, ALPHA_257_DIGITS)
        parts = [
            _strict_lt("13/30 < alpha(2.57)", B_STAR, enc, witness=enc),
            _strict_lt("alpha(2.57) < a*", enc, a_star.lo, witness=enc),
        ]
        res = _combine("alpha-endpoint", parts, f"alpha(2.57) in {_fmt(enc, 15)}; "
                       f"digits {ALPHA_257_DIGITS} {'reproduced' if digits_ok else 'not reproduced'}")
        if res.status is Status.VERIFIED and not digits_ok:
            res = CheckResult(res.name, Status.INCONCLUSIVE, enc, res.detail)
        checks.append(res)
    except MathieuBoundsError as exc:
        checks.append(CheckResult("alpha-endpoint", Status.INCONCLUSIVE, None, str(exc)))

    return LemmaReport("lemma1", tuple(checks))


# ---------------------------------------------------------------------------
# alpha on 0 < r <= 0.3
# ---------------------------------------------------------------------------


def verify_lemma2(cfg: Optional[VerifyConfig] = None, *, certificate_shift=Fraction(10, 3), used_terms: int = 8) -> LemmaReport:
    cfg = cfg or VerifyConfig()
    checks = []
    consts = best_constants(cfg.zeta_width)
    r = LEMMA2_END
    r2 = r * r

    # (1) term monotonicity at r = 0.3; the term ratio grows with r, so smaller r follow
    parts = []
    for label, coeff, arg, factor in (("s", lambda n: 2 * n + 2, lambda n: 2 * n + 3, 2),
                                      ("t", lambda n: (n + 1) * (n + 2), lambda n: 2 * n + 5, 3)):
        seq = [coeff(n) * zeta_enclosure(arg(n), cfg.zeta_width) * r2**n for n in range(used_terms + 1)]
        bad = next((n for n in range(used_terms) if not seq[n + 1].certainly_lt(seq[n])), None)
        if bad is not None:
            parts.append(CheckResult(label, Status.INCONCLUSIVE, bad, f"{label}_{bad + 1} < {label}_{bad} not certified"))
        elif factor * r2 >= 1:
            parts.append(CheckResult(label, Status.INCONCLUSIVE, None, f"tail ratio bound {factor} r^2 >= 1"))
        else:
            parts.append(CheckResult(label, Status.VERIFIED, None,
                                     f"{label}_n decreasing for n <= {used_terms}, ratio <= {factor * r2} beyond"))
    checks.append(_combine("term-monotonicity", parts))

    # (2) small-r lower polynomial for T and its sanity conditions
    q = small_r_t_polynomial(cfg.zeta_width)
    s_lo = small_r_s_lower_polynomial(cfg.zeta_width)
    q0 = q(Fraction(0))
    s_lo_cert = certify_on_band(s_lo, LEMMA2_END)
    parts = [
        CheckResult("degree", Status.VERIFIED if q.degree == 16 else Status.INCONCLUSIVE, None, f"degree {q.degree}"),
        _strict_lt("q(0) > 0", 0, q0, f"q(0) in {_fmt(q0)}", witness=Fraction(0)),
        _certificate_check("S lower bound positive", s_lo_cert, "positive", "S lower series on (0, 0.3]"),
    ]
    checks.append(_combine("small-r-polynomial", parts))

    # (3) reciprocal-shift certificate
    cert = sign_certificate(reciprocal_transform(q, certificate_shift), shift=certificate_shift)
    checks.append(_certificate_check("small-r-polynomial-certificate", cert, "positive", f"(r + {certificate_shift})^16 q(1/(r + {certificate_shift}))"))

    # (4) endpoint ordering
    parts = []
    try:
        a03 = alpha(r, MethodConfig(width=cfg.s_width))
        parts.append(_strict_lt("13/30 < alpha(0.3)", B_STAR, a03.enclosure, f"alpha(0.3) in {_fmt(a03.enclosure)}",
                                witness=a03.enclosure, kind="spot"))
        parts.append(_strict_lt("alpha(0.3) < a*", a03.enclosure, consts.a_star, witness=a03.enclosure, kind="spot"))
        small = Fraction(1, 10**4)
        a0 = alpha(small, MethodConfig(width=cfg.s_width))
        dist = abs(a0.enclosure - consts.a_star)
        parts.append(_strict_lt("|alpha(1e-4) - a*| < 1e-3", dist, Fraction(1, 1000),
                                f"alpha(1e-4) in {_fmt(a0.enclosure)}", witness=small, kind="spot"))
    except MathieuBoundsError as exc:
        parts.append(CheckResult("alpha evaluation", Status.INCONCLUSIVE, None, str(exc), "spot"))
    checks.append(_combine("endpoints", parts, kind="spot"))

    return LemmaReport("lemma2", tuple(checks))


# ---------------------------------------------------------------------------
# alpha on 0.3 < r <= 2.57
# ---------------------------------------------------------------------------


def _decreasing_certificate(name: str, phi: Polynomial, band_end: Fraction) -> CheckResult:
    """phi < 0 on (0, band_end] via the reciprocal transform with s = 1/band_end."""
    cert = certify_on_band(phi, band_end)
    res = _certificate_check(name, cert, "negative", f"derivative numerator of degree {phi.degree}; (r + {cert.shift})^deg p(1/(r + {cert.shift}))")
    return res


def _negative_for_all_r(name: str, phi: Polynomial) -> CheckResult:
    """phi < 0 for every r > 0: phi = r^v u(r^2) with u having only negative coefficients."""
    v = phi.x_valuation()
    rest = phi.shift_down(v)
    try:
        u = rest.even_compressed()
        cert = sign_certificate(u)
        if cert.negative:
            return CheckResult(name, Status.VERIFIED, None,
                               f"derivative numerator of degree {phi.degree} = r^{v} u(r^2), all {len(u)} coefficients of u negative")
    except MathieuBoundsError:
        pass
    cert = sign_certificate(rest)
    if cert.negative:
        return CheckResult(name, Status.VERIFIED, None, f"derivative numerator of degree {phi.degree}, divided by r^{v}, has only negative coefficients")
    return CheckResult(name, Status.INCONCLUSIVE, cert.witness_index, f"coefficient {cert.witness_index} not negative")


def verify_lemma3(cfg: Optional[VerifyConfig] = None) -> LemmaReport:
    cfg = cfg or VerifyConfig()
    checks = []
    consts = best_constants(cfg.zeta_width)
    lo_end, hi_end = LEMMA2_END, LEMMA1_START

    # (1) lower sum (m = 5, remainder subtracted) and upper sum (m = 4, remainder added)
    z1 = lampret_function(5, -1)
    z2 = lampret_function(4, +1)
    samples = [Fraction(1, 3), Fraction(1), Fraction(2)]
    agree = all(z1(x) == eval_lampret(x, 5).lo and z2(x) == eval_lampret(x, 4).hi for x in samples)
    checks.append(CheckResult("euler-maclaurin-bounds", Status.VERIFIED if agree else Status.FALSIFIED,
                              None if agree else samples,
                              f"lower sum degrees {z1.numerator.degree}/{z1.denominator.degree}, "
                              f"upper sum degrees {z2.numerator.degree}/{z2.denominator.degree}; "
                              f"matches the evaluator endpoints at {', '.join(map(str, samples))}"))

    # (2) lower sum > 1/(r^2 + 1/2) for all r > 0
    threshold = RationalFunction(Polynomial([1]), R2 + Fraction(1, 2))
    checks.append(_rf_sign_check("lower-sum-above-threshold", z1 - threshold, 0, None, cfg.max_depth))

    f1 = alpha_transform(z1)
    f2 = alpha_transform(z2)
    phi1, psi1 = derivative_numerator(f1)
    phi2, psi2 = derivative_numerator(f2)

    # (3) upper transform decreasing on (0, 2.57]
    checks.append(_decreasing_certificate("upper-transform-decreasing", phi1, hi_end))

    # (4) lower transform decreasing for r > 0
    checks.append(_negative_for_all_r("lower-transform-decreasing", phi2))

    # (5) endpoint values as exact rationals
    v1 = f1(lo_end)
    v2 = f2(hi_end)
    parts = [
        CheckResult("value at 0.3", Status.VERIFIED if truncates_to(v1, UPPER_TRANSFORM_AT_03_DIGITS) else Status.FALSIFIED,
                    None if truncates_to(v1, UPPER_TRANSFORM_AT_03_DIGITS) else v1, f"upper transform at 0.3 = {_fmt(v1, 15)}"),
        _strict_lt("upper(0.3) < a*", v1, consts.a_star, witness=v1),
        CheckResult("value at 2.57", Status.VERIFIED if truncates_to(v2, LOWER_TRANSFORM_AT_257_DIGITS) else Status.FALSIFIED,
                    None if truncates_to(v2, LOWER_TRANSFORM_AT_257_DIGITS) else v2, f"lower transform at 2.57 = {_fmt(v2, 15)}"),
        _strict_lt("lower(2.57) > 13/30", B_STAR, v2, witness=v2),
    ]
    checks.append(_combine("endpoints", parts))

    # (6) the transformed denominators do not vanish on (0, 2.57], so the squared ones are positive
    parts = []
    for label, f in (("upper", f1), ("lower", f2)):
        d = f.denominator
        sign = 1 if d(hi_end) > 0 else -1
        res = _positivity_check(label, d.scale(sign), 0, hi_end, cfg.max_depth)
        end_ok = sign * d(hi_end) > 0
        if res.status is Status.VERIFIED and not end_ok:
            res = CheckResult(label, Status.FALSIFIED, hi_end, "denominator vanishes at 2.57")
        parts.append(CheckResult(label, res.status, res.witness,
                                 f"{label}: denominator {'positive' if sign > 0 else 'negative'} on (0, 2.57]; " + res.detail))
    checks.append(_combine("transform-denominators-nonvanishing", parts))

    return LemmaReport("lemma3", tuple(checks))


# ---------------------------------------------------------------------------
# theorem
# ---------------------------------------------------------------------------


def verify_theorem(grid: Sequence = DEFAULT_THEOREM_GRID, cfg: Optional[VerifyConfig] = None, *,
                   lower_constant=None, upper_constant=B_STAR) -> LemmaReport:
    """S strictly between the nested bounds at each grid point, plus the classical bracket and sharpness."""
    if not grid:
        raise ValueError("grid must be nonempty")
    cfg = cfg or VerifyConfig()
    consts = best_constants(cfg.zeta_width)
    lower_c = consts.a_star if lower_constant is None else lower_constant
    upper_c = upper_constant
    z3 = zeta_enclosure(3, cfg.zeta_width)
    alzer_lower_c = 1 / (2 * z3)
    method = MethodConfig(width=cfg.s_width)
    checks = []
    for r in (to_rational(x) for x in grid):
        try:
            s = eval_s(r, method).enclosure
            lo_b = hoorfar_qi_bound(r, lower_c)
            up_b = hoorfar_qi_bound(r, upper_c)
        except MathieuBoundsError as exc:
            checks.append(CheckResult(f"bracket r={r}", Status.INCONCLUSIVE, r, str(exc), "spot"))
            continue
        parts = [_strict_lt("lower < S", lo_b, s, witness=r, kind="spot"),
                 _strict_lt("S < upper", s, up_b, witness=r, kind="spot")]
        checks.append(_combine(f"bracket r={r}", parts,
                               f"lower {_fmt(lo_b, 20)} < S {_fmt(s, 20)} < upper {_fmt(up_b, 20)}", kind="spot"))
        al_lo = alzer_bound(r, alzer_lower_c)
        al_hi = alzer_bound(r, Fraction(1, 6))
        parts = [_strict_lt("1/(r^2 + 1/(2 zeta(3))) < S", al_lo, s, witness=r, kind="spot"),
                 _strict_lt("S < 1/(r^2 + 1/6)", s, al_hi, witness=r, kind="spot")]
        checks.append(_combine(f"classical r={r}", parts, kind="spot"))

    # sharpness at the two ends
    try:
        small = Fraction(1, 10**4)
        lo_small = hoorfar_qi_bound(small, lower_c)
        gap = abs(lo_small - 2 * z3)
        checks.append(_strict_lt("sharp-lower", gap, Fraction(1, 1000),
                                 f"lower bound at 1e-4 = {_fmt(lo_small)}, 2 zeta(3) = {_fmt(2 * z3)}",
                                 witness=small, kind="spot"))
        big = Fraction(50)
        s_big = eval_s(big, method).enclosure
        new_err = hoorfar_qi_bound(big, upper_c) - s_big
        old_err = alzer_bound(big, Fraction(1, 6)) - s_big
        checks.append(_strict_lt("sharp-upper", abs(new_err), abs(old_err),
                                 f"at r=50: nested error {_fmt(new_err, 22)} vs classical {_fmt(old_err, 22)}",
                                 witness=big, kind="spot"))
    except MathieuBoundsError as exc:
        checks.append(CheckResult("sharpness", Status.INCONCLUSIVE, None, str(exc), "spot"))
    return LemmaReport("theorem", tuple(checks))


# ---------------------------------------------------------------------------
# order reversal of the alpha map
# ---------------------------------------------------------------------------


def reverses_order(r, a, b) -> Optional[bool]:
    """Whether the alpha map sends a <= b to image(b) <= image(a); None outside its domain."""
    r, a, b = to_rational(r), to_rational(a), to_rational(b)
    t = alpha_threshold(r)
    if a <= t or b <= t:
        return None
    lo, hi = min(a, b), max(a, b)
    ilo, ihi = alpha_map(lo, r), alpha_map(hi, r)
    return ihi < ilo if lo < hi else ihi == ilo


def order_reversal_check(samples: int, seed: int = 20240601) -> CheckResult:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    for _ in range(samples):
        r = Fraction(rng.randint(1, 10**5), rng.randint(1, 10**3))
        t = alpha_threshold(r)
        cap = 1 / (r * r) + 1
        u1 = Fraction(rng.randint(1, 10**9), 10**9 + 1)
        u2 = Fraction(rng.randint(1, 10**9), 10**9 + 1)
        a, b = t + (cap - t) * u1, t + (cap - t) * u2
        if not reverses_order(r, a, b):
            return CheckResult("order-reversal", Status.FALSIFIED, (r, a, b), "image order not reversed", "spot")
    return CheckResult("order-reversal", Status.VERIFIED, None, f"{samples} samples, seed {seed}", "spot")


def verify_target(target: str, cfg: Optional[VerifyConfig] = None, grid: Optional[Sequence] = None) -> LemmaReport:
    cfg = cfg or VerifyConfig()
    if target == "lemma1":
        return verify_lemma1(cfg)
    if target == "lemma2":
        return verify_lemma2(cfg)
    if target == "lemma3":
        return verify_lemma3(cfg)
    if target == "theorem":
        return verify_theorem(grid or DEFAULT_THEOREM_GRID, cfg)
    if target == "all":
        reports = [verify_target(t, cfg, grid) for t in ("lemma1", "lemma2", "lemma3", "theorem")]
        return merge_reports("all", reports)
    raise ValueError(f"unknown target {target!r}")


def merge_reports(name: str, reports: Sequence[LemmaReport]) -> LemmaReport:
    checks = tuple(CheckResult(f"{rep.lemma}/{c.name}", c.status, c.witness, c.detail, c.kind)
                   for rep in reports for c in rep.checks)
    return LemmaReport(name, checks)

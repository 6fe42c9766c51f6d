"""Certified evaluation of Mathieu's series and the quantities built from it.

    S(r) = sum_{n>=1} 2n / (n^2 + r^2)^2
    C(r) = sum_{n>=1} 2n / (n^2 + r^2)^3          (companion sum, = -S'(r)/(4r))
    alpha(r) = ((12r^4 + 2r^2 - 1) S - 12r^2) / (12 - (12r^2 + 6) S)
    T(r) = (3r^4 + 3r^2 + 1/2) S^2 - (6r^2 + 2) S - (2r^2 + 1/2) C + 3

Four evaluators for S are available: direct summation with an integral-test
tail, the Bernoulli expansion for large r with its remainder bound, the
alternating zeta-value series for small r, and an Euler-Maclaurin closed form
with a bounded remainder (Lampret's formula).  Every result is a
:class:`CertifiedValue` whose enclosure provably contains the true value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import DomainError, MethodInapplicable, PrecisionExhausted, PrecisionInsufficient
from .exact import (
    Interval,
    as_interval,
    bernoulli,
    bits_for,
    enclose_sum,
    half_integer_binomial,
    pi_enclosure,
    requested_width,
    to_rational,
    zeta_enclosure,
)

DEFAULT_WIDTH = Fraction(1, 10**20)
ZETA_SERIES_MAX_R = Fraction(3, 10)
LAMPRET_MAX_R = Fraction(257, 100)
LAMPRET_MAX_M = 10**4
RUSSELL_DEFAULT_K = 6
RUSSELL_MAX_K = 60
DIRECT_MAX_N = 10**7
#: head sums up to this many terms are formed exactly, longer ones with outward rounding
EXACT_SUM_LIMIT = 400


class Method(enum.Enum):
    DIRECT = "direct"
    RUSSELL = "russell"
    ZETA_SERIES = "zeta"
    LAMPRET = "lampret"
    COMBINED = "combined"


@dataclass(frozen=True)
class CertifiedValue:
    enclosure: Interval
    method: Method
    terms_used: int
    r: Fraction

    @property
    def lo(self) -> Fraction:
        return self.enclosure.lo

    @property
    def hi(self) -> Fraction:
        return self.enclosure.hi

    @property
    def width(self) -> Fraction:
        return self.enclosure.width


@dataclass(frozen=True)
class MethodConfig:
    """Evaluator choice and its truncation parameters.

    Unset parameters are chosen automatically so that the enclosure width
    does not exceed ``width``.
    """

    method: Method = Method.COMBINED
    k: Optional[int] = None
    n_terms: Optional[int] = None
    m: Optional[int] = None
    width: Fraction = DEFAULT_WIDTH

    def __post_init__(self):
        object.__setattr__(self, "width", to_rational(self.width))
        if self.width <= 0:
            raise DomainError("width must be positive")
        if isinstance(self.method, str):
            object.__setattr__(self, "method", Method(self.method))
        for name in ("k", "n_terms", "m"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise DomainError(f"{name} must be positive")


def _positive_r(r) -> Fraction:
    r = to_rational(r)
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    return r


def _zeta_width(width: Fraction) -> Fraction:
    return min(width / 16, Fraction(1, 10**20))


# ---------------------------------------------------------------------------
# direct summation
# ---------------------------------------------------------------------------


def _power_sum(r: Fraction, n_max: int, power: int, tolerance: Fraction) -> Interval:
    """Enclose sum_{n=1}^{n_max} 2n/(n^2+r^2)^power."""
    if n_max <= 0:
        return Interval.point(0)
    p, q = r.numerator, r.denominator
    q2, p2 = q * q, p * p
    qpow = q ** (2 * power)
    if n_max <= EXACT_SUM_LIMIT:
        total = sum((Fraction(2 * n * qpow, (n * n * q2 + p2) ** power) for n in range(1, n_max + 1)), Fraction(0))
        return Interval.point(total)
    bits = bits_for(tolerance, n_max)
    return enclose_sum(((2 * n * qpow, (n * n * q2 + p2) ** power) for n in range(1, n_max + 1)), bits)


def _check_direct_n(r: Fraction, n: int) -> None:
    if not isinstance(n, int) or n < 1 or n < r:
        raise DomainError(f"direct summation needs an integer N >= max(1, r); got N={n}, r={r}")


def eval_direct(r, N: int, two_sided: bool = False) -> CertifiedValue:
    """Partial sum to N plus the integral-test tail.

    The summand decreases for t > r/sqrt(3), so for N >= r the tail lies in
    [0, 1/(N^2+r^2)]; with ``two_sided`` the lower end is raised to
    1/((N+1)^2+r^2).
    """
    r = _positive_r(r)
    _check_direct_n(r, N)
    r2 = r * r
    tail_hi = 1 / (N * N + r2)
    tail_lo = 1 / ((N + 1) ** 2 + r2) if two_sided else Fraction(0)
    head = _power_sum(r, N, 2, tail_hi / 2**64)
    return CertifiedValue(Interval(head.lo + tail_lo, head.hi + tail_hi), Method.DIRECT, N, r)


def direct_terms_for(r, width) -> int:
    """Smallest N >= max(1, r) with tail bound 1/(N^2 + r^2) <= width/2."""
    r, width = _positive_r(r), to_rational(width)
    target = 2 / width - r * r
    n = max(1, math.ceil(r))
    if target > 0:
        n = max(n, _isqrt_ceil(target))
    return n


def _isqrt_ceil(x: Fraction) -> int:
    n = math.isqrt(math.ceil(x))
    while n * n < x:
        n += 1
    return n


# ---------------------------------------------------------------------------
# Bernoulli expansion for large r
# ---------------------------------------------------------------------------


def russell_expansion(r, k: int) -> Fraction:
    """1/r^2 - sum_{i=1..k} B_2i / r^(2i+2)."""
    r = _positive_r(r)
    x = 1 / (r * r)
    return x - sum((bernoulli(i) * x ** (i + 1) for i in range(1, k + 1)), Fraction(0))


def russell_remainder_bound(r, k: int, acc=Fraction(1, 10**30)) -> Fraction:
    """Rational upper bound for |R_k(r)|: (pi/2) C(k+1/2, k) B_2k / r^(2k+2), pi rounded up."""
    r = _positive_r(r)
    if not isinstance(k, int) or k < 1:
        raise DomainError("k must be a positive integer")
    pi_hi = pi_enclosure(acc).hi
    return pi_hi / 2 * half_integer_binomial(k) * bernoulli(k) / r ** (2 * k + 2)


def eval_russell(r, k: int = RUSSELL_DEFAULT_K) -> CertifiedValue:
    r = _positive_r(r)
    centre = russell_expansion(r, k)
    bound = russell_remainder_bound(r, k)
    return CertifiedValue(Interval(centre - bound, centre + bound), Method.RUSSELL, k, r)


def best_russell_k(r, width) -> int:
    """Smallest k >= 6 meeting width, or the k minimising the remainder bound."""
    r, width = _positive_r(r), to_rational(width)
    best_k, best = RUSSELL_DEFAULT_K, russell_remainder_bound(r, RUSSELL_DEFAULT_K)
    k = RUSSELL_DEFAULT_K
    while 2 * best > width and k < RUSSELL_MAX_K:
        k += 1
        b = russell_remainder_bound(r, k)
        if b >= best:
            break
        best_k, best = k, b
    return best_k


# ---------------------------------------------------------------------------
# alternating zeta series for small r
# ---------------------------------------------------------------------------


def _leibniz(r: Fraction, terms: int, coeff: Callable[[int], int], zeta_arg: Callable[[int], int],
             ratio_factor: int, zeta_width: Fraction) -> Interval:
    """Enclose sum_{n>=0} (-1)^n coeff(n) zeta(zeta_arg(n)) r^(2n) by Leibniz bracketing.

    The terms must decrease monotonically: checked explicitly for n <= terms
    with interval zeta values, and beyond that from zeta being decreasing,
    which bounds the term ratio by ratio_factor * r^2.
    """
    r2 = r * r
    if ratio_factor * r2 >= 1:
        raise MethodInapplicable(f"terms not provably decreasing for r = {r}")
    seq = [coeff(n) * zeta_enclosure(zeta_arg(n), zeta_width) * r2**n for n in range(terms + 1)]
    for n in range(terms):
        if not seq[n + 1].certainly_lt(seq[n]):
            raise MethodInapplicable(f"term {n + 1} not certainly below term {n} at r = {r}")
    partial = Interval.point(0)
    for n in range(terms):
        partial = partial + seq[n] if n % 2 == 0 else partial - seq[n]
    nxt = seq[terms] if terms % 2 == 0 else -seq[terms]
    # the remainder lies between 0 and the first omitted term
    return Interval.hull(partial, partial + nxt)


def _check_zeta_regime(r: Fraction) -> None:
    if r > ZETA_SERIES_MAX_R:
        raise MethodInapplicable(f"zeta series evaluation is restricted to r <= 3/10, got {r}")


def eval_zeta_series(r, terms: int, acc=Fraction(1, 10**25)) -> CertifiedValue:
    """S(r) = sum_n (-1)^n (2n+2) zeta(2n+3) r^(2n), bracketed after ``terms`` summed terms."""
    r = _positive_r(r)
    _check_zeta_regime(r)
    if terms < 1:
        raise DomainError("terms must be >= 1")
    zw = requested_width(acc)
    enc = _leibniz(r, terms, lambda n: 2 * n + 2, lambda n: 2 * n + 3, 2, zw)
    return CertifiedValue(enc, Method.ZETA_SERIES, terms, r)


def companion_zeta_series(r, terms: int, acc=Fraction(1, 10**25)) -> CertifiedValue:
    """C(r) = sum_n (-1)^n (n+1)(n+2) zeta(2n+5) r^(2n), bracketed after ``terms`` terms."""
    r = _positive_r(r)
    _check_zeta_regime(r)
    zw = requested_width(acc)
    enc = _leibniz(r, terms, lambda n: (n + 1) * (n + 2), lambda n: 2 * n + 5, 3, zw)
    return CertifiedValue(enc, Method.ZETA_SERIES, terms, r)


def _auto_terms(evaluate: Callable[[int], CertifiedValue], width: Fraction, max_terms: int = 400) -> CertifiedValue:
    terms = 1
    while True:
        cv = evaluate(terms)
        if cv.width <= width:
            return cv
        if terms >= max_terms:
            raise PrecisionExhausted(f"series enclosure width {width} not reached with {terms} terms")
        terms += 1


# ---------------------------------------------------------------------------
# Euler-Maclaurin form
# ---------------------------------------------------------------------------


def lampret_remainder_bound(r, m: int) -> Fraction:
    """(5m^4 + 15m^2 r^2 + 6r^4) / (16 (m^2 + r^2)^5)."""
    r = _positive_r(r)
    r2, m2 = r * r, Fraction(m * m)
    return (5 * m2 * m2 + 15 * m2 * r2 + 6 * r2 * r2) / (16 * (m2 + r2) ** 5)


def lampret_centre(r, m: int, head: Optional[Interval] = None) -> Interval:
    r = _positive_r(r)
    r2, m2 = r * r, Fraction(m * m)
    d = m2 + r2
    if head is None:
        head = _power_sum(r, m - 1, 2, lampret_remainder_bound(r, m) / 2**32)
    return head + (1 / d + m / d**2 + (3 * m2 - r2) / (6 * d**3))


def eval_lampret(r, m: int) -> CertifiedValue:
    """Head sum to m-1, Euler-Maclaurin correction at m, and the remainder bound."""
    r = _positive_r(r)
    if not isinstance(m, int) or m < 1:
        raise DomainError("m must be a positive integer")
    centre = lampret_centre(r, m)
    bound = lampret_remainder_bound(r, m)
    return CertifiedValue(Interval(centre.lo - bound, centre.hi + bound), Method.LAMPRET, m, r)


def lampret_m_for(r, width) -> int:
    """Smallest m >= 4 whose remainder bound fits in width/2 (capped at LAMPRET_MAX_M)."""
    r, width = _positive_r(r), to_rational(width)
    fits = lambda m: 2 * lampret_remainder_bound(r, m) <= width
    lo = 4
    if fits(lo):
        return lo
    hi = 8
    while not fits(hi):
        if hi >= LAMPRET_MAX_M:
            return LAMPRET_MAX_M
        hi = min(2 * hi, LAMPRET_MAX_M)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fits(mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def eval_s(r, cfg: Optional[MethodConfig] = None) -> CertifiedValue:
    """Evaluate S(r) with the configured method.

    COMBINED picks the zeta series for r <= 3/10, the Euler-Maclaurin form for
    r <= 2.57 and the Bernoulli expansion beyond, then falls back to larger
    Euler-Maclaurin indices and finally direct summation while the width
    target is unmet.
    """
    r = _positive_r(r)
    cfg = cfg or MethodConfig()
    w = cfg.width
    method = cfg.method
    if method is Method.DIRECT:
        return eval_direct(r, cfg.n_terms or direct_terms_for(r, w))
    if method is Method.RUSSELL:
        return eval_russell(r, cfg.k or best_russell_k(r, w))
    if method is Method.LAMPRET:
        return eval_lampret(r, cfg.m or lampret_m_for(r, w))
    if method is Method.ZETA_SERIES:
        if cfg.n_terms:
            return eval_zeta_series(r, cfg.n_terms, _zeta_width(w))
        return _auto_terms(lambda t: eval_zeta_series(r, t, _zeta_width(w)), w)

    if r <= ZETA_SERIES_MAX_R:
        cv = _auto_terms(lambda t: eval_zeta_series(r, t, _zeta_width(w)), w)
    elif r <= LAMPRET_MAX_R:
        cv = eval_lampret(r, max(4, lampret_m_for(r, w)))
    else:
        cv = eval_russell(r, best_russell_k(r, w))
    if cv.width > w and r > ZETA_SERIES_MAX_R:
        cv = eval_lampret(r, lampret_m_for(r, w))
    if cv.width > w:
        n = direct_terms_for(r, w)
        if n > DIRECT_MAX_N:
            raise PrecisionExhausted(f"S({r}) to width {w} would need {n} direct terms")
        cv = eval_direct(r, n)
    return replace(cv, method=Method.COMBINED) if cv.method is not Method.COMBINED else cv


def companion_direct(r, N: int, two_sided: bool = False) -> CertifiedValue:
    """Partial sum of 2n/(n^2+r^2)^3 plus its integral-test tail 1/(2(N^2+r^2)^2)."""
    r = _positive_r(r)
    _check_direct_n(r, N)
    r2 = r * r
    tail_hi = 1 / (2 * (N * N + r2) ** 2)
    tail_lo = 1 / (2 * ((N + 1) ** 2 + r2) ** 2) if two_sided else Fraction(0)
    head = _power_sum(r, N, 3, tail_hi / 2**64)
    return CertifiedValue(Interval(head.lo + tail_lo, head.hi + tail_hi), Method.DIRECT, N, r)


def _companion_two_sided_n(r: Fraction, width: Fraction) -> int:
    r2 = r * r
    gap = lambda n: 1 / (2 * (n * n + r2) ** 2) - 1 / (2 * ((n + 1) ** 2 + r2) ** 2)
    lo = max(1, math.ceil(r))
    if 2 * gap(lo) <= width:
        return lo
    hi = 2 * lo
    while 2 * gap(hi) > width:
        hi *= 2
        if hi > DIRECT_MAX_N:
            raise PrecisionExhausted(f"companion sum at r={r} to width {width} needs too many terms")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if 2 * gap(mid) <= width:
            hi = mid
        else:
            lo = mid
    return hi


def companion_cube_sum(r, cfg: Optional[MethodConfig] = None) -> CertifiedValue:
    r = _positive_r(r)
    cfg = cfg or MethodConfig()
    w = cfg.width
    if cfg.method is Method.ZETA_SERIES or (cfg.method is Method.COMBINED and r <= ZETA_SERIES_MAX_R):
        if cfg.n_terms:
            return companion_zeta_series(r, cfg.n_terms, _zeta_width(w))
        return _auto_terms(lambda t: companion_zeta_series(r, t, _zeta_width(w)), w)
    if cfg.method is Method.DIRECT:
        n = cfg.n_terms or max(math.ceil(r), 1)
        if cfg.n_terms is None:
            n = _companion_two_sided_n(r, w)
            return companion_direct(r, n, two_sided=True)
        return companion_direct(r, n)
    return replace(companion_direct(r, _companion_two_sided_n(r, w), two_sided=True), method=Method.COMBINED)


# ---------------------------------------------------------------------------
# alpha, T and the closed-form bounds
# ---------------------------------------------------------------------------


def alpha_threshold(r) -> Fraction:
    """1/(r^2 + 1/2): alpha's defining map is decreasing on values above it."""
    r = _positive_r(r)
    return 1 / (r * r + Fraction(1, 2))


def alpha_map(v, r) -> Fraction:
    """((12r^4 + 2r^2 - 1) v - 12r^2) / (12 - (12r^2 + 6) v) for an exact value v."""
    r2 = to_rational(r) ** 2
    v = to_rational(v)
    den = 12 - (12 * r2 + 6) * v
    if den == 0:
        raise ZeroDivisionError("alpha map pole")
    return ((12 * r2 * r2 + 2 * r2 - 1) * v - 12 * r2) / den


def alpha_image(s_enclosure: Interval, r) -> Interval:
    """Exact image of an S-enclosure under the alpha map.

    The map is a Moebius transformation with determinant -48r^2 - 12 < 0, hence
    strictly decreasing on each side of its pole 1/(r^2+1/2); the enclosure
    must lie strictly above the pole.
    """
    r = _positive_r(r)
    if s_enclosure.lo <= alpha_threshold(r):
        raise PrecisionInsufficient(
            f"S enclosure {s_enclosure} not strictly above 1/(r^2+1/2) at r={r}; alpha denominator may vanish"
        )
    return Interval(alpha_map(s_enclosure.hi, r), alpha_map(s_enclosure.lo, r))


def alpha(r, cfg: Optional[MethodConfig] = None, alpha_width=None) -> CertifiedValue:
    """Enclosure of alpha(r); with ``alpha_width`` the S precision is tightened until it is met."""
    r = _positive_r(r)
    cfg = cfg or MethodConfig()
    for _ in range(8):
        s = eval_s(r, cfg)
        enc = alpha_image(s.enclosure, r)
        if alpha_width is None or enc.width <= to_rational(alpha_width) or cfg.method is not Method.COMBINED:
            return CertifiedValue(enc, s.method, s.terms_used, r)
        factor = enc.width / to_rational(alpha_width)
        cfg = replace(cfg, width=min(cfg.width, s.width) / (4 * factor))
    raise PrecisionExhausted(f"alpha({r}) to width {alpha_width} not reached")


def _quadratic_range(a: Fraction, b: Fraction, s: Interval) -> Interval:
    # exact range of a s^2 - b s over s, a > 0
    f = lambda x: a * x * x - b * x
    vals = [f(s.lo), f(s.hi)]
    vertex = b / (2 * a)
    if s.lo < vertex < s.hi:
        vals.append(f(vertex))
    return Interval(min(vals), max(vals))


def t_from_values(r, s, c) -> Interval:
    """T for given S and companion enclosures (or exact point values)."""
    r2 = to_rational(r) ** 2
    s, c = as_interval(s), as_interval(c)
    a = 3 * r2 * r2 + 3 * r2 + Fraction(1, 2)
    b = 6 * r2 + 2
    return _quadratic_range(a, b, s) - (2 * r2 + Fraction(1, 2)) * c + 3


def t_function(r, cfg: Optional[MethodConfig] = None) -> CertifiedValue:
    r = _positive_r(r)
    cfg = cfg or MethodConfig()
    r2 = r * r
    # T amplifies S errors by about 12r^2 and companion errors by 2r^2 + 1/2
    s = eval_s(r, replace(cfg, width=cfg.width / (12 * r2 + 4)))
    c = companion_cube_sum(r, replace(cfg, width=cfg.width / (4 * r2 + 1)))
    return CertifiedValue(t_from_values(r, s.enclosure, c.enclosure), Method.COMBINED, s.terms_used + c.terms_used, r)


def hoorfar_qi_bound(r, c) -> Interval:
    """Image of c under 1/(r^2 + 1/2 - (4r^2+1)/12 * (r^2+c)^-1), which is decreasing in c."""
    r = _positive_r(r)
    c = as_interval(c)
    r2 = r * r

    def h(cv: Fraction) -> Fraction:
        if r2 + cv <= 0:
            raise DomainError(f"r^2 + c must be positive (r={r}, c={cv})")
        inner = r2 + Fraction(1, 2) - (4 * r2 + 1) / (12 * (r2 + cv))
        if inner <= 0:
            raise DomainError(f"nested bound undefined: inner expression {inner} <= 0 at r={r}, c={cv}")
        return 1 / inner

    return Interval(h(c.hi), h(c.lo))


def alzer_bound(r, c) -> Union[Fraction, Interval]:
    """1/(r^2 + c); an interval c gives the interval image."""
    r = _positive_r(r)
    r2 = r * r
    if isinstance(c, Interval):
        if r2 + c.lo <= 0:
            raise DomainError("r^2 + c must be positive")
        return Interval(1 / (r2 + c.hi), 1 / (r2 + c.lo))
    c = to_rational(c)
    if r2 + c <= 0:
        raise DomainError("r^2 + c must be positive")
    return 1 / (r2 + c)

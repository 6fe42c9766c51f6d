"""Exact rational scalars, rational interval arithmetic and enclosures of pi and zeta(s).

Every scalar is a :class:`fractions.Fraction`.  Intervals have Fraction
endpoints and every operation returns an interval containing the exact image
set, so no floating-point number ever enters a rigorous computation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational
from typing import Iterable, Union

from .errors import DomainError, IntervalDivisionError, PrecisionExhausted

ExactRational = Fraction
Scalar = Union[Fraction, int]

#: hard cap on the number of summed terms in any series enclosure
MAX_TERMS = 10**7


def to_rational(value) -> Fraction:
    """Convert ints, Fractions and decimal/fraction strings ("2.57", "257/100", "1e-9") exactly.

    Floats are refused: 2.57 as a binary float is not 257/100.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError("floats are not accepted on the rigorous path; pass a string or Fraction")
    return Fraction(value)


@dataclass(frozen=True)
class AccuracyRequest:
    """Requested maximal width of an enclosure."""

    max_width: Fraction

    def __post_init__(self):
        w = to_rational(self.max_width)
        if w <= 0:
            raise DomainError("max_width must be positive")
        object.__setattr__(self, "max_width", w)

    @classmethod
    def coerce(cls, acc) -> "AccuracyRequest":
        if isinstance(acc, AccuracyRequest):
            return acc
        return cls(to_rational(acc))


def requested_width(acc) -> Fraction:
    """Max width from an AccuracyRequest or a bare rational."""
    return AccuracyRequest.coerce(acc).max_width


# ---------------------------------------------------------------------------
# intervals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = to_rational(self.lo), to_rational(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> "Interval":
        x = to_rational(x)
        return cls(x, x)

    @classmethod
    def hull(cls, *items) -> "Interval":
        ivs = [as_interval(i) for i in items]
        return cls(min(i.lo for i in ivs), max(i.hi for i in ivs))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        x = to_rational(x)
        return self.lo <= x <= self.hi

    __contains__ = contains

    def intersects(self, other) -> bool:
        other = as_interval(other)
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other) -> "Interval":
        other = as_interval(other)
        if not self.intersects(other):
            raise ValueError("disjoint intervals")
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def certainly_lt(self, other) -> bool:
        """True when every element of self is strictly below every element of other."""
        return self.hi < as_interval(other).lo

    def certainly_gt(self, other) -> bool:
        return self.lo > as_interval(other).hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    # arithmetic ------------------------------------------------------------

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_point:
            c = other.lo
            return Interval(self.lo * c, self.hi * c) if c >= 0 else Interval(self.hi * c, self.lo * c)
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.contains_zero():
            raise IntervalDivisionError(f"division by interval containing zero: {self}")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** (-n)).reciprocal()
        if n == 0:
            return Interval(1, 1)
        if n % 2 == 1 or self.lo >= 0:
            return Interval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            return Interval(self.hi**n, self.lo**n)
        return Interval(0, max(self.lo**n, self.hi**n))

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0, max(-self.lo, self.hi))

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"

    def __str__(self):
        return f"[{decimal_string(self.lo, 12, 'floor')}, {decimal_string(self.hi, 12, 'ceil')}]"


def _coerce(x):
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Interval.point(x)
    return NotImplemented


def as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(to_rational(x))


def lower(x) -> Fraction:
    """Lower endpoint of an interval, or the value itself for an exact scalar."""
    return x.lo if isinstance(x, Interval) else Fraction(x)


def upper(x) -> Fraction:
    return x.hi if isinstance(x, Interval) else Fraction(x)


# ---------------------------------------------------------------------------
# decimal rendering
# ---------------------------------------------------------------------------


def decimal_string(x, digits: int, mode: str = "trunc") -> str:
    """Render x with exactly ``digits`` fractional digits.

    mode is ``floor`` (toward -inf), ``ceil`` (toward +inf) or ``trunc`` (toward 0).
    """
    x = to_rational(x)
    scaled = x * 10**digits
    if mode == "floor":
        q = scaled.numerator // scaled.denominator
    elif mode == "ceil":
        q = -((-scaled.numerator) // scaled.denominator)
    elif mode == "trunc":
        q = abs(scaled.numerator) // scaled.denominator
        q = q if x >= 0 else -q
    else:
        raise ValueError(f"unknown rounding mode {mode!r}")
    sign = "-" if q < 0 else ""
    s = str(abs(q)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def truncates_to(x, printed: str) -> bool:
    """True when x truncated to the number of digits in ``printed`` gives exactly ``printed``."""
    digits = len(printed.split(".")[1]) if "." in printed else 0
    return decimal_string(x, digits, "trunc") == printed


def enclosure_matches_digits(iv: Interval, printed: str) -> bool:
    """Both endpoints truncate to the same printed decimal, so the true value does too."""
    return truncates_to(iv.lo, printed) and truncates_to(iv.hi, printed)


# ---------------------------------------------------------------------------
# outward-rounded summation
# ---------------------------------------------------------------------------


def enclose_sum(terms: Iterable[tuple[int, int]], bits: int) -> Interval:
    """Enclose sum(num/den) for positive integer pairs using fixed-point outward rounding.

    Each term is floored and ceiled at 2**-bits, so the result has exact
    dyadic endpoints and width at most (number of terms) * 2**-bits.
    """
    lo = hi = 0
    for num, den in terms:
        q, rem = divmod(num << bits, den)
        lo += q
        hi += q + (rem != 0)
    scale = 1 << bits
    return Interval(Fraction(lo, scale), Fraction(hi, scale))


def bits_for(tolerance: Fraction, n_terms: int) -> int:
    """Smallest fixed-point precision with n_terms * 2**-bits <= tolerance."""
    bits = 1
    while Fraction(n_terms, 1 << bits) > tolerance:
        bits += 1
    return bits


# ---------------------------------------------------------------------------
# Bernoulli numbers and binomials
# ---------------------------------------------------------------------------

_bernoulli_lock = threading.Lock()
_bernoulli_table: tuple[Fraction, ...] = (Fraction(1),)


def signed_bernoulli(n: int) -> Fraction:
    """Classical signed Bernoulli number B_n with B_1 = -1/2."""
    global _bernoulli_table
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    table = _bernoulli_table
    if n < len(table):
        return table[n]
    with _bernoulli_lock:
        values = list(_bernoulli_table)
        for m in range(len(values), n + 1):
            # sum_{j=0}^{m} C(m+1, j) B_j = 0
            acc = sum((comb(m + 1, j) * values[j] for j in range(m)), Fraction(0))
            values.append(-acc / (m + 1))
        # publish only the fully built table
        _bernoulli_table = tuple(values)
        return _bernoulli_table[n]


def bernoulli(i: int) -> Fraction:
    """B_{2i} in the all-positive convention: bernoulli(1) = 1/6, bernoulli(2) = 1/30, ..."""
    if not isinstance(i, int) or i < 1:
        raise DomainError(f"bernoulli index must be a positive integer, got {i!r}")
    return abs(signed_bernoulli(2 * i))


def half_integer_binomial(k: int) -> Fraction:
    """C(k + 1/2, k) = prod_{j=1..k} (k + 3/2 - j) / j."""
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    out = Fraction(1)
    for j in range(1, k + 1):
        out *= (Fraction(2 * k + 3 - 2 * j, 2)) / j
    return out


# ---------------------------------------------------------------------------
# pi
# ---------------------------------------------------------------------------


def _arctan_inverse(q: int, n_terms: int) -> Interval:
    """Bracket arctan(1/q) between consecutive partial sums of its alternating series."""
    total = Fraction(0)
    q2 = q * q
    power = Fraction(1, q)
    for k in range(n_terms):
        term = power / (2 * k + 1)
        total += term if k % 2 == 0 else -term
        power /= q2
    next_term = power / (2 * n_terms + 1)
    other = total + next_term if n_terms % 2 == 0 else total - next_term
    return Interval.hull(total, other)


@lru_cache(maxsize=64)
def _pi_cached(width: Fraction) -> Interval:
    n = 1
    while True:
        iv = 16 * _arctan_inverse(5, n) - 4 * _arctan_inverse(239, n)
        if iv.width <= width:
            return iv
        n += max(1, n // 2)
        if n > MAX_TERMS:
            raise PrecisionExhausted(f"pi enclosure of width {width} not reached")


def pi_enclosure(acc=Fraction(1, 10**30)) -> Interval:
    """Enclosure of pi from Machin's formula pi = 16 atan(1/5) - 4 atan(1/239)."""
    return _pi_cached(requested_width(acc))


# ---------------------------------------------------------------------------
# zeta(s), integer s >= 2
# ---------------------------------------------------------------------------


def _integral_test_zeta(s: int, width: Fraction) -> Interval:
    # tail sum_{n>N} n^-s lies in (0, N^(1-s)/(s-1)]
    half = width / 2
    n = 1
    while Fraction(1, (s - 1) * n ** (s - 1)) > half:
        n *= 2
        if n > MAX_TERMS:
            raise PrecisionExhausted(f"zeta({s}) to width {width} needs more than {MAX_TERMS} terms")
    lo_n, hi_n = n // 2, n
    while hi_n - lo_n > 1:
        m = (lo_n + hi_n) // 2
        if Fraction(1, (s - 1) * m ** (s - 1)) <= half:
            hi_n = m
        else:
            lo_n = m
    n = max(hi_n, 1)
    tail = Fraction(1, (s - 1) * n ** (s - 1))
    if n <= 2000:
        partial = Interval.point(sum((Fraction(1, k**s) for k in range(1, n + 1)), Fraction(0)))
    else:
        bits = bits_for(width - tail, n)
        partial = enclose_sum(((1, k**s) for k in range(1, n + 1)), bits)
    return Interval(partial.lo, partial.hi + tail)


def _euler_maclaurin_zeta(s: int, width: Fraction) -> Interval:
    # zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 - sum_{k=1}^{q} B_2k/(2k)! f^(2k-1)(N) + R
    # with f(x) = x^-s and |R| <= |B_2q|/(2q)! * |f^(2q-1)(N)|.
    n_start = max(8, 2 * s)
    n = n_start
    while n <= MAX_TERMS:
        head = sum((Fraction(1, k**s) for k in range(1, n)), Fraction(0))
        centre = head + Fraction(1, (s - 1) * n ** (s - 1)) + Fraction(1, 2 * n**s)
        # |f^(j)(N)| = s (s+1) ... (s+j-1) N^(-s-j)
        rising = s  # s^(rising j) for j = 1
        fact = 1  # (2k)!
        best = None
        for k in range(1, 4 * n):
            j = 2 * k - 1
            if k > 1:
                rising *= (s + j - 2) * (s + j - 1)
            fact *= (2 * k - 1) * (2 * k)
            deriv_abs = Fraction(rising, n ** (s + j))
            b = signed_bernoulli(2 * k)
            # f^(2k-1) is negative, so -B_2k/(2k)! * f^(2k-1)(N) = B_2k/(2k)! * |f^(2k-1)(N)|
            correction = b / fact * deriv_abs
            bound = abs(b) / fact * deriv_abs
            if best is not None and bound > best:
                break  # asymptotic regime over; enlarge N
            best = bound
            if 2 * bound <= width:
                # remainder bound R_q uses the same q as the last included correction
                centre_k = centre + correction
                return Interval(centre_k - bound, centre_k + bound)
            centre += correction
        n *= 2
    raise PrecisionExhausted(f"zeta({s}) to width {width} not reached")


@lru_cache(maxsize=512)
def _zeta_cached(s: int, width: Fraction, method: str) -> Interval:
    if method == "euler-maclaurin":
        return _euler_maclaurin_zeta(s, width)
    if method == "integral":
        return _integral_test_zeta(s, width)
    raise ValueError(f"unknown zeta method {method!r}")


def zeta_enclosure(s: int, acc=Fraction(1, 10**20), method: str = "euler-maclaurin") -> Interval:
    """Rational interval of width <= max_width containing zeta(s).

    ``method="integral"`` uses a partial sum with the integral-test tail
    bracket (0, N^(1-s)/(s-1)]; it is transparent but needs about
    width^(-1/(s-1)) terms.  The default Euler-Maclaurin tail reaches
    widths of 1e-30 and below with a few dozen terms.
    """
    if not isinstance(s, int) or s < 2:
        raise DomainError(f"zeta enclosure needs integer s >= 2, got {s!r}")
    return _zeta_cached(s, requested_width(acc), method)

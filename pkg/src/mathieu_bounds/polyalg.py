"""Dense univariate polynomials, rational functions and coefficient-sign certificates.

A :class:`Polynomial` holds its coefficients lowest power first.  Coefficients
are either exact Fractions or :class:`~mathieu_bounds.exact.Interval` objects;
in the latter case the polynomial stands for the set of all polynomials whose
j-th coefficient lies in the j-th interval and every operation is set-sound.

Certificates follow one convention:

* positivity on the ray (c, oo): Taylor-shift by c, inspect coefficients;
* positivity on (0, 1/s]: reciprocal transform (x+s)^d p(1/(x+s)), inspect.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateTransform, DomainError
from .exact import Interval, lower, to_rational, upper

DEFAULT_MAX_DEPTH = 60


def _is_zero(c) -> bool:
    if isinstance(c, Interval):
        return c.lo == 0 and c.hi == 0
    return c == 0


def _coeff(c):
    if isinstance(c, Interval):
        return c
    return to_rational(c)


class Polynomial:
    """Immutable dense polynomial; ``Polynomial([1, 0, 3])`` is 1 + 3x^2."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [_coeff(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self):
        """Degree; the zero polynomial has degree -inf."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_interval(self) -> bool:
        return any(isinstance(c, Interval) for c in self.coeffs)

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # arithmetic ------------------------------------------------------------

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = Polynomial([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return Polynomial([c * a for a in self.coeffs])

    def __call__(self, x):
        """Horner evaluation; an Interval argument yields a sound interval image."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def x_valuation(self) -> int:
        """Largest v with x^v dividing self (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        return 0

    def shift_down(self, v: int) -> "Polynomial":
        """Divide by x^v; the low coefficients must vanish."""
        if any(not _is_zero(c) for c in self.coeffs[:v]):
            raise DomainError(f"polynomial is not divisible by x^{v}")
        return Polynomial(self.coeffs[v:])

    def compose_square(self) -> "Polynomial":
        """p(x^2)."""
        out = [Fraction(0)] * (2 * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return Polynomial(out)

    def even_compressed(self) -> "Polynomial":
        """For an even polynomial p(x) = q(x^2), return q."""
        if any(not _is_zero(c) for c in self.coeffs[1::2]):
            raise DomainError("polynomial has odd-degree terms")
        return Polynomial(self.coeffs[0::2])

    def content_normalized(self) -> "Polynomial":
        """Exact polynomial divided by its leading coefficient (monic)."""
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction, Interval)) and not isinstance(x, bool):
        return Polynomial([x])
    return NotImplemented


RationalPolynomial = Polynomial
IntervalPolynomial = Polynomial


def interval_polynomial(coeffs: Sequence) -> Polynomial:
    """Polynomial whose coefficients are all promoted to intervals."""
    return Polynomial([c if isinstance(c, Interval) else Interval.point(c) for c in coeffs])


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Exact Euclidean division over the rationals."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_interval or b.is_interval:
        raise TypeError("Euclidean division needs exact coefficients")
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    lead = b.coeffs[-1]
    quot = [Fraction(0)] * max(len(rem) - db, 1)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] / lead
        quot[k] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[k + j] -= c * bc
    return Polynomial(quot), Polynomial(rem[:db] if db > 0 else [])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    return a.content_normalized() if not a.is_zero else a


# ---------------------------------------------------------------------------
# shifts and transforms
# ---------------------------------------------------------------------------


def taylor_shift(p: Polynomial, s) -> Polynomial:
    """Coefficients of p(x + s), by repeated synthetic division (Ruffini-Horner)."""
    if not isinstance(s, Interval):
        s = to_rational(s)
    a = list(p.coeffs)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] = a[j] + s * a[j + 1]
    return Polynomial(a)


def reverse(p: Polynomial, degree: Optional[int] = None) -> Polynomial:
    """x^d p(1/x) with d = degree (defaults to deg p)."""
    d = len(p.coeffs) - 1 if degree is None else degree
    if d < len(p.coeffs) - 1:
        raise DomainError("reversal degree below polynomial degree")
    padded = list(p.coeffs) + [Fraction(0)] * (d + 1 - len(p.coeffs))
    return Polynomial(padded[::-1])


def reciprocal_transform(p: Polynomial, s) -> Polynomial:
    """(x + s)^deg(p) * p(1/(x + s)): reverse the coefficients, then Taylor-shift by s.

    For s > 0, x in (0, oo) maps onto 1/(x+s) in (0, 1/s), and x = 0 onto 1/s.
    """
    s = to_rational(s)
    if s < 0:
        raise DomainError("reciprocal transform needs s >= 0")
    return taylor_shift(reverse(p), s)


def mobius_to_ray(p: Polynomial, a, b) -> Polynomial:
    """(1+y)^d p((a + b y)/(1 + y)): y in (0, oo) covers x in (a, b)."""
    a, b = to_rational(a), to_rational(b)
    d = len(p.coeffs) - 1
    if d < 0:
        return p
    # p1(t) = p(a + (b - a) t)
    p1 = taylor_shift(p, a)
    w = b - a
    p1 = Polynomial([c * w**i for i, c in enumerate(p1.coeffs)])
    return reverse(taylor_shift(reverse(p1, d), 1), d)


# ---------------------------------------------------------------------------
# sign certificates
# ---------------------------------------------------------------------------


class Sign(enum.Enum):
    ALL_POSITIVE = "ALL_POSITIVE"
    ALL_NEGATIVE = "ALL_NEGATIVE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SignCertificate:
    verdict: Sign
    shift: Optional[Fraction]
    transformed: Polynomial
    witness_index: Optional[int] = None

    @property
    def positive(self) -> bool:
        return self.verdict is Sign.ALL_POSITIVE

    @property
    def negative(self) -> bool:
        return self.verdict is Sign.ALL_NEGATIVE


def sign_certificate(p: Polynomial, shift=None) -> SignCertificate:
    """Classify the coefficient signs of p (interval coefficients by their endpoints).

    ALL_POSITIVE needs every coefficient, zeros included, strictly positive.
    ``shift`` is bookkeeping only: the shift that produced ``p``.
    """
    shift = None if shift is None else to_rational(shift)
    cs = p.coeffs
    if not cs:
        return SignCertificate(Sign.INCONCLUSIVE, shift, p, 0)
    if all(lower(c) > 0 for c in cs):
        return SignCertificate(Sign.ALL_POSITIVE, shift, p)
    if all(upper(c) < 0 for c in cs):
        return SignCertificate(Sign.ALL_NEGATIVE, shift, p)
    if lower(cs[0]) > 0:
        idx = next(i for i, c in enumerate(cs) if lower(c) <= 0)
    elif upper(cs[0]) < 0:
        idx = next(i for i, c in enumerate(cs) if upper(c) >= 0)
    else:
        idx = 0
    return SignCertificate(Sign.INCONCLUSIVE, shift, p, idx)


def certify_on_ray(p: Polynomial, c) -> SignCertificate:
    """Certificate for the sign of p on [c, oo)."""
    return sign_certificate(taylor_shift(p, c), shift=c)


def certify_on_band(p: Polynomial, c) -> SignCertificate:
    """Certificate for the sign of p on (0, c], via the reciprocal transform with s = 1/c."""
    s = 1 / to_rational(c)
    return sign_certificate(reciprocal_transform(p, s), shift=s)


def _nonneg_some_positive(p: Polynomial) -> bool:
    # sum c_i y^i > 0 for every y > 0
    return bool(p.coeffs) and all(lower(c) >= 0 for c in p.coeffs) and any(lower(c) > 0 for c in p.coeffs)


class Positivity(enum.Enum):
    PROVED_POSITIVE = "PROVED_POSITIVE"
    NEGATIVE_SOMEWHERE = "NEGATIVE_SOMEWHERE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class PositivityResult:
    verdict: Positivity
    witness: Optional[Fraction] = None
    detail: str = ""
    pieces: int = field(default=0, compare=False)

    @property
    def proved(self) -> bool:
        return self.verdict is Positivity.PROVED_POSITIVE


def _cauchy_bound(p: Polynomial) -> Fraction:
    """1 + max|c_i / c_d|: every complex root has modulus below it."""
    lead = p.leading
    if lower(lead) <= 0 <= upper(lead):
        raise DomainError("leading coefficient may vanish")
    m = min(abs(lower(lead)), abs(upper(lead)))
    rest = [max(abs(lower(c)), abs(upper(c))) for c in p.coeffs[:-1]]
    return 1 + (max(rest) / m if rest else Fraction(0))


def positivity_on_interval(p: Polynomial, lo, hi=None, max_depth: int = DEFAULT_MAX_DEPTH) -> PositivityResult:
    """Decide p > 0 on the open interval (lo, hi); ``hi=None`` means +oo.

    Tries coefficient certificates first, then bisects with interval Horner
    evaluation.  A NEGATIVE_SOMEWHERE verdict carries a rational witness w
    with p(w) < 0 (for interval coefficients: every member negative at w).
    Reaching ``max_depth`` yields INCONCLUSIVE, never a false claim.
    """
    lo = to_rational(lo)
    hi = None if hi is None else to_rational(hi)
    if hi is not None and not lo < hi:
        raise DomainError("positivity_on_interval needs lo < hi")
    if p.is_zero:
        return PositivityResult(Positivity.INCONCLUSIVE, lo, "zero polynomial")
    pieces = 0

    if hi is None:
        if _nonneg_some_positive(taylor_shift(p, lo)):
            return PositivityResult(Positivity.PROVED_POSITIVE, detail=f"shift by {lo}", pieces=1)
        if upper(p.leading) < 0:
            w = max(lo, _cauchy_bound(p)) + 1
            return PositivityResult(Positivity.NEGATIVE_SOMEWHERE, w, "negative leading coefficient")
        # beyond the Cauchy root bound every root has real part < c, so the shifted
        # polynomial has only positive coefficients
        c = max(lo, _cauchy_bound(p))
        if not _nonneg_some_positive(taylor_shift(p, c)):
            return PositivityResult(Positivity.INCONCLUSIVE, c, "ray certificate failed beyond root bound")
        if upper(p(c)) <= 0:
            return PositivityResult(Positivity.INCONCLUSIVE, c, "vanishes at split point")
        if c == lo:
            return PositivityResult(Positivity.PROVED_POSITIVE, detail=f"shift by {c}", pieces=1)
        sub = positivity_on_interval(p, lo, c, max_depth)
        if sub.proved:
            return PositivityResult(Positivity.PROVED_POSITIVE, detail=f"bisection on ({lo}, {c}] + ray", pieces=sub.pieces + 1)
        return sub

    zero_at = None
    stack = [(lo, hi, 0)]
    while stack:
        a, b, depth = stack.pop()
        m = (a + b) / 2
        v = p(m)
        if upper(v) < 0:
            return PositivityResult(Positivity.NEGATIVE_SOMEWHERE, m, f"p({m}) < 0")
        if _nonneg_some_positive(mobius_to_ray(p, a, b)):
            pieces += 1
            continue
        if lower(p(Interval(a, b))) > 0:
            pieces += 1
            continue
        if upper(v) == 0 and zero_at is None:
            zero_at = m
        if depth >= max_depth:
            return PositivityResult(Positivity.INCONCLUSIVE, m, f"depth cap {max_depth} reached near {m}")
        # right half first on the stack so the left half is explored first
        stack.append((m, b, depth + 1))
        stack.append((a, m, depth + 1))
    if zero_at is not None:
        return PositivityResult(Positivity.INCONCLUSIVE, zero_at, "polynomial vanishes at a bisection point")
    return PositivityResult(Positivity.PROVED_POSITIVE, detail=f"{pieces} pieces", pieces=pieces)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero:
            raise DegenerateTransform("rational function with zero denominator")

    @classmethod
    def from_poly(cls, p: Polynomial) -> "RationalFunction":
        return cls(p, Polynomial([1]))

    def __call__(self, x):
        d = self.denominator(x)
        if not isinstance(d, Interval) and d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return self.numerator(x) / d

    def __add__(self, other):
        other = _as_rf(other)
        g = poly_gcd(self.denominator, other.denominator)
        fa, _ = poly_divmod(other.denominator, g)
        fb, _ = poly_divmod(self.denominator, g)
        return RationalFunction(self.numerator * fa + other.numerator * fb, self.denominator * fa)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other.numerator.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def reduced(self) -> "RationalFunction":
        """Cancel the polynomial gcd and make the denominator monic."""
        g = poly_gcd(self.numerator, self.denominator)
        n, _ = poly_divmod(self.numerator, g)
        d, _ = poly_divmod(self.denominator, g)
        lead = d.leading
        return RationalFunction(n.scale(1 / lead), d.scale(1 / lead))

    def equals(self, other: "RationalFunction") -> bool:
        """Equality as functions (cross-multiplication)."""
        return self.numerator * other.denominator == other.numerator * self.denominator

    def proportional_to(self, other: "RationalFunction") -> Optional[Fraction]:
        """Common factor c with num = c*other.num and den = c*other.den, else None."""
        if len(self.denominator) != len(other.denominator) or len(self.numerator) != len(other.numerator):
            return None
        c = self.denominator.leading / other.denominator.leading
        if self.numerator == other.numerator.scale(c) and self.denominator == other.denominator.scale(c):
            return c
        return None


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction.from_poly(x)
    return RationalFunction.from_poly(Polynomial([x]))


def derivative_numerator(f: RationalFunction) -> tuple[Polynomial, Polynomial]:
    """(phi, psi) with f' = phi/psi, phi = n'd - nd', psi = d^2; no cancellation."""
    n, d = f.numerator, f.denominator
    return n.derivative() * d - n * d.derivative(), d * d

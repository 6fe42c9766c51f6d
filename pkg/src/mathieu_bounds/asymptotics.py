"""Truncated Laurent series in x = 1/r^2 and the large-r expansions built from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError
from .exact import bernoulli, to_rational
from .mathieu import hoorfar_qi_bound


@dataclass(frozen=True)
class LaurentSeries:
    """sum_i coeffs[i] x^(valuation + i) + O(x^order).

    ``order=None`` marks an exact (finite) Laurent polynomial.  Leading known
    zeros are absorbed into the valuation, so an inexact series whose known
    coefficients all vanish is O(x^order) with valuation == order.
    """

    coeffs: tuple
    valuation: int = 0
    order: Optional[int] = None

    def __post_init__(self):
        cs = [to_rational(c) for c in self.coeffs]
        v = self.valuation
        if self.order is not None:
            cs = cs[: max(self.order - v, 0)]
        while cs and cs[0] == 0:
            cs.pop(0)
            v += 1
        if self.order is None:
            while cs and cs[-1] == 0:
                cs.pop()
            if not cs:
                v = 0
        else:
            v = min(v, self.order)
            cs += [Fraction(0)] * (self.order - v - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "valuation", v)

    @classmethod
    def exact(cls, coeffs: Sequence, valuation: int = 0) -> "LaurentSeries":
        return cls(tuple(coeffs), valuation, None)

    @classmethod
    def monomial(cls, power: int, coeff=1) -> "LaurentSeries":
        return cls((coeff,), power, None)

    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _end(self) -> float:
        return float("inf") if self.order is None else self.order

    def coefficient(self, power: int) -> Fraction:
        if self.order is not None and power >= self.order:
            raise ValueError(f"coefficient of x^{power} is beyond the truncation order {self.order}")
        i = power - self.valuation
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def known_powers(self) -> range:
        return range(self.valuation, self.valuation + len(self.coeffs))

    def truncate(self, order: int) -> "LaurentSeries":
        if self.order is not None and order > self.order:
            raise ValueError("cannot extend a truncated series")
        return LaurentSeries(self.coeffs, self.valuation, order)

    def __neg__(self):
        return LaurentSeries(tuple(-c for c in self.coeffs), self.valuation, self.order)

    def __add__(self, other):
        other = _as_series(other)
        end = min(self._end(), other._end())
        order = None if end == float("inf") else int(end)
        if self.is_zero and other.is_zero:
            return LaurentSeries((), 0 if order is None else order, order)
        low = min(p for s in (self, other) if not s.is_zero for p in [s.valuation])
        high = max(self.valuation + len(self.coeffs), other.valuation + len(other.coeffs))
        if order is not None:
            high = min(high, order)
        cs = []
        for p in range(low, high):
            c = Fraction(0)
            for s in (self, other):
                i = p - s.valuation
                if 0 <= i < len(s.coeffs):
                    c += s.coeffs[i]
            cs.append(c)
        return LaurentSeries(tuple(cs), low, order)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_series(other))

    def __rsub__(self, other):
        return _as_series(other) - self

    def __mul__(self, other):
        other = _as_series(other)
        a, b = self, other
        candidates = []
        if a.order is not None:
            candidates.append(a.order + (b.valuation if not b.is_zero else b._end()))
        if b.order is not None:
            candidates.append(b.order + (a.valuation if not a.is_zero else a._end()))
        finite = [c for c in candidates if c != float("inf")]
        order = int(min(finite)) if finite else None
        if a.is_zero or b.is_zero:
            return LaurentSeries((), order if order is not None else 0, order)
        v = a.valuation + b.valuation
        n = len(a.coeffs) + len(b.coeffs) - 1
        if order is not None:
            n = min(n, order - v)
        cs = [Fraction(0)] * max(n, 0)
        for i, ca in enumerate(a.coeffs):
            if i >= n:
                break
            for j, cb in enumerate(b.coeffs):
                if i + j >= n:
                    break
                cs[i + j] += ca * cb
        return LaurentSeries(tuple(cs), v, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_series(other)
        if other.is_zero:
            raise ZeroDivisionError("division by a series with no known nonzero coefficient")
        if self.order is None and other.order is None:
            raise ValueError("quotient of exact series needs an explicit truncation; truncate one operand first")
        b0 = other.coeffs[0]
        # relative precisions measured from each valuation
        rel_a = float("inf") if self.order is None else self.order - self.valuation
        rel_b = float("inf") if other.order is None else other.order - other.valuation
        rel = int(min(rel_a, rel_b))
        v = self.valuation - other.valuation
        # inverse of other / (b0 x^vb) = 1 + ..., to relative precision rel
        u = [c / b0 for c in other.coeffs[:rel]] + [Fraction(0)] * max(0, rel - len(other.coeffs))
        inv = [Fraction(0)] * rel
        if rel > 0:
            inv[0] = Fraction(1)
        for n in range(1, rel):
            inv[n] = -sum((u[j] * inv[n - j] for j in range(1, n + 1)), Fraction(0))
        acs = list(self.coeffs[:rel]) + [Fraction(0)] * max(0, rel - len(self.coeffs))
        q = [sum((acs[i] * inv[n - i] for i in range(n + 1)), Fraction(0)) / b0 for n in range(rel)]
        return LaurentSeries(tuple(q), v, v + rel)

    def evaluate(self, x) -> Fraction:
        """Sum of the known terms at the point x."""
        x = to_rational(x)
        return sum((c * x ** (self.valuation + i) for i, c in enumerate(self.coeffs)), Fraction(0))


def _as_series(x) -> LaurentSeries:
    if isinstance(x, LaurentSeries):
        return x
    return LaurentSeries.exact((to_rational(x),))


def series_arith(a: LaurentSeries, b: LaurentSeries, op: str) -> LaurentSeries:
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown series operation {op!r}")
    return ops[op](b)


def s_series(k: int) -> LaurentSeries:
    """x - sum_{i=1..k} B_2i x^(i+1) + O(x^(k+2)), the large-r expansion of S with x = 1/r^2."""
    if not isinstance(k, int) or k < 1:
        raise DomainError("k must be a positive integer")
    coeffs = [Fraction(1)] + [-bernoulli(i) for i in range(1, k + 1)]
    return LaurentSeries(tuple(coeffs), 1, k + 2)


X = LaurentSeries.monomial(1)
X_INV = LaurentSeries.monomial(-1)


def alpha_numerator_series(s: LaurentSeries) -> LaurentSeries:
    return (12 * X_INV * X_INV + 2 * X_INV - 1) * s - 12 * X_INV


def alpha_denominator_series(s: LaurentSeries) -> LaurentSeries:
    return 12 - (12 * X_INV + 6) * s


def alpha_series(k: int) -> LaurentSeries:
    """Formal image of S's expansion (truncated at k Bernoulli terms) under the alpha map.

    Both numerator and denominator start at x^1, so the result is known to
    O(x^(k-1)): k Bernoulli terms resolve k - 1 coefficients of alpha.
    """
    if not isinstance(k, int) or k < 3:
        raise DomainError("alpha_series needs k >= 3")
    s = s_series(k)
    out = alpha_numerator_series(s) / alpha_denominator_series(s)
    if out.order is None or out.order <= 0:
        raise ValueError(f"input order too low; use k >= {k + 1}")
    return out


def alpha_coefficients(n: int) -> list[Fraction]:
    """First n coefficients of alpha's expansion in x = 1/r^2 (constant term first)."""
    if n < 1:
        raise DomainError("need at least one coefficient")
    k = max(3, n + 1)
    series = alpha_series(k)
    while series.order < n:
        k += 1
        series = alpha_series(k)
    return [series.coefficient(i) for i in range(n)]


def nested_approximant(alpha_trunc: LaurentSeries, r) -> Fraction:
    """1/(r^2 + 1/2 - (4r^2+1)/12 (r^2 + a(1/r^2))^-1) with a the known part of alpha_trunc."""
    if not alpha_trunc.is_zero and alpha_trunc.valuation < 0:
        raise DomainError("alpha truncation must have nonnegative valuation")
    r = to_rational(r)
    if r <= 0:
        raise DomainError("r must be positive")
    a = alpha_trunc.evaluate(1 / (r * r))
    return hoorfar_qi_bound(r, a).lo

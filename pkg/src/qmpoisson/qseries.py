"""Truncated q-expansions with exact rational coefficients.

The Eisenstein series of even weight k has the expansion

    E_k = 1 - (2k / B_k) * sum_{n>=1} sigma_{k-1}(n) q^n

with B_k the Bernoulli numbers (from t/(e^t - 1)) and sigma the divisor
sums.  Substituting these series for the generators gives an algebra
homomorphism from polynomials to truncated series, which cross-validates
every bracket identity numerically: the derivation D acts as q d/dq.

All coefficients are exact rationals; truncation at order N keeps results
exact through q^N.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from .poly import Poly
from .scalars import substitute_param

__all__ = [
    "bernoulli",
    "sigma",
    "QSeries",
    "eisenstein_qexp",
    "evaluate",
    "q_derivative",
]

_BERNOULLI: List[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """The k-th Bernoulli number, by the defining recurrence (cached)."""
    if k < 0:
        raise ValueError("Bernoulli numbers need a non-negative index")
    while len(_BERNOULLI) <= k:
        n = len(_BERNOULLI)
        acc = Fraction(0)
        for j in range(n):
            acc += comb(n + 1, j) * _BERNOULLI[j]
        _BERNOULLI.append(-acc / (n + 1))
    return _BERNOULLI[k]


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n) = sum of d^k over positive divisors d."""
    if n <= 0:
        raise ValueError("divisor sums are defined for positive integers")
    if k < 1:
        raise ValueError("the exponent must be at least 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            other = n // d
            if other != d:
                total += other ** k
        d += 1
    return total


class QSeries:
    """A truncated series c_0 + c_1 q + ... + c_N q^N with exact rationals."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: Optional[int] = None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("the truncation order must be non-negative")
        coeffs = coeffs[: order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c, order: int) -> "QSeries":
        return cls([c], order)

    def _common(self, other: "QSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.order)
        n = self._common(other)
        return QSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], n
        )

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.order)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c * other for c in self.coeffs], self.order)
        n = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return QSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of q-series are not supported")
        result = QSeries.constant(1, self.order)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = self._common(other)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def coefficient(self, n: int) -> Fraction:
        if n > self.order:
            raise ValueError(f"coefficient of q^{n} beyond truncation {self.order}")
        return self.coeffs[n]

    def __str__(self):
        pieces = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if n == 0:
                body = str(mag)
            else:
                qpow = "q" if n == 1 else f"q^{n}"
                body = qpow if mag == 1 else f"{mag}*{qpow}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        if not pieces:
            pieces.append("0")
        pieces.append(f"+ O(q^{self.order + 1})")
        return " ".join(pieces)

    __repr__ = __str__


def eisenstein_qexp(k: int, N: int) -> QSeries:
    """Exact truncated q-expansion of the weight-k Eisenstein series."""
    if k < 2 or k % 2 != 0:
        raise ValueError("Eisenstein series have even weight at least 2")
    factor = -Fraction(2 * k) / bernoulli(k)
    coeffs = [Fraction(1)]
    for n in range(1, N + 1):
        coeffs.append(factor * sigma(k - 1, n))
    return QSeries(coeffs, N)


_GENERATOR_CACHE: dict = {}


def _generator_series(N: int) -> Tuple[QSeries, QSeries, QSeries]:
    hit = _GENERATOR_CACHE.get(N)
    if hit is None:
        hit = tuple(eisenstein_qexp(k, N) for k in (2, 4, 6))
        _GENERATOR_CACHE[N] = hit
    return hit


def evaluate(f: Poly, N: int, t_value=None) -> QSeries:
    """Substitute the Eisenstein expansions into a polynomial.

    This is an algebra homomorphism.  Coefficients must be plain rationals
    unless ``t_value`` supplies a rational value for the parameter t.
    """
    e2, e4, e6 = _generator_series(N)
    powers: dict = {}

    def gen_power(series, tag, e):
        key = (tag, e)
        hit = powers.get(key)
        if hit is None:
            hit = series ** e
            powers[key] = hit
        return hit

    out = QSeries.constant(0, N)
    for m, c in f.terms():
        if t_value is None:
            if not isinstance(c, Fraction):
                raise ValueError(
                    "polynomial has a symbolic coefficient; supply t_value"
                )
            scalar = c
        else:
            scalar = substitute_param(c, t_value)
        term = QSeries.constant(scalar, N)
        for series, tag, e in ((e2, 2, m[0]), (e4, 4, m[1]), (e6, 6, m[2])):
            if e:
                term = term * gen_power(series, tag, e)
        out = out + term
    return out


def q_derivative(s: QSeries) -> QSeries:
    """q d/dq on a truncated series: c_n maps to n*c_n."""
    return QSeries([n * c for n, c in enumerate(s.coeffs)], s.order)
